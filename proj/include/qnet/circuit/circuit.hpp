// Copyright 2026 The QNet Simulator Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include "qnet/sim/gates.hpp"
#include "qnet/sim/simulator.hpp"
#include "qnet/sim/state_vector.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qnet::circuit {

/// Angle of a gate: either a constant or `scale * params[index] + offset`.
struct Angle {
    std::optional<std::size_t> param;
    double scale{1.0};
    double offset{0.0};

    static Angle constant(double value) { return {std::nullopt, 1.0, value}; }
    static Angle ref(std::size_t index, double scale = 1.0, double offset = 0.0) {
        return {index, scale, offset};
    }

    [[nodiscard]] bool is_param() const noexcept { return param.has_value(); }
    /// Throws BindingError when the referenced slot is past `params`.
    [[nodiscard]] double bind(std::span<const double> params) const;

    bool operator==(const Angle &) const = default;
};

/// One gate record of a circuit.
struct Op {
    sim::GateKind kind{sim::GateKind::H};
    std::vector<std::size_t> targets;
    std::vector<std::size_t> controls;
    std::vector<Angle> angles;
    std::size_t layer{0}; ///< index into Circuit::layers()

    [[nodiscard]] std::vector<std::size_t> qubits() const;

    bool operator==(const Op &) const = default;
};

/**
 * @brief Ordered gate list over a fixed register, with symbolic angles.
 *
 * Ops are grouped into named layers (`enc`, `mix[0]`, ...). Appending
 * validates qubit indices and arities immediately, so a constructed circuit
 * is always structurally valid. Once built, circuits are treated as
 * immutable and can be shared between threads.
 */
class Circuit {
  public:
    explicit Circuit(std::size_t num_qubits);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] const std::vector<Op> &ops() const noexcept { return ops_; }
    [[nodiscard]] const std::vector<std::string> &layers() const noexcept {
        return layers_;
    }
    [[nodiscard]] bool empty() const noexcept { return ops_.empty(); }

    /// Subsequent appends are tagged with `tag` (re-opening an existing tag
    /// reuses its index).
    void begin_layer(std::string tag);

    void append(Op op);
    /// Appends a constant-angle gate.
    void append(const sim::GateOp &gate);
    /// Appends the expanded (inverse) QFT over `qubits`.
    void append_qft(std::span<const std::size_t> qubits, bool inverse,
                    bool bit_reversal = true);
    /// Appends every op of `other`, preserving its layer tags.
    void append_circuit(const Circuit &other);

    /// One past the largest referenced parameter index (0 if none).
    [[nodiscard]] std::size_t required_params() const;

    /// Concrete gate for ops()[i] under `params`.
    [[nodiscard]] sim::GateOp bind(std::size_t i,
                                   std::span<const double> params) const;

    /// Same register and the same ops, with layers compared by tag name.
    bool operator==(const Circuit &other) const;

  private:
    std::size_t num_qubits_;
    std::vector<Op> ops_;
    std::vector<std::string> layers_;
    std::size_t current_layer_{0};
};

/// Perturbation of a single angle occurrence, used by the shift rule.
struct AngleShift {
    std::size_t op{0};
    std::size_t slot{0};
    double delta{0.0};
};

/**
 * @brief Runs `circuit` on a copy of `input` with bound parameters.
 *
 * With `noise`, one depolarizing trajectory (seeded by noise->seed) is drawn
 * on each gate's qubits right after the gate.
 */
sim::StateVector bind_and_execute(const Circuit &circuit,
                                  std::span<const double> params,
                                  const sim::StateVector &input,
                                  const std::optional<sim::NoiseSpec> &noise = {},
                                  const std::optional<AngleShift> &shift = {});

/**
 * @brief Applies ops [begin, end) of `circuit` to `state` in place.
 *
 * When `rng` is given and noise_p > 0, a depolarizing trajectory step
 * follows each gate. bind_and_execute is this over the whole circuit with
 * a fresh generator, so a run can be resumed from any saved (state, rng).
 */
void execute_ops(const Circuit &circuit, std::span<const double> params,
                 sim::StateVector &state, std::size_t begin, std::size_t end,
                 double noise_p = 0.0, sim::Rng *rng = nullptr,
                 const std::optional<AngleShift> &shift = {});

/// Same, using the serial reference kernels (noise-free).
sim::StateVector execute_reference(const Circuit &circuit,
                                   std::span<const double> params,
                                   const sim::StateVector &input);

/// The adjoint circuit: reversed order, inverted gates. Parameter references
/// are kept with negated scale and offset.
Circuit adjoint(const Circuit &circuit);

/// Pauli-Z expectations of the final state. With noise, averages
/// `trajectories` runs whose seeds derive from noise->seed.
std::vector<double> expectations(const Circuit &circuit,
                                 std::span<const double> params,
                                 const sim::StateVector &input,
                                 const std::optional<sim::NoiseSpec> &noise = {},
                                 std::size_t trajectories = 1,
                                 const std::optional<AngleShift> &shift = {});

/// Seed of trajectory `k` under base seed `seed`.
std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t k);

} // namespace qnet::circuit
