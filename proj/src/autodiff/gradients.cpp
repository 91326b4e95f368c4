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
#include "qnet/autodiff/gradients.hpp"

#include "qnet/errors.hpp"
#include "qnet/sim/kernels.hpp"

#include <numbers>
#include <string>

namespace qnet::autodiff {

namespace {

using Kernels = sim::kernels::Parallel;
using circuit::Circuit;
using sim::Complex;
using sim::GateKind;

enum class Axis { X, Y, Z };

constexpr std::size_t kNone = static_cast<std::size_t>(-1);
// Prefix cache budget for the shift rule (2^22 amplitudes = 64 MiB).
constexpr std::size_t kCacheAmplitudes = std::size_t{1} << 22;

void check_cotangent(const Circuit &circuit, std::span<const double> cotangent) {
    if (cotangent.size() != circuit.num_qubits()) {
        throw ArgumentError("cotangent has " + std::to_string(cotangent.size()) +
                            " entries, circuit has " +
                            std::to_string(circuit.num_qubits()) + " qubits");
    }
}

void check_differentiable(const Circuit &circuit) {
    for (const auto &op : circuit.ops()) {
        bool has_param = false;
        for (const auto &a : op.angles) {
            has_param = has_param || a.is_param();
        }
        if (has_param && op.kind != GateKind::RX && op.kind != GateKind::RZ &&
            op.kind != GateKind::ROT3) {
            throw UnsupportedModeError(
                "parameterized " + std::string(sim::kind_name(op.kind)) +
                " gates are not differentiable; only RX, RZ and ROT3 are");
        }
    }
}

void apply_pauli(std::span<Complex> amps, std::size_t q, Axis axis) {
    switch (axis) {
    case Axis::X:
        Kernels::mcx(amps, 0, q);
        break;
    case Axis::Y:
        Kernels::pauli_y(amps, q);
        break;
    case Axis::Z:
        Kernels::phase_1q(amps, q, 1.0, -1.0);
        break;
    }
}

void rotate(std::span<Complex> amps, std::size_t q, Axis axis, double theta) {
    switch (axis) {
    case Axis::X:
        Kernels::matrix_1q(amps, q, sim::rx_matrix(theta));
        break;
    case Axis::Y:
        Kernels::matrix_1q(amps, q, sim::ry_matrix(theta));
        break;
    case Axis::Z: {
        const auto m = sim::rz_matrix(theta);
        Kernels::phase_1q(amps, q, m[0], m[3]);
        break;
    }
    }
}

/// Backward-sweep state: `psi` is the state right after the current gate,
/// `lambda` the observable-weighted state pulled back to the same point.
struct Sweep {
    sim::StateVector psi;
    sim::StateVector lambda;
    std::vector<Complex> scratch;

    /// Im <lambda| G psi> = d f / d theta for a factor exp(-i theta G / 2).
    double generator_term(std::size_t q, Axis axis) {
        const auto src = psi.amplitudes();
        scratch.assign(src.begin(), src.end());
        apply_pauli(scratch, q, axis);
        return Kernels::inner(lambda.amplitudes(), scratch).imag();
    }

    void undo_rotation(std::size_t q, Axis axis, double theta) {
        rotate(psi.amplitudes(), q, axis, -theta);
        rotate(lambda.amplitudes(), q, axis, -theta);
    }

    void undo(const sim::GateOp &gate) {
        const auto inv = sim::inverse(gate);
        sim::kernels::apply<Kernels>(psi.amplitudes(), inv);
        sim::kernels::apply<Kernels>(lambda.amplitudes(), inv);
    }
};

} // namespace

double contract(std::span<const double> values, std::span<const double> cotangent) {
    double f = 0.0;
    for (std::size_t q = 0; q < values.size(); ++q) {
        f += cotangent[q] * values[q];
    }
    return f;
}

ValueAndGradient adjoint_value_and_gradient(const Circuit &circuit,
                                            std::span<const double> params,
                                            const sim::StateVector &input,
                                            std::span<const double> cotangent,
                                            const std::optional<sim::NoiseSpec> &noise) {
    if (noise && noise->p > 0.0) {
        throw UnsupportedModeError(
            "adjoint differentiation needs unitary evolution; use "
            "parameter_shift_gradient with trajectory averaging under noise");
    }
    check_cotangent(circuit, cotangent);
    check_differentiable(circuit);

    sim::StateVector psi = circuit::bind_and_execute(circuit, params, input);
    ValueAndGradient out;
    out.values = sim::pauli_z_expectations(psi);
    out.gradient.assign(params.size(), 0.0);

    sim::StateVector lambda = psi;
    Kernels::weighted_z(psi.amplitudes(), cotangent, lambda.amplitudes());
    Sweep sweep{std::move(psi), std::move(lambda), {}};

    const auto &ops = circuit.ops();
    for (std::size_t i = ops.size(); i-- > 0;) {
        const auto &op = ops[i];
        const sim::GateOp gate = circuit.bind(i, params);
        const auto q = op.targets.empty() ? 0 : op.targets[0];

        auto accumulate = [&](const circuit::Angle &a, Axis axis) {
            if (a.is_param()) {
                out.gradient[*a.param] += a.scale * sweep.generator_term(q, axis);
            }
        };

        switch (op.kind) {
        case GateKind::RX:
            accumulate(op.angles[0], Axis::X);
            sweep.undo(gate);
            break;
        case GateKind::RZ:
            accumulate(op.angles[0], Axis::Z);
            sweep.undo(gate);
            break;
        case GateKind::ROT3:
            // RZ(gamma) RY(beta) RZ(alpha): peel factors from the left.
            accumulate(op.angles[2], Axis::Z);
            sweep.undo_rotation(q, Axis::Z, gate.angles[2]);
            accumulate(op.angles[1], Axis::Y);
            sweep.undo_rotation(q, Axis::Y, gate.angles[1]);
            accumulate(op.angles[0], Axis::Z);
            sweep.undo_rotation(q, Axis::Z, gate.angles[0]);
            break;
        default:
            sweep.undo(gate);
            break;
        }
    }
    return out;
}

std::vector<double> adjoint_gradient(const Circuit &circuit,
                                     std::span<const double> params,
                                     const sim::StateVector &input,
                                     std::span<const double> cotangent,
                                     const std::optional<sim::NoiseSpec> &noise) {
    return adjoint_value_and_gradient(circuit, params, input, cotangent, noise)
        .gradient;
}

std::vector<double> parameter_shift_gradient(const Circuit &circuit,
                                             std::span<const double> params,
                                             const sim::StateVector &input,
                                             std::span<const double> cotangent,
                                             const std::optional<sim::NoiseSpec> &noise,
                                             std::size_t trajectories) {
    check_cotangent(circuit, cotangent);
    check_differentiable(circuit);

    struct Occurrence {
        std::size_t op;
        std::size_t slot;
        std::size_t param;
        double scale;
    };
    std::vector<Occurrence> occurrences;
    const auto &ops = circuit.ops();
    for (std::size_t i = 0; i < ops.size(); ++i) {
        for (std::size_t s = 0; s < ops[i].angles.size(); ++s) {
            const auto &a = ops[i].angles[s];
            if (a.is_param()) {
                if (*a.param >= params.size()) {
                    throw BindingError(*a.param, params.size());
                }
                occurrences.push_back({i, s, *a.param, a.scale});
            }
        }
    }

    if (input.num_qubits() != circuit.num_qubits()) {
        throw ArgumentError("input state does not match the circuit register");
    }
    const bool noisy = noise && noise->p > 0.0;
    if (noise) sim::validate(*noise);
    if (noisy && trajectories == 0) {
        throw ArgumentError("trajectory count must be positive");
    }
    const std::size_t runs = noisy ? trajectories : 1;
    const double p = noisy ? noise->p : 0.0;
    const std::size_t nq = circuit.num_qubits();
    const double shift = std::numbers::pi / 2;

    // Every shifted run of one trajectory replays the same prefix (same
    // gates, same noise draws) up to the shifted op. Cache the state and the
    // generator before each parameterized op and replay only the suffix.
    std::vector<std::size_t> slot_of(ops.size(), kNone);
    std::vector<std::size_t> cached_ops;
    for (const auto &occ : occurrences) {
        if (slot_of[occ.op] == kNone) {
            slot_of[occ.op] = cached_ops.size();
            cached_ops.push_back(occ.op);
        }
    }
    const bool cache = cached_ops.size() * input.size() <= kCacheAmplitudes;

    std::vector<double> plus(occurrences.size() * nq, 0.0);
    std::vector<double> minus(occurrences.size() * nq, 0.0);
    std::vector<sim::StateVector> states;
    std::vector<sim::Rng> rngs;
    const auto count = static_cast<std::ptrdiff_t>(occurrences.size());
    for (std::size_t k = 0; k < runs; ++k) {
        const std::uint64_t seed = noisy ? circuit::trajectory_seed(noise->seed, k) : 0;
        states.clear();
        rngs.clear();
        if (cache) {
            sim::StateVector state = input;
            sim::Rng rng(seed);
            std::size_t at = 0;
            for (auto op : cached_ops) {
                circuit::execute_ops(circuit, params, state, at, op, p, &rng);
                states.push_back(state);
                rngs.push_back(rng);
                at = op;
            }
        }
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t j = 0; j < count; ++j) {
            const auto &occ = occurrences[static_cast<std::size_t>(j)];
            for (const double sign : {1.0, -1.0}) {
                sim::StateVector state = input;
                sim::Rng rng(seed);
                std::size_t from = 0;
                if (cache) {
                    state = states[slot_of[occ.op]];
                    rng = rngs[slot_of[occ.op]];
                    from = occ.op;
                }
                circuit::execute_ops(circuit, params, state, from, ops.size(), p, &rng,
                                     circuit::AngleShift{occ.op, occ.slot, sign * shift});
                const auto z = sim::pauli_z_expectations(state);
                auto &sink = sign > 0 ? plus : minus;
                for (std::size_t q = 0; q < nq; ++q) {
                    sink[static_cast<std::size_t>(j) * nq + q] += z[q];
                }
            }
        }
    }

    std::vector<double> gradient(params.size(), 0.0);
    const auto denom = static_cast<double>(runs);
    for (std::size_t j = 0; j < occurrences.size(); ++j) {
        std::vector<double> up(nq), down(nq);
        for (std::size_t q = 0; q < nq; ++q) {
            up[q] = plus[j * nq + q] / denom;
            down[q] = minus[j * nq + q] / denom;
        }
        gradient[occurrences[j].param] +=
            occurrences[j].scale * (contract(up, cotangent) - contract(down, cotangent)) / 2;
    }
    return gradient;
}

std::vector<double> finite_difference_gradient(const Circuit &circuit,
                                               std::span<const double> params,
                                               const sim::StateVector &input,
                                               std::span<const double> cotangent,
                                               double step) {
    check_cotangent(circuit, cotangent);
    std::vector<double> shifted(params.begin(), params.end());
    std::vector<double> gradient(params.size(), 0.0);
    for (std::size_t p = 0; p < params.size(); ++p) {
        const double keep = shifted[p];
        shifted[p] = keep + step;
        const double up = contract(circuit::expectations(circuit, shifted, input),
                                   cotangent);
        shifted[p] = keep - step;
        const double down = contract(circuit::expectations(circuit, shifted, input),
                                     cotangent);
        shifted[p] = keep;
        gradient[p] = (up - down) / (2 * step);
    }
    return gradient;
}

} // namespace qnet::autodiff
