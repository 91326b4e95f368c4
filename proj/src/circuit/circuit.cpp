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
#include "qnet/circuit/circuit.hpp"

#include "qnet/errors.hpp"
#include "qnet/sim/kernels.hpp"

#include <algorithm>

namespace qnet::circuit {

double Angle::bind(std::span<const double> params) const {
    if (!param) {
        return offset;
    }
    if (*param >= params.size()) {
        throw BindingError(*param, params.size());
    }
    return scale * params[*param] + offset;
}

std::vector<std::size_t> Op::qubits() const {
    std::vector<std::size_t> all = targets;
    all.insert(all.end(), controls.begin(), controls.end());
    return all;
}

// No simulator cap here: symbolic circuits may exceed what can be simulated.
Circuit::Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0) {
        throw ArgumentError("a circuit needs at least one qubit");
    }
    layers_.emplace_back("");
}

void Circuit::begin_layer(std::string tag) {
    auto it = std::find(layers_.begin(), layers_.end(), tag);
    if (it == layers_.end()) {
        layers_.push_back(std::move(tag));
        current_layer_ = layers_.size() - 1;
    } else {
        current_layer_ = static_cast<std::size_t>(it - layers_.begin());
    }
}

void Circuit::append(Op op) {
    // Structural validation via a zero-angle binding.
    sim::GateOp probe{op.kind, op.targets, op.controls,
                      std::vector<double>(op.angles.size(), 0.0)};
    sim::validate(probe, num_qubits_);
    op.layer = current_layer_;
    ops_.push_back(std::move(op));
}

void Circuit::append(const sim::GateOp &gate) {
    Op op{gate.kind, gate.targets, gate.controls, {}, 0};
    for (double a : gate.angles) {
        op.angles.push_back(Angle::constant(a));
    }
    append(std::move(op));
}

void Circuit::append_qft(std::span<const std::size_t> qubits, bool inverse,
                         bool bit_reversal) {
    for (const auto &g : sim::qft_gates(qubits, inverse, bit_reversal)) {
        append(g);
    }
}

void Circuit::append_circuit(const Circuit &other) {
    if (other.num_qubits() != num_qubits_) {
        throw ArgumentError("cannot concatenate circuits over different registers");
    }
    const std::size_t saved = current_layer_;
    for (const auto &op : other.ops()) {
        begin_layer(other.layers()[op.layer]);
        append(op);
    }
    current_layer_ = saved;
}

bool Circuit::operator==(const Circuit &other) const {
    if (num_qubits_ != other.num_qubits_ || ops_.size() != other.ops_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        Op a = ops_[i];
        Op b = other.ops_[i];
        if (layers_[a.layer] != other.layers_[b.layer]) {
            return false;
        }
        a.layer = b.layer = 0;
        if (!(a == b)) {
            return false;
        }
    }
    return true;
}

std::size_t Circuit::required_params() const {
    std::size_t needed = 0;
    for (const auto &op : ops_) {
        for (const auto &a : op.angles) {
            if (a.param) {
                needed = std::max(needed, *a.param + 1);
            }
        }
    }
    return needed;
}

sim::GateOp Circuit::bind(std::size_t i, std::span<const double> params) const {
    const Op &op = ops_.at(i);
    sim::GateOp g{op.kind, op.targets, op.controls, {}};
    g.angles.reserve(op.angles.size());
    for (const auto &a : op.angles) {
        g.angles.push_back(a.bind(params));
    }
    return g;
}

namespace {

void check_bound(const Circuit &circuit, std::span<const double> params) {
    for (const auto &op : circuit.ops()) {
        for (const auto &a : op.angles) {
            if (a.param && *a.param >= params.size()) {
                throw BindingError(*a.param, params.size());
            }
        }
    }
}

void check_input(const Circuit &circuit, const sim::StateVector &input) {
    if (input.num_qubits() != circuit.num_qubits()) {
        throw ArgumentError("input state has " +
                            std::to_string(input.num_qubits()) +
                            " qubits, circuit expects " +
                            std::to_string(circuit.num_qubits()));
    }
}

} // namespace

void execute_ops(const Circuit &circuit, std::span<const double> params,
                 sim::StateVector &state, std::size_t begin, std::size_t end,
                 double noise_p, sim::Rng *rng, const std::optional<AngleShift> &shift) {
    const auto &ops = circuit.ops();
    const bool noisy = rng != nullptr && noise_p > 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        sim::GateOp g = circuit.bind(i, params);
        if (shift && shift->op == i) {
            g.angles.at(shift->slot) += shift->delta;
        }
        sim::kernels::apply<sim::kernels::Parallel>(state.amplitudes(), g);
        if (noisy) {
            const auto qubits = ops[i].qubits();
            sim::apply_depolarizing_trajectory(state, qubits, noise_p, *rng);
        }
    }
}

sim::StateVector bind_and_execute(const Circuit &circuit,
                                  std::span<const double> params,
                                  const sim::StateVector &input,
                                  const std::optional<sim::NoiseSpec> &noise,
                                  const std::optional<AngleShift> &shift) {
    check_input(circuit, input);
    check_bound(circuit, params);
    std::optional<sim::Rng> rng;
    if (noise) {
        sim::validate(*noise);
        rng.emplace(noise->seed);
    }
    sim::StateVector state = input;
    execute_ops(circuit, params, state, 0, circuit.ops().size(),
                noise ? noise->p : 0.0, rng ? &*rng : nullptr, shift);
    return state;
}

sim::StateVector execute_reference(const Circuit &circuit,
                                   std::span<const double> params,
                                   const sim::StateVector &input) {
    check_input(circuit, input);
    check_bound(circuit, params);
    sim::StateVector state = input;
    for (std::size_t i = 0; i < circuit.ops().size(); ++i) {
        sim::apply_gate_reference(state, circuit.bind(i, params));
    }
    return state;
}

Circuit adjoint(const Circuit &circuit) {
    Circuit out(circuit.num_qubits());
    const auto &ops = circuit.ops();
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        out.begin_layer(circuit.layers()[it->layer]);
        Op inv = *it;
        for (auto &a : inv.angles) {
            a.scale = -a.scale;
            a.offset = -a.offset;
        }
        if (inv.kind == sim::GateKind::ROT3) {
            std::swap(inv.angles[0], inv.angles[2]);
        }
        out.append(std::move(inv));
    }
    return out;
}

std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t k) {
    // splitmix64 finalizer over a golden-ratio stride
    std::uint64_t z = seed + (k + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<double> expectations(const Circuit &circuit,
                                 std::span<const double> params,
                                 const sim::StateVector &input,
                                 const std::optional<sim::NoiseSpec> &noise,
                                 std::size_t trajectories,
                                 const std::optional<AngleShift> &shift) {
    if (!noise || noise->p == 0.0) {
        return sim::pauli_z_expectations(
            bind_and_execute(circuit, params, input, std::nullopt, shift));
    }
    if (trajectories == 0) {
        throw ArgumentError("trajectory count must be positive");
    }
    std::vector<double> mean(circuit.num_qubits(), 0.0);
    for (std::size_t k = 0; k < trajectories; ++k) {
        const sim::NoiseSpec traj{noise->p, trajectory_seed(noise->seed, k)};
        const auto z = sim::pauli_z_expectations(
            bind_and_execute(circuit, params, input, traj, shift));
        for (std::size_t q = 0; q < mean.size(); ++q) {
            mean[q] += z[q];
        }
    }
    for (auto &m : mean) {
        m /= static_cast<double>(trajectories);
    }
    return mean;
}

} // namespace qnet::circuit
