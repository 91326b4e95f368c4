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
#include "qnet/sim/simulator.hpp"

#include "qnet/errors.hpp"
#include "qnet/sim/kernels.hpp"

#include <algorithm>
#include <numbers>
#include <string>

namespace qnet::sim {

void validate(const NoiseSpec &noise) {
    if (!(noise.p >= 0.0 && noise.p <= 1.0)) {
        throw ArgumentError("depolarizing probability " + std::to_string(noise.p) +
                            " outside [0, 1]");
    }
}

void apply_gate(StateVector &state, const GateOp &gate) {
    validate(gate, state.num_qubits());
    kernels::apply<kernels::Parallel>(state.amplitudes(), gate);
}

void apply_gate_reference(StateVector &state, const GateOp &gate) {
    validate(gate, state.num_qubits());
    kernels::apply<kernels::Serial>(state.amplitudes(), gate);
}

std::vector<GateOp> qft_gates(std::span<const std::size_t> qubits, bool inverse,
                              bool bit_reversal) {
    if (qubits.empty()) {
        throw ArgumentError("QFT needs at least one qubit");
    }
    std::vector<std::size_t> sorted(qubits.begin(), qubits.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ArgumentError("QFT qubit list contains duplicate indices");
    }

    const std::size_t m = qubits.size();
    std::vector<GateOp> gates;
    gates.reserve(m * (m + 1) / 2 + m / 2);
    // Most significant register qubit first; each receives the phases
    // conditioned on all less significant ones.
    for (std::size_t i = m; i-- > 0;) {
        gates.push_back(hadamard(qubits[i]));
        for (std::size_t l = i; l-- > 0;) {
            const double phase =
                std::numbers::pi / static_cast<double>(std::size_t{1} << (i - l));
            gates.push_back(cphase(qubits[l], qubits[i], phase));
        }
    }
    if (bit_reversal) {
        for (std::size_t k = 0; k < m / 2; ++k) {
            gates.push_back(swap(qubits[k], qubits[m - 1 - k]));
        }
    }
    if (inverse) {
        std::reverse(gates.begin(), gates.end());
        for (auto &g : gates) {
            g = sim::inverse(g);
        }
    }
    return gates;
}

void apply_qft(StateVector &state, std::span<const std::size_t> qubits,
               bool inverse) {
    for (const auto &g : qft_gates(qubits, inverse, true)) {
        apply_gate(state, g);
    }
}

std::vector<double> pauli_z_expectations(const StateVector &state) {
    return kernels::Parallel::expectation_z_all(state.amplitudes(),
                                                state.num_qubits());
}

void apply_depolarizing_trajectory(StateVector &state,
                                   std::span<const std::size_t> qubits,
                                   double p, Rng &rng) {
    validate(NoiseSpec{p, 0});
    if (p == 0.0) {
        return;
    }
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (auto q : qubits) {
        if (q >= state.num_qubits()) {
            throw IndexError("noise qubit " + std::to_string(q) + " out of range");
        }
        const double u = coin(rng);
        if (u >= p) {
            continue;
        }
        // Reuse the draw: u/p is uniform on [0,1) given u < p.
        const auto which = std::min<int>(2, static_cast<int>(3.0 * u / p));
        auto amps = state.amplitudes();
        switch (which) {
        case 0:
            kernels::Parallel::mcx(amps, 0, q);
            break;
        case 1:
            kernels::Parallel::pauli_y(amps, q);
            break;
        default:
            kernels::Parallel::phase_1q(amps, q, 1.0, -1.0);
            break;
        }
    }
}

} // namespace qnet::sim
