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
#include "qnet/sim/state_vector.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace qnet::sim {

/// Per-trajectory random stream.
using Rng = std::mt19937_64;

/// Single-qubit depolarizing noise applied after every gate.
struct NoiseSpec {
    double p{0.0};
    std::uint64_t seed{0};
};

/// Throws ArgumentError unless 0 <= p <= 1.
void validate(const NoiseSpec &noise);

/// Validates and applies `gate` in place (OpenMP kernels).
void apply_gate(StateVector &state, const GateOp &gate);

/// Same contract as apply_gate, through the serial reference kernels.
void apply_gate_reference(StateVector &state, const GateOp &gate);

/// Gate list of the quantum Fourier transform over `qubits`, where qubits[0]
/// is the least significant bit of the register value. With `bit_reversal`
/// the final swaps are included and the unitary is exactly the DFT matrix
/// y_k = N^{-1/2} sum_j exp(2 pi i jk/N) x_j; `inverse` yields the adjoint.
std::vector<GateOp> qft_gates(std::span<const std::size_t> qubits, bool inverse,
                              bool bit_reversal = true);

/// Applies the (inverse) QFT, bit-reversal included.
void apply_qft(StateVector &state, std::span<const std::size_t> qubits,
               bool inverse);

/// <Z_q> for every qubit q.
std::vector<double> pauli_z_expectations(const StateVector &state);

/// One Monte Carlo trajectory of the depolarizing channel on each listed
/// qubit: identity with probability 1-p, otherwise X, Y or Z (p/3 each).
void apply_depolarizing_trajectory(StateVector &state,
                                   std::span<const std::size_t> qubits,
                                   double p, Rng &rng);

} // namespace qnet::sim
