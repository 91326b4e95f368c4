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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

/**
 * @file
 * Amplitude kernels. `Serial` is the plain reference implementation that
 * walks every basis index; `Parallel` enumerates only the affected index
 * pairs and splits them across OpenMP threads. Both expose the same static
 * interface so higher layers can be instantiated with either.
 *
 * Reductions in `Parallel` use a fixed chunk size independent of the thread
 * count, so results are reproducible run to run.
 */
namespace qnet::sim::kernels {

struct Serial {
    static void matrix_1q(std::span<Complex> amps, std::size_t q, const Mat2 &m);
    static void phase_1q(std::span<Complex> amps, std::size_t q, Complex d0,
                         Complex d1);
    static void controlled_phase(std::span<Complex> amps, std::size_t control,
                                 std::size_t target, Complex phase);
    static void swap(std::span<Complex> amps, std::size_t a, std::size_t b);
    /// Flip `target` on every basis state whose bits cover `control_mask`.
    static void mcx(std::span<Complex> amps, std::uint64_t control_mask,
                    std::size_t target);
    static void pauli_y(std::span<Complex> amps, std::size_t q);

    static double expectation_z(std::span<const Complex> amps, std::size_t q);
    static std::vector<double> expectation_z_all(std::span<const Complex> amps,
                                                 std::size_t num_qubits);
    /// <a|b>
    static Complex inner(std::span<const Complex> a, std::span<const Complex> b);
    /// out = sum_q weights[q] Z_q |in>
    static void weighted_z(std::span<const Complex> in,
                           std::span<const double> weights,
                           std::span<Complex> out);
};

struct Parallel {
    static void matrix_1q(std::span<Complex> amps, std::size_t q, const Mat2 &m);
    static void phase_1q(std::span<Complex> amps, std::size_t q, Complex d0,
                         Complex d1);
    static void controlled_phase(std::span<Complex> amps, std::size_t control,
                                 std::size_t target, Complex phase);
    static void swap(std::span<Complex> amps, std::size_t a, std::size_t b);
    static void mcx(std::span<Complex> amps, std::uint64_t control_mask,
                    std::size_t target);
    static void pauli_y(std::span<Complex> amps, std::size_t q);

    static double expectation_z(std::span<const Complex> amps, std::size_t q);
    static std::vector<double> expectation_z_all(std::span<const Complex> amps,
                                                 std::size_t num_qubits);
    static Complex inner(std::span<const Complex> a, std::span<const Complex> b);
    static void weighted_z(std::span<const Complex> in,
                           std::span<const double> weights,
                           std::span<Complex> out);
};

/// Registers smaller than this run single-threaded even in `Parallel`.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 12;

/// Apply a validated gate through the chosen backend.
template <class Backend>
void apply(std::span<Complex> amps, const GateOp &gate) {
    switch (gate.kind) {
    case GateKind::RX:
        Backend::matrix_1q(amps, gate.targets[0], rx_matrix(gate.angles[0]));
        break;
    case GateKind::RZ: {
        const Mat2 m = rz_matrix(gate.angles[0]);
        Backend::phase_1q(amps, gate.targets[0], m[0], m[3]);
        break;
    }
    case GateKind::ROT3:
        Backend::matrix_1q(
            amps, gate.targets[0],
            rot3_matrix(gate.angles[0], gate.angles[1], gate.angles[2]));
        break;
    case GateKind::H:
        Backend::matrix_1q(amps, gate.targets[0], hadamard_matrix());
        break;
    case GateKind::CNOT:
        Backend::mcx(amps, std::uint64_t{1} << gate.controls[0], gate.targets[0]);
        break;
    case GateKind::CPHASE:
        Backend::controlled_phase(amps, gate.controls[0], gate.targets[0],
                                  std::polar(1.0, gate.angles[0]));
        break;
    case GateKind::SWAP:
        Backend::swap(amps, gate.targets[0], gate.targets[1]);
        break;
    case GateKind::MCX: {
        std::uint64_t mask = 0;
        for (auto c : gate.controls) {
            mask |= std::uint64_t{1} << c;
        }
        Backend::mcx(amps, mask, gate.targets[0]);
        break;
    }
    }
}

} // namespace qnet::sim::kernels
