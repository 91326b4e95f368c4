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

#include "qnet/sim/state_vector.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace qnet::sim {

enum class GateKind { RX, RZ, ROT3, H, CNOT, CPHASE, SWAP, MCX };

std::string_view kind_name(GateKind kind);
std::optional<GateKind> parse_kind(std::string_view name);

/// Number of angles the kind carries (ROT3: 3, RX/RZ/CPHASE: 1, others: 0).
std::size_t angle_count(GateKind kind);

/**
 * @brief One gate with concrete angles.
 *
 * Conventions: RX(t) = exp(-i t X/2), RZ(t) = exp(-i t Z/2),
 * ROT3(a, b, g) = RZ(g) RY(b) RZ(a) (RZ(a) acts first),
 * CPHASE(t) multiplies |11> on (control, target) by exp(i t).
 * MCX with no controls is a plain X.
 */
struct GateOp {
    GateKind kind{GateKind::H};
    std::vector<std::size_t> targets;
    std::vector<std::size_t> controls;
    std::vector<double> angles;

    /// Targets followed by controls.
    [[nodiscard]] std::vector<std::size_t> qubits() const;

    bool operator==(const GateOp &) const = default;
};

GateOp rx(std::size_t q, double theta);
GateOp rz(std::size_t q, double theta);
GateOp rot3(std::size_t q, double alpha, double beta, double gamma);
GateOp hadamard(std::size_t q);
GateOp cnot(std::size_t control, std::size_t target);
GateOp cphase(std::size_t control, std::size_t target, double theta);
GateOp swap(std::size_t a, std::size_t b);
GateOp mcx(std::vector<std::size_t> controls, std::size_t target);

/// Throws IndexError for out-of-range qubits, ArgumentError for repeated
/// qubits or a wrong target/control/angle arity.
void validate(const GateOp &gate, std::size_t num_qubits);

/// The adjoint gate.
GateOp inverse(const GateOp &gate);

using Mat2 = std::array<Complex, 4>; // row-major

Mat2 rx_matrix(double theta);
Mat2 ry_matrix(double theta);
Mat2 rz_matrix(double theta);
Mat2 rot3_matrix(double alpha, double beta, double gamma);
Mat2 hadamard_matrix();
Mat2 multiply(const Mat2 &a, const Mat2 &b);

} // namespace qnet::sim
