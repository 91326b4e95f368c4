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
#include "qnet/sim/gates.hpp"

#include "qnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qnet::sim {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 8> kNames{{
    {GateKind::RX, "RX"},
    {GateKind::RZ, "RZ"},
    {GateKind::ROT3, "ROT3"},
    {GateKind::H, "H"},
    {GateKind::CNOT, "CNOT"},
    {GateKind::CPHASE, "CPHASE"},
    {GateKind::SWAP, "SWAP"},
    {GateKind::MCX, "MCX"},
}};

struct Arity {
    std::size_t targets;
    std::size_t controls; // SIZE_MAX: any number
};

Arity arity(GateKind kind) {
    switch (kind) {
    case GateKind::RX:
    case GateKind::RZ:
    case GateKind::ROT3:
    case GateKind::H:
        return {1, 0};
    case GateKind::CNOT:
    case GateKind::CPHASE:
        return {1, 1};
    case GateKind::SWAP:
        return {2, 0};
    case GateKind::MCX:
        return {1, SIZE_MAX};
    }
    return {0, 0};
}

} // namespace

std::string_view kind_name(GateKind kind) {
    for (const auto &[k, name] : kNames) {
        if (k == kind) {
            return name;
        }
    }
    return "?";
}

std::optional<GateKind> parse_kind(std::string_view name) {
    for (const auto &[k, n] : kNames) {
        if (n == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::size_t angle_count(GateKind kind) {
    switch (kind) {
    case GateKind::ROT3:
        return 3;
    case GateKind::RX:
    case GateKind::RZ:
    case GateKind::CPHASE:
        return 1;
    default:
        return 0;
    }
}

std::vector<std::size_t> GateOp::qubits() const {
    std::vector<std::size_t> all = targets;
    all.insert(all.end(), controls.begin(), controls.end());
    return all;
}

GateOp rx(std::size_t q, double theta) { return {GateKind::RX, {q}, {}, {theta}}; }
GateOp rz(std::size_t q, double theta) { return {GateKind::RZ, {q}, {}, {theta}}; }
GateOp rot3(std::size_t q, double alpha, double beta, double gamma) {
    return {GateKind::ROT3, {q}, {}, {alpha, beta, gamma}};
}
GateOp hadamard(std::size_t q) { return {GateKind::H, {q}, {}, {}}; }
GateOp cnot(std::size_t control, std::size_t target) {
    return {GateKind::CNOT, {target}, {control}, {}};
}
GateOp cphase(std::size_t control, std::size_t target, double theta) {
    return {GateKind::CPHASE, {target}, {control}, {theta}};
}
GateOp swap(std::size_t a, std::size_t b) {
    return {GateKind::SWAP, {a, b}, {}, {}};
}
GateOp mcx(std::vector<std::size_t> controls, std::size_t target) {
    return {GateKind::MCX, {target}, std::move(controls), {}};
}

void validate(const GateOp &gate, std::size_t num_qubits) {
    const auto name = std::string(kind_name(gate.kind));
    const auto [n_targets, n_controls] = arity(gate.kind);
    if (gate.targets.size() != n_targets) {
        throw ArgumentError(name + " expects " + std::to_string(n_targets) +
                            " target(s), got " +
                            std::to_string(gate.targets.size()));
    }
    if (n_controls != SIZE_MAX && gate.controls.size() != n_controls) {
        throw ArgumentError(name + " expects " + std::to_string(n_controls) +
                            " control(s), got " +
                            std::to_string(gate.controls.size()));
    }
    if (gate.angles.size() != angle_count(gate.kind)) {
        throw ArgumentError(name + " expects " +
                            std::to_string(angle_count(gate.kind)) +
                            " angle(s), got " +
                            std::to_string(gate.angles.size()));
    }
    auto qubits = gate.qubits();
    for (auto q : qubits) {
        if (q >= num_qubits) {
            throw IndexError(name + " qubit index " + std::to_string(q) +
                             " out of range for " + std::to_string(num_qubits) +
                             " qubits");
        }
    }
    std::sort(qubits.begin(), qubits.end());
    if (std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end()) {
        throw ArgumentError(name + " acts on a repeated qubit index");
    }
}

GateOp inverse(const GateOp &gate) {
    GateOp inv = gate;
    switch (gate.kind) {
    case GateKind::RX:
    case GateKind::RZ:
    case GateKind::CPHASE:
        inv.angles[0] = -gate.angles[0];
        break;
    case GateKind::ROT3:
        // (RZ(g) RY(b) RZ(a))^dagger = RZ(-a) RY(-b) RZ(-g)
        inv.angles = {-gate.angles[2], -gate.angles[1], -gate.angles[0]};
        break;
    default:
        break;
    }
    return inv;
}

Mat2 rx_matrix(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return {Complex{c, 0}, Complex{0, -s}, Complex{0, -s}, Complex{c, 0}};
}

Mat2 ry_matrix(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return {Complex{c, 0}, Complex{-s, 0}, Complex{s, 0}, Complex{c, 0}};
}

Mat2 rz_matrix(double theta) {
    return {std::polar(1.0, -theta / 2), Complex{0, 0}, Complex{0, 0},
            std::polar(1.0, theta / 2)};
}

Mat2 rot3_matrix(double alpha, double beta, double gamma) {
    return multiply(rz_matrix(gamma), multiply(ry_matrix(beta), rz_matrix(alpha)));
}

Mat2 hadamard_matrix() {
    const double r = 1.0 / std::numbers::sqrt2;
    return {Complex{r, 0}, Complex{r, 0}, Complex{r, 0}, Complex{-r, 0}};
}

Mat2 multiply(const Mat2 &a, const Mat2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

} // namespace qnet::sim
