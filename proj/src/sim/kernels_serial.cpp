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
#include "qnet/sim/kernels.hpp"

namespace qnet::sim::kernels {

void Serial::matrix_1q(std::span<Complex> amps, std::size_t q, const Mat2 &m) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & bit) != 0) {
            continue;
        }
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | bit];
        amps[i] = m[0] * a0 + m[1] * a1;
        amps[i | bit] = m[2] * a0 + m[3] * a1;
    }
}

void Serial::phase_1q(std::span<Complex> amps, std::size_t q, Complex d0,
                      Complex d1) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] *= (i & bit) != 0 ? d1 : d0;
    }
}

void Serial::controlled_phase(std::span<Complex> amps, std::size_t control,
                              std::size_t target, Complex phase) {
    const std::size_t mask = (std::size_t{1} << control) | (std::size_t{1} << target);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == mask) {
            amps[i] *= phase;
        }
    }
}

void Serial::swap(std::span<Complex> amps, std::size_t a, std::size_t b) {
    const std::size_t ba = std::size_t{1} << a;
    const std::size_t bb = std::size_t{1} << b;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & ba) != 0 && (i & bb) == 0) {
            std::swap(amps[i], amps[(i & ~ba) | bb]);
        }
    }
}

void Serial::mcx(std::span<Complex> amps, std::uint64_t control_mask,
                 std::size_t target) {
    const std::size_t bit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & bit) == 0 && (i & control_mask) == control_mask) {
            std::swap(amps[i], amps[i | bit]);
        }
    }
}

void Serial::pauli_y(std::span<Complex> amps, std::size_t q) {
    const Mat2 y{Complex{0, 0}, Complex{0, -1}, Complex{0, 1}, Complex{0, 0}};
    matrix_1q(amps, q, y);
}

double Serial::expectation_z(std::span<const Complex> amps, std::size_t q) {
    const std::size_t bit = std::size_t{1} << q;
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += (i & bit) != 0 ? -std::norm(amps[i]) : std::norm(amps[i]);
    }
    return acc;
}

std::vector<double> Serial::expectation_z_all(std::span<const Complex> amps,
                                              std::size_t num_qubits) {
    std::vector<double> out(num_qubits);
    for (std::size_t q = 0; q < num_qubits; ++q) {
        out[q] = expectation_z(amps, q);
    }
    return out;
}

Complex Serial::inner(std::span<const Complex> a, std::span<const Complex> b) {
    Complex acc{0, 0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

void Serial::weighted_z(std::span<const Complex> in,
                        std::span<const double> weights, std::span<Complex> out) {
    for (std::size_t i = 0; i < in.size(); ++i) {
        double w = 0.0;
        for (std::size_t q = 0; q < weights.size(); ++q) {
            w += ((i >> q) & 1U) != 0 ? -weights[q] : weights[q];
        }
        out[i] = w * in[i];
    }
}

} // namespace qnet::sim::kernels
