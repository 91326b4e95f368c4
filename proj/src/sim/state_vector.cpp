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
#include "qnet/sim/state_vector.hpp"

#include "qnet/errors.hpp"

#include <bit>
#include <numeric>
#include <string>

namespace qnet::sim {

void check_capacity(std::size_t num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw CapacityError("qubit count " + std::to_string(num_qubits) +
                            " outside the supported range [1, " +
                            std::to_string(kMaxQubits) + "]");
    }
}

StateVector StateVector::zero(std::size_t num_qubits) {
    check_capacity(num_qubits);
    std::vector<Complex> amps(std::size_t{1} << num_qubits);
    amps[0] = 1.0;
    return {num_qubits, std::move(amps)};
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const auto len = amplitudes.size();
    if (len < 2 || !std::has_single_bit(len)) {
        throw ArgumentError("amplitude array length " + std::to_string(len) +
                            " is not a power of two >= 2");
    }
    const auto n = static_cast<std::size_t>(std::countr_zero(len));
    check_capacity(n);
    return {n, std::move(amplitudes)};
}

double StateVector::norm_squared() const {
    return std::accumulate(
        amplitudes_.begin(), amplitudes_.end(), 0.0,
        [](double acc, const Complex &a) { return acc + std::norm(a); });
}

StateVector init_zero(std::size_t num_qubits) {
    return StateVector::zero(num_qubits);
}

} // namespace qnet::sim
