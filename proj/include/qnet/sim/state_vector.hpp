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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qnet::sim {

using Complex = std::complex<double>;

/// 2^26 complex doubles is 1 GiB; anything larger is refused.
inline constexpr std::size_t kMaxQubits = 26;

/**
 * @brief Dense pure-state register.
 *
 * Qubit q corresponds to bit q of the basis index (qubit 0 is the least
 * significant bit). The object exclusively owns its amplitudes.
 */
class StateVector {
  public:
    /// |0...0> on `num_qubits` qubits; throws CapacityError outside [1, 26].
    static StateVector zero(std::size_t num_qubits);

    /// Wraps an existing amplitude array whose length must be a power of two.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amplitudes_.size(); }

    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amplitudes_; }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }

    Complex &operator[](std::size_t i) { return amplitudes_[i]; }
    const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }

    [[nodiscard]] double norm_squared() const;

    bool operator==(const StateVector &) const = default;

  private:
    StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes)
        : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

    std::size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Same as StateVector::zero.
StateVector init_zero(std::size_t num_qubits);

/// Throws CapacityError naming the limit unless 1 <= num_qubits <= kMaxQubits.
void check_capacity(std::size_t num_qubits);

} // namespace qnet::sim
