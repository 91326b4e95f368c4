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

#include "qnet/circuit/circuit.hpp"
#include "qnet/sim/simulator.hpp"
#include "qnet/sim/state_vector.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

/**
 * @file
 * Gradients of f(params) = sum_q cotangent[q] <Z_q> with respect to every
 * parameter slot. Angles of the form scale * p + offset contribute
 * scale * df/dangle to slot p; slots used several times accumulate.
 * Returned vectors have params.size() entries.
 */
namespace qnet::autodiff {

struct ValueAndGradient {
    std::vector<double> values;   ///< <Z_q> of the output state
    std::vector<double> gradient; ///< d f / d params
};

/**
 * @brief Reverse-sweep (adjoint) differentiation.
 *
 * One forward execution, then one backward sweep that un-applies each gate
 * to both the state and the cotangent-weighted observable state.
 * Parameterized gates must be RX, RZ or ROT3. Noisy execution is rejected
 * with UnsupportedModeError.
 */
ValueAndGradient adjoint_value_and_gradient(
    const circuit::Circuit &circuit, std::span<const double> params,
    const sim::StateVector &input, std::span<const double> cotangent,
    const std::optional<sim::NoiseSpec> &noise = {});

std::vector<double> adjoint_gradient(const circuit::Circuit &circuit,
                                     std::span<const double> params,
                                     const sim::StateVector &input,
                                     std::span<const double> cotangent,
                                     const std::optional<sim::NoiseSpec> &noise = {});

/// Shift rule: (f(theta + pi/2) - f(theta - pi/2)) / 2 per angle occurrence.
/// With noise, each f is a `trajectories`-run average using the same seeds
/// for every evaluation (common random numbers).
std::vector<double> parameter_shift_gradient(
    const circuit::Circuit &circuit, std::span<const double> params,
    const sim::StateVector &input, std::span<const double> cotangent,
    const std::optional<sim::NoiseSpec> &noise = {}, std::size_t trajectories = 1);

/// Central differences, noise-free. Intended as a check, not for training.
std::vector<double> finite_difference_gradient(const circuit::Circuit &circuit,
                                               std::span<const double> params,
                                               const sim::StateVector &input,
                                               std::span<const double> cotangent,
                                               double step = 1e-5);

/// sum_q cotangent[q] * values[q]
double contract(std::span<const double> values, std::span<const double> cotangent);

} // namespace qnet::autodiff
