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
#include "qnet/matrix.hpp"
#include "qnet/sim/simulator.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

/**
 * @file
 * Construction of the QNet encoder circuit.
 *
 * Token i (0-based) and embedding dimension j map to qubit i*d + j. A block's
 * parameter table holds 9d angles: d (alpha, beta, gamma) triples for the
 * mixture rotation, then d triples for the first feedforward rotation layer,
 * then d triples for the second. Feedforward triples are indexed by
 * dimension and shared by all tokens.
 */
namespace qnet::model {

struct QNetConfig {
    std::size_t n{1};      ///< tokens
    std::size_t d{1};      ///< qubits per token
    std::size_t blocks{1}; ///< repeated mixture + feedforward blocks

    bool operator==(const QNetConfig &) const = default;
};

enum class Ablation { full, mixture_only, feedforward_only };

std::string to_string(Ablation a);
Ablation parse_ablation(const std::string &s);

/// ArgumentError on zero sizes. Circuit builders only need this.
void validate_shape(const QNetConfig &config);
/// validate_shape plus CapacityError when n*d exceeds the simulator cap.
void validate(const QNetConfig &config);

[[nodiscard]] inline std::size_t num_qubits(const QNetConfig &c) { return c.n * c.d; }

/// Qubit holding dimension `dim` of token `token` (both 0-based).
[[nodiscard]] inline std::size_t qubit_index(const QNetConfig &c, std::size_t token,
                                             std::size_t dim) {
    return token * c.d + dim;
}

/// Trainable circuit angles: 9 * d * blocks.
[[nodiscard]] std::size_t count_parameters(const QNetConfig &config);

/// Offsets into the parameter table.
struct ParameterLayout {
    static std::size_t block_base(const QNetConfig &c, std::size_t block) {
        return 9 * c.d * block;
    }
    static std::size_t mixture(const QNetConfig &c, std::size_t block,
                               std::size_t dim) {
        return block_base(c, block) + 3 * dim;
    }
    static std::size_t feedforward(const QNetConfig &c, std::size_t block,
                                   std::size_t layer, std::size_t dim) {
        return block_base(c, block) + 3 * c.d * (1 + layer) + 3 * dim;
    }
};

/// Positional phase of token `token`: token * pi / n, spread over [0, pi).
[[nodiscard]] double positional_angle(const QNetConfig &c, std::size_t token);

/// RX(x[i][j]) then RZ(i pi / n) on every qubit, as constants. Layer `enc`.
circuit::Circuit build_encoding(const QNetConfig &config, const Matrix &x);

/// As build_encoding, but the RX angle of qubit k reads params[input_offset + k].
circuit::Circuit build_encoding_symbolic(const QNetConfig &config,
                                         std::size_t input_offset);

/// Per dimension: QFT over its n token qubits, the shared ROT3 on each, then
/// the inverse QFT. Layer `mix[block]`.
///
/// The bit-reversal swaps are left out of both transforms. They permute the
/// qubits and the product of identical rotations is invariant under that
/// permutation, so the two swap networks cancel and the unitary is unchanged.
circuit::Circuit build_mixture_layer(const QNetConfig &config, std::size_t block);

/// Per token: ROT3 layer 1, G, ROT3 layer 2, G, where
/// G = H^d MCX(controls: dims 0..d-2, target: dim d-1) H^d. Layer `ff[block]`.
circuit::Circuit build_feedforward_layer(const QNetConfig &config,
                                         std::size_t block);

/// G on one token's qubits (constant gates only).
circuit::Circuit build_g_operator(const QNetConfig &config, std::size_t token);

/// Encoding followed by `blocks` x (mixture; feedforward).
circuit::Circuit build_qnet(const QNetConfig &config, const Matrix &x,
                            Ablation ablation = Ablation::full);

/// Full circuit whose parameter vector is [table (9 d blocks) | inputs (n d)].
circuit::Circuit build_qnet_symbolic(const QNetConfig &config,
                                     Ablation ablation = Ablation::full);

/// Flatten / reshape between an n x d matrix and qubit order.
std::vector<double> flatten(const Matrix &m);
Matrix reshape(std::span<const double> flat, std::size_t n, std::size_t d);

/// Concatenation [params | flatten(x)] used with build_qnet_symbolic.
std::vector<double> join_inputs(std::span<const double> params, const Matrix &x);

/// <Z> of qubit (i, j) at entry (i, j).
Matrix qnet_forward(const QNetConfig &config, const Matrix &x,
                    std::span<const double> params,
                    const std::optional<sim::NoiseSpec> &noise = {},
                    Ablation ablation = Ablation::full,
                    std::size_t trajectories = 1);

} // namespace qnet::model
