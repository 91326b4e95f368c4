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
#include "qnet/model/losses.hpp"
#include "qnet/model/qnet_circuit.hpp"
#include "qnet/sim/simulator.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

/**
 * @file
 * Classical wrapper around the QNet circuit: embedding lookup, optional
 * residual blocks (ResQNet), task heads and the backward pass that chains
 * head, normalization and circuit gradients.
 */
namespace qnet::model {

enum class ModelKind { qnet, resqnet };
enum class HeadKind { sentence_classify, regress, token_classify };

std::string to_string(ModelKind k);
std::string to_string(HeadKind k);
ModelKind parse_model_kind(const std::string &s);
HeadKind parse_head_kind(const std::string &s);

struct ModelConfig {
    ModelKind kind{ModelKind::qnet};
    std::size_t n{4};
    std::size_t d{2};
    std::size_t blocks{1};
    HeadKind head{HeadKind::sentence_classify};
    std::size_t num_classes{2}; ///< classes or tags; ignored by regress
    std::size_t vocab_size{2};
    Ablation ablation{Ablation::full};

    bool operator==(const ModelConfig &) const = default;
};

/// ArgumentError on inconsistent fields.
void validate(const ModelConfig &config);

/// Circuit angles plus scale vectors: 9 d blocks, plus d per residual block.
std::size_t encoder_parameter_count(ModelKind kind, std::size_t d, std::size_t blocks);

/// Width of the head output: 1 for binary and regression, C otherwise.
std::size_t head_outputs(const ModelConfig &config);
LossKind loss_kind(const ModelConfig &config);

/**
 * Trainable tensors.
 *
 * `qnet` holds one circuit table for the plain QNet (all blocks inside one
 * circuit) or one depth-1 table per residual block. `scales` is empty for
 * the plain QNet. Head weights are (n*d) x out for sentence heads and
 * d x C for the token head, shared across positions.
 */
struct ModelParams {
    Matrix embeddings;
    std::vector<std::vector<double>> scales;
    std::vector<std::vector<double>> qnet;
    Matrix head_weight;
    std::vector<double> head_bias;

    bool operator==(const ModelParams &) const = default;
};

/// Visits every tensor as a named flat span, in a fixed order.
void for_each_group(ModelParams &p,
                    const std::function<void(const std::string &, std::span<double>)> &fn);
void for_each_group(const ModelParams &p,
                    const std::function<void(const std::string &, std::span<const double>)> &fn);

/// dst += src, element-wise over identically shaped parameters.
void accumulate(ModelParams &dst, const ModelParams &src, double scale = 1.0);

enum class GradientMethod { adjoint, parameter_shift };

struct Execution {
    std::optional<sim::NoiseSpec> noise;
    std::size_t trajectories{1};
    GradientMethod method{GradientMethod::adjoint};
};

/// Per-token standardization over the embedding axis with eps = 1e-5.
inline constexpr double kNormEps = 1e-5;
void normalize_rows(const Matrix &in, Matrix &out, std::vector<double> &inv_std);
/// Gradient through normalize_rows given its output and 1/sqrt(var + eps).
Matrix normalize_rows_backward(const Matrix &normalized, const std::vector<double> &inv_std,
                               const Matrix &grad_out);

class HybridModel {
  public:
    explicit HybridModel(ModelConfig config);

    [[nodiscard]] const ModelConfig &config() const { return config_; }

    /// Zero-filled parameters of the right shapes (scales filled with 1).
    [[nodiscard]] ModelParams shaped_params() const;
    /// ArgumentError naming the first tensor whose shape is wrong.
    void check(const ModelParams &params) const;

    /// Circuit angles plus scale vectors; embeddings and head excluded.
    [[nodiscard]] std::size_t encoder_parameter_count() const;

    /// Circuit used by each quantum block; its parameters are [table | inputs].
    [[nodiscard]] const circuit::Circuit &block_circuit() const { return circuit_; }

    /// Head output: 1 x out for sentence heads, n x C for the token head.
    Matrix forward(const ModelParams &params, std::span<const std::size_t> ids,
                   const Execution &exec = {}) const;

    struct Result {
        double loss{0.0};
        Matrix output;
        ModelParams grad;
    };
    Result loss_and_gradient(const ModelParams &params, std::span<const std::size_t> ids,
                             const Target &target, const Execution &exec = {}) const;

  private:
    struct Trace;
    Matrix run(const ModelParams &params, std::span<const std::size_t> ids,
               const Execution &exec, Trace *trace) const;
    [[nodiscard]] QNetConfig circuit_config() const;

    ModelConfig config_;
    circuit::Circuit circuit_;
};

} // namespace qnet::model
