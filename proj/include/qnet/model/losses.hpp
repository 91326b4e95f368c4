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

#include "qnet/matrix.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qnet::model {

enum class LossKind { bce, cce, mse, token_cce };

std::string to_string(LossKind k);

/// Supervision for one example. `tags` and `mask` are used by token tasks
/// only; mask[i] is false at PAD positions.
struct Target {
    std::size_t label{0};
    double value{0.0};
    std::vector<std::size_t> tags;
    std::vector<bool> mask;
};

struct LossValue {
    double value{0.0};
    Matrix grad; ///< d loss / d output, same shape as the output
};

/**
 * Loss of a head output against its target.
 *
 * - bce: 1x1 logit, label in {0, 1}
 * - cce: 1xC logits, label < C
 * - mse: 1x1 prediction against `value`
 * - token_cce: nxC logits, mean cross-entropy over unmasked rows
 *
 * Cross-entropies go through log-sum-exp. Labels out of range and an
 * all-masked token target raise DataError.
 */
LossValue compute_loss(const Matrix &output, const Target &target, LossKind kind);

/// Predicted class of a sentence head (1 logit: threshold at 0).
std::size_t predict_label(std::span<const double> logits);

/// Row-wise argmax of a token head.
std::vector<std::size_t> predict_tags(const Matrix &logits);

/// Micro-averaged F1 over every tag except `o_tag`; 0 with no true positives.
double f1_non_o(std::span<const std::size_t> pred, std::span<const std::size_t> gold,
                std::size_t o_tag, const std::vector<bool> &mask);

/// Same, with counts pooled over several sequences.
struct F1Counts {
    std::size_t tp{0};
    std::size_t fp{0};
    std::size_t fn{0};

    void add(std::span<const std::size_t> pred, std::span<const std::size_t> gold,
             std::size_t o_tag, const std::vector<bool> &mask);
    [[nodiscard]] double f1() const;
};

} // namespace qnet::model
