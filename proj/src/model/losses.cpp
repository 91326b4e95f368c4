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
#include "qnet/model/losses.hpp"

#include "qnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qnet::model {

namespace {

// log sum exp(z) - z[label], and softmax(z) - onehot into grad.
double softmax_xent(std::span<const double> z, std::size_t label,
                    std::span<double> grad, double weight) {
    const double zmax = *std::max_element(z.begin(), z.end());
    double sum = 0;
    for (double v : z) sum += std::exp(v - zmax);
    const double lse = zmax + std::log(sum);
    for (std::size_t k = 0; k < z.size(); ++k) {
        grad[k] = weight * (std::exp(z[k] - lse) - (k == label ? 1.0 : 0.0));
    }
    return lse - z[label];
}

void check_label(std::size_t label, std::size_t classes) {
    if (label >= classes) {
        throw DataError("label " + std::to_string(label) + " outside [0, " +
                        std::to_string(classes) + ")");
    }
}

} // namespace

std::string to_string(LossKind k) {
    switch (k) {
    case LossKind::bce:
        return "bce";
    case LossKind::cce:
        return "cce";
    case LossKind::mse:
        return "mse";
    case LossKind::token_cce:
        return "token_cce";
    }
    return "bce";
}

LossValue compute_loss(const Matrix &output, const Target &target, LossKind kind) {
    LossValue out{0.0, Matrix(output.rows, output.cols)};
    switch (kind) {
    case LossKind::bce: {
        if (output.data.size() != 1) {
            throw ArgumentError("bce expects a single logit");
        }
        check_label(target.label, 2);
        const double z = output.data[0];
        const double y = static_cast<double>(target.label);
        out.value = std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
        out.grad.data[0] = 1.0 / (1.0 + std::exp(-z)) - y;
        break;
    }
    case LossKind::cce: {
        if (output.rows != 1) {
            throw ArgumentError("cce expects one row of logits");
        }
        check_label(target.label, output.cols);
        out.value = softmax_xent(output.row(0), target.label, out.grad.row(0), 1.0);
        break;
    }
    case LossKind::mse: {
        if (output.data.size() != 1) {
            throw ArgumentError("mse expects a single prediction");
        }
        const double r = output.data[0] - target.value;
        out.value = r * r;
        out.grad.data[0] = 2 * r;
        break;
    }
    case LossKind::token_cce: {
        if (target.tags.size() != output.rows || target.mask.size() != output.rows) {
            throw ArgumentError("token targets do not match the output length");
        }
        const auto live = static_cast<std::size_t>(
            std::count(target.mask.begin(), target.mask.end(), true));
        if (live == 0) {
            throw DataError("token loss over a sequence with every position masked");
        }
        const double w = 1.0 / static_cast<double>(live);
        for (std::size_t i = 0; i < output.rows; ++i) {
            if (!target.mask[i]) continue;
            check_label(target.tags[i], output.cols);
            out.value += w * softmax_xent(output.row(i), target.tags[i], out.grad.row(i), w);
        }
        break;
    }
    }
    return out;
}

std::size_t predict_label(std::span<const double> logits) {
    if (logits.size() == 1) {
        return logits[0] > 0 ? 1 : 0;
    }
    return static_cast<std::size_t>(
        std::max_element(logits.begin(), logits.end()) - logits.begin());
}

std::vector<std::size_t> predict_tags(const Matrix &logits) {
    std::vector<std::size_t> out(logits.rows);
    for (std::size_t i = 0; i < logits.rows; ++i) {
        const auto r = logits.row(i);
        out[i] = static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
    }
    return out;
}

void F1Counts::add(std::span<const std::size_t> pred, std::span<const std::size_t> gold,
                   std::size_t o_tag, const std::vector<bool> &mask) {
    if (pred.size() != gold.size()) {
        throw ArgumentError("prediction and gold lengths differ");
    }
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (i < mask.size() && !mask[i]) continue;
        const bool p = pred[i] != o_tag;
        const bool g = gold[i] != o_tag;
        if (p && g && pred[i] == gold[i]) {
            ++tp;
        } else {
            if (p) ++fp;
            if (g) ++fn;
        }
    }
}

double F1Counts::f1() const {
    if (tp == 0) return 0.0;
    const double t = static_cast<double>(tp);
    return 2 * t / (2 * t + static_cast<double>(fp) + static_cast<double>(fn));
}

double f1_non_o(std::span<const std::size_t> pred, std::span<const std::size_t> gold,
                std::size_t o_tag, const std::vector<bool> &mask) {
    F1Counts c;
    c.add(pred, gold, o_tag, mask);
    return c.f1();
}

} // namespace qnet::model
