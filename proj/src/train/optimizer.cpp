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
#include "qnet/train/optimizer.hpp"

#include "qnet/errors.hpp"

#include <cmath>
#include <vector>

namespace qnet::train {

void adam_update(std::span<double> params, std::span<const double> grads,
                 std::span<double> m, std::span<double> v, std::size_t t, double lr,
                 const AdamConfig &c) {
    if (grads.size() != params.size() || m.size() != params.size() ||
        v.size() != params.size()) {
        throw ArgumentError("Adam tensors differ in size");
    }
    const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(t));
    const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(t));
    for (std::size_t k = 0; k < params.size(); ++k) {
        m[k] = c.beta1 * m[k] + (1 - c.beta1) * grads[k];
        v[k] = c.beta2 * v[k] + (1 - c.beta2) * grads[k] * grads[k];
        const double mhat = m[k] / bc1;
        const double vhat = v[k] / bc2;
        params[k] -= lr * mhat / (std::sqrt(vhat) + c.eps);
    }
}

namespace {

model::ModelParams zeros_like(const model::ModelParams &p) {
    auto z = p;
    model::for_each_group(z, [](const std::string &, std::span<double> s) {
        std::fill(s.begin(), s.end(), 0.0);
    });
    return z;
}

} // namespace

Adam::Adam(const model::ModelParams &shape, AdamConfig config)
    : config_(config), m_(zeros_like(shape)), v_(zeros_like(shape)) {}

void Adam::step(model::ModelParams &params, const model::ModelParams &grads, double lr) {
    model::for_each_group(grads, [](const std::string &name, std::span<const double> g) {
        for (double x : g) {
            if (!std::isfinite(x)) {
                throw TrainingError("non-finite gradient in " + name);
            }
        }
    });
    std::vector<std::span<const double>> g;
    std::vector<std::span<double>> m, v;
    model::for_each_group(grads, [&](const std::string &, std::span<const double> s) { g.push_back(s); });
    model::for_each_group(m_, [&](const std::string &, std::span<double> s) { m.push_back(s); });
    model::for_each_group(v_, [&](const std::string &, std::span<double> s) { v.push_back(s); });
    ++t_;
    std::size_t k = 0;
    model::for_each_group(params, [&](const std::string &name, std::span<double> p) {
        if (k >= g.size() || g[k].size() != p.size()) {
            throw ArgumentError("gradient shape differs at " + name);
        }
        adam_update(p, g[k], m[k], v[k], t_, lr, config_);
        ++k;
    });
}

} // namespace qnet::train
