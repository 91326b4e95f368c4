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

#include "qnet/model/hybrid.hpp"

#include <cstddef>
#include <span>

namespace qnet::train {

struct AdamConfig {
    double beta1{0.9};
    double beta2{0.98};
    double eps{1e-7};
};

/// One bias-corrected Adam update of a flat tensor; `t` is the 1-based step.
void adam_update(std::span<double> params, std::span<const double> grads,
                 std::span<double> m, std::span<double> v, std::size_t t, double lr,
                 const AdamConfig &config = {});

/// Adam over every tensor of a model, with moments shaped like the parameters.
class Adam {
  public:
    Adam(const model::ModelParams &shape, AdamConfig config = {});

    /// TrainingError naming the tensor if any gradient entry is not finite;
    /// in that case nothing is updated.
    void step(model::ModelParams &params, const model::ModelParams &grads, double lr);

    [[nodiscard]] std::size_t steps() const { return t_; }
    [[nodiscard]] const model::ModelParams &first_moment() const { return m_; }
    [[nodiscard]] const model::ModelParams &second_moment() const { return v_; }

  private:
    AdamConfig config_;
    model::ModelParams m_;
    model::ModelParams v_;
    std::size_t t_{0};
};

} // namespace qnet::train
