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

#include "qnet/data/dataset.hpp"
#include "qnet/model/hybrid.hpp"
#include "qnet/sim/simulator.hpp"
#include "qnet/train/schedule.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace qnet::train {

struct TrainConfig {
    std::size_t epochs{5};
    std::size_t steps_per_epoch{100};
    std::size_t batch_size{128};
    double initial_lr{3e-4};
    std::size_t num_nodes{1};
    double alpha{1e-2};
    std::uint64_t seed{0};
    /// Depolarizing probability; 0 trains on the exact (adjoint) path.
    double noise_p{0.0};
    std::size_t trajectories{8};
};

/// ArgumentError on zero counts or p outside [0, 1].
void validate(const TrainConfig &config);
LrSchedule schedule_of(const TrainConfig &config);

/// Angles U[-0.1, 0.1], embeddings N(0, 0.5), head N(0, d^-1/2) with zero
/// bias, scale vectors 1.
model::ModelParams initialize(const model::HybridModel &model, std::uint64_t seed);

struct EvalMetrics {
    std::size_t count{0};
    double loss{0.0};
    double accuracy{0.0}; ///< sentence or per-token accuracy; unused for regression
    double f1{0.0};       ///< non-O F1, token head only
    double mse{0.0};      ///< regression only
};

nlohmann::json to_json(const EvalMetrics &m, model::HeadKind head);

/// Noise-free evaluation over all examples.
EvalMetrics evaluate(const model::HybridModel &model, const model::ModelParams &params,
                     const std::vector<data::Example> &examples);

struct StepRecord {
    std::size_t step{0}; ///< 1-based
    std::size_t epoch{0}; ///< 1-based
    double lr{0.0};
    double loss{0.0};     ///< mean loss of the step's batch
    std::optional<nlohmann::json> eval;
};

nlohmann::json to_json(const StepRecord &r);

struct TrainResult {
    model::ModelParams params;
    std::vector<StepRecord> history;
};

/// DataError on examples that do not fit the model (checked before step 1).
void check_examples(const model::HybridModel &model, const std::vector<data::Example> &examples);

/**
 * Runs epochs * steps_per_epoch Adam steps on batches drawn with
 * replacement. The last step of every epoch carries train (and, when
 * given, test) metrics. `on_step` sees each record as it is produced.
 */
TrainResult train(const model::HybridModel &model, const std::vector<data::Example> &train_set,
                  const std::vector<data::Example> &test_set, const TrainConfig &config,
                  const std::function<void(const StepRecord &)> &on_step = {},
                  std::optional<model::ModelParams> initial = std::nullopt);

} // namespace qnet::train
