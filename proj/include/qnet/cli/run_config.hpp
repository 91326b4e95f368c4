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
#include "qnet/train/trainer.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

/**
 * @file
 * Run configuration shared by every command. A configuration is resolved in
 * three layers: command defaults, an optional JSON file, and `--key value`
 * overrides. Field names are identical in all three.
 */
namespace qnet::cli {

struct RunConfig {
    std::string model{"qnet"};
    std::size_t n{8};
    std::size_t d{2};
    std::size_t blocks{1};
    std::string head{"auto"}; ///< auto picks token_classify for token-level data
    std::string dataset;      ///< empty selects the synthetic task
    std::string format;       ///< empty infers csv/jsonl/conll from the extension
    std::string synthetic{"keyword_presence"};
    std::size_t synthetic_size{400};
    double test_fraction{data::kTestFraction};
    std::string ablation{"full"};

    std::size_t epochs{5};
    std::size_t steps_per_epoch{100};
    std::size_t batch_size{128};
    double lr{3e-4};
    std::size_t num_nodes{1};
    double alpha{1e-2};
    double noise_p{0.0};
    std::size_t trajectories{8};
    std::uint64_t seed{0};
    std::string out{"runs"};

    std::vector<double> p_list{0.1, 0.5};
    std::vector<std::size_t> sweep_n;
    std::vector<std::size_t> sweep_d;
    std::size_t gradcheck_instances{5};
};

/// Defaults for `noise-sweep`: one epoch of batch-8 steps.
RunConfig noise_sweep_defaults();

nlohmann::json to_json(const RunConfig &c);

/// ConfigError naming the offending field on unknown keys or wrong types.
RunConfig from_json(const nlohmann::json &j, const RunConfig &base = {});

/// Applies string overrides; values are converted by the field's type.
/// Lists accept comma-separated values or a JSON array.
RunConfig apply_overrides(const RunConfig &base,
                          const std::map<std::string, std::string> &overrides);

/// ConfigError with a field-level message when any precondition fails.
void validate(const RunConfig &c);
/// validate plus the simulator's qubit cap on n*d; analysis does not need it.
void validate_simulable(const RunConfig &c);

train::TrainConfig train_config(const RunConfig &c);

struct LoadedData {
    data::Prepared prepared;
    model::ModelConfig model;
};

/// Reads or synthesizes the dataset and derives the model configuration.
LoadedData load_data(const RunConfig &c);

} // namespace qnet::cli
