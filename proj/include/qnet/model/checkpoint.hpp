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

#include <json.hpp>

#include <filesystem>

namespace qnet::model {

nlohmann::json config_to_json(const ModelConfig &config);
/// ConfigError on missing or malformed fields.
ModelConfig config_from_json(const nlohmann::json &j);

/// {"format": 1, "config": {...}, "params": {...}}; the head is stored as the
/// weight rows followed by one bias row.
nlohmann::json checkpoint_to_json(const ModelConfig &config, const ModelParams &params);

struct Checkpoint {
    ModelConfig config;
    ModelParams params;
};

/// DataError when the format or any tensor shape does not match the config.
Checkpoint checkpoint_from_json(const nlohmann::json &j);

void save_checkpoint(const std::filesystem::path &path, const ModelConfig &config,
                     const ModelParams &params);
Checkpoint load_checkpoint(const std::filesystem::path &path);

} // namespace qnet::model
