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
#include "qnet/model/checkpoint.hpp"

#include "qnet/errors.hpp"

#include <fstream>

namespace qnet::model {

using nlohmann::json;

namespace {

json rows_of(const Matrix &m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows; ++r) {
        const auto row = m.row(r);
        out.push_back(std::vector<double>(row.begin(), row.end()));
    }
    return out;
}

std::vector<double> numbers(const json &j, const std::string &what, std::size_t expect) {
    if (!j.is_array() || j.size() != expect) {
        throw DataError("checkpoint " + what + ": expected " + std::to_string(expect) +
                        " values");
    }
    std::vector<double> out;
    out.reserve(expect);
    for (const auto &v : j) {
        if (!v.is_number()) throw DataError("checkpoint " + what + ": non-numeric entry");
        out.push_back(v.get<double>());
    }
    return out;
}

Matrix matrix_of(const json &j, const std::string &what, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows) {
        throw DataError("checkpoint " + what + ": expected " + std::to_string(rows) + " rows");
    }
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto row = numbers(j[r], what + " row " + std::to_string(r), cols);
        std::copy(row.begin(), row.end(), m.row(r).begin());
    }
    return m;
}

template <class T> T field(const json &j, const char *key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing config field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &) {
        throw ConfigError(std::string("config field '") + key + "' has the wrong type");
    }
}

} // namespace

json config_to_json(const ModelConfig &c) {
    return {{"model", to_string(c.kind)},       {"n", c.n},
            {"d", c.d},                         {"blocks", c.blocks},
            {"head", to_string(c.head)},        {"num_classes", c.num_classes},
            {"vocab_size", c.vocab_size},       {"ablation", to_string(c.ablation)}};
}

ModelConfig config_from_json(const json &j) {
    ModelConfig c;
    try {
        c.kind = parse_model_kind(field<std::string>(j, "model"));
        c.head = parse_head_kind(field<std::string>(j, "head"));
        c.ablation = parse_ablation(field<std::string>(j, "ablation"));
    } catch (const ArgumentError &e) {
        throw ConfigError(e.what());
    }
    c.n = field<std::size_t>(j, "n");
    c.d = field<std::size_t>(j, "d");
    c.blocks = field<std::size_t>(j, "blocks");
    c.num_classes = field<std::size_t>(j, "num_classes");
    c.vocab_size = field<std::size_t>(j, "vocab_size");
    return c;
}

json checkpoint_to_json(const ModelConfig &config, const ModelParams &p) {
    json head = rows_of(p.head_weight);
    head.push_back(p.head_bias);
    return {{"format", 1},
            {"config", config_to_json(config)},
            {"params",
             {{"embeddings", rows_of(p.embeddings)},
              {"scales", p.scales},
              {"qnet", p.qnet},
              {"head", head}}}};
}

Checkpoint checkpoint_from_json(const json &j) {
    if (!j.is_object() || j.value("format", 0) != 1) {
        throw DataError("checkpoint: unsupported or missing format");
    }
    if (!j.contains("config") || !j.contains("params")) {
        throw DataError("checkpoint: missing config or params");
    }
    Checkpoint ck;
    try {
        ck.config = config_from_json(j["config"]);
        validate(ck.config);
    } catch (const Error &e) {
        throw DataError(std::string("checkpoint config: ") + e.what());
    }
    const HybridModel model(ck.config);
    const auto ref = model.shaped_params();
    const auto &p = j["params"];
    for (const char *key : {"embeddings", "scales", "qnet", "head"}) {
        if (!p.contains(key)) throw DataError(std::string("checkpoint: missing params.") + key);
    }
    ck.params.embeddings =
        matrix_of(p["embeddings"], "embeddings", ref.embeddings.rows, ref.embeddings.cols);
    if (!p["scales"].is_array() || p["scales"].size() != ref.scales.size()) {
        throw DataError("checkpoint scales: expected " + std::to_string(ref.scales.size()) +
                        " vectors");
    }
    for (std::size_t b = 0; b < ref.scales.size(); ++b) {
        ck.params.scales.push_back(numbers(p["scales"][b], "scales", ref.scales[b].size()));
    }
    if (!p["qnet"].is_array() || p["qnet"].size() != ref.qnet.size()) {
        throw DataError("checkpoint qnet: expected " + std::to_string(ref.qnet.size()) +
                        " tables");
    }
    for (std::size_t b = 0; b < ref.qnet.size(); ++b) {
        ck.params.qnet.push_back(numbers(p["qnet"][b], "qnet", ref.qnet[b].size()));
    }
    const auto &head = p["head"];
    const auto rows = ref.head_weight.rows;
    if (!head.is_array() || head.size() != rows + 1) {
        throw DataError("checkpoint head: expected " + std::to_string(rows + 1) + " rows");
    }
    ck.params.head_weight = Matrix(rows, ref.head_weight.cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto row = numbers(head[r], "head row " + std::to_string(r), ref.head_weight.cols);
        std::copy(row.begin(), row.end(), ck.params.head_weight.row(r).begin());
    }
    ck.params.head_bias = numbers(head[rows], "head bias", ref.head_bias.size());
    return ck;
}

void save_checkpoint(const std::filesystem::path &path, const ModelConfig &config,
                     const ModelParams &params) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << checkpoint_to_json(config, params).dump(1) << '\n';
}

Checkpoint load_checkpoint(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw DataError("checkpoint " + path.string() + ": " + e.what());
    }
    return checkpoint_from_json(j);
}

} // namespace qnet::model
