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
#include "qnet/cli/run_config.hpp"

#include "qnet/errors.hpp"
#include "qnet/sim/state_vector.hpp"

#include <functional>
#include <sstream>

namespace qnet::cli {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string &field, const std::string &what) {
    throw ConfigError("field '" + field + "': " + what);
}

std::size_t as_count(const std::string &field, const json &v) {
    if (!v.is_number_unsigned()) {
        field_error(field, "expected a non-negative integer, got " + v.dump());
    }
    return v.get<std::size_t>();
}

double as_real(const std::string &field, const json &v) {
    if (!v.is_number()) {
        field_error(field, "expected a number, got " + v.dump());
    }
    return v.get<double>();
}

std::string as_text(const std::string &field, const json &v) {
    if (!v.is_string()) {
        field_error(field, "expected a string, got " + v.dump());
    }
    return v.get<std::string>();
}

template <class T, class F>
std::vector<T> as_list(const std::string &field, const json &v, F element) {
    if (!v.is_array()) {
        field_error(field, "expected an array, got " + v.dump());
    }
    std::vector<T> out;
    for (const auto &e : v) {
        out.push_back(element(field, e));
    }
    return out;
}

using Setter = std::function<void(RunConfig &, const std::string &, const json &)>;

template <class M>
Setter count_field(M RunConfig::*member) {
    return [member](RunConfig &c, const std::string &f, const json &v) {
        c.*member = static_cast<M>(as_count(f, v));
    };
}

Setter real_field(double RunConfig::*member) {
    return [member](RunConfig &c, const std::string &f, const json &v) {
        c.*member = as_real(f, v);
    };
}

Setter text_field(std::string RunConfig::*member) {
    return [member](RunConfig &c, const std::string &f, const json &v) {
        c.*member = as_text(f, v);
    };
}

Setter count_list(std::vector<std::size_t> RunConfig::*member) {
    return [member](RunConfig &c, const std::string &f, const json &v) {
        c.*member = as_list<std::size_t>(f, v, as_count);
    };
}

const std::map<std::string, Setter> &setters() {
    static const std::map<std::string, Setter> table{
        {"model", text_field(&RunConfig::model)},
        {"n", count_field(&RunConfig::n)},
        {"d", count_field(&RunConfig::d)},
        {"blocks", count_field(&RunConfig::blocks)},
        {"head", text_field(&RunConfig::head)},
        {"dataset", text_field(&RunConfig::dataset)},
        {"format", text_field(&RunConfig::format)},
        {"synthetic", text_field(&RunConfig::synthetic)},
        {"synthetic_size", count_field(&RunConfig::synthetic_size)},
        {"test_fraction", real_field(&RunConfig::test_fraction)},
        {"ablation", text_field(&RunConfig::ablation)},
        {"epochs", count_field(&RunConfig::epochs)},
        {"steps_per_epoch", count_field(&RunConfig::steps_per_epoch)},
        {"batch_size", count_field(&RunConfig::batch_size)},
        {"lr", real_field(&RunConfig::lr)},
        {"num_nodes", count_field(&RunConfig::num_nodes)},
        {"alpha", real_field(&RunConfig::alpha)},
        {"noise_p", real_field(&RunConfig::noise_p)},
        {"trajectories", count_field(&RunConfig::trajectories)},
        {"seed", count_field(&RunConfig::seed)},
        {"out", text_field(&RunConfig::out)},
        {"p_list",
         [](RunConfig &c, const std::string &f, const json &v) {
             c.p_list = as_list<double>(f, v, as_real);
         }},
        {"sweep_n", count_list(&RunConfig::sweep_n)},
        {"sweep_d", count_list(&RunConfig::sweep_d)},
        {"gradcheck_instances", count_field(&RunConfig::gradcheck_instances)},
    };
    return table;
}

// Converts a command-line string to JSON using the type of the field's
// current value.
json parse_override(const std::string &field, const std::string &text, const json &current) {
    if (current.is_string()) {
        return text;
    }
    json parsed;
    if (current.is_array() && !text.empty() && text.front() != '[') {
        parsed = json::array();
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const json e = json::parse(item, nullptr, false);
            if (e.is_discarded()) {
                field_error(field, "cannot parse list element '" + item + "'");
            }
            parsed.push_back(e);
        }
        return parsed;
    }
    parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) {
        field_error(field, "cannot parse value '" + text + "'");
    }
    return parsed;
}

template <class F>
void check_field(const std::string &field, F parse) {
    try {
        parse();
    } catch (const ConfigError &) {
        throw;
    } catch (const Error &e) {
        field_error(field, e.what());
    }
}

} // namespace

RunConfig noise_sweep_defaults() {
    RunConfig c;
    c.epochs = 1;
    c.batch_size = 8;
    c.trajectories = 8;
    return c;
}

json to_json(const RunConfig &c) {
    return json{{"model", c.model},
                {"n", c.n},
                {"d", c.d},
                {"blocks", c.blocks},
                {"head", c.head},
                {"dataset", c.dataset},
                {"format", c.format},
                {"synthetic", c.synthetic},
                {"synthetic_size", c.synthetic_size},
                {"test_fraction", c.test_fraction},
                {"ablation", c.ablation},
                {"epochs", c.epochs},
                {"steps_per_epoch", c.steps_per_epoch},
                {"batch_size", c.batch_size},
                {"lr", c.lr},
                {"num_nodes", c.num_nodes},
                {"alpha", c.alpha},
                {"noise_p", c.noise_p},
                {"trajectories", c.trajectories},
                {"seed", c.seed},
                {"out", c.out},
                {"p_list", c.p_list},
                {"sweep_n", c.sweep_n},
                {"sweep_d", c.sweep_d},
                {"gradcheck_instances", c.gradcheck_instances}};
}

RunConfig from_json(const json &j, const RunConfig &base) {
    if (!j.is_object()) {
        throw ConfigError("configuration must be a JSON object");
    }
    RunConfig c = base;
    for (const auto &[key, value] : j.items()) {
        const auto it = setters().find(key);
        if (it == setters().end()) {
            throw ConfigError("unknown field '" + key + "'");
        }
        it->second(c, key, value);
    }
    return c;
}

RunConfig apply_overrides(const RunConfig &base,
                          const std::map<std::string, std::string> &overrides) {
    const json current = to_json(base);
    json patch = json::object();
    for (const auto &[key, text] : overrides) {
        if (!current.contains(key)) {
            throw ConfigError("unknown field '" + key + "'");
        }
        patch[key] = parse_override(key, text, current[key]);
    }
    return from_json(patch, base);
}

void validate(const RunConfig &c) {
    check_field("model", [&] { static_cast<void>(model::parse_model_kind(c.model)); });
    if (c.head != "auto") {
        check_field("head", [&] { static_cast<void>(model::parse_head_kind(c.head)); });
    }
    check_field("ablation", [&] { static_cast<void>(model::parse_ablation(c.ablation)); });
    if (c.dataset.empty()) {
        check_field("synthetic", [&] { static_cast<void>(data::parse_synthetic(c.synthetic)); });
    } else if (!c.format.empty()) {
        check_field("format", [&] { static_cast<void>(data::parse_format(c.format)); });
    }
    for (const auto &[name, value] : {std::pair<const char *, std::size_t>{"n", c.n},
                                      {"d", c.d},
                                      {"blocks", c.blocks},
                                      {"epochs", c.epochs},
                                      {"steps_per_epoch", c.steps_per_epoch},
                                      {"batch_size", c.batch_size},
                                      {"num_nodes", c.num_nodes},
                                      {"trajectories", c.trajectories},
                                      {"gradcheck_instances", c.gradcheck_instances}}) {
        if (value == 0) {
            field_error(name, "must be at least 1");
        }
    }
    if (c.synthetic_size < 10) {
        field_error("synthetic_size", "must be at least 10");
    }
    if (!(c.test_fraction > 0.0 && c.test_fraction < 1.0)) {
        field_error("test_fraction", "must lie in (0, 1)");
    }
    if (!(c.lr > 0.0)) {
        field_error("lr", "must be positive");
    }
    if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) {
        field_error("alpha", "must lie in [0, 1]");
    }
    if (!(c.noise_p >= 0.0 && c.noise_p <= 1.0)) {
        field_error("noise_p", "must lie in [0, 1]");
    }
    if (c.p_list.empty()) {
        field_error("p_list", "must not be empty");
    }
    for (double p : c.p_list) {
        if (!(p >= 0.0 && p <= 1.0)) {
            field_error("p_list", "every p must lie in [0, 1]");
        }
    }
    for (const auto &[name, list] : {std::pair<const char *, const std::vector<std::size_t> *>{
                                         "sweep_n", &c.sweep_n},
                                     {"sweep_d", &c.sweep_d}}) {
        for (std::size_t v : *list) {
            if (v == 0) {
                field_error(name, "entries must be at least 1");
            }
        }
    }
}

void validate_simulable(const RunConfig &c) {
    validate(c);
    if (c.n * c.d > sim::kMaxQubits) {
        field_error("d", "n*d = " + std::to_string(c.n * c.d) + " exceeds the " +
                             std::to_string(sim::kMaxQubits) + "-qubit simulator cap");
    }
}

train::TrainConfig train_config(const RunConfig &c) {
    train::TrainConfig t;
    t.epochs = c.epochs;
    t.steps_per_epoch = c.steps_per_epoch;
    t.batch_size = c.batch_size;
    t.initial_lr = c.lr;
    t.num_nodes = c.num_nodes;
    t.alpha = c.alpha;
    t.seed = c.seed;
    t.noise_p = c.noise_p;
    t.trajectories = c.trajectories;
    return t;
}

LoadedData load_data(const RunConfig &c) {
    data::RawDataset raw;
    if (c.dataset.empty()) {
        raw = data::synthetic(data::parse_synthetic(c.synthetic), c.synthetic_size, c.seed);
    } else {
        std::string format = c.format;
        if (format.empty()) {
            format = std::filesystem::path(c.dataset).extension().string();
            if (!format.empty()) {
                format.erase(0, 1);
            }
        }
        data::Format parsed{};
        check_field("format", [&] { parsed = data::parse_format(format); });
        raw = data::load_dataset(c.dataset, parsed);
    }

    model::HeadKind head = raw.token_level ? model::HeadKind::token_classify
                                           : model::HeadKind::sentence_classify;
    if (c.head != "auto") {
        head = model::parse_head_kind(c.head);
    }
    if ((head == model::HeadKind::token_classify) != raw.token_level) {
        field_error("head", "'" + model::to_string(head) + "' does not match " +
                                (raw.token_level ? "token-level" : "sentence-level") +
                                " data");
    }

    LoadedData out{data::prepare(raw, head, c.n, c.seed, c.test_fraction), {}};
    out.model.kind = model::parse_model_kind(c.model);
    out.model.n = c.n;
    out.model.d = c.d;
    out.model.blocks = c.blocks;
    out.model.head = head;
    out.model.num_classes =
        head == model::HeadKind::regress ? 0 : out.prepared.label_names.size();
    out.model.vocab_size = out.prepared.vocab.size();
    out.model.ablation = model::parse_ablation(c.ablation);
    return out;
}

} // namespace qnet::cli
