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
#include "qnet/train/trainer.hpp"

#include "qnet/errors.hpp"
#include "qnet/model/losses.hpp"
#include "qnet/train/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qnet::train {

using model::HeadKind;

void validate(const TrainConfig &c) {
    if (c.epochs == 0 || c.steps_per_epoch == 0 || c.batch_size == 0 || c.num_nodes == 0) {
        throw ArgumentError("epochs, steps_per_epoch, batch_size and num_nodes must be positive");
    }
    if (!(c.initial_lr > 0.0)) throw ArgumentError("initial_lr must be positive");
    if (!(c.noise_p >= 0.0 && c.noise_p <= 1.0)) throw ArgumentError("noise p must lie in [0, 1]");
    if (c.noise_p > 0.0 && c.trajectories == 0) {
        throw ArgumentError("noisy training needs at least one trajectory");
    }
}

LrSchedule schedule_of(const TrainConfig &c) {
    return {c.initial_lr, c.batch_size, c.num_nodes, c.epochs * c.steps_per_epoch, c.alpha};
}

model::ModelParams initialize(const model::HybridModel &m, std::uint64_t seed) {
    auto p = m.shaped_params();
    std::mt19937_64 rng(seed ^ 0x5DEECE66DULL);
    std::uniform_real_distribution<double> angle(-0.1, 0.1);
    std::normal_distribution<double> embed(0.0, 0.5);
    std::normal_distribution<double> head(0.0, 1.0 / std::sqrt(static_cast<double>(m.config().d)));
    for (auto &v : p.embeddings.data) v = embed(rng);
    for (auto &table : p.qnet)
        for (auto &v : table) v = angle(rng);
    for (auto &v : p.head_weight.data) v = head(rng);
    return p;
}

nlohmann::json to_json(const EvalMetrics &m, HeadKind head) {
    nlohmann::json j{{"count", m.count}, {"loss", m.loss}};
    if (head == HeadKind::regress) {
        j["mse"] = m.mse;
    } else {
        j["accuracy"] = m.accuracy;
    }
    if (head == HeadKind::token_classify) j["f1"] = m.f1;
    return j;
}

EvalMetrics evaluate(const model::HybridModel &m, const model::ModelParams &params,
                     const std::vector<data::Example> &examples) {
    const auto &cfg = m.config();
    const auto kind = model::loss_kind(cfg);
    const auto count = examples.size();
    std::vector<double> losses(count), sq(count);
    std::vector<std::size_t> correct(count), seen(count);
    std::vector<model::F1Counts> f1(count);
    const auto total = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < total; ++s) {
        const auto k = static_cast<std::size_t>(s);
        const auto &e = examples[k];
        const auto out = m.forward(params, e.ids);
        losses[k] = model::compute_loss(out, e.target, kind).value;
        switch (cfg.head) {
        case HeadKind::sentence_classify:
            correct[k] = model::predict_label(out.row(0)) == e.target.label;
            seen[k] = 1;
            break;
        case HeadKind::regress:
            sq[k] = std::pow(out.data[0] - e.target.value, 2);
            break;
        case HeadKind::token_classify: {
            const auto pred = model::predict_tags(out);
            for (std::size_t i = 0; i < pred.size(); ++i) {
                if (!e.target.mask[i]) continue;
                ++seen[k];
                correct[k] += pred[i] == e.target.tags[i];
            }
            f1[k].add(pred, e.target.tags, 0, e.target.mask);
            break;
        }
        }
    }
    EvalMetrics r;
    r.count = count;
    if (count == 0) return r;
    std::size_t right = 0, total_seen = 0;
    model::F1Counts pooled;
    for (std::size_t k = 0; k < count; ++k) {
        r.loss += losses[k];
        r.mse += sq[k];
        right += correct[k];
        total_seen += seen[k];
        pooled.tp += f1[k].tp;
        pooled.fp += f1[k].fp;
        pooled.fn += f1[k].fn;
    }
    r.loss /= static_cast<double>(count);
    r.mse /= static_cast<double>(count);
    r.accuracy = total_seen ? static_cast<double>(right) / static_cast<double>(total_seen) : 0.0;
    r.f1 = pooled.f1();
    return r;
}

nlohmann::json to_json(const StepRecord &r) {
    nlohmann::json j{{"step", r.step}, {"epoch", r.epoch}, {"lr", r.lr}, {"loss", r.loss}};
    if (r.eval) j["eval"] = *r.eval;
    return j;
}

void check_examples(const model::HybridModel &m, const std::vector<data::Example> &examples) {
    const auto &cfg = m.config();
    const auto outputs = model::head_outputs(cfg);
    for (std::size_t k = 0; k < examples.size(); ++k) {
        const auto &e = examples[k];
        auto bad = [&](const std::string &what) {
            throw DataError("example " + std::to_string(k) + ": " + what);
        };
        if (e.ids.size() != cfg.n) bad("expected " + std::to_string(cfg.n) + " token ids");
        for (auto id : e.ids) {
            if (id >= cfg.vocab_size) bad("token id " + std::to_string(id) + " outside the vocabulary");
        }
        const auto &t = e.target;
        switch (cfg.head) {
        case HeadKind::sentence_classify:
            if (t.label >= cfg.num_classes) bad("label " + std::to_string(t.label) + " out of range");
            break;
        case HeadKind::regress:
            if (!std::isfinite(t.value)) bad("target is not finite");
            break;
        case HeadKind::token_classify:
            if (t.tags.size() != cfg.n || t.mask.size() != cfg.n) bad("tag sequence length");
            for (std::size_t i = 0; i < cfg.n; ++i) {
                if (t.mask[i] && t.tags[i] >= outputs) bad("tag out of range");
            }
            if (std::find(t.mask.begin(), t.mask.end(), true) == t.mask.end()) {
                bad("every position is masked");
            }
            break;
        }
    }
}

TrainResult train(const model::HybridModel &m, const std::vector<data::Example> &train_set,
                  const std::vector<data::Example> &test_set, const TrainConfig &config,
                  const std::function<void(const StepRecord &)> &on_step,
                  std::optional<model::ModelParams> initial) {
    validate(config);
    if (train_set.empty()) throw DataError("training set is empty");
    check_examples(m, train_set);
    check_examples(m, test_set);

    TrainResult result;
    result.params = initial ? std::move(*initial) : initialize(m, config.seed);
    m.check(result.params);
    auto &params = result.params;
    Adam adam(params);
    const auto schedule = schedule_of(config);
    const bool noisy = config.noise_p > 0.0;

    std::mt19937_64 sampler(config.seed);
    std::uniform_int_distribution<std::size_t> pick(0, train_set.size() - 1);
    std::vector<std::size_t> batch(config.batch_size);
    std::vector<model::HybridModel::Result> results(config.batch_size);
    const auto size = static_cast<std::ptrdiff_t>(config.batch_size);

    std::size_t step = 0;
    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        for (std::size_t s = 0; s < config.steps_per_epoch; ++s, ++step) {
            for (auto &i : batch) i = pick(sampler);
#pragma omp parallel for schedule(dynamic)
            for (std::ptrdiff_t b = 0; b < size; ++b) {
                const auto k = static_cast<std::size_t>(b);
                model::Execution exec;
                if (noisy) {
                    exec.noise = sim::NoiseSpec{
                        config.noise_p, circuit::trajectory_seed(config.seed ^ (step << 20), k)};
                    exec.trajectories = config.trajectories;
                    exec.method = model::GradientMethod::parameter_shift;
                }
                const auto &e = train_set[batch[k]];
                results[k] = m.loss_and_gradient(params, e.ids, e.target, exec);
            }
            auto grad = std::move(results[0].grad);
            double loss = results[0].loss;
            for (std::size_t k = 1; k < config.batch_size; ++k) {
                model::accumulate(grad, results[k].grad);
                loss += results[k].loss;
            }
            const double inv = 1.0 / static_cast<double>(config.batch_size);
            model::for_each_group(grad, [&](const std::string &, std::span<double> g) {
                for (auto &v : g) v *= inv;
            });

            StepRecord rec;
            rec.step = step + 1;
            rec.epoch = epoch;
            rec.lr = lr_at(schedule, step);
            rec.loss = loss * inv;
            adam.step(params, grad, rec.lr);
            if (s + 1 == config.steps_per_epoch) {
                nlohmann::json ev{{"train", to_json(evaluate(m, params, train_set), m.config().head)}};
                if (!test_set.empty()) {
                    ev["test"] = to_json(evaluate(m, params, test_set), m.config().head);
                }
                rec.eval = std::move(ev);
            }
            if (on_step) on_step(rec);
            result.history.push_back(std::move(rec));
        }
    }
    return result;
}

} // namespace qnet::train
