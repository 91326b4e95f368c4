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
#include "qnet/model/hybrid.hpp"

#include "qnet/autodiff/gradients.hpp"
#include "qnet/errors.hpp"
#include "qnet/sim/state_vector.hpp"

#include <cmath>
#include <string>

namespace qnet::model {

std::string to_string(ModelKind k) { return k == ModelKind::qnet ? "qnet" : "resqnet"; }

std::string to_string(HeadKind k) {
    switch (k) {
    case HeadKind::sentence_classify:
        return "sentence_classify";
    case HeadKind::regress:
        return "regress";
    case HeadKind::token_classify:
        return "token_classify";
    }
    return "sentence_classify";
}

ModelKind parse_model_kind(const std::string &s) {
    if (s == "qnet") return ModelKind::qnet;
    if (s == "resqnet") return ModelKind::resqnet;
    throw ArgumentError("unknown model '" + s + "' (expected qnet or resqnet)");
}

HeadKind parse_head_kind(const std::string &s) {
    if (s == "sentence_classify") return HeadKind::sentence_classify;
    if (s == "regress") return HeadKind::regress;
    if (s == "token_classify") return HeadKind::token_classify;
    throw ArgumentError("unknown head '" + s +
                        "' (expected sentence_classify, regress or token_classify)");
}

void validate(const ModelConfig &c) {
    validate(QNetConfig{c.n, c.d, c.blocks});
    if (c.vocab_size < 2) {
        throw ArgumentError("vocab_size must cover PAD and UNK");
    }
    if (c.head != HeadKind::regress && c.num_classes < 2) {
        throw ArgumentError("num_classes must be at least 2");
    }
}

std::size_t head_outputs(const ModelConfig &c) {
    if (c.head == HeadKind::regress) return 1;
    if (c.head == HeadKind::sentence_classify && c.num_classes == 2) return 1;
    return c.num_classes;
}

LossKind loss_kind(const ModelConfig &c) {
    switch (c.head) {
    case HeadKind::regress:
        return LossKind::mse;
    case HeadKind::token_classify:
        return LossKind::token_cce;
    case HeadKind::sentence_classify:
        break;
    }
    return c.num_classes == 2 ? LossKind::bce : LossKind::cce;
}

void for_each_group(ModelParams &p,
                    const std::function<void(const std::string &, std::span<double>)> &fn) {
    fn("embeddings", p.embeddings.data);
    for (std::size_t b = 0; b < p.scales.size(); ++b) {
        fn("scales[" + std::to_string(b) + "]", p.scales[b]);
    }
    for (std::size_t b = 0; b < p.qnet.size(); ++b) {
        fn("qnet[" + std::to_string(b) + "]", p.qnet[b]);
    }
    fn("head.weight", p.head_weight.data);
    fn("head.bias", p.head_bias);
}

void for_each_group(
    const ModelParams &p,
    const std::function<void(const std::string &, std::span<const double>)> &fn) {
    for_each_group(const_cast<ModelParams &>(p),
                   [&](const std::string &name, std::span<double> s) {
                       fn(name, std::span<const double>(s));
                   });
}

void accumulate(ModelParams &dst, const ModelParams &src, double scale) {
    std::vector<std::span<const double>> from;
    for_each_group(src, [&](const std::string &, std::span<const double> s) {
        from.push_back(s);
    });
    std::size_t g = 0;
    for_each_group(dst, [&](const std::string &name, std::span<double> s) {
        if (g >= from.size() || from[g].size() != s.size()) {
            throw ArgumentError("parameter shapes differ at " + name);
        }
        for (std::size_t k = 0; k < s.size(); ++k) s[k] += scale * from[g][k];
        ++g;
    });
}

void normalize_rows(const Matrix &in, Matrix &out, std::vector<double> &inv_std) {
    out = Matrix(in.rows, in.cols);
    inv_std.assign(in.rows, 0.0);
    const double cols = static_cast<double>(in.cols);
    for (std::size_t i = 0; i < in.rows; ++i) {
        const auto r = in.row(i);
        double mean = 0;
        for (double v : r) mean += v;
        mean /= cols;
        double var = 0;
        for (double v : r) var += (v - mean) * (v - mean);
        var /= cols;
        inv_std[i] = 1.0 / std::sqrt(var + kNormEps);
        for (std::size_t j = 0; j < in.cols; ++j) out(i, j) = (r[j] - mean) * inv_std[i];
    }
}

Matrix normalize_rows_backward(const Matrix &xhat, const std::vector<double> &inv_std,
                               const Matrix &g) {
    Matrix out(g.rows, g.cols);
    const double cols = static_cast<double>(g.cols);
    for (std::size_t i = 0; i < g.rows; ++i) {
        double mean_g = 0;
        double mean_gx = 0;
        for (std::size_t j = 0; j < g.cols; ++j) {
            mean_g += g(i, j);
            mean_gx += g(i, j) * xhat(i, j);
        }
        mean_g /= cols;
        mean_gx /= cols;
        for (std::size_t j = 0; j < g.cols; ++j) {
            out(i, j) = inv_std[i] * (g(i, j) - mean_g - xhat(i, j) * mean_gx);
        }
    }
    return out;
}

namespace {

std::optional<sim::NoiseSpec> block_noise(const Execution &exec, std::size_t block) {
    if (!exec.noise || exec.noise->p == 0.0) return std::nullopt;
    auto n = *exec.noise;
    n.seed ^= 0x9E3779B97F4A7C15ULL * block;
    return n;
}

std::size_t block_trajectories(const Execution &exec) {
    return (exec.noise && exec.noise->p > 0.0) ? exec.trajectories : 1;
}

} // namespace

struct HybridModel::Trace {
    std::vector<Matrix> h;       ///< h[0] embeddings, h[b + 1] block b output
    std::vector<Matrix> u;       ///< circuit inputs per block
    std::vector<std::vector<double>> inv_std;
};

HybridModel::HybridModel(ModelConfig config)
    : config_(config), circuit_(1) {
    validate(config_);
    circuit_ = build_qnet_symbolic(circuit_config(), config_.ablation);
}

QNetConfig HybridModel::circuit_config() const {
    return {config_.n, config_.d,
            config_.kind == ModelKind::qnet ? config_.blocks : std::size_t{1}};
}

ModelParams HybridModel::shaped_params() const {
    ModelParams p;
    const auto &c = config_;
    p.embeddings = Matrix(c.vocab_size, c.d);
    const auto table = count_parameters(circuit_config());
    if (c.kind == ModelKind::qnet) {
        p.qnet.assign(1, std::vector<double>(table, 0.0));
    } else {
        p.qnet.assign(c.blocks, std::vector<double>(table, 0.0));
        p.scales.assign(c.blocks, std::vector<double>(c.d, 1.0));
    }
    const auto out = head_outputs(c);
    p.head_weight = c.head == HeadKind::token_classify ? Matrix(c.d, out)
                                                        : Matrix(c.n * c.d, out);
    p.head_bias.assign(out, 0.0);
    return p;
}

void HybridModel::check(const ModelParams &params) const {
    const auto ref = shaped_params();
    auto fail = [](const std::string &what) {
        throw ArgumentError("parameter shape mismatch: " + what);
    };
    if (params.embeddings.rows != ref.embeddings.rows ||
        params.embeddings.cols != ref.embeddings.cols ||
        params.embeddings.data.size() != ref.embeddings.data.size()) {
        fail("embeddings");
    }
    if (params.scales.size() != ref.scales.size()) fail("scales");
    for (std::size_t b = 0; b < ref.scales.size(); ++b) {
        if (params.scales[b].size() != ref.scales[b].size()) fail("scales[" + std::to_string(b) + "]");
    }
    if (params.qnet.size() != ref.qnet.size()) fail("qnet");
    for (std::size_t b = 0; b < ref.qnet.size(); ++b) {
        if (params.qnet[b].size() != ref.qnet[b].size()) fail("qnet[" + std::to_string(b) + "]");
    }
    if (params.head_weight.rows != ref.head_weight.rows ||
        params.head_weight.cols != ref.head_weight.cols ||
        params.head_weight.data.size() != ref.head_weight.data.size()) {
        fail("head.weight");
    }
    if (params.head_bias.size() != ref.head_bias.size()) fail("head.bias");
}

std::size_t encoder_parameter_count(ModelKind kind, std::size_t d, std::size_t blocks) {
    const auto circuit_params = count_parameters(QNetConfig{1, d, blocks});
    return kind == ModelKind::qnet ? circuit_params : circuit_params + blocks * d;
}

std::size_t HybridModel::encoder_parameter_count() const {
    return model::encoder_parameter_count(config_.kind, config_.d, config_.blocks);
}

Matrix HybridModel::run(const ModelParams &params, std::span<const std::size_t> ids,
                        const Execution &exec, Trace *trace) const {
    const auto &c = config_;
    if (ids.size() != c.n) {
        throw ArgumentError("expected " + std::to_string(c.n) + " token ids, got " +
                            std::to_string(ids.size()));
    }
    Matrix h(c.n, c.d);
    for (std::size_t i = 0; i < c.n; ++i) {
        if (ids[i] >= c.vocab_size) {
            throw ArgumentError("token id " + std::to_string(ids[i]) + " outside the vocabulary");
        }
        for (std::size_t j = 0; j < c.d; ++j) h(i, j) = params.embeddings(ids[i], j);
    }
    if (trace) trace->h.push_back(h);

    const auto zero = sim::init_zero(c.n * c.d);
    auto quantum = [&](const std::vector<double> &table, const Matrix &u, std::size_t b) {
        const auto z = circuit::expectations(circuit_, join_inputs(table, u), zero,
                                             block_noise(exec, b), block_trajectories(exec));
        return reshape(z, c.n, c.d);
    };

    if (c.kind == ModelKind::qnet) {
        if (trace) trace->u.push_back(h);
        h = quantum(params.qnet[0], h, 0);
    } else {
        for (std::size_t b = 0; b < c.blocks; ++b) {
            Matrix u = h;
            for (std::size_t i = 0; i < c.n; ++i) {
                for (std::size_t j = 0; j < c.d; ++j) u(i, j) *= params.scales[b][j];
            }
            const Matrix y = quantum(params.qnet[b], u, b);
            Matrix s = h;
            for (std::size_t k = 0; k < s.data.size(); ++k) s.data[k] += y.data[k];
            std::vector<double> inv_std;
            normalize_rows(s, h, inv_std);
            if (trace) {
                trace->u.push_back(std::move(u));
                trace->inv_std.push_back(std::move(inv_std));
                trace->h.push_back(h);
            }
        }
    }
    if (c.kind == ModelKind::qnet && trace) trace->h.push_back(h);

    const auto out = head_outputs(c);
    const auto &W = params.head_weight;
    if (c.head == HeadKind::token_classify) {
        Matrix z(c.n, out);
        for (std::size_t i = 0; i < c.n; ++i) {
            for (std::size_t o = 0; o < out; ++o) {
                double acc = params.head_bias[o];
                for (std::size_t j = 0; j < c.d; ++j) acc += h(i, j) * W(j, o);
                z(i, o) = acc;
            }
        }
        return z;
    }
    Matrix z(1, out);
    for (std::size_t o = 0; o < out; ++o) {
        double acc = params.head_bias[o];
        for (std::size_t k = 0; k < h.data.size(); ++k) acc += h.data[k] * W(k, o);
        z(0, o) = acc;
    }
    return z;
}

Matrix HybridModel::forward(const ModelParams &params, std::span<const std::size_t> ids,
                            const Execution &exec) const {
    check(params);
    return run(params, ids, exec, nullptr);
}

HybridModel::Result HybridModel::loss_and_gradient(const ModelParams &params,
                                                   std::span<const std::size_t> ids,
                                                   const Target &target,
                                                   const Execution &exec) const {
    check(params);
    const auto &c = config_;
    Trace trace;
    Result res;
    res.output = run(params, ids, exec, &trace);
    const auto loss = compute_loss(res.output, target, loss_kind(c));
    res.loss = loss.value;
    res.grad = shaped_params();
    auto &grad = res.grad;
    for (auto &s : grad.scales) std::fill(s.begin(), s.end(), 0.0);

    // head
    const Matrix &hf = trace.h.back();
    const auto &W = params.head_weight;
    const auto out = head_outputs(c);
    Matrix gh(c.n, c.d);
    if (c.head == HeadKind::token_classify) {
        for (std::size_t i = 0; i < c.n; ++i) {
            for (std::size_t o = 0; o < out; ++o) {
                const double gz = loss.grad(i, o);
                if (gz == 0.0) continue;
                grad.head_bias[o] += gz;
                for (std::size_t j = 0; j < c.d; ++j) {
                    grad.head_weight(j, o) += hf(i, j) * gz;
                    gh(i, j) += W(j, o) * gz;
                }
            }
        }
    } else {
        for (std::size_t o = 0; o < out; ++o) {
            const double gz = loss.grad(0, o);
            grad.head_bias[o] += gz;
            for (std::size_t k = 0; k < hf.data.size(); ++k) {
                grad.head_weight(k, o) += hf.data[k] * gz;
                gh.data[k] += W(k, o) * gz;
            }
        }
    }

    const auto zero = sim::init_zero(c.n * c.d);
    const std::size_t table = params.qnet[0].size();
    // (table gradient, input gradient) of sum cot . <Z>
    auto vjp = [&](std::size_t b, const Matrix &u, const Matrix &cot,
                   std::vector<double> &table_grad) {
        const auto all = join_inputs(params.qnet[b], u);
        const auto w = flatten(cot);
        const auto noise = block_noise(exec, b);
        std::vector<double> g;
        if (exec.method == GradientMethod::adjoint) {
            g = autodiff::adjoint_gradient(circuit_, all, zero, w, noise);
        } else {
            g = autodiff::parameter_shift_gradient(circuit_, all, zero, w, noise,
                                                   block_trajectories(exec));
        }
        for (std::size_t k = 0; k < table; ++k) table_grad[k] += g[k];
        return reshape(std::span<const double>(g).subspan(table), c.n, c.d);
    };

    if (c.kind == ModelKind::qnet) {
        gh = vjp(0, trace.u[0], gh, grad.qnet[0]);
    } else {
        for (std::size_t bb = c.blocks; bb-- > 0;) {
            const Matrix gs = normalize_rows_backward(trace.h[bb + 1], trace.inv_std[bb], gh);
            const Matrix gu = vjp(bb, trace.u[bb], gs, grad.qnet[bb]);
            const Matrix &prev = trace.h[bb];
            gh = gs;
            for (std::size_t i = 0; i < c.n; ++i) {
                for (std::size_t j = 0; j < c.d; ++j) {
                    gh(i, j) += gu(i, j) * params.scales[bb][j];
                    grad.scales[bb][j] += gu(i, j) * prev(i, j);
                }
            }
        }
    }

    for (std::size_t i = 0; i < c.n; ++i) {
        for (std::size_t j = 0; j < c.d; ++j) grad.embeddings(ids[i], j) += gh(i, j);
    }
    return res;
}

} // namespace qnet::model
