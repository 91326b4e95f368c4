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
// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "support/oracles.hpp"

#include "qnet/autodiff/gradients.hpp"
#include "qnet/circuit/analysis.hpp"
#include "qnet/cli/commands.hpp"
#include "qnet/cli/run_config.hpp"
#include "qnet/model/hybrid.hpp"
#include "qnet/model/qnet_circuit.hpp"
#include "qnet/sim/simulator.hpp"
#include "qnet/train/schedule.hpp"
#include "qnet/train/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace qnet;

namespace {

struct Outcome {
    bool pass{false};
    std::string detail;
};

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double r_squared(const std::vector<double> &x, const std::vector<double> &y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i] / n;
        my += y[i] / n;
    }
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return syy == 0 ? 0.0 : (sxy * sxy) / (sxx * syy);
}

// Dense-matrix evolution of |0...0> gate by gate.
std::vector<oracle::C> dense_run(const circuit::Circuit &c, const std::vector<double> &params) {
    const std::size_t n = c.num_qubits();
    auto psi = oracle::basis(n, 0);
    for (std::size_t i = 0; i < c.ops().size(); ++i) {
        psi = oracle::apply(oracle::gate_matrix(c.bind(i, params), n), psi);
    }
    return psi;
}

Outcome c1_parameter_counts() {
    const auto t0 = std::chrono::steady_clock::now();
    struct Row {
        model::ModelKind kind;
        std::size_t d, blocks, expected;
    };
    const std::vector<Row> rows{{model::ModelKind::qnet, 2, 1, 18},
                                {model::ModelKind::resqnet, 2, 1, 20},
                                {model::ModelKind::qnet, 4, 1, 36},
                                {model::ModelKind::resqnet, 4, 1, 40},
                                {model::ModelKind::qnet, 3, 1, 27},
                                {model::ModelKind::resqnet, 3, 1, 30},
                                {model::ModelKind::qnet, 128, 2, 2304}};
    bool ok = true;
    std::string got;
    for (const auto &r : rows) {
        const std::size_t v = model::encoder_parameter_count(r.kind, r.d, r.blocks);
        if (r.kind == model::ModelKind::qnet) {
            ok = ok && model::count_parameters({1, r.d, r.blocks}) == r.expected;
        }
        ok = ok && v == r.expected;
        got += (got.empty() ? "" : ",") + std::to_string(v);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok = ok && secs < 1.0;
    return {ok, "counts " + got + fmt(" (%.3f s, limit 1 s)", secs)};
}

Outcome c2_qft_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<std::size_t> qubits(n);
        for (std::size_t q = 0; q < n; ++q) {
            qubits[q] = q;
        }
        const auto dft = oracle::dft_matrix(n);
        const std::size_t dim = std::size_t{1} << n;
        for (std::size_t col = 0; col < dim; ++col) {
            auto s = sim::StateVector::from_amplitudes(oracle::basis(n, col));
            sim::apply_qft(s, qubits, false);
            for (std::size_t row = 0; row < dim; ++row) {
                worst = std::max(worst, std::abs(s[row] - dft(row, col)));
            }
        }
    }
    // n = 1 must be the Hadamard.
    auto h = sim::StateVector::from_amplitudes(oracle::basis(1, 1));
    const std::vector<std::size_t> q0{0};
    sim::apply_qft(h, q0, false);
    const double hdev = std::abs(h[0] - std::numbers::sqrt2 / 2) + std::abs(h[1] + std::numbers::sqrt2 / 2);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {worst <= 1e-10 && hdev <= 1e-10 && secs < 5.0,
            fmt("max entry error %.2e over n=1..4, tolerance 1e-10 (%.3f s, limit 5 s)", worst,
                secs)};
}

Outcome c3_mixture_identity() {
    std::mt19937_64 rng(3);
    const std::vector<model::QNetConfig> configs{{2, 2, 1}, {4, 2, 1}, {2, 4, 1}, {8, 1, 1},
                                                 {3, 2, 1}};
    double worst = 0.0;
    std::size_t states = 0;
    for (std::size_t k = 0; k < 100; ++k) {
        const auto &cfg = configs[k % configs.size()];
        const auto layer = model::build_mixture_layer(cfg, 0);
        const std::vector<double> zeros(model::count_parameters(cfg), 0.0);
        const auto psi = oracle::random_state(model::num_qubits(cfg), rng);
        const auto out =
            circuit::bind_and_execute(layer, zeros, sim::StateVector::from_amplitudes(psi));
        worst = std::max(worst, oracle::max_abs_diff(psi, out.amplitudes()));
        ++states;
    }
    return {worst <= 1e-10,
            fmt("max deviation %.2e on %zu random states, tolerance 1e-10", worst, states)};
}

Outcome c4_gradient_agreement() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::normal_distribution<double> normal;
    const std::vector<model::QNetConfig> shapes{{1, 1, 1}, {2, 1, 2}, {2, 2, 1}, {2, 2, 2},
                                                {4, 2, 1}, {2, 3, 1}, {2, 4, 1}, {8, 1, 1},
                                                {3, 2, 1}, {4, 1, 2}};
    double worst = 0.0;
    for (std::size_t inst = 0; inst < 20; ++inst) {
        const auto &cfg = shapes[inst % shapes.size()];
        const auto circ = model::build_qnet_symbolic(cfg);
        std::vector<double> params(model::count_parameters(cfg) + model::num_qubits(cfg));
        for (auto &p : params) {
            p = angle(rng);
        }
        std::vector<double> cot(model::num_qubits(cfg));
        for (auto &w : cot) {
            w = normal(rng);
        }
        const auto input = sim::init_zero(model::num_qubits(cfg));
        const auto a = autodiff::adjoint_gradient(circ, params, input, cot);
        const auto s = autodiff::parameter_shift_gradient(circ, params, input, cot);
        const auto f = autodiff::finite_difference_gradient(circ, params, input, cot);
        for (std::size_t i = 0; i < params.size(); ++i) {
            worst = std::max({worst, std::abs(a[i] - s[i]), std::abs(a[i] - f[i]),
                              std::abs(s[i] - f[i])});
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {worst <= 1e-6 && secs < 60.0,
            fmt("max pairwise deviation %.2e on 20 instances, tolerance 1e-6 (%.2f s, limit 60 s)",
                worst, secs)};
}

Outcome c5_zero_fixed_point() {
    double worst = 0.0;
    for (const auto &cfg : {model::QNetConfig{2, 2, 1}, model::QNetConfig{4, 2, 2},
                            model::QNetConfig{2, 3, 1}}) {
        const Matrix x(cfg.n, cfg.d);
        const std::vector<double> zeros(model::count_parameters(cfg), 0.0);
        const auto out = model::qnet_forward(cfg, x, zeros);
        const auto psi = dense_run(model::build_qnet(cfg, x), zeros);
        for (std::size_t i = 0; i < cfg.n; ++i) {
            for (std::size_t j = 0; j < cfg.d; ++j) {
                worst = std::max({worst, std::abs(out(i, j) - 1.0),
                                  std::abs(oracle::z_expectation(
                                               psi, model::qubit_index(cfg, i, j)) -
                                           1.0)});
            }
        }
    }
    return {worst <= 1e-12,
            fmt("max |output - 1| %.2e for (2,2,1), (4,2,2), (2,3,1) against the dense oracle",
                worst)};
}

Outcome c6_depth_scaling() {
    const auto layer_depth = [](std::size_t n, std::size_t d, const std::string &tag) {
        return static_cast<double>(
            circuit::analyze_depth(model::build_qnet_symbolic({n, d, 1})).per_layer_depth.at(tag));
    };
    const auto layer_gates = [](std::size_t n, std::size_t d, const std::string &tag) {
        std::size_t total = 0;
        for (const auto &[name, count] :
             circuit::count_gates(model::build_qnet_symbolic({n, d, 1}), tag)) {
            total += count;
        }
        return static_cast<double>(total);
    };
    bool enc_ok = true;
    for (std::size_t n : {1, 2, 4, 8, 16}) {
        for (std::size_t d : {1, 2, 4, 8}) {
            enc_ok = enc_ok && layer_depth(n, d, "enc") == 2.0;
        }
    }
    std::vector<double> ns{2, 4, 8, 16}, mix;
    for (double n : ns) {
        mix.push_back(layer_depth(static_cast<std::size_t>(n), 2, "mix[0]"));
    }
    std::vector<double> ds{2, 4, 8}, ff;
    for (double d : ds) {
        ff.push_back(layer_depth(2, static_cast<std::size_t>(d), "ff[0]"));
    }
    const double r2_mix = r_squared(ns, mix);
    const double r2_ff = r_squared(ds, ff);
    // Gate counts carry lower-order terms; the largest doubling in the sweep is used.
    const double ratio = layer_gates(16, 2, "mix[0]") / layer_gates(8, 2, "mix[0]");
    const bool ok = enc_ok && r2_mix >= 0.95 && r2_ff >= 0.95 && ratio >= 3.5 && ratio <= 4.5;
    return {ok, fmt("encoding depth 2 everywhere: %s; mixture R^2 %.4f; feedforward R^2 %.4f; "
                    "mixture gate ratio n 8->16 %.3f (band [3.5, 4.5])",
                    enc_ok ? "yes" : "no", r2_mix, r2_ff, ratio)};
}

cli::RunConfig desk_config(const std::string &task, std::uint64_t seed) {
    cli::RunConfig c;
    c.n = 4;
    c.d = 2;
    c.blocks = 1;
    c.synthetic = task;
    c.epochs = 2;
    c.steps_per_epoch = 100;
    c.batch_size = 128;
    c.seed = seed;
    return c;
}

Outcome c7_desk_learning() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> train_acc, test_acc;
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto c = desk_config("keyword_presence", seed);
        const auto data = cli::load_data(c);
        const model::HybridModel m(data.model);
        const auto run = train::train(m, data.prepared.train, data.prepared.test,
                                      cli::train_config(c));
        train_acc.push_back(train::evaluate(m, run.params, data.prepared.train).accuracy);
        test_acc.push_back(train::evaluate(m, run.params, data.prepared.test).accuracy);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double tr = median(train_acc), te = median(test_acc);
    return {tr >= 0.95 && te >= 0.90 && secs < 600.0,
            fmt("median train accuracy %.4f (>= 0.95), held-out %.4f (>= 0.90), 200 steps, "
                "3 seeds (%.1f s, limit 600 s)",
                tr, te, secs)};
}

Outcome c8_ablation() {
    std::vector<double> gaps, full_f1, ff_f1;
    for (std::uint64_t seed : {1, 2, 3}) {
        double f1[2]{};
        int k = 0;
        for (const char *ablation : {"full", "feedforward_only"}) {
            auto c = desk_config("tag_copy", seed);
            c.ablation = ablation;
            const auto data = cli::load_data(c);
            const model::HybridModel m(data.model);
            const auto run = train::train(m, data.prepared.train, data.prepared.test,
                                          cli::train_config(c));
            f1[k++] = train::evaluate(m, run.params, data.prepared.test).f1;
        }
        full_f1.push_back(f1[0]);
        ff_f1.push_back(f1[1]);
        gaps.push_back(f1[0] - f1[1]);
    }
    const double gap = median(gaps);
    return {gap >= 0.1, fmt("median F1 full %.4f, feedforward-only %.4f, median gap %.4f "
                            "(needs >= 0.1)",
                            median(full_f1), median(ff_f1), gap)};
}

Outcome c9_noise_tolerance() {
    auto c = cli::noise_sweep_defaults();
    c.n = 4;
    c.d = 2;
    c.p_list = {0.1, 0.5};
    const auto out = std::filesystem::temp_directory_path() /
                     ("qnet_acceptance_" + std::to_string(::getpid()));
    c.out = out.string();
    std::ostringstream log;
    const auto sweep = cli::cmd_noise_sweep(c, log);
    std::filesystem::remove_all(out);
    const auto &lo = sweep.runs[0];
    const auto &hi = sweep.runs[1];
    const bool ok = hi.jitter > lo.jitter && lo.descending && hi.descending;
    return {ok, fmt("jitter p=0.1 %.4f, p=0.5 %.4f; loss first/last ten steps p=0.1 %.4f->%.4f, "
                    "p=0.5 %.4f->%.4f",
                    lo.jitter, hi.jitter, lo.initial_loss, lo.final_loss, hi.initial_loss,
                    hi.final_loss)};
}

Outcome c10_optimizer_recipe() {
    const train::LrSchedule s{3e-4, 128, 1, 500, 1e-2};
    const double g = train::global_lr(s);
    const double mid = train::lr_at(s, 250) / g;
    const double end = train::lr_at(s, 500) / g;
    const bool ok = g == 0.0384 && train::lr_at(s, 0) == g && std::abs(mid - 0.505) <= 1e-12 &&
                    std::abs(end - 0.01) <= 1e-12;
    return {ok, fmt("global_lr %.17g; lr/global at start 1, midpoint %.15f, end %.15f", g, mid,
                    end)};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"parameter counts", c1_parameter_counts},
        {"QFT equals DFT", c2_qft_oracle},
        {"mixture identity", c3_mixture_identity},
        {"gradient agreement", c4_gradient_agreement},
        {"zero-config fixed point", c5_zero_fixed_point},
        {"depth scaling", c6_depth_scaling},
        {"desk-scale learning", c7_desk_learning},
        {"ablation differentiation", c8_ablation},
        {"noise tolerance", c9_noise_tolerance},
        {"optimizer recipe", c10_optimizer_recipe},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
