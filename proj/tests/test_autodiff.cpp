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
#include "doctest.h"

#include "qnet/autodiff/gradients.hpp"
#include "qnet/errors.hpp"
#include "qnet/model/qnet_circuit.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace qnet;
using namespace qnet::autodiff;
using circuit::Angle;
using circuit::Circuit;
using circuit::Op;
using sim::GateKind;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

double max_diff(const std::vector<double> &a, const std::vector<double> &b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

std::vector<double> uniform(std::size_t count, double lo, double hi, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(count);
    for (auto &x : v) x = u(rng);
    return v;
}

Circuit single_rx() {
    Circuit c(1);
    c.append(Op{GateKind::RX, {0}, {}, {Angle::ref(0)}});
    return c;
}

// f(theta) = sum_q w_q <Z_q> evaluated through the dense oracle.
double oracle_f(const Circuit &c, const std::vector<double> &params,
                const std::vector<double> &w) {
    const auto u = oracle::circuit_matrix(c, params);
    const auto psi = oracle::apply(u, oracle::basis(c.num_qubits(), 0));
    double acc = 0;
    for (std::size_t q = 0; q < w.size(); ++q) acc += w[q] * oracle::z_expectation(psi, q);
    return acc;
}

} // namespace

TEST_CASE("single RX examples") {
    const auto c = single_rx();
    const auto zero = sim::init_zero(1);
    const std::vector<double> w{1.0};
    const std::vector<double> p{pi / 2};
    const auto vg = adjoint_value_and_gradient(c, p, zero, w);
    CHECK(vg.values[0] == Approx(0.0).epsilon(1e-12));
    CHECK(vg.gradient[0] == Approx(-1.0).epsilon(1e-12));
    CHECK(parameter_shift_gradient(c, p, zero, w)[0] == Approx(-1.0).epsilon(1e-12));
    CHECK(finite_difference_gradient(c, p, zero, w)[0] == Approx(-1.0).epsilon(1e-8));
    // f = cos(theta), f' = -sin(theta)
    for (double t : {-2.5, -0.4, 0.0, 0.9, 3.0}) {
        const std::vector<double> q{t};
        CHECK(adjoint_gradient(c, q, zero, w)[0] == Approx(-std::sin(t)).epsilon(1e-12));
    }
}

TEST_CASE("adjoint matches finite differences and the shift rule") {
    std::mt19937_64 rng(101);
    for (const auto &cfg : {model::QNetConfig{2, 2, 1}, model::QNetConfig{2, 1, 2},
                            model::QNetConfig{4, 2, 1}, model::QNetConfig{2, 3, 1},
                            model::QNetConfig{3, 2, 2}}) {
        const auto c = model::build_qnet_symbolic(cfg);
        const std::size_t nq = cfg.n * cfg.d;
        for (int trial = 0; trial < 3; ++trial) {
            auto params = uniform(model::count_parameters(cfg), -pi, pi, rng);
            const auto x = uniform(nq, -2, 2, rng);
            params.insert(params.end(), x.begin(), x.end());
            const auto w = uniform(nq, -1, 1, rng);
            const auto zero = sim::init_zero(nq);
            const auto adj = adjoint_gradient(c, params, zero, w);
            const auto fd = finite_difference_gradient(c, params, zero, w);
            const auto ps = parameter_shift_gradient(c, params, zero, w);
            CHECK(adj.size() == params.size());
            CHECK(max_diff(adj, fd) <= 1e-6);
            CHECK(max_diff(adj, ps) <= 1e-8);
        }
    }
}

TEST_CASE("values match the dense oracle") {
    std::mt19937_64 rng(7);
    const model::QNetConfig cfg{2, 2, 1};
    const auto c = model::build_qnet_symbolic(cfg);
    auto params = uniform(c.required_params(), -pi, pi, rng);
    const std::vector<double> w{0.3, -1.0, 0.5, 2.0};
    const auto vg = adjoint_value_and_gradient(c, params, sim::init_zero(4), w);
    CHECK(contract(vg.values, w) == Approx(oracle_f(c, params, w)).epsilon(1e-12));
    // central differences on the oracle itself
    for (std::size_t k = 0; k < params.size(); k += 5) {
        auto plus = params;
        auto minus = params;
        plus[k] += 1e-5;
        minus[k] -= 1e-5;
        const double fd = (oracle_f(c, plus, w) - oracle_f(c, minus, w)) / 2e-5;
        CHECK(vg.gradient[k] == Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("scaled and offset references") {
    Circuit c(2);
    c.append(Op{GateKind::RX, {0}, {}, {Angle::ref(0, 2.0, 0.3)}});
    c.append(sim::cnot(0, 1));
    c.append(Op{GateKind::ROT3, {1}, {}, {Angle::ref(1), Angle::ref(0, -0.5), Angle::constant(0.2)}});
    c.append(Op{GateKind::RZ, {0}, {}, {Angle::ref(2, 1.0, -1.0)}});
    const std::vector<double> params{0.4, -1.1, 0.7};
    const std::vector<double> w{1.0, -0.7};
    const auto adj = adjoint_gradient(c, params, sim::init_zero(2), w);
    CHECK(max_diff(adj, finite_difference_gradient(c, params, sim::init_zero(2), w)) <= 1e-6);
    CHECK(max_diff(adj, parameter_shift_gradient(c, params, sim::init_zero(2), w)) <= 1e-8);
}

TEST_CASE("unused parameter slots get exactly zero") {
    Circuit c(2);
    c.append(Op{GateKind::RX, {0}, {}, {Angle::ref(1)}});
    c.append(Op{GateKind::ROT3, {1}, {}, {Angle::ref(3), Angle::ref(1), Angle::ref(3)}});
    const std::vector<double> params{9.0, 0.5, 9.0, -0.3, 9.0};
    const std::vector<double> w{1.0, 1.0};
    const auto zero = sim::init_zero(2);
    for (const auto &g : {adjoint_gradient(c, params, zero, w),
                          parameter_shift_gradient(c, params, zero, w)}) {
        CHECK(g[0] == 0.0);
        CHECK(g[2] == 0.0);
        CHECK(g[4] == 0.0);
        CHECK(g[1] != 0.0);
    }
}

TEST_CASE("shared parameter gradient is the sum over occurrences") {
    std::mt19937_64 rng(13);
    const model::QNetConfig cfg{3, 1, 1};
    const auto shared = model::build_qnet_symbolic(cfg);
    // Give each occurrence its own slot and compare the sum.
    Circuit split(shared.num_qubits());
    std::size_t next = shared.required_params();
    std::vector<std::pair<std::size_t, std::size_t>> origin; // split slot -> shared slot
    for (const auto &op : shared.ops()) {
        Op copy = op;
        for (auto &a : copy.angles) {
            if (a.param && *a.param < 3) {
                origin.emplace_back(next, *a.param);
                a.param = next++;
            }
        }
        split.append(copy);
    }
    auto params = uniform(shared.required_params(), -pi, pi, rng);
    auto split_params = params;
    split_params.resize(next);
    for (auto [s, o] : origin) split_params[s] = params[o];
    const std::vector<double> w{0.2, -0.9, 1.3};
    const auto g_shared = adjoint_gradient(shared, params, sim::init_zero(3), w);
    const auto g_split = adjoint_gradient(split, split_params, sim::init_zero(3), w);
    std::vector<double> summed(3, 0.0);
    for (auto [s, o] : origin) summed[o] += g_split[s];
    CHECK(origin.size() == 9);
    for (std::size_t k = 0; k < 3; ++k) CHECK(g_shared[k] == Approx(summed[k]).epsilon(1e-12));
}

TEST_CASE("gradient is linear in the cotangent") {
    std::mt19937_64 rng(17);
    const model::QNetConfig cfg{2, 2, 1};
    const auto c = model::build_qnet_symbolic(cfg);
    const auto params = uniform(c.required_params(), -pi, pi, rng);
    const auto zero = sim::init_zero(4);
    const auto w1 = uniform(4, -1, 1, rng);
    const auto w2 = uniform(4, -1, 1, rng);
    const double a = 0.7, b = -1.6;
    std::vector<double> mix(4);
    for (std::size_t q = 0; q < 4; ++q) mix[q] = a * w1[q] + b * w2[q];
    const auto g1 = adjoint_gradient(c, params, zero, w1);
    const auto g2 = adjoint_gradient(c, params, zero, w2);
    const auto gm = adjoint_gradient(c, params, zero, mix);
    for (std::size_t k = 0; k < gm.size(); ++k)
        CHECK(gm[k] == Approx(a * g1[k] + b * g2[k]).epsilon(1e-10));
    const auto g0 = adjoint_gradient(c, params, zero, std::vector<double>(4, 0.0));
    for (double v : g0) CHECK(v == 0.0);
}

TEST_CASE("all-zero configuration is a stationary point of the table") {
    // x = 0 and zero angles: every output sits at <Z> = +1, the maximum.
    const model::QNetConfig cfg{2, 2, 1};
    const auto c = model::build_qnet_symbolic(cfg);
    const std::vector<double> params(c.required_params(), 0.0);
    const auto g = adjoint_gradient(c, params, sim::init_zero(4), std::vector<double>(4, 1.0));
    for (double v : g) CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("errors") {
    const auto c = single_rx();
    const std::vector<double> p{0.1};
    CHECK_THROWS_AS(adjoint_gradient(c, p, sim::init_zero(1), std::vector<double>{1.0},
                                     sim::NoiseSpec{0.01, 1}),
                    UnsupportedModeError);
    CHECK_NOTHROW(adjoint_gradient(c, p, sim::init_zero(1), std::vector<double>{1.0},
                                   sim::NoiseSpec{0.0, 1}));
    CHECK_THROWS_AS(adjoint_gradient(c, p, sim::init_zero(1), std::vector<double>{1.0, 2.0}),
                    ArgumentError);
    CHECK_THROWS_AS(adjoint_gradient(c, {}, sim::init_zero(1), std::vector<double>{1.0}),
                    BindingError);
    Circuit cp(2);
    cp.append(Op{GateKind::CPHASE, {1}, {0}, {Angle::ref(0)}});
    CHECK_THROWS_AS(adjoint_gradient(cp, p, sim::init_zero(2), std::vector<double>{1.0, 1.0}),
                    UnsupportedModeError);
    // the shift rule does not apply to CPHASE either, but finite differences do
    CHECK_NOTHROW(finite_difference_gradient(cp, p, sim::init_zero(2),
                                             std::vector<double>{1.0, 1.0}));
}

TEST_CASE("noisy shift rule uses common random numbers") {
    const model::QNetConfig cfg{2, 1, 1};
    const auto c = model::build_qnet_symbolic(cfg);
    std::mt19937_64 rng(23);
    const auto params = uniform(c.required_params(), -1, 1, rng);
    const std::vector<double> w{1.0, 1.0};
    const sim::NoiseSpec noise{0.02, 99};
    const auto a = parameter_shift_gradient(c, params, sim::init_zero(2), w, noise, 8);
    const auto b = parameter_shift_gradient(c, params, sim::init_zero(2), w, noise, 8);
    CHECK(a == b);
    const auto clean = adjoint_gradient(c, params, sim::init_zero(2), w);
    const auto silent = parameter_shift_gradient(c, params, sim::init_zero(2), w,
                                                 sim::NoiseSpec{0.0, 99}, 8);
    CHECK(max_diff(silent, clean) <= 1e-8);
    CHECK(max_diff(a, clean) > 0.0);
}
