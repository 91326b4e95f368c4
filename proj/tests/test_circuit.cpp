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

#include "qnet/circuit/analysis.hpp"
#include "qnet/circuit/circuit.hpp"
#include "qnet/circuit/dump.hpp"
#include "qnet/errors.hpp"
#include "support/oracles.hpp"

#include <numbers>
#include <random>

using namespace qnet;
using namespace qnet::circuit;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

Circuit random_circuit(std::size_t n, std::size_t count, std::size_t num_params,
                       std::mt19937_64 &rng) {
    std::uniform_int_distribution<std::size_t> qd(0, n - 1);
    std::uniform_int_distribution<std::size_t> pd(0, num_params - 1);
    std::uniform_real_distribution<double> ang(-pi, pi);
    Circuit c(n);
    c.begin_layer("a");
    for (std::size_t i = 0; i < count; ++i) {
        if (i == count / 2) {
            c.begin_layer("b");
        }
        const auto a = qd(rng);
        auto b = qd(rng);
        while (n > 1 && b == a) b = qd(rng);
        auto angle = [&]() {
            return (rng() & 1U) ? Angle::ref(pd(rng), ang(rng), ang(rng))
                                : Angle::constant(ang(rng));
        };
        switch (rng() % 6) {
        case 0: c.append(Op{sim::GateKind::RX, {a}, {}, {angle()}, 0}); break;
        case 1: c.append(Op{sim::GateKind::RZ, {a}, {}, {angle()}, 0}); break;
        case 2: c.append(Op{sim::GateKind::ROT3, {a}, {}, {angle(), angle(), angle()}, 0}); break;
        case 3: c.append(sim::hadamard(a)); break;
        case 4: if (n > 1) c.append(sim::cphase(b, a, ang(rng))); break;
        default: if (n > 1) c.append(sim::mcx({b}, a)); break;
        }
    }
    return c;
}

} // namespace

TEST_CASE("bind_and_execute") {
    SUBCASE("empty circuit leaves the input unchanged") {
        std::mt19937_64 rng(1);
        const auto psi = sim::StateVector::from_amplitudes(oracle::random_state(3, rng));
        const Circuit c(3);
        CHECK(bind_and_execute(c, {}, psi) == psi);
    }
    SUBCASE("RX(@0) with params [pi]") {
        Circuit c(1);
        c.append(Op{sim::GateKind::RX, {0}, {}, {Angle::ref(0)}, 0});
        const std::vector<double> params{pi};
        const auto out = bind_and_execute(c, params, sim::init_zero(1));
        CHECK(sim::pauli_z_expectations(out)[0] == Approx(-1.0));
        CHECK_THROWS_AS(bind_and_execute(c, {}, sim::init_zero(1)), BindingError);
        try {
            bind_and_execute(c, {}, sim::init_zero(1));
        } catch (const BindingError &e) {
            CHECK(e.index() == 0);
        }
    }
    SUBCASE("scaled and offset references") {
        Circuit c(1);
        c.append(Op{sim::GateKind::RX, {0}, {}, {Angle::ref(1, 2.0, -0.5)}, 0});
        const std::vector<double> params{9.0, 0.75};
        const auto z = sim::pauli_z_expectations(
            bind_and_execute(c, params, sim::init_zero(1)));
        CHECK(z[0] == Approx(std::cos(1.0)));
    }
    SUBCASE("register mismatch and bad gates") {
        Circuit c(2);
        CHECK_THROWS_AS(bind_and_execute(c, {}, sim::init_zero(3)), ArgumentError);
        CHECK_THROWS_AS(c.append(sim::rx(2, 0.0)), IndexError);
        CHECK_THROWS_AS(c.append(sim::cnot(0, 0)), ArgumentError);
    }
}

TEST_CASE("execution equals the product of dense gate matrices") {
    std::mt19937_64 rng(21);
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto c = random_circuit(n, 30, 4, rng);
        std::vector<double> params{0.3, -1.2, 2.0, 0.7};
        const auto u = oracle::circuit_matrix(c, params);
        const auto psi = oracle::random_state(n, rng);
        const auto expected = oracle::apply(u, psi);
        const auto input = sim::StateVector::from_amplitudes(psi);
        CHECK(oracle::max_abs_diff(expected, bind_and_execute(c, params, input).amplitudes()) <
              1e-11);
        CHECK(oracle::max_abs_diff(expected, execute_reference(c, params, input).amplitudes()) <
              1e-11);
    }
}

TEST_CASE("adjoint circuit undoes the circuit") {
    std::mt19937_64 rng(4);
    const auto c = random_circuit(4, 60, 3, rng);
    const std::vector<double> params{0.4, 1.1, -2.3};
    const auto psi = oracle::random_state(4, rng);
    const auto input = sim::StateVector::from_amplitudes(psi);
    const auto out = bind_and_execute(adjoint(c), params,
                                      bind_and_execute(c, params, input));
    CHECK(oracle::max_abs_diff(psi, out.amplitudes()) <= 1e-10);
}

TEST_CASE("noise hooks") {
    Circuit c(2);
    c.append(sim::hadamard(0));
    c.append(sim::cnot(0, 1));
    const auto input = sim::init_zero(2);
    SUBCASE("p = 0 equals the noise-free run") {
        const auto a = bind_and_execute(c, {}, input);
        const auto b = bind_and_execute(c, {}, input, sim::NoiseSpec{0.0, 3});
        CHECK(a == b);
    }
    SUBCASE("same seed, same trajectory") {
        const sim::NoiseSpec noise{0.4, 99};
        CHECK(bind_and_execute(c, {}, input, noise) == bind_and_execute(c, {}, input, noise));
        const auto e1 = expectations(c, {}, input, noise, 16);
        const auto e2 = expectations(c, {}, input, noise, 16);
        CHECK(e1 == e2);
    }
    SUBCASE("invalid probability") {
        CHECK_THROWS_AS(bind_and_execute(c, {}, input, sim::NoiseSpec{1.2, 0}),
                        ArgumentError);
    }
}

TEST_CASE("gate counts") {
    CHECK(count_gates(Circuit(3)).empty());
    Circuit c(3);
    c.begin_layer("x");
    c.append(sim::rx(0, 0.1));
    c.append(sim::rx(1, 0.1));
    c.append(sim::mcx({0, 1}, 2));
    const auto counts = count_gates(c);
    CHECK(counts.at("RX") == 2);
    CHECK(counts.at("MCX") == 1);
    CHECK(count_gates(c, "x") == counts);
    CHECK(count_gates(c, "y").empty());
}

TEST_CASE("depth analysis") {
    SUBCASE("list scheduling on disjoint and overlapping qubits") {
        Circuit c(3);
        c.append(sim::hadamard(0));
        c.append(sim::hadamard(1));
        c.append(sim::hadamard(2));
        CHECK(analyze_depth(c).total_depth == 1);
        c.append(sim::cnot(0, 1));
        CHECK(analyze_depth(c).total_depth == 2);
        c.append(sim::mcx({0, 1}, 2)); // costs 3
        CHECK(analyze_depth(c).total_depth == 5);
    }
    SUBCASE("per-layer depth and bounds on random circuits") {
        std::mt19937_64 rng(8);
        for (int trial = 0; trial < 20; ++trial) {
            const auto c = random_circuit(5, 40, 3, rng);
            const CostModel cost;
            const auto report = analyze_depth(c, cost);
            std::vector<std::size_t> busy(5, 0);
            for (const auto &op : c.ops()) {
                for (auto q : op.qubits()) busy[q] += cost.cost(op);
            }
            CHECK(report.total_depth >= *std::max_element(busy.begin(), busy.end()));
            for (const auto &[tag, depth] : report.per_layer_depth) {
                CHECK(report.total_depth >= depth);
            }
        }
    }
    SUBCASE("swapping adjacent gates on disjoint qubits keeps the depth") {
        std::mt19937_64 rng(9);
        for (int trial = 0; trial < 20; ++trial) {
            const auto c = random_circuit(5, 40, 2, rng);
            const auto base = analyze_depth(c).total_depth;
            for (std::size_t i = 0; i + 1 < c.ops().size(); ++i) {
                const auto qa = c.ops()[i].qubits();
                const auto qb = c.ops()[i + 1].qubits();
                bool disjoint = true;
                for (auto a : qa)
                    for (auto b : qb) disjoint = disjoint && a != b;
                if (!disjoint) continue;
                Circuit swapped(5);
                for (std::size_t k = 0; k < c.ops().size(); ++k) {
                    const std::size_t src = k == i ? i + 1 : (k == i + 1 ? i : k);
                    swapped.append(c.ops()[src]);
                }
                CHECK(analyze_depth(swapped).total_depth == base);
            }
        }
    }
}

TEST_CASE("dump format") {
    Circuit c(4);
    c.begin_layer("enc");
    c.append(Op{sim::GateKind::RX, {0}, {}, {Angle::ref(8)}, 0});
    c.append(sim::cphase(0, 1, pi / 2));
    c.begin_layer("ff[0]");
    c.append(sim::mcx({0, 1, 2}, 3));
    c.append(sim::mcx({}, 2));
    c.append(sim::swap(0, 3));
    c.append(Op{sim::GateKind::ROT3, {2}, {},
                {Angle::ref(0), Angle::ref(1, 2.0, -0.5), Angle::constant(0.0)}, 0});
    const auto text = dump(c);
    CHECK(text ==
          "# qubits 4\n"
          "# layer enc\n"
          "RX q0 @8\n"
          "CPHASE q1 c0 1.5707963267948966\n"
          "# layer ff[0]\n"
          "MCX q3 c0,1,2\n"
          "MCX q2 c\n"
          "SWAP q0,3\n"
          "ROT3 q2 @0 @1*2-0.5 0\n");
    CHECK(parse(text) == c);

    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        const auto r = random_circuit(4, 30, 5, rng);
        CHECK(parse(dump(r)) == r);
    }
    CHECK_THROWS_AS(parse("RX q0 0.1\n"), ArgumentError);
    CHECK_THROWS_AS(parse("# qubits 2\nFOO q0\n"), ArgumentError);
    CHECK_THROWS_WITH(parse("# qubits 2\nRX q5 0.1\n"), doctest::Contains("line 2"));
}
