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
// Serial reference kernels against the OpenMP kernels on random states.
// Usage: bench_kernels [min_qubits] [max_qubits] [repeats]

#include "qnet/sim/gates.hpp"
#include "qnet/sim/kernels.hpp"
#include "qnet/sim/state_vector.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace qnet::sim;

namespace {

std::vector<Complex> random_state(std::size_t qubits, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<Complex> amps(std::size_t{1} << qubits);
    double norm = 0.0;
    for (auto &a : amps) {
        a = {g(rng), g(rng)};
        norm += std::norm(a);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    return amps;
}

double best_ms(std::size_t repeats, const std::function<void()> &fn) {
    double best = 1e300;
    for (std::size_t r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

double max_diff(const std::vector<Complex> &a, const std::vector<Complex> &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

struct Case {
    std::string name;
    std::function<void(std::span<Complex>)> serial;
    std::function<void(std::span<Complex>)> parallel;
};

} // namespace

int main(int argc, char **argv) {
    const std::size_t lo = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 12;
    const std::size_t hi = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 20;
    const std::size_t repeats = argc > 3 ? std::strtoul(argv[3], nullptr, 10) : 5;

    std::printf("threads %d\n", omp_get_max_threads());
    std::printf("%-18s %6s %12s %12s %8s %10s\n", "kernel", "qubits", "serial_ms", "omp_ms",
                "speedup", "max_diff");
    for (std::size_t n = lo; n <= hi; n += 4) {
        const std::size_t q = n / 2;
        const Mat2 rot = rot3_matrix(0.3, -1.1, 0.7);
        const Complex ph = std::polar(1.0, 0.9);
        const std::vector<Case> cases{
            {"rot3", [&](auto a) { kernels::Serial::matrix_1q(a, q, rot); },
             [&](auto a) { kernels::Parallel::matrix_1q(a, q, rot); }},
            {"rz", [&](auto a) { kernels::Serial::phase_1q(a, q, std::conj(ph), ph); },
             [&](auto a) { kernels::Parallel::phase_1q(a, q, std::conj(ph), ph); }},
            {"cphase", [&](auto a) { kernels::Serial::controlled_phase(a, 0, n - 1, ph); },
             [&](auto a) { kernels::Parallel::controlled_phase(a, 0, n - 1, ph); }},
            {"swap", [&](auto a) { kernels::Serial::swap(a, 1, n - 2); },
             [&](auto a) { kernels::Parallel::swap(a, 1, n - 2); }},
            {"mcx", [&](auto a) { kernels::Serial::mcx(a, 0b101, n - 1); },
             [&](auto a) { kernels::Parallel::mcx(a, 0b101, n - 1); }},
        };
        const auto base = random_state(n, n);
        for (const auto &c : cases) {
            auto s = base;
            auto p = base;
            const double ts = best_ms(repeats, [&] { c.serial(s); });
            const double tp = best_ms(repeats, [&] { c.parallel(p); });
            std::printf("%-18s %6zu %12.3f %12.3f %8.2f %10.2e\n", c.name.c_str(), n, ts, tp,
                        ts / tp, max_diff(s, p));
        }
        double zs = 0.0, zp = 0.0;
        const double ts = best_ms(repeats, [&] {
            zs = kernels::Serial::expectation_z_all(base, n)[q];
        });
        const double tp = best_ms(repeats, [&] {
            zp = kernels::Parallel::expectation_z_all(base, n)[q];
        });
        std::printf("%-18s %6zu %12.3f %12.3f %8.2f %10.2e\n", "expectation_z_all", n, ts, tp,
                    ts / tp, std::abs(zs - zp));
    }
    return 0;
}
