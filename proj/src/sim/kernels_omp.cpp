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
#include "qnet/sim/kernels.hpp"

#include <algorithm>
#include <array>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qnet::sim::kernels {

namespace {

constexpr std::size_t kReduceChunk = std::size_t{1} << 12;

bool go_parallel(std::size_t size) {
#ifdef _OPENMP
    return size >= kParallelThreshold && omp_in_parallel() == 0;
#else
    (void)size;
    return false;
#endif
}

/// Insert a zero at bit position `pos` of `k`.
inline std::size_t insert_zero(std::size_t k, std::size_t pos) {
    const std::size_t low = k & ((std::size_t{1} << pos) - 1);
    return ((k >> pos) << (pos + 1)) | low;
}

/// Insert zeros at two distinct positions.
inline std::size_t insert_zeros(std::size_t k, std::size_t a, std::size_t b) {
    const auto lo = std::min(a, b);
    const auto hi = std::max(a, b);
    return insert_zero(insert_zero(k, lo), hi);
}

using Index = std::ptrdiff_t;

/// Runs body(k) for k in [0, n): an OpenMP loop for large states, a plain
/// loop otherwise so small states skip the parallel-region setup.
template <class Body> inline void for_each_index(Index n, std::size_t size, Body &&body) {
    if (go_parallel(size)) {
#pragma omp parallel for
        for (Index k = 0; k < n; ++k) {
            body(k);
        }
    } else {
        for (Index k = 0; k < n; ++k) {
            body(k);
        }
    }
}

} // namespace

void Parallel::matrix_1q(std::span<Complex> amps, std::size_t q, const Mat2 &m) {
    const std::size_t bit = std::size_t{1} << q;
    const auto half = static_cast<Index>(amps.size() / 2);
    // Interleaved (re, im) doubles; std::complex guarantees this layout.
    double *data = reinterpret_cast<double *>(amps.data());
    const double m0r = m[0].real(), m0i = m[0].imag(), m1r = m[1].real(), m1i = m[1].imag();
    const double m2r = m[2].real(), m2i = m[2].imag(), m3r = m[3].real(), m3i = m[3].imag();
    for_each_index(half, amps.size(), [&](Index k) {
        const std::size_t i0 = 2 * insert_zero(static_cast<std::size_t>(k), q);
        const std::size_t i1 = i0 + 2 * bit;
        const double a0r = data[i0], a0i = data[i0 + 1];
        const double a1r = data[i1], a1i = data[i1 + 1];
        data[i0] = m0r * a0r - m0i * a0i + m1r * a1r - m1i * a1i;
        data[i0 + 1] = m0r * a0i + m0i * a0r + m1r * a1i + m1i * a1r;
        data[i1] = m2r * a0r - m2i * a0i + m3r * a1r - m3i * a1i;
        data[i1 + 1] = m2r * a0i + m2i * a0r + m3r * a1i + m3i * a1r;
    });
}

void Parallel::phase_1q(std::span<Complex> amps, std::size_t q, Complex d0,
                        Complex d1) {
    const std::size_t bit = std::size_t{1} << q;
    const auto half = static_cast<Index>(amps.size() / 2);
    Complex *data = amps.data();
    for_each_index(half, amps.size(), [&](Index k) {
        const std::size_t i0 = insert_zero(static_cast<std::size_t>(k), q);
        data[i0] *= d0;
        data[i0 | bit] *= d1;
    });
}

void Parallel::controlled_phase(std::span<Complex> amps, std::size_t control,
                                std::size_t target, Complex phase) {
    const std::size_t mask = (std::size_t{1} << control) | (std::size_t{1} << target);
    const auto quarter = static_cast<Index>(amps.size() / 4);
    Complex *data = amps.data();
    for_each_index(quarter, amps.size(), [&](Index k) {
        data[insert_zeros(static_cast<std::size_t>(k), control, target) | mask] *=
            phase;
    });
}

void Parallel::swap(std::span<Complex> amps, std::size_t a, std::size_t b) {
    const std::size_t ba = std::size_t{1} << a;
    const std::size_t bb = std::size_t{1} << b;
    const auto quarter = static_cast<Index>(amps.size() / 4);
    Complex *data = amps.data();
    for_each_index(quarter, amps.size(), [&](Index k) {
        const std::size_t base = insert_zeros(static_cast<std::size_t>(k), a, b);
        std::swap(data[base | ba], data[base | bb]);
    });
}

void Parallel::mcx(std::span<Complex> amps, std::uint64_t control_mask,
                   std::size_t target) {
    const std::size_t bit = std::size_t{1} << target;
    const auto half = static_cast<Index>(amps.size() / 2);
    Complex *data = amps.data();
    for_each_index(half, amps.size(), [&](Index k) {
        const std::size_t i0 = insert_zero(static_cast<std::size_t>(k), target);
        if ((i0 & control_mask) == control_mask) {
            std::swap(data[i0], data[i0 | bit]);
        }
    });
}

void Parallel::pauli_y(std::span<Complex> amps, std::size_t q) {
    const std::size_t bit = std::size_t{1} << q;
    const auto half = static_cast<Index>(amps.size() / 2);
    Complex *data = amps.data();
    const Complex i_unit{0, 1};
    for_each_index(half, amps.size(), [&](Index k) {
        const std::size_t i0 = insert_zero(static_cast<std::size_t>(k), q);
        const Complex a0 = data[i0];
        data[i0] = -i_unit * data[i0 | bit];
        data[i0 | bit] = i_unit * a0;
    });
}

double Parallel::expectation_z(std::span<const Complex> amps, std::size_t q) {
    const std::size_t bit = std::size_t{1} << q;
    const std::size_t chunks = (amps.size() + kReduceChunk - 1) / kReduceChunk;
    std::vector<double> partial(chunks, 0.0);
    for_each_index(static_cast<Index>(chunks), amps.size(), [&](Index c) {
        const std::size_t begin = static_cast<std::size_t>(c) * kReduceChunk;
        const std::size_t end = std::min(amps.size(), begin + kReduceChunk);
        double acc = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            acc += (i & bit) != 0 ? -std::norm(amps[i]) : std::norm(amps[i]);
        }
        partial[static_cast<std::size_t>(c)] = acc;
    });
    double total = 0.0;
    for (double p : partial) {
        total += p;
    }
    return total;
}

std::vector<double> Parallel::expectation_z_all(std::span<const Complex> amps,
                                                std::size_t num_qubits) {
    const std::size_t chunks = (amps.size() + kReduceChunk - 1) / kReduceChunk;
    std::vector<double> partial(chunks * num_qubits, 0.0);
    for_each_index(static_cast<Index>(chunks), amps.size(), [&](Index c) {
        const std::size_t begin = static_cast<std::size_t>(c) * kReduceChunk;
        const std::size_t end = std::min(amps.size(), begin + kReduceChunk);
        const std::size_t len = end - begin;
        double *row = partial.data() + static_cast<std::size_t>(c) * num_qubits;
        // Chunks are power-of-two sized and aligned, so bits at or above
        // log2(len) are constant inside one chunk.
        std::array<double, kReduceChunk> p;
        double total = 0.0;
        for (std::size_t k = 0; k < len; ++k) {
            p[k] = std::norm(amps[begin + k]);
            total += p[k];
        }
        for (std::size_t q = 0; q < num_qubits; ++q) {
            const std::size_t stride = std::size_t{1} << q;
            if (stride >= len) {
                row[q] = ((begin >> q) & 1U) != 0 ? -total : total;
                continue;
            }
            double acc = 0.0;
            for (std::size_t blk = 0; blk < len; blk += 2 * stride) {
                for (std::size_t k = 0; k < stride; ++k) {
                    acc += p[blk + k] - p[blk + stride + k];
                }
            }
            row[q] = acc;
        }
    });
    std::vector<double> out(num_qubits, 0.0);
    for (std::size_t c = 0; c < chunks; ++c) {
        for (std::size_t q = 0; q < num_qubits; ++q) {
            out[q] += partial[c * num_qubits + q];
        }
    }
    return out;
}

Complex Parallel::inner(std::span<const Complex> a, std::span<const Complex> b) {
    const std::size_t chunks = (a.size() + kReduceChunk - 1) / kReduceChunk;
    std::vector<Complex> partial(chunks);
    for_each_index(static_cast<Index>(chunks), a.size(), [&](Index c) {
        const std::size_t begin = static_cast<std::size_t>(c) * kReduceChunk;
        const std::size_t end = std::min(a.size(), begin + kReduceChunk);
        Complex acc{0, 0};
        for (std::size_t i = begin; i < end; ++i) {
            acc += std::conj(a[i]) * b[i];
        }
        partial[static_cast<std::size_t>(c)] = acc;
    });
    Complex total{0, 0};
    for (const auto &p : partial) {
        total += p;
    }
    return total;
}

void Parallel::weighted_z(std::span<const Complex> in,
                          std::span<const double> weights,
                          std::span<Complex> out) {
    const auto size = static_cast<Index>(in.size());
    for_each_index(size, in.size(), [&](Index k) {
        const auto i = static_cast<std::size_t>(k);
        double w = 0.0;
        for (std::size_t q = 0; q < weights.size(); ++q) {
            w += ((i >> q) & 1U) != 0 ? -weights[q] : weights[q];
        }
        out[i] = w * in[i];
    });
}

} // namespace qnet::sim::kernels
