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
#include "qnet/model/qnet_circuit.hpp"

#include "qnet/errors.hpp"
#include "qnet/sim/state_vector.hpp"

#include <numbers>

namespace qnet::model {

using circuit::Angle;
using circuit::Circuit;
using circuit::Op;
using sim::GateKind;

std::string to_string(Ablation a) {
    switch (a) {
    case Ablation::full:
        return "full";
    case Ablation::mixture_only:
        return "mixture_only";
    case Ablation::feedforward_only:
        return "feedforward_only";
    }
    return "full";
}

Ablation parse_ablation(const std::string &s) {
    if (s == "full") {
        return Ablation::full;
    }
    if (s == "mixture_only") {
        return Ablation::mixture_only;
    }
    if (s == "feedforward_only") {
        return Ablation::feedforward_only;
    }
    throw ArgumentError("unknown ablation '" + s +
                        "' (expected full, mixture_only or feedforward_only)");
}

void validate_shape(const QNetConfig &config) {
    if (config.n == 0 || config.d == 0 || config.blocks == 0) {
        throw ArgumentError("QNet config needs n, d, blocks >= 1 (got n=" +
                            std::to_string(config.n) + ", d=" +
                            std::to_string(config.d) + ", blocks=" +
                            std::to_string(config.blocks) + ")");
    }
}

void validate(const QNetConfig &config) {
    validate_shape(config);
    sim::check_capacity(config.n * config.d);
}

std::size_t count_parameters(const QNetConfig &config) {
    return 9 * config.d * config.blocks;
}

double positional_angle(const QNetConfig &c, std::size_t token) {
    return static_cast<double>(token) * std::numbers::pi / static_cast<double>(c.n);
}

namespace {

Circuit encoding_with(const QNetConfig &config, auto rx_angle) {
    validate_shape(config);
    Circuit c(num_qubits(config));
    c.begin_layer("enc");
    for (std::size_t i = 0; i < config.n; ++i) {
        for (std::size_t j = 0; j < config.d; ++j) {
            const auto q = qubit_index(config, i, j);
            c.append(Op{GateKind::RX, {q}, {}, {rx_angle(i, j)}, 0});
            c.append(sim::rz(q, positional_angle(config, i)));
        }
    }
    return c;
}

void append_rot3(Circuit &c, std::size_t q, std::size_t base) {
    c.append(Op{GateKind::ROT3,
                {q},
                {},
                {Angle::ref(base), Angle::ref(base + 1), Angle::ref(base + 2)},
                0});
}

void append_g(Circuit &c, const QNetConfig &config, std::size_t token) {
    std::vector<std::size_t> controls;
    for (std::size_t j = 0; j < config.d; ++j) {
        c.append(sim::hadamard(qubit_index(config, token, j)));
        if (j + 1 < config.d) {
            controls.push_back(qubit_index(config, token, j));
        }
    }
    c.append(sim::mcx(std::move(controls), qubit_index(config, token, config.d - 1)));
    for (std::size_t j = 0; j < config.d; ++j) {
        c.append(sim::hadamard(qubit_index(config, token, j)));
    }
}

void check_block(const QNetConfig &config, std::size_t block) {
    validate_shape(config);
    if (block >= config.blocks) {
        throw ArgumentError("block " + std::to_string(block) + " out of range for " +
                            std::to_string(config.blocks) + " block(s)");
    }
}

} // namespace

Circuit build_encoding(const QNetConfig &config, const Matrix &x) {
    if (x.rows != config.n || x.cols != config.d) {
        throw ArgumentError("token matrix is " + std::to_string(x.rows) + "x" +
                            std::to_string(x.cols) + ", expected " +
                            std::to_string(config.n) + "x" +
                            std::to_string(config.d));
    }
    return encoding_with(config, [&](std::size_t i, std::size_t j) {
        return Angle::constant(x(i, j));
    });
}

Circuit build_encoding_symbolic(const QNetConfig &config, std::size_t input_offset) {
    return encoding_with(config, [&](std::size_t i, std::size_t j) {
        return Angle::ref(input_offset + qubit_index(config, i, j));
    });
}

Circuit build_mixture_layer(const QNetConfig &config, std::size_t block) {
    check_block(config, block);
    Circuit c(num_qubits(config));
    c.begin_layer("mix[" + std::to_string(block) + "]");
    for (std::size_t j = 0; j < config.d; ++j) {
        std::vector<std::size_t> wires(config.n);
        for (std::size_t i = 0; i < config.n; ++i) {
            wires[i] = qubit_index(config, i, j);
        }
        c.append_qft(wires, false, false);
        const auto base = ParameterLayout::mixture(config, block, j);
        for (auto q : wires) {
            append_rot3(c, q, base);
        }
        c.append_qft(wires, true, false);
    }
    return c;
}

Circuit build_feedforward_layer(const QNetConfig &config, std::size_t block) {
    check_block(config, block);
    Circuit c(num_qubits(config));
    c.begin_layer("ff[" + std::to_string(block) + "]");
    for (std::size_t i = 0; i < config.n; ++i) {
        for (std::size_t layer = 0; layer < 2; ++layer) {
            for (std::size_t j = 0; j < config.d; ++j) {
                append_rot3(c, qubit_index(config, i, j),
                            ParameterLayout::feedforward(config, block, layer, j));
            }
            append_g(c, config, i);
        }
    }
    return c;
}

Circuit build_g_operator(const QNetConfig &config, std::size_t token) {
    validate_shape(config);
    if (token >= config.n) {
        throw ArgumentError("token " + std::to_string(token) + " out of range");
    }
    Circuit c(num_qubits(config));
    append_g(c, config, token);
    return c;
}

namespace {

Circuit with_blocks(const QNetConfig &config, Circuit c, Ablation ablation) {
    for (std::size_t b = 0; b < config.blocks; ++b) {
        if (ablation != Ablation::feedforward_only) {
            c.append_circuit(build_mixture_layer(config, b));
        }
        if (ablation != Ablation::mixture_only) {
            c.append_circuit(build_feedforward_layer(config, b));
        }
    }
    return c;
}

} // namespace

Circuit build_qnet(const QNetConfig &config, const Matrix &x, Ablation ablation) {
    return with_blocks(config, build_encoding(config, x), ablation);
}

Circuit build_qnet_symbolic(const QNetConfig &config, Ablation ablation) {
    return with_blocks(config,
                       build_encoding_symbolic(config, count_parameters(config)),
                       ablation);
}

std::vector<double> flatten(const Matrix &m) { return m.data; }

Matrix reshape(std::span<const double> flat, std::size_t n, std::size_t d) {
    if (flat.size() != n * d) {
        throw ArgumentError("cannot reshape " + std::to_string(flat.size()) +
                            " values to " + std::to_string(n) + "x" +
                            std::to_string(d));
    }
    Matrix m(n, d);
    m.data.assign(flat.begin(), flat.end());
    return m;
}

std::vector<double> join_inputs(std::span<const double> params, const Matrix &x) {
    std::vector<double> joined(params.begin(), params.end());
    joined.insert(joined.end(), x.data.begin(), x.data.end());
    return joined;
}

Matrix qnet_forward(const QNetConfig &config, const Matrix &x,
                    std::span<const double> params,
                    const std::optional<sim::NoiseSpec> &noise, Ablation ablation,
                    std::size_t trajectories) {
    validate(config);
    if (x.rows != config.n || x.cols != config.d) {
        throw ArgumentError("token matrix shape does not match the config");
    }
    if (params.size() != count_parameters(config)) {
        throw ArgumentError("parameter table has " + std::to_string(params.size()) +
                            " entries, expected " +
                            std::to_string(count_parameters(config)));
    }
    const Circuit c = build_qnet_symbolic(config, ablation);
    const auto z = circuit::expectations(c, join_inputs(params, x),
                                         sim::StateVector::zero(num_qubits(config)),
                                         noise, trajectories);
    return reshape(z, config.n, config.d);
}

} // namespace qnet::model
