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
#include "qnet/circuit/analysis.hpp"

#include <algorithm>
#include <vector>

namespace qnet::circuit {

std::size_t CostModel::cost(const Op &op) const {
    switch (op.kind) {
    case sim::GateKind::RX:
    case sim::GateKind::RZ:
    case sim::GateKind::ROT3:
    case sim::GateKind::H:
        return single_qubit;
    case sim::GateKind::CNOT:
    case sim::GateKind::CPHASE:
    case sim::GateKind::SWAP:
        return two_qubit;
    case sim::GateKind::MCX:
        return mcx_per_qubit * (op.controls.size() + op.targets.size());
    }
    return 0;
}

namespace {

template <class Filter>
std::size_t schedule(const Circuit &circuit, const CostModel &cost, Filter keep) {
    std::vector<std::size_t> free_at(circuit.num_qubits(), 0);
    std::size_t depth = 0;
    for (const auto &op : circuit.ops()) {
        if (!keep(op)) {
            continue;
        }
        const auto qubits = op.qubits();
        std::size_t start = 0;
        for (auto q : qubits) {
            start = std::max(start, free_at[q]);
        }
        const std::size_t end = start + cost.cost(op);
        for (auto q : qubits) {
            free_at[q] = end;
        }
        depth = std::max(depth, end);
    }
    return depth;
}

} // namespace

std::size_t layer_depth(const Circuit &circuit, const std::string &layer,
                        const CostModel &cost) {
    return schedule(circuit, cost, [&](const Op &op) {
        return circuit.layers()[op.layer] == layer;
    });
}

DepthReport analyze_depth(const Circuit &circuit, const CostModel &cost) {
    DepthReport report;
    report.total_depth = schedule(circuit, cost, [](const Op &) { return true; });
    for (const auto &op : circuit.ops()) {
        const auto &tag = circuit.layers()[op.layer];
        if (!report.per_layer_depth.contains(tag)) {
            report.per_layer_depth[tag] = layer_depth(circuit, tag, cost);
        }
    }
    report.gate_count = count_gates(circuit);
    return report;
}

std::map<std::string, std::size_t> count_gates(const Circuit &circuit) {
    std::map<std::string, std::size_t> counts;
    for (const auto &op : circuit.ops()) {
        ++counts[std::string(sim::kind_name(op.kind))];
    }
    return counts;
}

std::map<std::string, std::size_t> count_gates(const Circuit &circuit,
                                               const std::string &layer) {
    std::map<std::string, std::size_t> counts;
    for (const auto &op : circuit.ops()) {
        if (circuit.layers()[op.layer] == layer) {
            ++counts[std::string(sim::kind_name(op.kind))];
        }
    }
    return counts;
}

} // namespace qnet::circuit
