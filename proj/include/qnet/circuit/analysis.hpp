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
#pragma once

#include "qnet/circuit/circuit.hpp"

#include <cstddef>
#include <map>
#include <string>

namespace qnet::circuit {

/// Depth charged per gate during scheduling.
struct CostModel {
    std::size_t single_qubit{1};
    std::size_t two_qubit{1};
    /// MCX over m qubits (controls + target) costs m * this.
    std::size_t mcx_per_qubit{1};

    [[nodiscard]] std::size_t cost(const Op &op) const;
};

struct DepthReport {
    std::size_t total_depth{0};
    /// Depth of each layer scheduled on its own, keyed by layer tag.
    std::map<std::string, std::size_t> per_layer_depth;
    std::map<std::string, std::size_t> gate_count;
};

/// List scheduling: each gate starts once all of its qubits are free.
DepthReport analyze_depth(const Circuit &circuit, const CostModel &cost = {});

/// Exact gate counts by kind name; empty map for an empty circuit.
std::map<std::string, std::size_t> count_gates(const Circuit &circuit);

/// Gate counts restricted to one layer tag.
std::map<std::string, std::size_t> count_gates(const Circuit &circuit,
                                               const std::string &layer);

/// Schedule depth of the ops tagged `layer` in isolation (0 if absent).
std::size_t layer_depth(const Circuit &circuit, const std::string &layer,
                        const CostModel &cost = {});

} // namespace qnet::circuit
