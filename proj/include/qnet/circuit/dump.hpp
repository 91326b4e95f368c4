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

#include <string>
#include <string_view>

namespace qnet::circuit {

/**
 * Text form, one gate per line:
 *
 *     # qubits 4
 *     # layer enc
 *     RX q0 @8
 *     CPHASE q1 c0 1.5707963267948966
 *     MCX q3 c0,1,2
 *     ROT3 q2 @0 @1*2-0.5 0
 *
 * Constants are printed with round-trip precision.
 */
std::string dump(const Circuit &circuit);

/// Inverse of dump(); throws ArgumentError with the line number on bad input.
Circuit parse(std::string_view text);

} // namespace qnet::circuit
