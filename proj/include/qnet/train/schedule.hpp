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

#include <cstddef>

namespace qnet::train {

struct LrSchedule {
    double initial_lr{3e-4};
    std::size_t batch_size{128};
    std::size_t num_nodes{1};
    std::size_t total_steps{500};
    double alpha{1e-2};
};

/// initial_lr * batch_size * num_nodes
double global_lr(const LrSchedule &s);

/// global_lr * (0.5 (1 + cos(pi step / total)) (1 - alpha) + alpha).
/// ArgumentError when step > total_steps or the schedule is malformed.
double lr_at(const LrSchedule &s, std::size_t step);

} // namespace qnet::train
