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
#include "qnet/train/schedule.hpp"

#include "qnet/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qnet::train {

double global_lr(const LrSchedule &s) {
    return s.initial_lr * static_cast<double>(s.batch_size) * static_cast<double>(s.num_nodes);
}

double lr_at(const LrSchedule &s, std::size_t step) {
    if (s.total_steps == 0) throw ArgumentError("total_steps must be positive");
    if (!(s.alpha > 0.0 && s.alpha <= 1.0)) throw ArgumentError("alpha must lie in (0, 1]");
    if (step > s.total_steps) {
        throw ArgumentError("step " + std::to_string(step) + " exceeds total_steps " +
                            std::to_string(s.total_steps));
    }
    const double frac = static_cast<double>(step) / static_cast<double>(s.total_steps);
    const double decay = 0.5 * (1.0 + std::cos(frac * std::numbers::pi));
    return global_lr(s) * (decay * (1.0 - s.alpha) + s.alpha);
}

} // namespace qnet::train
