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

#include <stdexcept>
#include <string>

namespace qnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Requested register exceeds the simulator's memory guard.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// Qubit or element index outside its valid range.
class IndexError : public Error {
  public:
    using Error::Error;
};

/// Malformed argument: wrong shape, duplicate qubits, probability outside [0,1].
class ArgumentError : public Error {
  public:
    using Error::Error;
};

/// A circuit references a parameter slot the bound vector does not cover.
class BindingError : public Error {
  public:
    explicit BindingError(std::size_t index, std::size_t length)
        : Error("parameter index " + std::to_string(index) +
                " is not bound (parameter vector length " +
                std::to_string(length) + ")"),
          index_(index) {}
    [[nodiscard]] std::size_t index() const noexcept { return index_; }

  private:
    std::size_t index_;
};

/// Differentiation mode not available for the requested execution.
class UnsupportedModeError : public Error {
  public:
    using Error::Error;
};

/// Bad input data: malformed file rows, labels out of range, empty masks.
class DataError : public Error {
  public:
    using Error::Error;
};

/// Optimization failure such as a non-finite gradient.
class TrainingError : public Error {
  public:
    using Error::Error;
};

/// Invalid run configuration (maps to CLI exit code 2).
class ConfigError : public Error {
  public:
    using Error::Error;
};

} // namespace qnet
