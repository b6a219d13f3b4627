// Copyright 2026 The tomoforge authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace tomoforge {

/// Bad arguments, shapes, or configuration. Maps to CLI exit code 1.
class validation_error : public std::invalid_argument {
  public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical failure at runtime (sampler abort, clustering failure, ...).
/// Maps to CLI exit code 2.
class numerical_error : public std::runtime_error {
  public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Hard cap on the total Hilbert-space dimension of any constructed operator.
inline constexpr long kMaxTotalDimension = 10000;

inline void check_dimension_cap(long total) {
    if (total > kMaxTotalDimension) {
        throw validation_error("total Hilbert-space dimension " + std::to_string(total) +
                               " exceeds the cap of " + std::to_string(kMaxTotalDimension));
    }
}

} // namespace tomoforge
