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

#include "errors.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace tomoforge {

/// Ordered list of subsystem dimensions. A shape with n equal entries d
/// represents (C^d)^{tensor n}. Flat indices are row-major over registers:
/// index = sum_k i_k * stride_k with stride_k = prod_{l>k} dims_l.
class RegisterShape {
  public:
    RegisterShape() = default;

    explicit RegisterShape(std::vector<long> dims) : dims_(std::move(dims)) {
        for (long d : dims_) {
            if (d < 1) throw validation_error("register dimension must be >= 1");
        }
        check_dimension_cap(total());
    }

    /// n registers of equal dimension d.
    static RegisterShape uniform(int n, long d) {
        if (n < 0) throw validation_error("register count must be >= 0");
        return RegisterShape(std::vector<long>(static_cast<size_t>(n), d));
    }

    static RegisterShape single(long d) { return RegisterShape({d}); }

    const std::vector<long>& dims() const { return dims_; }
    int num_registers() const { return static_cast<int>(dims_.size()); }
    long dim(int k) const { return dims_.at(static_cast<size_t>(k)); }

    long total() const {
        long t = 1;
        for (long d : dims_) {
            if (d != 0 && t > kMaxTotalDimension * kMaxTotalDimension / d)
                throw validation_error("register shape overflows dimension bookkeeping");
            t *= d;
        }
        return t;
    }

    /// Concatenation, as produced by tensor products.
    RegisterShape concat(const RegisterShape& other) const {
        std::vector<long> d = dims_;
        d.insert(d.end(), other.dims_.begin(), other.dims_.end());
        return RegisterShape(std::move(d));
    }

    /// Flat index of a register index tuple.
    long flatten(const std::vector<long>& idx) const {
        long flat = 0;
        for (size_t k = 0; k < dims_.size(); ++k) flat = flat * dims_[k] + idx[k];
        return flat;
    }

    /// Register index tuple of a flat index.
    std::vector<long> unflatten(long flat) const {
        std::vector<long> idx(dims_.size());
        for (size_t k = dims_.size(); k-- > 0;) {
            idx[k] = flat % dims_[k];
            flat /= dims_[k];
        }
        return idx;
    }

    bool operator==(const RegisterShape& o) const { return dims_ == o.dims_; }
    bool operator!=(const RegisterShape& o) const { return dims_ != o.dims_; }

    std::string to_string() const {
        std::string s = "[";
        for (size_t k = 0; k < dims_.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(dims_[k]);
        }
        return s + "]";
    }

  private:
    std::vector<long> dims_;
};

} // namespace tomoforge
