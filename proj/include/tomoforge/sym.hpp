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

#include "permutations.hpp"

#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <unordered_map>

namespace tomoforge {

/// d[n] = dim of the symmetric subspace of (C^d)^{tensor n} = binom(n+d-1, n).
inline long sym_dim(long d, int n) {
    // binomial via the multiplicative formula; exact for desk-scale inputs
    long long num = 1, den = 1;
    for (int k = 1; k <= n; ++k) {
        num *= d - 1 + k;
        den *= k;
        const long long g = std::__gcd(num, den);
        num /= g;
        den /= g;
    }
    return static_cast<long>(num / den);
}

struct SymDim {
    long d;
    int n;
    long value;

    SymDim(long d_, int n_) : d(d_), n(n_), value(sym_dim(d_, n_)) {}
};

namespace detail {
/// Memoized realized permutation operators, keyed on (pi, n, d). Safe for
/// concurrent reads with single-writer insertion.
class PermOperatorCache {
  public:
    static PermOperatorCache& instance() {
        static PermOperatorCache cache;
        return cache;
    }

    Matrix get(const Perm& pi, long d) {
        const Key key{pi, d};
        {
            std::shared_lock lock(mutex_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        Matrix m = permutation_operator(pi, d).entries;
        std::unique_lock lock(mutex_);
        return cache_.emplace(key, std::move(m)).first->second;
    }

  private:
    using Key = std::pair<Perm, long>;
    struct KeyHash {
        size_t operator()(const Key& k) const {
            std::uint64_t h = 0xcbf29ce484222325ULL ^ static_cast<std::uint64_t>(k.second);
            for (int v : k.first) h = (h ^ static_cast<std::uint64_t>(v + 1)) * 0x100000001b3ULL;
            return static_cast<size_t>(h);
        }
    };
    std::unordered_map<Key, Matrix, KeyHash> cache_;
    std::shared_mutex mutex_;
};
} // namespace detail

inline Matrix realized_permutation(const Perm& pi, long d) {
    return detail::PermOperatorCache::instance().get(pi, d);
}

/// Projector onto the symmetric subspace: the average of all P(pi).
inline Operator sym_projector(int n, long d) {
    if (n < 1 || d < 1) throw validation_error("sym_projector: n, d >= 1 required");
    RegisterShape shape = RegisterShape::uniform(n, d);
    Matrix m = Matrix::Zero(shape.total(), shape.total());
    for (const auto& pi : enumerate_symmetric_group(n)) m += realized_permutation(pi, d);
    m /= static_cast<double>(factorial(n));
    return Operator(std::move(shape), std::move(m));
}

/// Exact evaluation of the Haar integral of |u><u|^{tensor m}: equals
/// Pi_sym^{m,d} / d[m]. Every moment-operator integral expands through this.
inline Operator exact_haar_projector_integral(int m, long d) {
    Operator pi = sym_projector(m, d);
    pi.entries /= static_cast<double>(sym_dim(d, m));
    return pi;
}

/// Jucys-Murphy element X_i realized on (C^d)^{tensor n}.
inline Matrix realized_jucys_murphy(int i, int n, long d) {
    Matrix m = Matrix::Zero(static_cast<long>(std::pow(d, n)), static_cast<long>(std::pow(d, n)));
    for (int j = 1; j < i; ++j) m += realized_permutation(perm_transposition(n, j - 1, i - 1), d);
    return m;
}

/// The k-th GPS moment operator on (C^d)^{tensor (n+k)}, built from the
/// Jucys-Murphy closed forms:
///   k=1:  (1/n) X_{n+1} (Pi_sym^n tensor I)
///   k=2:  (1/n^2)(X_{n+2} X_{n+1} + (n+1,n+2))(Pi_sym^n tensor I^2) - Lower
/// with Lower = ((d+n)/n^2) d[n] / d[n+2] * Pi_sym^{n+2}.
inline Operator moment_operator(int k, int n, long d) {
    if (k != 1 && k != 2) throw validation_error("moment_operator: only k in {1,2} supported");
    const int m = n + k;
    const Operator pi_n = sym_projector(n, d);
    const Operator pi_ext = kron(pi_n, Operator::identity(RegisterShape::uniform(k, d)));

    if (k == 1) {
        Matrix x = realized_jucys_murphy(n + 1, m, d);
        return Operator(pi_ext.shape, (x * pi_ext.entries) / static_cast<double>(n));
    }

    Matrix x2 = realized_jucys_murphy(n + 2, m, d);
    Matrix x1 = realized_jucys_murphy(n + 1, m, d);
    Matrix swap_last = realized_permutation(perm_transposition(m, n, n + 1), d);
    Matrix main = (x2 * x1 + swap_last) * pi_ext.entries / static_cast<double>(n) /
                  static_cast<double>(n);

    const double lower_coeff = static_cast<double>(d + n) / (static_cast<double>(n) * n) *
                               static_cast<double>(sym_dim(d, n)) /
                               static_cast<double>(sym_dim(d, n + 2));
    Matrix lower = lower_coeff * sym_projector(n + 2, d).entries;
    return Operator(pi_ext.shape, main - lower);
}

} // namespace tomoforge
