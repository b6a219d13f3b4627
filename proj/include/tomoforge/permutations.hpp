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

#include "operator.hpp"

#include <algorithm>
#include <map>

namespace tomoforge {

inline constexpr int kMaxSymmetricGroupDegree = 8; // factorial blowup guard

inline long factorial(int n) {
    long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline std::vector<Perm> enumerate_symmetric_group(int n) {
    if (n < 1 || n > kMaxSymmetricGroupDegree)
        throw validation_error("symmetric group degree capped at n <= 8");
    Perm p = perm_identity(n);
    std::vector<Perm> all;
    all.reserve(static_cast<size_t>(factorial(n)));
    do {
        all.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return all;
}

/// Write pi as a product of adjacent transpositions s_i = (i, i+1), 0-based:
/// pi = s_{out[0]} o s_{out[1]} o ... o s_{out.back()}.
/// Bubble sort on the one-line notation; identity = pi o s_{k1} o ... o s_{km}
/// implies pi = s_{km} o ... o s_{k1}.
inline std::vector<int> adjacent_decomposition(const Perm& pi) {
    Perm w = pi;
    std::vector<int> swaps;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i] > w[i + 1]) {
                std::swap(w[i], w[i + 1]);
                swaps.push_back(static_cast<int>(i));
                changed = true;
            }
        }
    }
    std::reverse(swaps.begin(), swaps.end());
    return swaps;
}

/// Element of the group algebra C[S_n]: finitely many permutations with
/// complex coefficients.
struct GroupAlgebraElement {
    int n = 1;
    std::map<Perm, Complex> terms;

    static GroupAlgebraElement zero(int n) { return {n, {}}; }

    static GroupAlgebraElement identity(int n) {
        GroupAlgebraElement e{n, {}};
        e.terms[perm_identity(n)] = 1.0;
        return e;
    }

    GroupAlgebraElement& add(const Perm& p, Complex c) {
        terms[p] += c;
        return *this;
    }

    friend GroupAlgebraElement operator+(const GroupAlgebraElement& a,
                                         const GroupAlgebraElement& b) {
        if (a.n != b.n) throw validation_error("group algebra: degree mismatch");
        GroupAlgebraElement out = a;
        for (const auto& [p, c] : b.terms) out.terms[p] += c;
        return out;
    }

    friend GroupAlgebraElement operator*(const GroupAlgebraElement& a,
                                         const GroupAlgebraElement& b) {
        if (a.n != b.n) throw validation_error("group algebra: degree mismatch");
        GroupAlgebraElement out = GroupAlgebraElement::zero(a.n);
        for (const auto& [p, cp] : a.terms)
            for (const auto& [q, cq] : b.terms) out.terms[perm_compose(p, q)] += cp * cq;
        return out;
    }

    friend GroupAlgebraElement operator*(Complex c, const GroupAlgebraElement& a) {
        GroupAlgebraElement out = a;
        for (auto& [p, v] : out.terms) v *= c;
        return out;
    }

    /// Realize as an operator on (C^d)^{tensor n} via P(.), linearly.
    Operator realize(long d) const {
        RegisterShape shape = RegisterShape::uniform(n, d);
        Matrix m = Matrix::Zero(shape.total(), shape.total());
        for (const auto& [p, c] : terms) {
            if (std::abs(c) == 0.0) continue;
            m += c * permutation_operator(p, d).entries;
        }
        return Operator(std::move(shape), std::move(m));
    }
};

/// Jucys-Murphy element X_i = (1,i) + ... + (i-1,i) in C[S_n]; X_1 = 0.
/// Indices here follow the 1-based convention, so jucys_murphy(1, n) is zero.
inline GroupAlgebraElement jucys_murphy(int i, int n) {
    if (i < 1 || i > n) throw validation_error("jucys_murphy: need 1 <= i <= n");
    GroupAlgebraElement x = GroupAlgebraElement::zero(n);
    for (int j = 1; j < i; ++j) x.add(perm_transposition(n, j - 1, i - 1), 1.0);
    return x;
}

/// Sum over all of S_n, for cross-checking the Jucys-Murphy product formula.
inline GroupAlgebraElement symmetric_group_sum(int n) {
    GroupAlgebraElement s = GroupAlgebraElement::zero(n);
    for (const auto& p : enumerate_symmetric_group(n)) s.add(p, 1.0);
    return s;
}

} // namespace tomoforge
