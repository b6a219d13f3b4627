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

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace tomoforge {

/// Partition of n: weakly decreasing positive parts.
struct YoungDiagram {
    std::vector<int> parts;

    YoungDiagram() = default;
    explicit YoungDiagram(std::vector<int> p) : parts(std::move(p)) {
        for (size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] < 1) throw validation_error("partition parts must be positive");
            if (i > 0 && parts[i] > parts[i - 1])
                throw validation_error("partition parts must be weakly decreasing");
        }
    }

    int n() const {
        int s = 0;
        for (int p : parts) s += p;
        return s;
    }
    int length() const { return static_cast<int>(parts.size()); }

    bool operator==(const YoungDiagram& o) const { return parts == o.parts; }
    bool operator<(const YoungDiagram& o) const { return parts < o.parts; }

    std::string to_string() const {
        std::string s = "(";
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts[i]);
        }
        return s + ")";
    }

    std::vector<int> conjugate() const {
        if (parts.empty()) return {};
        std::vector<int> conj(static_cast<size_t>(parts[0]), 0);
        for (int p : parts)
            for (int j = 0; j < p; ++j) conj[static_cast<size_t>(j)]++;
        return conj;
    }

    /// hook(i, j) = arm + leg + 1, boxes 0-based.
    int hook_length(int i, int j) const {
        const auto conj = conjugate();
        return parts[static_cast<size_t>(i)] - j + conj[static_cast<size_t>(j)] - i - 1;
    }
};

/// All partitions of n with at most max_len parts, in descending
/// lexicographic order: (n) first, (1,...,1) last.
inline std::vector<YoungDiagram> enumerate_partitions(int n, int max_len) {
    if (n < 1) throw validation_error("enumerate_partitions: n >= 1 required");
    std::vector<YoungDiagram> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        if (static_cast<int>(cur.size()) >= max_len) return;
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

/// Number of SYTs of shape lambda (hook length formula).
inline long specht_dim(const YoungDiagram& lambda) {
    long hooks = 1;
    for (int i = 0; i < lambda.length(); ++i)
        for (int j = 0; j < lambda.parts[static_cast<size_t>(i)]; ++j)
            hooks *= lambda.hook_length(i, j);
    return factorial(lambda.n()) / hooks;
}

/// Number of SSYTs of shape lambda with alphabet [d] (hook content formula);
/// zero when the diagram is taller than d.
inline long weyl_dim(const YoungDiagram& lambda, long d) {
    if (lambda.length() > d) return 0;
    long long num = 1, den = 1;
    for (int i = 0; i < lambda.length(); ++i)
        for (int j = 0; j < lambda.parts[static_cast<size_t>(i)]; ++j) {
            num *= d + (j - i);
            den *= lambda.hook_length(i, j);
        }
    return static_cast<long>(num / den);
}

/// Standard Young tableau: strictly increasing rows and columns. The content
/// vector lists column minus row for the box holding each of 1..n; it
/// determines the tableau within a shape, and across shapes too.
struct StandardTableau {
    YoungDiagram shape;
    std::vector<std::vector<int>> rows; // rows[i][j] in 1..n
    std::vector<int> contents;          // contents[v-1] = col - row of box holding v

    /// Row and column (0-based) of the box holding value v.
    std::pair<int, int> position_of(int v) const {
        for (int i = 0; i < static_cast<int>(rows.size()); ++i)
            for (int j = 0; j < static_cast<int>(rows[static_cast<size_t>(i)].size()); ++j)
                if (rows[static_cast<size_t>(i)][static_cast<size_t>(j)] == v) return {i, j};
        throw validation_error("value not present in tableau");
    }
};

namespace detail {
inline void syt_fill(const YoungDiagram& lambda, std::vector<std::vector<int>>& rows,
                     std::vector<int>& row_fill, int next, std::vector<StandardTableau>& out) {
    const int n = lambda.n();
    if (next > n) {
        StandardTableau t;
        t.shape = lambda;
        t.rows = rows;
        t.contents.resize(static_cast<size_t>(n));
        for (int v = 1; v <= n; ++v) {
            auto [i, j] = t.position_of(v);
            t.contents[static_cast<size_t>(v - 1)] = j - i;
        }
        out.push_back(std::move(t));
        return;
    }
    for (int i = 0; i < lambda.length(); ++i) {
        const int filled = row_fill[static_cast<size_t>(i)];
        if (filled >= lambda.parts[static_cast<size_t>(i)]) continue;
        if (i > 0 && row_fill[static_cast<size_t>(i - 1)] <= filled) continue;
        rows[static_cast<size_t>(i)].push_back(next);
        row_fill[static_cast<size_t>(i)]++;
        syt_fill(lambda, rows, row_fill, next + 1, out);
        rows[static_cast<size_t>(i)].pop_back();
        row_fill[static_cast<size_t>(i)]--;
    }
}
} // namespace detail

/// All SYTs of shape lambda, sorted by descending lexicographic content
/// vector. This ordering is part of the serialized Schur contract.
inline std::vector<StandardTableau> enumerate_syt(const YoungDiagram& lambda) {
    std::vector<StandardTableau> out;
    std::vector<std::vector<int>> rows(static_cast<size_t>(lambda.length()));
    std::vector<int> fill(static_cast<size_t>(lambda.length()), 0);
    detail::syt_fill(lambda, rows, fill, 1, out);
    std::sort(out.begin(), out.end(), [](const StandardTableau& a, const StandardTableau& b) {
        return a.contents > b.contents;
    });
    return out;
}

/// Young's orthogonal representation of the adjacent transposition
/// (k, k+1) (1-based values), in the content-sorted SYT basis. Symmetric,
/// orthogonal, real.
inline Eigen::MatrixXd yor_matrix(const YoungDiagram& lambda, int k) {
    const int n = lambda.n();
    if (k < 1 || k + 1 > n) throw validation_error("yor_matrix: transposition out of range");
    const auto syts = enumerate_syt(lambda);
    const long m = static_cast<long>(syts.size());

    std::map<std::vector<int>, long> index_of;
    for (long a = 0; a < m; ++a) index_of[syts[static_cast<size_t>(a)].contents] = a;

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
    for (long a = 0; a < m; ++a) {
        const auto& c = syts[static_cast<size_t>(a)].contents;
        const int r = c[static_cast<size_t>(k)] - c[static_cast<size_t>(k - 1)]; // axial distance
        if (r == 1) {
            out(a, a) = 1.0; // same row
        } else if (r == -1) {
            out(a, a) = -1.0; // same column
        } else {
            out(a, a) = 1.0 / r;
            std::vector<int> swapped = c;
            std::swap(swapped[static_cast<size_t>(k - 1)], swapped[static_cast<size_t>(k)]);
            const long b = index_of.at(swapped);
            out(a, b) = std::sqrt(1.0 - 1.0 / (static_cast<double>(r) * r));
        }
    }
    return out;
}

/// kappa_lambda(pi) as a product of adjacent-transposition YOR matrices along
/// a bubble-sort decomposition of pi.
inline Eigen::MatrixXd yor_representation(const YoungDiagram& lambda, const Perm& pi) {
    if (static_cast<int>(pi.size()) != lambda.n())
        throw validation_error("yor_representation: permutation degree mismatch");
    const long m = specht_dim(lambda);
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(m, m);
    for (int k : adjacent_decomposition(pi)) out *= yor_matrix(lambda, k + 1);
    return out;
}

/// chi_lambda(pi) = tr kappa_lambda(pi).
inline double character(const YoungDiagram& lambda, const Perm& pi) {
    return yor_representation(lambda, pi).trace();
}

} // namespace tomoforge
