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

#include <catch2/catch_amalgamated.hpp>

#include "tomoforge/haar.hpp"
#include "tomoforge/stats.hpp"
#include "tomoforge/sym.hpp"

using namespace tomoforge;

TEST_CASE("symmetric subspace dimensions") {
    REQUIRE(sym_dim(2, 2) == 3);
    REQUIRE(sym_dim(2, 3) == 4);
    REQUIRE(sym_dim(3, 2) == 6);
    // ratio law d[n]/d[n+1] = (n+1)/(n+d)
    for (long d : {2L, 3L, 5L})
        for (int n = 1; n <= 5; ++n)
            REQUIRE(static_cast<double>(sym_dim(d, n)) / sym_dim(d, n + 1) ==
                    Catch::Approx((n + 1.0) / (n + d)).margin(1e-12));
}

TEST_CASE("sym_projector basics") {
    SECTION("n = 1 is the identity") {
        Operator p = sym_projector(1, 3);
        REQUIRE((p.entries - Matrix::Identity(3, 3)).norm() == 0.0);
    }
    SECTION("two qubits: (I + SWAP)/2, rank 3") {
        Operator p = sym_projector(2, 2);
        Matrix swap = realized_permutation(perm_transposition(2, 0, 1), 2);
        REQUIRE((p.entries - 0.5 * (Matrix::Identity(4, 4) + swap)).norm() < 1e-14);
        REQUIRE(std::lround(p.entries.real().trace()) == 3);
    }
    SECTION("projector law, rank, and permutation invariance") {
        for (auto [n, d] : std::vector<std::pair<int, long>>{{2, 2}, {3, 2}, {2, 3}, {3, 3}}) {
            Operator p = sym_projector(n, d);
            REQUIRE(p.is_projector(1e-10));
            REQUIRE(std::lround(p.entries.real().trace()) == sym_dim(d, n));
            for (const auto& pi : enumerate_symmetric_group(n))
                REQUIRE((realized_permutation(pi, d) * p.entries - p.entries).cwiseAbs().maxCoeff() <
                        1e-10);
        }
    }
    SECTION("commutes with U tensor powers") {
        Rng rng(8);
        Operator p = sym_projector(3, 2);
        Operator u = haar_unitary(2, rng);
        Matrix u3 = kron_power(u, 3).entries;
        REQUIRE((u3 * p.entries - p.entries * u3).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("jucys_murphy elements") {
    REQUIRE(jucys_murphy(1, 3).terms.empty());
    auto x2 = jucys_murphy(2, 3);
    REQUIRE(x2.terms.size() == 1);
    REQUIRE(x2.terms.count(perm_transposition(3, 0, 1)) == 1);

    // (e+X_3)(e+X_2)(e+X_1) = sum over S_3, all six coefficients equal to 1
    auto prod = (GroupAlgebraElement::identity(3) + jucys_murphy(3, 3)) *
                (GroupAlgebraElement::identity(3) + jucys_murphy(2, 3)) *
                (GroupAlgebraElement::identity(3) + jucys_murphy(1, 3));
    REQUIRE(prod.terms.size() == 6);
    for (const auto& [p, c] : prod.terms) REQUIRE(std::abs(c - 1.0) < 1e-15);
}

TEST_CASE("exact Haar projector integral") {
    SECTION("m = 1 is I/d") {
        Operator h = exact_haar_projector_integral(1, 3);
        REQUIRE((h.entries - Matrix::Identity(3, 3) / 3.0).norm() < 1e-14);
    }
    SECTION("m = 2, d = 2 is (I + SWAP)/6") {
        Operator h = exact_haar_projector_integral(2, 2);
        Matrix swap = realized_permutation(perm_transposition(2, 0, 1), 2);
        REQUIRE((h.entries - (Matrix::Identity(4, 4) + swap) / 6.0).norm() < 1e-14);
    }
    SECTION("Monte-Carlo cross-check at m = 2, d = 2") {
        Rng rng(2025);
        Matrix acc = Matrix::Zero(4, 4);
        const int n = 100000;
        for (int i = 0; i < n; ++i) {
            PureState u = haar_state(2, rng);
            acc += kron_power(u.projector(), 2).entries;
        }
        acc /= static_cast<double>(n);
        REQUIRE((acc - exact_haar_projector_integral(2, 2).entries).norm() < 5e-3);
    }
}

TEST_CASE("moment operator closed forms") {
    SECTION("k=1, n=1, d=2 is the SWAP") {
        Operator m = moment_operator(1, 1, 2);
        Matrix swap = realized_permutation(perm_transposition(2, 0, 1), 2);
        REQUIRE((m.entries - swap).cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("Jucys-Murphy route equals the exact-integral route") {
        for (auto [n, d] : std::vector<std::pair<int, long>>{{2, 2}, {3, 2}, {2, 3}}) {
            const double dn = static_cast<double>(sym_dim(d, n));

            // independent construction of M^(1) from projector integrals
            Operator int_np1 = exact_haar_projector_integral(n + 1, d);
            Operator int_n = exact_haar_projector_integral(n, d);
            Matrix m1_direct = dn * ((d + n) / static_cast<double>(n) * int_np1.entries -
                                     kron(int_n, Operator::identity(d)).entries /
                                         static_cast<double>(n));
            REQUIRE((moment_operator(1, n, d).entries - m1_direct).cwiseAbs().maxCoeff() < 1e-9);

            // independent construction of M^(2)
            Operator int_np2 = exact_haar_projector_integral(n + 2, d);
            Matrix t10 = kron(int_np1, Operator::identity(d)).entries;
            Matrix last_swap = realized_permutation(perm_transposition(n + 2, n, n + 1), d);
            Matrix t01 = last_swap * t10 * last_swap;
            Matrix t00 = kron(int_n, Operator::identity(RegisterShape::uniform(2, d))).entries;
            const double nn = static_cast<double>(n) * n;
            Matrix m2_direct =
                dn * ((d + n) * (d + n) / nn * int_np2.entries - (d + n) / nn * (t10 + t01) +
                      t00 / nn);
            REQUIRE((moment_operator(2, n, d).entries - m2_direct).cwiseAbs().maxCoeff() < 1e-9);
        }
    }
    SECTION("helper identity, both sides traced over the appended registers") {
        for (auto [n, d, k] : std::vector<std::tuple<int, long, int>>{{2, 2, 1}, {2, 2, 2}, {1, 3, 2}}) {
            const int m = n + k;
            // lhs: d[n] (d+n)^{rising k} * integral of |u><u|^{(n+k)}
            double rising = 1.0;
            for (int j = 0; j < k; ++j) rising *= d + n + j;
            Matrix lhs = sym_dim(d, n) * rising * exact_haar_projector_integral(m, d).entries;
            // rhs: (e + X_{n+k}) ... (e + X_{n+1}) (Pi_sym^n tensor I^k)
            const long t = lhs.rows();
            Matrix rhs = kron(sym_projector(n, d), Operator::identity(RegisterShape::uniform(k, d)))
                             .entries;
            for (int i = n + 1; i <= m; ++i)
                rhs = (Matrix::Identity(t, t) + realized_jucys_murphy(i, m, d)) * rhs;
            REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);

            Operator lhs_op(RegisterShape::uniform(m, d), lhs);
            Operator rhs_op(RegisterShape::uniform(m, d), rhs);
            std::set<int> keep;
            for (int i = 0; i < n; ++i) keep.insert(i);
            REQUIRE((partial_trace(lhs_op, keep).entries - partial_trace(rhs_op, keep).entries)
                        .cwiseAbs()
                        .maxCoeff() < 1e-9);
        }
    }
    SECTION("Lower term of M^(2) is PSD") {
        // positive multiple of an integral of rank-one tensor squares
        for (auto [n, d] : std::vector<std::pair<int, long>>{{2, 2}, {2, 3}}) {
            const double coeff = (d + n) / (static_cast<double>(n) * n) * sym_dim(d, n) /
                                 static_cast<double>(sym_dim(d, n + 2));
            Operator lower(RegisterShape::uniform(n + 2, d),
                           coeff * sym_projector(n + 2, d).entries);
            REQUIRE(lower.is_psd());
        }
    }
    SECTION("unsupported k") { REQUIRE_THROWS_AS(moment_operator(3, 2, 2), validation_error); }
}

TEST_CASE("symmetric projector recurrence") {
    for (long d : {2L, 3L}) {
        for (int n = 2; n <= 4; ++n) {
            for (int m = 1; m < n; ++m) {
                Matrix rhs =
                    kron(sym_projector(m, d), Operator::identity(RegisterShape::uniform(n - m, d)))
                        .entries;
                for (int i = m + 1; i <= n; ++i) {
                    const long t = rhs.rows();
                    rhs = (Matrix::Identity(t, t) + realized_jucys_murphy(i, n, d)) * rhs /
                          static_cast<double>(i);
                }
                REQUIRE((sym_projector(n, d).entries - rhs).cwiseAbs().maxCoeff() < 1e-10);
            }
        }
    }
}
