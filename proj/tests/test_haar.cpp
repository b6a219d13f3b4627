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

using namespace tomoforge;

TEST_CASE("haar_state trivial dimension") {
    Rng rng(1);
    PureState s = haar_state(1, rng);
    REQUIRE(std::abs(s.amplitudes(0) - Complex(1.0, 0.0)) == 0.0);
}

TEST_CASE("haar_state low moments") {
    // E|<0|u>|^2 = 1/d and E|<0|u>|^4 = 2/(d(d+1)), from the symmetric
    // subspace trace identities.
    Rng rng(2026);
    for (long d : {2L, 4L}) {
        const int n = 10000;
        MeanVar m2, m4;
        for (int i = 0; i < n; ++i) {
            PureState u = haar_state(d, rng);
            const double p = std::norm(u.amplitudes(0));
            m2.add(p);
            m4.add(p * p);
        }
        REQUIRE(std::abs(m2.mean() - 1.0 / d) <= 3.0 * m2.std_of_mean());
        REQUIRE(std::abs(m4.mean() - 2.0 / (d * (d + 1.0))) <= 3.0 * m4.std_of_mean());
    }
}

TEST_CASE("haar_state overlap KS sanity") {
    // |<e_1|u>|^2 is Beta(1, d-1) for Haar u; documented sanity threshold
    // p >= 0.01 at 2e4 draws.
    Rng rng(17);
    const long d = 3;
    std::vector<double> xs(20000);
    for (auto& x : xs) x = std::norm(haar_state(d, rng).amplitudes(0));
    REQUIRE(ks_test_pvalue(xs, [&](double x) { return beta_cdf(x, 1.0, d - 1.0); }) > 0.01);
}

TEST_CASE("haar_unitary basics") {
    Rng rng(3);
    SECTION("d = 1 gives a unit-modulus scalar") {
        Operator u = haar_unitary(1, rng);
        REQUIRE(std::abs(std::abs(u.entries(0, 0)) - 1.0) < 1e-12);
    }
    SECTION("unitarity within 1e-10") {
        for (long d : {2L, 3L, 5L}) {
            Operator u = haar_unitary(d, rng);
            REQUIRE((u.entries.adjoint() * u.entries - Matrix::Identity(d, d))
                        .cwiseAbs()
                        .maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("haar_unitary first moment is the depolarizing twirl") {
    // E[U_ij conj(U_kl)] = delta_ik delta_jl / d (Weingarten first moment)
    Rng rng(4);
    const long d = 2;
    const int n = 10000;
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> acc =
        Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>::Zero(d * d, d * d);
    for (int t = 0; t < n; ++t) {
        Operator u = haar_unitary(d, rng);
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j)
                for (long k = 0; k < d; ++k)
                    for (long l = 0; l < d; ++l)
                        acc(i * d + j, k * d + l) += u.entries(i, j) * std::conj(u.entries(k, l));
    }
    acc /= static_cast<double>(n);
    const double tol = 5.0 / std::sqrt(static_cast<double>(n));
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j)
            for (long k = 0; k < d; ++k)
                for (long l = 0; l < d; ++l) {
                    const Complex expect = (i == k && j == l) ? Complex(1.0 / d, 0.0) : Complex(0.0);
                    REQUIRE(std::abs(acc(i * d + j, k * d + l) - expect) < tol);
                }
}

TEST_CASE("haar invariance under a fixed unitary") {
    // distribution of |<z|u>|^2 must be unchanged when u is replaced by V u
    Rng rng(5);
    Rng rng2(6);
    const long d = 3;
    Rng basis_rng = Rng::derive(1, "fixed-basis");
    Operator v = haar_unitary(d, basis_rng);
    std::vector<double> plain(8000), rotated(8000);
    for (auto& x : plain) x = std::norm(haar_state(d, rng).amplitudes(1));
    for (auto& x : rotated) {
        Vector u = v.entries * haar_state(d, rng2).amplitudes;
        x = std::norm(u(1));
    }
    REQUIRE(ks_two_sample_pvalue(plain, rotated) > 0.01);
}

TEST_CASE("hs_sample properties") {
    Rng rng(7);
    SECTION("r = 1 draws are pure") {
        Operator s = hs_sample(3, 1, rng);
        REQUIRE(s.is_psd());
        REQUIRE(s.is_unit_trace(1e-9));
        auto es = hermitian_eig(s.entries);
        REQUIRE(es.values.maxCoeff() == Catch::Approx(1.0).margin(1e-9));
    }
    SECTION("rank is at most min(d, r)") {
        Operator s = hs_sample(4, 2, rng);
        auto es = hermitian_eig(s.entries);
        long rank = 0;
        for (long i = 0; i < es.values.size(); ++i)
            if (es.values(i) > 1e-10) ++rank;
        REQUIRE(rank <= 2);
    }
}
