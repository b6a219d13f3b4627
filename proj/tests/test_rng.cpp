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

#include "tomoforge/rng.hpp"
#include "tomoforge/stats.hpp"

using namespace tomoforge;

TEST_CASE("streams are reproducible and tag-separated") {
    Rng a = Rng::derive(42, "unit", 7);
    Rng b = Rng::derive(42, "unit", 7);
    Rng c = Rng::derive(42, "unit", 8);
    Rng d = Rng::derive(42, "other", 7);
    for (int i = 0; i < 100; ++i) REQUIRE(a.raw() == b.raw());
    bool differs_trial = false, differs_tag = false;
    Rng a2 = Rng::derive(42, "unit", 7);
    for (int i = 0; i < 100; ++i) {
        const auto x = a2.raw();
        differs_trial |= (x != c.raw());
        differs_tag |= (x != d.raw());
    }
    REQUIRE(differs_trial);
    REQUIRE(differs_tag);
}

TEST_CASE("uniform moments") {
    Rng rng(123);
    const int n = 200000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        s1 += u;
        s2 += u * u;
    }
    REQUIRE(s1 / n == Catch::Approx(0.5).margin(3.0 / std::sqrt(12.0 * n)));
    REQUIRE(s2 / n == Catch::Approx(1.0 / 3.0).margin(0.005));
}

TEST_CASE("normal sampler passes a KS test") {
    Rng rng(77);
    std::vector<double> xs(20000);
    for (auto& x : xs) x = rng.normal();
    const double p = ks_test_pvalue(xs, [](double x) { return normal_cdf(x); });
    REQUIRE(p > 0.01);
}

TEST_CASE("gamma sampler matches mean and variance") {
    Rng rng(31);
    for (double alpha : {0.5, 1.0, 2.5, 6.0}) {
        const int n = 50000;
        double s1 = 0.0, s2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double g = rng.gamma(alpha);
            s1 += g;
            s2 += g * g;
        }
        const double mean = s1 / n;
        const double var = s2 / n - mean * mean;
        REQUIRE(mean == Catch::Approx(alpha).epsilon(0.05));
        REQUIRE(var == Catch::Approx(alpha).epsilon(0.1));
    }
}

TEST_CASE("beta sampler against regularized incomplete beta CDF") {
    Rng rng(99);
    const double a = 4.0, b = 3.0;
    std::vector<double> xs(20000);
    for (auto& x : xs) x = rng.beta(a, b);
    const double p = ks_test_pvalue(xs, [&](double x) { return beta_cdf(x, a, b); });
    REQUIRE(p > 0.01);
}

TEST_CASE("categorical respects weights") {
    Rng rng(5);
    std::vector<double> w{0.1, 0.0, 0.6, 0.3};
    std::vector<int> counts(4, 0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) counts[rng.categorical(w)]++;
    REQUIRE(counts[1] == 0);
    for (int k : {0, 2, 3})
        REQUIRE(static_cast<double>(counts[k]) / n == Catch::Approx(w[k]).margin(0.01));
}
