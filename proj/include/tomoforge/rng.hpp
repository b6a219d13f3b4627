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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace tomoforge {

/// splitmix64 step; used both as a seed scrambler and for stream derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Stream-derivation rule: the generator for (master seed, subsystem tag,
/// trial index) is mt19937_64 seeded with
///   splitmix64(master ^ fnv1a64(tag) ^ (trial * golden)).
/// Distinct tags and trial indices give independent streams; reruns with the
/// same triple reproduce the stream exactly. All variate transforms below are
/// implemented here (not delegated to std:: distributions) so output is pinned
/// by this file alone.
inline constexpr const char* kRngFamily = "mt19937_64+splitmix64-derive";

class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        engine_.seed(splitmix64(s));
    }

    static Rng derive(std::uint64_t master, std::string_view tag, std::uint64_t trial = 0) {
        return Rng(master ^ fnv1a64(tag) ^ (trial * 0x9e3779b97f4a7c15ULL));
    }

    std::uint64_t raw() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0, 1); never returns 0.
    double uniform_positive() {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return u;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t uniform_index(std::uint64_t n) {
        // rejection to kill modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Standard normal via Box-Muller, one cached variate.
    double normal() {
        if (has_cache_) {
            has_cache_ = false;
            return cache_;
        }
        const double u1 = uniform_positive();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        cache_ = r * std::sin(theta);
        has_cache_ = true;
        return r * std::cos(theta);
    }

    std::complex<double> complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

    /// Gamma(alpha, 1) via Marsaglia-Tsang squeeze; boosting handles alpha < 1.
    double gamma(double alpha) {
        if (alpha <= 0.0) throw validation_error("gamma: alpha must be positive");
        if (alpha < 1.0) {
            const double u = uniform_positive();
            return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
        }
        const double d = alpha - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_positive();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double beta(double a, double b) {
        const double x = gamma(a);
        const double y = gamma(b);
        return x / (x + y);
    }

    /// Index j sampled with probability weights[j] / sum(weights).
    template <typename Vec>
    int categorical(const Vec& weights) {
        double total = 0.0;
        for (long i = 0; i < static_cast<long>(weights.size()); ++i) {
            const double w = weights[i];
            if (w < -1e-12) throw numerical_error("categorical: negative weight");
            total += std::max(0.0, w);
        }
        if (total <= 0.0) throw numerical_error("categorical: zero total weight");
        double u = uniform() * total;
        for (long i = 0; i < static_cast<long>(weights.size()); ++i) {
            u -= std::max(0.0, static_cast<double>(weights[i]));
            if (u <= 0.0) return static_cast<int>(i);
        }
        return static_cast<int>(weights.size()) - 1;
    }

  private:
    std::mt19937_64 engine_;
    bool has_cache_ = false;
    double cache_ = 0.0;
};

} // namespace tomoforge
