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

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace tomoforge {

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace detail {
/// Continued fraction for the regularized incomplete beta (Lentz).
inline double betacf(double a, double b, double x) {
    constexpr int max_iter = 300;
    constexpr double eps = 3e-14, fpmin = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) return h;
    }
    throw numerical_error("betacf: continued fraction did not converge");
}
} // namespace detail

/// Regularized incomplete beta I_x(a, b); the CDF of Beta(a, b).
inline double beta_cdf(double x, double a, double b) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::betacf(a, b, x) / a;
    return 1.0 - front * detail::betacf(b, a, 1.0 - x) / b;
}

/// Kolmogorov tail Q(t) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2).
inline double kolmogorov_q(double t) {
    if (t < 1e-3) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 101; ++k) {
        const double term = std::exp(-2.0 * k * k * t * t);
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-12) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// One-sample KS statistic against a CDF.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
    if (xs.empty()) throw validation_error("ks_statistic: empty sample");
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
    }
    return d;
}

/// Asymptotic one-sample KS p-value with the Stephens small-sample correction.
inline double ks_test_pvalue(const std::vector<double>& xs,
                             const std::function<double(double)>& cdf) {
    const double d = ks_statistic(xs, cdf);
    const double sn = std::sqrt(static_cast<double>(xs.size()));
    return kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
}

inline double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw validation_error("ks two-sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    return d;
}

inline double ks_two_sample_pvalue(const std::vector<double>& a, const std::vector<double>& b) {
    const double d = ks_two_sample_statistic(a, b);
    const double ne = static_cast<double>(a.size()) * static_cast<double>(b.size()) /
                      static_cast<double>(a.size() + b.size());
    const double sn = std::sqrt(ne);
    return kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
}

/// Streaming mean / variance (Welford).
class MeanVar {
  public:
    void add(double x) {
        ++count_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
    }
    long count() const { return count_; }
    double mean() const { return mean_; }
    double variance() const { return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0; }
    double std_of_mean() const {
        return count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
    }

  private:
    long count_ = 0;
    double mean_ = 0.0, m2_ = 0.0;
};

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw validation_error("loglog_slope: need matched samples, at least two");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double median(std::vector<double> xs) {
    if (xs.empty()) throw validation_error("median: empty sample");
    std::sort(xs.begin(), xs.end());
    // even count: lower median, deterministic
    return xs[(xs.size() - 1) / 2];
}

} // namespace tomoforge
