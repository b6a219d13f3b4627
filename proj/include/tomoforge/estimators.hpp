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

#include "purification.hpp"

#include <functional>
#include <optional>

namespace tomoforge {

/// One estimator output: a Hermitian unit-trace matrix (PSD only for the
/// Hayashi-style and traced-out pure estimates) plus sampling metadata.
struct EstimatorSample {
    Operator estimate;
    std::string algorithm;
    std::optional<YoungDiagram> lambda;
    std::string outcome;
    std::uint64_t seed = 0;
};

/// Random measurement bases for the single-copy estimator. Exact Haar by
/// default; the hook exists so an approximate t-design backend can be swapped
/// in without touching the estimator.
using BasisSource = std::function<Operator(long /*d*/, Rng&)>;

inline Operator haar_basis_source(long d, Rng& rng) { return haar_unitary(d, rng); }

/// One unentangled round: rotate by a random basis V, measure in the
/// computational basis, return (d+1) V^dagger |j><j| V - I. Unbiased for
/// |psi><psi|.
inline Operator gkkt_single_round_with_basis(const PureState& psi, const Operator& basis,
                                             Rng& rng) {
    const long d = psi.amplitudes.size();
    const Vector rotated = basis.entries * psi.amplitudes;
    std::vector<double> probs(static_cast<size_t>(d));
    for (long j = 0; j < d; ++j) probs[static_cast<size_t>(j)] = std::norm(rotated(j));
    const long j = rng.categorical(probs);
    const Vector row = basis.entries.row(j).adjoint(); // V^dagger |j>
    Matrix est = (d + 1.0) * (row * row.adjoint()) - Matrix::Identity(d, d);
    return Operator(psi.shape, std::move(est));
}

inline Operator gkkt_single_round(const PureState& psi, Rng& rng,
                                  const BasisSource& basis_source = haar_basis_source) {
    const Operator v = basis_source(psi.amplitudes.size(), rng);
    return gkkt_single_round_with_basis(psi, v, rng);
}

/// Average n single rounds and return the top eigenvector of the average.
/// A degenerate top eigenvalue is a measure-zero event; ties resolve to
/// whatever orthonormal basis the eigensolver reports, deterministically.
inline PureState gkkt_estimate(const PureState& psi, int n, Rng& rng,
                               const BasisSource& basis_source = haar_basis_source) {
    if (n < 1) throw validation_error("gkkt_estimate: n >= 1 required");
    const long d = psi.amplitudes.size();
    Matrix avg = Matrix::Zero(d, d);
    for (int i = 0; i < n; ++i) avg += gkkt_single_round(psi, rng, basis_source).entries;
    avg /= static_cast<double>(n);
    auto es = hermitian_eig(avg);
    Vector top = es.vectors.col(d - 1);
    return PureState(psi.shape, std::move(top));
}

/// Exact sampler for Hayashi's POVM {D[n] |u><u|^{tensor n} du} on a product
/// input |psi>^{tensor n}: the squared overlap with |psi> is
/// Beta(n+1, D-1)-distributed and the orthogonal part is Haar.
inline PureState hayashi_sample_product(const PureState& psi, int n, Rng& rng) {
    const long D = psi.amplitudes.size();
    if (D == 1) return psi;
    const double x = rng.beta(n + 1.0, D - 1.0);
    const double phase = rng.uniform(0.0, 2.0 * M_PI);
    const PureState perp = haar_state_orthogonal(psi, rng);
    Vector v = std::sqrt(x) * std::exp(Complex(0.0, phase)) * psi.amplitudes +
               std::sqrt(1.0 - x) * perp.amplitudes;
    v /= v.norm();
    return PureState(psi.shape, std::move(v));
}

/// Rejection sampler for Hayashi's measurement on a general mixed state in
/// the symmetric subspace: propose Haar |u>, accept with probability
/// <u^n| psi_sym |u^n> / lambda_max. The overall acceptance rate is exactly
/// 1 / (D[n] lambda_max), reported through stats().
class HayashiGeneralSampler {
  public:
    HayashiGeneralSampler(Operator psi_sym, int n, long D)
        : psi_(std::move(psi_sym)), n_(n), big_d_(D) {
        if (psi_.dim() != RegisterShape::uniform(n, D).total())
            throw validation_error("hayashi sampler: state size does not match (n, D)");
        if (!psi_.is_unit_trace(1e-9))
            throw validation_error("hayashi sampler: state must have unit trace");
        const Operator pi = sym_projector(n_, big_d_);
        const Matrix leak = psi_.entries - pi.entries * psi_.entries * pi.entries;
        if (leak.norm() > 1e-9)
            throw validation_error("hayashi sampler: support leaks outside the symmetric subspace");
        auto es = hermitian_eig(psi_.entries);
        if (es.values.minCoeff() < -1e-9)
            throw validation_error("hayashi sampler: state must be PSD");
        lambda_max_ = es.values.maxCoeff();
        expected_rate_ = 1.0 / (static_cast<double>(sym_dim(big_d_, n_)) * lambda_max_);
        if (expected_rate_ < 1e-6)
            throw numerical_error("hayashi sampler: predicted acceptance rate " +
                                  std::to_string(expected_rate_) + " below the desk-scale guard");
    }

    PureState sample(Rng& rng) {
        const long guard = static_cast<long>(1000.0 / expected_rate_) + 1000;
        for (long it = 0; it < guard; ++it) {
            ++proposals_;
            PureState u = haar_state(big_d_, rng);
            const Vector w = kron_power(u, n_).amplitudes;
            const double val = std::real(w.dot(psi_.entries * w));
            if (rng.uniform() * lambda_max_ < val) {
                ++accepts_;
                return u;
            }
        }
        throw numerical_error("hayashi sampler: rejection loop exceeded its guard");
    }

    double lambda_max() const { return lambda_max_; }
    double expected_acceptance() const { return expected_rate_; }
    double observed_acceptance() const {
        return proposals_ > 0 ? static_cast<double>(accepts_) / static_cast<double>(proposals_)
                              : 0.0;
    }

  private:
    Operator psi_;
    int n_;
    long big_d_;
    double lambda_max_ = 1.0;
    double expected_rate_ = 1.0;
    long proposals_ = 0, accepts_ = 0;
};

/// The unbiased rescaling of Hayashi's outcome:
/// sigma_hat = ((D+n)/n) |v><v| - I/n, with eigenvalues (D+n-1)/n once and
/// -1/n with multiplicity D-1; trace (D+n)/n - D/n = 1.
inline Operator gps_estimate(const PureState& v, int n) {
    const long D = v.amplitudes.size();
    Matrix est = (D + n) / static_cast<double>(n) * (v.amplitudes * v.amplitudes.adjoint()) -
                 Matrix::Identity(D, D) / static_cast<double>(n);
    return Operator(v.shape, std::move(est));
}

/// The standard unentangled estimator: n rounds of the uniform POVM with
/// single-round estimate (d+1)|v><v| - I, averaged. Unbiased for mixed
/// inputs as well.
inline Operator standard_unentangled_estimate(const Operator& sigma, int n, Rng& rng) {
    if (!sigma.is_psd() || !sigma.is_unit_trace(1e-9))
        throw validation_error("standard estimator: input must be a density matrix");
    const long d = sigma.dim();
    auto es = hermitian_eig(sigma.entries);
    std::vector<double> weights(static_cast<size_t>(d));
    for (long i = 0; i < d; ++i) weights[static_cast<size_t>(i)] = std::max(0.0, es.values(i));

    Matrix avg = Matrix::Zero(d, d);
    for (int round = 0; round < n; ++round) {
        const long k = rng.categorical(weights);
        PureState eigvec(sigma.shape, es.vectors.col(k));
        // uniform-POVM outcome law d <v|sigma|v> dv, decomposed over the
        // eigenbasis: each eigenvector contributes its n = 1 Hayashi law
        PureState v = hayashi_sample_product(eigvec, 1, rng);
        avg += (d + 1.0) * (v.amplitudes * v.amplitudes.adjoint()) - Matrix::Identity(d, d);
    }
    return Operator(sigma.shape, avg / static_cast<double>(n));
}

enum class InnerEstimator { Gkkt, Hayashi, Gps };

inline const char* inner_name(InnerEstimator inner) {
    switch (inner) {
        case InnerEstimator::Gkkt: return "mix-gkkt";
        case InnerEstimator::Hayashi: return "mix-hayashi";
        case InnerEstimator::Gps: return "mix-gps";
    }
    return "mix";
}

/// Mix(A): draw one random purification |rho~> (for product inputs this is
/// distributionally identical to routing rho^{tensor n} through the
/// purification channel), run the inner pure-state estimator on its n copies,
/// and trace out the purifying register.
inline EstimatorSample mix_pipeline(const Operator& rho, long r, int n, InnerEstimator inner,
                                    Rng& rng) {
    const long d = rho.dim();
    const PureState purified = random_purification(rho, r, rng);
    EstimatorSample out;
    out.algorithm = inner_name(inner);

    switch (inner) {
        case InnerEstimator::Gkkt: {
            const PureState v = gkkt_estimate(purified, n, rng);
            out.estimate = partial_trace(v.projector(), {0});
            out.outcome = "top-eigenvector";
            break;
        }
        case InnerEstimator::Hayashi: {
            const PureState v = hayashi_sample_product(purified, n, rng);
            out.estimate = partial_trace(v.projector(), {0});
            out.outcome = "hayashi-outcome";
            break;
        }
        case InnerEstimator::Gps: {
            const PureState v = hayashi_sample_product(purified, n, rng);
            out.estimate = partial_trace(gps_estimate(v, n), {0});
            out.outcome = "gps-rescaled";
            break;
        }
    }
    if (out.estimate.dim() != d) throw numerical_error("mix pipeline: output dimension mismatch");
    return out;
}

/// Mix+(A_GPS) with per-branch state reused across trials: weak Schur
/// sampling, quasi-purification at rank ell(lambda), Hayashi's measurement on
/// the lifted symmetric-subspace state, GPS rescaling, and a partial trace.
class MixPlusSampler {
  public:
    MixPlusSampler(const Operator& rho, int n) : n_(n), d_(rho.dim()), sd_(get_schur(n, rho.dim())) {
        if (!rho.is_psd() || !rho.is_unit_trace(1e-9))
            throw validation_error("mix+ sampler: input must be a density matrix");
        const Matrix fold = kron_power(rho, n).entries;
        for (size_t i = 0; i < sd_->blocks.size(); ++i) {
            const auto& b = sd_->blocks[i];
            const double s = schur_polynomial_value(*sd_, b, fold);
            const double p = static_cast<double>(b.specht) * s;
            Branch br;
            br.probability = std::max(0.0, p);
            if (br.probability > 1e-14) {
                const long ell = b.lambda.length();
                PurifyChannel lift_channel(n, d_, ell);
                const Matrix nu = sd_->nu_block(b, fold);
                Operator tau = lift_channel.lift_block_state(static_cast<int>(i), nu / s);
                // flatten the interleaved pairs into D = d * ell registers
                Operator tau_flat(RegisterShape::uniform(n, d_ * ell), tau.entries);
                br.sampler = std::make_shared<HayashiGeneralSampler>(tau_flat, n, d_ * ell);
                br.ell = ell;
            }
            branches_.push_back(std::move(br));
        }
    }

    const SchurDecomposition& schur() const { return *sd_; }

    double expected_ell() const {
        double acc = 0.0;
        for (size_t i = 0; i < branches_.size(); ++i)
            acc += branches_[i].probability *
                   static_cast<double>(sd_->blocks[i].lambda.length());
        return acc;
    }

    EstimatorSample sample(Rng& rng) {
        std::vector<double> probs;
        probs.reserve(branches_.size());
        for (const auto& b : branches_) probs.push_back(b.probability);
        const int pick = rng.categorical(probs);
        auto& br = branches_[static_cast<size_t>(pick)];
        const auto& blk = sd_->blocks[static_cast<size_t>(pick)];

        const PureState v_flat = br.sampler->sample(rng);
        PureState v(RegisterShape({d_, br.ell}), v_flat.amplitudes);
        EstimatorSample out;
        out.algorithm = "mix-plus-gps";
        out.lambda = blk.lambda;
        out.outcome = "gps-rescaled";
        out.estimate = partial_trace(gps_estimate(v, n_), {0});
        return out;
    }

  private:
    struct Branch {
        double probability = 0.0;
        long ell = 1;
        std::shared_ptr<HayashiGeneralSampler> sampler;
    };
    int n_;
    long d_;
    std::shared_ptr<const SchurDecomposition> sd_;
    std::vector<Branch> branches_;
};

inline EstimatorSample mix_plus_pipeline(const Operator& rho, int n, Rng& rng) {
    MixPlusSampler sampler(rho, n);
    return sampler.sample(rng);
}

} // namespace tomoforge
