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

#include "haar.hpp"
#include "schur_cache.hpp"

namespace tomoforge {

/// (1/sqrt(dim)) sum_S |S>|S> over SYTs of a given shape, in the SYT basis.
/// Invariant under kappa(pi) tensor kappa(pi) because YOR is real orthogonal.
inline PureState epr_specht(long specht) {
    Vector v = Vector::Zero(specht * specht);
    for (long s = 0; s < specht; ++s) v(s * specht + s) = 1.0;
    v /= std::sqrt(static_cast<double>(specht));
    return PureState(RegisterShape({specht, specht}), std::move(v));
}

/// Canonical purification |rho_0> = sum_i sqrt(alpha_i) |v_i> |i> on
/// C^d tensor C^r, eigenvalues taken in descending order.
inline PureState purify_state(const Operator& rho, long r) {
    if (!rho.is_psd() || !rho.is_unit_trace(1e-9))
        throw validation_error("purify_state: input must be a density matrix");
    const long d = rho.dim();
    auto es = hermitian_eig(rho.entries);
    long rank = 0;
    for (long i = 0; i < d; ++i)
        if (es.values(i) > 1e-10) ++rank;
    if (r < rank)
        throw validation_error("purify_state: purification rank " + std::to_string(r) +
                               " below state rank " + std::to_string(rank));
    Vector v = Vector::Zero(d * r);
    for (long k = 0; k < std::min(r, d); ++k) {
        const long src = d - 1 - k; // descending eigenvalues
        const double a = std::max(0.0, es.values(src));
        if (a <= 0.0) continue;
        for (long i = 0; i < d; ++i) v(i * r + k) += std::sqrt(a) * es.vectors(i, src);
    }
    v /= v.norm();
    return PureState(RegisterShape({d, r}), std::move(v));
}

/// (I_d tensor U) |rho_0> with U Haar on U(r): one uniformly random
/// purification.
inline PureState random_purification(const Operator& rho, long r, Rng& rng) {
    PureState rho0 = purify_state(rho, r);
    const Operator u = haar_unitary(r, rng);
    const long d = rho.dim();
    Vector v(d * r);
    for (long i = 0; i < d; ++i) v.segment(i * r, r) = u.entries * rho0.amplitudes.segment(i * r, r);
    return PureState(rho0.shape, std::move(v));
}

/// Output of the purification channel on a single lambda branch, stored in
/// Schur coordinates over the registers (P, P', Q, Q'); the Y registers carry
/// the classical label (lambda, lambda) and are kept implicit.
struct PurifiedBlockState {
    YoungDiagram lambda;
    long r = 1;           // purification rank of the Q' register
    long specht = 0;      // dim(lambda)
    long weyl_d = 0;      // dim V(lambda, d)
    long weyl_r = 0;      // dim V(lambda, r)
    Operator op;          // shape [specht, specht, weyl_d, weyl_r]
};

/// The random purification channel Phi_Purify^{d,r} on n copies, realized
/// through explicit Schur transforms. Exposes a deterministic superoperator
/// application (sum over lambda) and a trajectory sampler; both agree in
/// expectation.
class PurifyChannel {
  public:
    PurifyChannel(int n, long d, long r)
        : n_(n), d_(d), r_(r), sd_(get_schur(n, d)), sr_(get_schur(n, r)) {}

    int n() const { return n_; }
    long d() const { return d_; }
    long r() const { return r_; }
    const SchurDecomposition& schur_d() const { return *sd_; }
    const SchurDecomposition& schur_r() const { return *sr_; }

    RegisterShape output_shape() const {
        std::vector<long> dims;
        for (int i = 0; i < n_; ++i) {
            dims.push_back(d_);
            dims.push_back(r_);
        }
        return RegisterShape(dims);
    }

    /// Isometry from the (P, P', Q, Q') block coordinates of lambda into the
    /// grouped computational space C^{d^n} tensor C^{r^n}.
    Matrix lift(int block_idx) const {
        const auto& bd = sd_->blocks.at(static_cast<size_t>(block_idx));
        const auto& br = sr_->block(bd.lambda);
        const long ta = bd.isometry.rows(), tb = br.isometry.rows();
        Matrix out(ta * tb, bd.specht * br.specht * bd.weyl * br.weyl);
        long col = 0;
        for (long s = 0; s < bd.specht; ++s)
            for (long s2 = 0; s2 < br.specht; ++s2)
                for (long t = 0; t < bd.weyl; ++t)
                    for (long t2 = 0; t2 < br.weyl; ++t2, ++col) {
                        const auto a = bd.isometry.col(s * bd.weyl + t);
                        const auto b = br.isometry.col(s2 * br.weyl + t2);
                        for (long i = 0; i < ta; ++i) out.block(i * tb, col, tb, 1) = a(i) * b;
                    }
        return out;
    }

    /// Block state |EPR><EPR| tensor q_part tensor I/dimV(lambda, r) on
    /// (P, P', Q, Q'), embedded into the interleaved computational space.
    Operator lift_block_state(int block_idx, const Matrix& q_part) const {
        const auto& bd = sd_->blocks.at(static_cast<size_t>(block_idx));
        const auto& br = sr_->block(bd.lambda);
        Operator epr = epr_specht(bd.specht).projector();
        Operator q(RegisterShape::single(bd.weyl), q_part);
        Operator qp(RegisterShape::single(br.weyl),
                    Matrix::Identity(br.weyl, br.weyl) / static_cast<double>(br.weyl));
        const Matrix block = kron(kron(epr, q), qp).entries;
        const Matrix l = lift(block_idx);
        Matrix grouped = l * block * l.adjoint();
        std::vector<long> dims(static_cast<size_t>(n_), d_);
        dims.insert(dims.end(), static_cast<size_t>(n_), r_);
        Operator grouped_op(RegisterShape(dims), std::move(grouped));
        return permute_registers(grouped_op, grouped_to_interleaved(n_));
    }

    /// Branch masses tr(Pi_lambda state) and the P-traced Q-register blocks.
    struct BranchData {
        std::vector<double> mass;   // per block of schur_d
        std::vector<Matrix> q_part; // tr_P of each block, unnormalized
    };

    BranchData branches(const Operator& state) const {
        if (state.dim() != sd_->total_dim())
            throw validation_error("purification channel: input dimension mismatch");
        BranchData out;
        for (const auto& b : sd_->blocks) {
            const Matrix blk = b.isometry.adjoint() * state.entries * b.isometry;
            Matrix q = Matrix::Zero(b.weyl, b.weyl);
            for (long s = 0; s < b.specht; ++s)
                q += blk.block(s * b.weyl, s * b.weyl, b.weyl, b.weyl);
            out.mass.push_back(std::max(0.0, q.real().trace()));
            out.q_part.push_back(std::move(q));
        }
        return out;
    }

    void check_support(const BranchData& br) const {
        double bad = 0.0;
        for (size_t i = 0; i < br.mass.size(); ++i)
            if (sd_->blocks[i].lambda.length() > r_) bad += br.mass[i];
        if (bad > 1e-9)
            throw validation_error("purification channel undefined: input mass " +
                                   std::to_string(bad) + " on blocks taller than r = " +
                                   std::to_string(r_));
    }

    /// Exact (dephasing) application: weak Schur sampling enters as a sum
    /// over lambda, not a sampled branch. Output is interleaved
    /// (A_1 B_1 ... A_n B_n).
    Operator apply_exact(const Operator& state) const {
        const auto br = branches(state);
        check_support(br);
        Operator out = Operator::zero(output_shape());
        for (size_t i = 0; i < br.mass.size(); ++i) {
            if (sd_->blocks[i].lambda.length() > r_) continue;
            if (br.mass[i] < 1e-15) continue;
            out.entries += lift_block_state(static_cast<int>(i), br.q_part[i]).entries;
        }
        return out;
    }

    /// Trajectory sampler: sample lambda, return the normalized branch
    /// output. Agrees with apply_exact in expectation.
    std::pair<int, Operator> apply_sampled(const Operator& state, Rng& rng) const {
        const auto br = branches(state);
        check_support(br);
        std::vector<double> probs = br.mass;
        for (size_t i = 0; i < probs.size(); ++i)
            if (sd_->blocks[i].lambda.length() > r_) probs[i] = 0.0;
        const int pick = rng.categorical(probs);
        Matrix q = br.q_part[static_cast<size_t>(pick)] / probs[static_cast<size_t>(pick)];
        return {pick, lift_block_state(pick, q)};
    }

    /// Kraus operators K_{lambda S T} of the branch, as maps from the
    /// computational (C^d)^{tensor n} into the interleaved output space.
    /// Completeness: sum over S, T of K^dagger K = Pi_lambda.
    std::vector<Matrix> kraus(int block_idx) const {
        const auto& bd = sd_->blocks.at(static_cast<size_t>(block_idx));
        if (bd.lambda.length() > r_)
            throw validation_error("kraus: block taller than the purification rank");
        const auto& brk = sr_->block(bd.lambda);
        const long ta = bd.isometry.rows(), tb = brk.isometry.rows();

        // row permutation taking grouped (A^n, B^n) to interleaved coords
        const RegisterShape grouped_shape = [&] {
            std::vector<long> dims(static_cast<size_t>(n_), d_);
            dims.insert(dims.end(), static_cast<size_t>(n_), r_);
            return RegisterShape(dims);
        }();
        const RegisterShape inter_shape = output_shape();
        const auto src = grouped_to_interleaved(n_);
        std::vector<long> row_map(static_cast<size_t>(ta * tb));
        std::vector<long> new_idx(src.size());
        for (long flat = 0; flat < ta * tb; ++flat) {
            const auto idx = grouped_shape.unflatten(flat);
            for (size_t j = 0; j < src.size(); ++j) new_idx[j] = idx[static_cast<size_t>(src[j])];
            row_map[static_cast<size_t>(flat)] = inter_shape.flatten(new_idx);
        }

        const double scale =
            1.0 / std::sqrt(static_cast<double>(bd.specht) * static_cast<double>(brk.weyl));
        std::vector<Matrix> ops;
        for (long s = 0; s < bd.specht; ++s) {
            const Matrix w_s = bd.isometry.block(0, s * bd.weyl, ta, bd.weyl);
            for (long t2 = 0; t2 < brk.weyl; ++t2) {
                Matrix k_grouped = Matrix::Zero(ta * tb, ta);
                for (long a = 0; a < bd.specht; ++a) {
                    const Matrix w_a = bd.isometry.block(0, a * bd.weyl, ta, bd.weyl);
                    const Vector w_b = brk.isometry.col(a * brk.weyl + t2);
                    const Matrix outer = w_a * w_s.adjoint(); // d^n x d^n, rank weyl_d
                    for (long i = 0; i < ta; ++i)
                        for (long j = 0; j < tb; ++j)
                            if (std::abs(w_b(j)) > 0.0)
                                k_grouped.row(i * tb + j) += w_b(j) * outer.row(i);
                }
                Matrix k(ta * tb, ta);
                for (long i = 0; i < ta * tb; ++i)
                    k.row(row_map[static_cast<size_t>(i)]) = k_grouped.row(i) * scale;
                ops.push_back(std::move(k));
            }
        }
        return ops;
    }

  private:
    int n_;
    long d_, r_;
    std::shared_ptr<const SchurDecomposition> sd_, sr_;
};

/// Quasi-purification: purify the collapsed block state at rank ell(lambda).
/// Input is the lambda-block of a Schur-coordinate state (as produced by
/// weak_schur_sample); output keeps Schur coordinates on (P, P', Q, Q').
inline PurifiedBlockState quasi_purify(const SchurDecomposition& sd, int block_idx,
                                       const Operator& schur_state) {
    const auto& b = sd.blocks.at(static_cast<size_t>(block_idx));
    const long ell = b.lambda.length();
    PurifiedBlockState out;
    out.lambda = b.lambda;
    out.r = ell;
    out.specht = b.specht;
    out.weyl_d = b.weyl;
    out.weyl_r = weyl_dim(b.lambda, ell);

    Matrix blk = schur_state.entries.block(b.offset, b.offset, b.size(), b.size());
    const double mass = blk.real().trace();
    if (mass < 1e-12) throw numerical_error("quasi_purify: block carries no mass");
    blk /= mass;
    Matrix q = Matrix::Zero(b.weyl, b.weyl);
    for (long s = 0; s < b.specht; ++s)
        q += blk.block(s * b.weyl, s * b.weyl, b.weyl, b.weyl);

    Operator epr = epr_specht(b.specht).projector();
    Operator q_op(RegisterShape::single(b.weyl), std::move(q));
    Operator qp(RegisterShape::single(out.weyl_r),
                Matrix::Identity(out.weyl_r, out.weyl_r) / static_cast<double>(out.weyl_r));
    out.op = kron(kron(epr, q_op), qp);
    return out;
}

} // namespace tomoforge
