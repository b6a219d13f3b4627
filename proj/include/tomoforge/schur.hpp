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
#include "sym.hpp"
#include "young.hpp"

#include <deque>
#include <map>
#include <memory>
#include <sstream>

namespace tomoforge {

inline constexpr double kJmClusterTol = 1e-6; // JM eigenvalues are integers

/// One lambda-block of the Schur transform on (C^d)^{tensor n}.
struct SchurBlock {
    YoungDiagram lambda;
    long specht = 0; // dim(lambda)
    long weyl = 0;   // dim V(lambda, d)
    long offset = 0; // row offset of this block inside U_schur
    std::vector<StandardTableau> syts; // content-sorted (descending lex)
    /// d^n x (specht * weyl) isometry; column (s, t) = s * weyl + t is the
    /// Schur vector |lambda, S_s, T_t>.
    Matrix isometry;

    long size() const { return specht * weyl; }
};

/// Explicit Schur transform for small n: per-lambda isometries plus the
/// assembled global unitary, blocks ordered by descending lexicographic
/// partitions and SYTs ordered by descending lexicographic content vectors.
struct SchurDecomposition {
    int n = 1;
    long d = 1;
    std::vector<SchurBlock> blocks;
    Matrix u_schur; // d^n x d^n, rows = stacked W_lambda^dagger

    long total_dim() const { return u_schur.rows(); }

    const SchurBlock& block(const YoungDiagram& lambda) const {
        for (const auto& b : blocks)
            if (b.lambda == lambda) return b;
        throw validation_error("no Schur block for " + lambda.to_string());
    }

    int block_index(const YoungDiagram& lambda) const {
        for (size_t i = 0; i < blocks.size(); ++i)
            if (blocks[i].lambda == lambda) return static_cast<int>(i);
        throw validation_error("no Schur block for " + lambda.to_string());
    }

    /// U M U^dagger, expressed on the flat d^n Schur index.
    Matrix to_schur(const Matrix& m) const { return u_schur * m * u_schur.adjoint(); }
    Matrix from_schur(const Matrix& m) const { return u_schur.adjoint() * m * u_schur; }

    /// Extract the lambda-block of a Schur-basis matrix.
    Matrix block_of(const Matrix& schur_matrix, const SchurBlock& b) const {
        return schur_matrix.block(b.offset, b.offset, b.size(), b.size());
    }

    /// nu_lambda(M): the Weyl-register block of U M^{tensor n} U^dagger,
    /// read off as the S=0 subblock. Well-defined for singular M.
    Matrix nu_block(const SchurBlock& b, const Matrix& m_fold) const {
        const Matrix w = b.isometry.block(0, 0, b.isometry.rows(), b.weyl); // S = first SYT
        return w.adjoint() * m_fold * w;
    }
};

namespace detail {

struct JmCluster {
    Matrix basis; // d^n x m, orthonormal columns
    std::vector<int> contents;
};

inline std::string contents_to_string(const std::vector<int>& c) {
    std::string s = "(";
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c[i]);
    }
    return s + ")";
}

} // namespace detail

/// Normative construction: (1) project onto the lambda-isotypic component via
/// characters; (2) split it by simultaneous diagonalization of the realized
/// Jucys-Murphy operators, whose joint eigenvalue tuples are SYT content
/// vectors; (3) transport the Weyl-register basis of the content-minimal SYT
/// sector to every other sector through realized adjacent transpositions,
/// inverting the known YOR mixing.
inline SchurDecomposition build_schur_transform(int n, long d) {
    if (n < 1 || n > kMaxSymmetricGroupDegree)
        throw validation_error("build_schur_transform: n must be in [1, 8]");
    RegisterShape shape = RegisterShape::uniform(n, d);
    const long t = shape.total();

    SchurDecomposition sd;
    sd.n = n;
    sd.d = d;

    const auto group = enumerate_symmetric_group(n);
    const long nfact = factorial(n);

    // Realize the Jucys-Murphy operators once.
    std::vector<Matrix> jm;
    for (int i = 2; i <= n; ++i) jm.push_back(realized_jucys_murphy(i, n, d));

    long offset = 0;
    for (const auto& lambda : enumerate_partitions(n, static_cast<int>(std::min<long>(d, n)))) {
        SchurBlock blk;
        blk.lambda = lambda;
        blk.specht = specht_dim(lambda);
        blk.weyl = weyl_dim(lambda, d);
        blk.syts = enumerate_syt(lambda);
        blk.offset = offset;
        if (blk.weyl == 0) continue;

        // (1) isotypic projector via characters
        Matrix proj = Matrix::Zero(t, t);
        for (const auto& pi : group)
            proj += character(lambda, pi) * realized_permutation(pi, d);
        proj *= static_cast<double>(blk.specht) / static_cast<double>(nfact);

        auto es = hermitian_eig(proj);
        std::vector<long> range_cols;
        for (long i = 0; i < es.values.size(); ++i)
            if (es.values(i) > 0.5) range_cols.push_back(i);
        if (static_cast<long>(range_cols.size()) != blk.size()) {
            std::ostringstream msg;
            msg << "isotypic rank mismatch for " << lambda.to_string() << ": expected "
                << blk.size() << ", found " << range_cols.size();
            throw numerical_error(msg.str());
        }
        Matrix basis(t, blk.size());
        for (size_t c = 0; c < range_cols.size(); ++c)
            basis.col(static_cast<long>(c)) = es.vectors.col(range_cols[c]);

        // (2) split by X_2, ..., X_n eigenvalues
        std::vector<detail::JmCluster> clusters{{basis, {0}}};
        for (int i = 2; i <= n; ++i) {
            std::vector<detail::JmCluster> next;
            for (auto& cl : clusters) {
                const Matrix x_here =
                    cl.basis.adjoint() * jm[static_cast<size_t>(i - 2)] * cl.basis;
                auto xe = hermitian_eig(0.5 * (x_here + x_here.adjoint()));
                std::map<int, std::vector<long>> by_value;
                for (long c = 0; c < xe.values.size(); ++c) {
                    const double v = xe.values(c);
                    const int iv = static_cast<int>(std::lround(v));
                    if (std::abs(v - iv) > kJmClusterTol) {
                        std::ostringstream msg;
                        msg << "Jucys-Murphy eigenvalue " << v << " for X_" << i << " in block "
                            << lambda.to_string() << " is not near an integer";
                        throw numerical_error(msg.str());
                    }
                    by_value[iv].push_back(c);
                }
                for (const auto& [value, cols] : by_value) {
                    detail::JmCluster sub;
                    sub.basis.resize(t, static_cast<long>(cols.size()));
                    for (size_t c = 0; c < cols.size(); ++c)
                        sub.basis.col(static_cast<long>(c)) = cl.basis * xe.vectors.col(cols[c]);
                    sub.contents = cl.contents;
                    sub.contents.push_back(value);
                    next.push_back(std::move(sub));
                }
            }
            clusters = std::move(next);
        }

        std::map<std::vector<int>, Matrix> sector;
        for (auto& cl : clusters) {
            if (static_cast<long>(cl.basis.cols()) != blk.weyl) {
                std::ostringstream msg;
                msg << "content sector " << detail::contents_to_string(cl.contents)
                    << " of block " << lambda.to_string() << " has dimension "
                    << cl.basis.cols() << ", expected " << blk.weyl;
                throw numerical_error(msg.str());
            }
            sector[cl.contents] = std::move(cl.basis);
        }
        for (const auto& s : blk.syts)
            if (!sector.count(s.contents))
                throw numerical_error("missing content sector " +
                                      detail::contents_to_string(s.contents) + " in block " +
                                      lambda.to_string());

        // (3) transport the Weyl basis from the content-minimal SYT outwards
        std::map<std::vector<int>, long> syt_index;
        for (size_t s = 0; s < blk.syts.size(); ++s) syt_index[blk.syts[s].contents] = static_cast<long>(s);

        std::vector<Matrix> aligned(static_cast<size_t>(blk.specht));
        std::vector<bool> done(static_cast<size_t>(blk.specht), false);
        long root = 0;
        for (long s = 1; s < blk.specht; ++s)
            if (blk.syts[static_cast<size_t>(s)].contents < blk.syts[static_cast<size_t>(root)].contents)
                root = s;
        aligned[static_cast<size_t>(root)] = sector.at(blk.syts[static_cast<size_t>(root)].contents);
        done[static_cast<size_t>(root)] = true;

        std::deque<long> queue{root};
        while (!queue.empty()) {
            const long s = queue.front();
            queue.pop_front();
            const auto& c = blk.syts[static_cast<size_t>(s)].contents;
            for (int k = 1; k < n; ++k) {
                const int r = c[static_cast<size_t>(k)] - c[static_cast<size_t>(k - 1)];
                if (r == 1 || r == -1) continue; // same row/column: no neighbor
                std::vector<int> swapped = c;
                std::swap(swapped[static_cast<size_t>(k - 1)], swapped[static_cast<size_t>(k)]);
                const auto it = syt_index.find(swapped);
                if (it == syt_index.end()) continue;
                const long s2 = it->second;
                if (done[static_cast<size_t>(s2)]) continue;
                const Matrix p = realized_permutation(perm_transposition(n, k - 1, k), d);
                const double inv_r = 1.0 / r;
                aligned[static_cast<size_t>(s2)] =
                    (p * aligned[static_cast<size_t>(s)] - inv_r * aligned[static_cast<size_t>(s)]) /
                    std::sqrt(1.0 - inv_r * inv_r);
                done[static_cast<size_t>(s2)] = true;
                queue.push_back(s2);
            }
        }
        for (long s = 0; s < blk.specht; ++s)
            if (!done[static_cast<size_t>(s)])
                throw numerical_error("SYT transport graph is disconnected in block " +
                                      lambda.to_string());

        blk.isometry.resize(t, blk.size());
        for (long s = 0; s < blk.specht; ++s)
            blk.isometry.block(0, s * blk.weyl, t, blk.weyl) = aligned[static_cast<size_t>(s)];

        offset += blk.size();
        sd.blocks.push_back(std::move(blk));
    }

    if (offset != t)
        throw numerical_error("Schur blocks do not fill the space: " + std::to_string(offset) +
                              " of " + std::to_string(t));

    sd.u_schur.resize(t, t);
    for (const auto& b : sd.blocks)
        sd.u_schur.block(b.offset, 0, b.size(), t) = b.isometry.adjoint();
    return sd;
}

/// Residual diagnostics used by tests and the schur-validate subcommand.
struct SchurValidation {
    double unitarity = 0.0;
    double offblock_perm = 0.0;   // worst off-block leakage of U P(pi) U^dagger
    double offblock_fold = 0.0;   // worst off-block leakage of U rho^{xn} U^dagger
    double yor_residual = 0.0;    // worst | block - kappa tensor I |
    double fold_residual = 0.0;   // worst | block - I tensor nu |
    bool dimension_check = false; // sum dim * dimV == d^n

    double worst() const {
        return std::max({unitarity, offblock_perm, offblock_fold, yor_residual, fold_residual});
    }
};

inline double offblock_norm(const SchurDecomposition& sd, const Matrix& schur_matrix) {
    Matrix res = schur_matrix;
    for (const auto& b : sd.blocks)
        res.block(b.offset, b.offset, b.size(), b.size()).setZero();
    return res.norm();
}

inline SchurValidation validate_schur(const SchurDecomposition& sd, int n_random, Rng& rng) {
    SchurValidation v;
    const long t = sd.total_dim();
    v.unitarity =
        (sd.u_schur.adjoint() * sd.u_schur - Matrix::Identity(t, t)).cwiseAbs().maxCoeff();

    long dim_sum = 0;
    for (const auto& b : sd.blocks) dim_sum += b.size();
    v.dimension_check = (dim_sum == t);

    for (int trial = 0; trial < n_random; ++trial) {
        Perm pi(static_cast<size_t>(sd.n));
        for (int i = 0; i < sd.n; ++i) pi[static_cast<size_t>(i)] = i;
        for (int i = sd.n - 1; i > 0; --i)
            std::swap(pi[static_cast<size_t>(i)],
                      pi[static_cast<size_t>(rng.uniform_index(static_cast<std::uint64_t>(i + 1)))]);
        const Matrix ps = sd.to_schur(realized_permutation(pi, sd.d));
        v.offblock_perm = std::max(v.offblock_perm, offblock_norm(sd, ps));
        for (const auto& b : sd.blocks) {
            Eigen::MatrixXd kappa = yor_representation(b.lambda, pi);
            Matrix expect = Matrix::Zero(b.size(), b.size());
            for (long s = 0; s < b.specht; ++s)
                for (long s2 = 0; s2 < b.specht; ++s2)
                    expect.block(s * b.weyl, s2 * b.weyl, b.weyl, b.weyl) =
                        kappa(s, s2) * Matrix::Identity(b.weyl, b.weyl);
            v.yor_residual =
                std::max(v.yor_residual, (sd.block_of(ps, b) - expect).cwiseAbs().maxCoeff());
        }

        const Operator rho = random_density(sd.d, sd.d, rng);
        const Matrix fold = kron_power(rho, sd.n).entries;
        const Matrix fs = sd.to_schur(fold);
        v.offblock_fold = std::max(v.offblock_fold, offblock_norm(sd, fs));
        for (const auto& b : sd.blocks) {
            const Matrix nu = sd.nu_block(b, fold);
            Matrix expect = Matrix::Zero(b.size(), b.size());
            for (long s = 0; s < b.specht; ++s)
                expect.block(s * b.weyl, s * b.weyl, b.weyl, b.weyl) = nu;
            v.fold_residual =
                std::max(v.fold_residual, (sd.block_of(fs, b) - expect).cwiseAbs().maxCoeff());
        }
    }
    return v;
}

/// s_lambda^d(rho) = tr nu_lambda(rho), computed as the normalized block
/// trace of U rho^{tensor n} U^dagger. Pr[weak Schur sampling = lambda] is
/// dim(lambda) * s_lambda(rho).
inline double schur_polynomial_value(const SchurDecomposition& sd, const SchurBlock& b,
                                     const Matrix& rho_fold) {
    const Matrix block = b.isometry.adjoint() * rho_fold * b.isometry;
    return block.real().trace() / static_cast<double>(b.specht);
}

/// Weak Schur sampling of a PSD unit-trace state on (C^d)^{tensor n}:
/// returns the sampled diagram index and the renormalized post-measurement
/// state expressed in the Schur basis (zero outside the sampled block).
inline std::pair<int, Operator> weak_schur_sample(const Operator& state,
                                                  const SchurDecomposition& sd, Rng& rng) {
    if (state.dim() != sd.total_dim())
        throw validation_error("weak_schur_sample: state dimension mismatch");
    std::vector<double> probs;
    std::vector<Matrix> blocks;
    for (const auto& b : sd.blocks) {
        Matrix blk = b.isometry.adjoint() * state.entries * b.isometry;
        probs.push_back(std::max(0.0, blk.real().trace()));
        blocks.push_back(std::move(blk));
    }
    double total = 0.0;
    for (double p : probs) total += p;
    if (total < 1e-9) throw numerical_error("weak_schur_sample: state has negligible block mass");
    const int pick = rng.categorical(probs);
    Matrix post = Matrix::Zero(sd.total_dim(), sd.total_dim());
    const auto& b = sd.blocks[static_cast<size_t>(pick)];
    post.block(b.offset, b.offset, b.size(), b.size()) =
        blocks[static_cast<size_t>(pick)] / probs[static_cast<size_t>(pick)];
    return {pick, Operator(RegisterShape::single(sd.total_dim()), std::move(post))};
}

} // namespace tomoforge
