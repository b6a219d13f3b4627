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

#include "shape.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <vector>

namespace tomoforge {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kOpTol = 1e-10;

/// Dense complex matrix tagged with a register shape. The universal carrier
/// for states, POVM elements, and channel matrix forms.
struct Operator {
    RegisterShape shape;
    Matrix entries;

    Operator() = default;

    Operator(RegisterShape s, Matrix m) : shape(std::move(s)), entries(std::move(m)) {
        const long t = shape.total();
        if (entries.rows() != t || entries.cols() != t)
            throw validation_error("operator entries must be square of size " + std::to_string(t) +
                                   ", got " + std::to_string(entries.rows()) + "x" +
                                   std::to_string(entries.cols()));
    }

    static Operator identity(const RegisterShape& s) {
        return Operator(s, Matrix::Identity(s.total(), s.total()));
    }
    static Operator identity(long d) { return identity(RegisterShape::single(d)); }
    static Operator zero(const RegisterShape& s) {
        return Operator(s, Matrix::Zero(s.total(), s.total()));
    }

    long dim() const { return entries.rows(); }
    Complex trace() const { return entries.trace(); }

    bool is_hermitian(double tol = kOpTol) const {
        return (entries - entries.adjoint()).cwiseAbs().maxCoeff() <= tol;
    }
    bool is_unitary(double tol = kOpTol) const {
        Matrix g = entries.adjoint() * entries;
        return (g - Matrix::Identity(dim(), dim())).cwiseAbs().maxCoeff() <= tol;
    }
    bool is_projector(double tol = kOpTol) const {
        return is_hermitian(tol) &&
               (entries * entries - entries).cwiseAbs().maxCoeff() <= tol;
    }
    bool is_unit_trace(double tol = kOpTol) const { return std::abs(trace() - 1.0) <= tol; }

    bool is_psd(double tol = kOpTol) const {
        if (!is_hermitian(std::sqrt(tol))) return false;
        Eigen::SelfAdjointEigenSolver<Matrix> es(entries, Eigen::EigenvaluesOnly);
        const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
        return es.eigenvalues().minCoeff() >= -tol * scale;
    }
};

/// Unit vector tagged with a register shape.
struct PureState {
    RegisterShape shape;
    Vector amplitudes;

    PureState() = default;

    PureState(RegisterShape s, Vector v) : shape(std::move(s)), amplitudes(std::move(v)) {
        if (amplitudes.size() != shape.total())
            throw validation_error("pure state length does not match its shape");
        if (std::abs(amplitudes.norm() - 1.0) > 1e-12)
            throw validation_error("pure state must have unit norm");
    }

    static PureState basis(const RegisterShape& s, long index) {
        Vector v = Vector::Zero(s.total());
        v(index) = 1.0;
        return PureState(s, std::move(v));
    }

    Operator projector() const {
        return Operator(shape, amplitudes * amplitudes.adjoint());
    }
};

inline Complex inner(const PureState& a, const PureState& b) {
    return a.amplitudes.dot(b.amplitudes); // Eigen dot conjugates the left argument
}

/// |<a|b>|^2; the right notion of equality for states as rays.
inline double overlap2(const PureState& a, const PureState& b) {
    return std::norm(inner(a, b));
}

inline Operator kron(const Operator& a, const Operator& b) {
    RegisterShape s = a.shape.concat(b.shape);
    const long ra = a.dim(), rb = b.dim();
    Matrix m(ra * rb, ra * rb);
    for (long i = 0; i < ra; ++i)
        for (long j = 0; j < ra; ++j)
            m.block(i * rb, j * rb, rb, rb) = a.entries(i, j) * b.entries;
    return Operator(std::move(s), std::move(m));
}

inline PureState kron(const PureState& a, const PureState& b) {
    RegisterShape s = a.shape.concat(b.shape);
    const long na = a.amplitudes.size(), nb = b.amplitudes.size();
    Vector v(na * nb);
    for (long i = 0; i < na; ++i) v.segment(i * nb, nb) = a.amplitudes(i) * b.amplitudes;
    return PureState(std::move(s), std::move(v));
}

/// n-fold tensor power.
inline Operator kron_power(const Operator& a, int n) {
    if (n < 1) throw validation_error("kron_power needs n >= 1");
    Operator out = a;
    for (int k = 1; k < n; ++k) out = kron(out, a);
    return out;
}

inline PureState kron_power(const PureState& a, int n) {
    if (n < 1) throw validation_error("kron_power needs n >= 1");
    PureState out = a;
    for (int k = 1; k < n; ++k) out = kron(out, a);
    return out;
}

/// Trace out every register not listed in `keep`; kept registers stay in
/// their original order. Trace-preserving and linear.
inline Operator partial_trace(const Operator& m, const std::set<int>& keep) {
    const int nr = m.shape.num_registers();
    for (int k : keep)
        if (k < 0 || k >= nr) throw validation_error("partial_trace: register index out of range");

    std::vector<int> kept(keep.begin(), keep.end());
    std::vector<int> traced;
    for (int k = 0; k < nr; ++k)
        if (!keep.count(k)) traced.push_back(k);

    std::vector<long> kept_dims, traced_dims;
    for (int k : kept) kept_dims.push_back(m.shape.dim(k));
    for (int k : traced) traced_dims.push_back(m.shape.dim(k));
    RegisterShape out_shape(kept_dims.empty() ? std::vector<long>{1} : kept_dims);
    RegisterShape tr_shape(traced_dims.empty() ? std::vector<long>{1} : traced_dims);

    const long nk = out_shape.total(), nt = tr_shape.total();
    Matrix out = Matrix::Zero(nk, nk);

    std::vector<long> full_row(static_cast<size_t>(nr)), full_col(static_cast<size_t>(nr));
    for (long i = 0; i < nk; ++i) {
        const auto ki = out_shape.unflatten(i);
        for (long j = 0; j < nk; ++j) {
            const auto kj = out_shape.unflatten(j);
            Complex acc = 0.0;
            for (long t = 0; t < nt; ++t) {
                const auto ti = tr_shape.unflatten(t);
                for (size_t a = 0; a < kept.size(); ++a)
                    full_row[static_cast<size_t>(kept[a])] = ki[a],
                    full_col[static_cast<size_t>(kept[a])] = kj[a];
                for (size_t a = 0; a < traced.size(); ++a)
                    full_row[static_cast<size_t>(traced[a])] = ti[a],
                    full_col[static_cast<size_t>(traced[a])] = ti[a];
                acc += m.entries(m.shape.flatten(full_row), m.shape.flatten(full_col));
            }
            out(i, j) = acc;
        }
    }
    return Operator(std::move(out_shape), std::move(out));
}

/// Permutations are stored in one-line notation, 0-based: p[i] = pi(i).
using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
    Perm p(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;
    return p;
}

inline Perm perm_inverse(const Perm& p) {
    Perm q(p.size());
    for (size_t i = 0; i < p.size(); ++i) q[static_cast<size_t>(p[i])] = static_cast<int>(i);
    return q;
}

/// (a o b)(i) = a(b(i)).
inline Perm perm_compose(const Perm& a, const Perm& b) {
    Perm c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[static_cast<size_t>(b[i])];
    return c;
}

inline Perm perm_transposition(int n, int i, int j) {
    Perm p = perm_identity(n);
    std::swap(p[static_cast<size_t>(i)], p[static_cast<size_t>(j)]);
    return p;
}

/// Unitary on (C^d)^{tensor n} sending |i_1...i_n> to |i_{pi^-1(1)}...i_{pi^-1(n)}>.
/// Satisfies P(pi) P(sigma) = P(pi o sigma) exactly on integer entries.
inline Operator permutation_operator(const Perm& pi, long d) {
    const int n = static_cast<int>(pi.size());
    RegisterShape shape = RegisterShape::uniform(n, d);
    const long t = shape.total();
    Matrix m = Matrix::Zero(t, t);
    const Perm inv = perm_inverse(pi);
    std::vector<long> out_idx(static_cast<size_t>(n));
    for (long col = 0; col < t; ++col) {
        const auto in_idx = shape.unflatten(col);
        for (int k = 0; k < n; ++k)
            out_idx[static_cast<size_t>(k)] = in_idx[static_cast<size_t>(inv[static_cast<size_t>(k)])];
        m(shape.flatten(out_idx), col) = 1.0;
    }
    return Operator(std::move(shape), std::move(m));
}

/// Reorder registers: new register j is old register `source[j]`.
/// Returns R M R^dagger with R the basis-relabeling unitary.
inline Operator permute_registers(const Operator& m, const std::vector<int>& source) {
    const int nr = m.shape.num_registers();
    if (static_cast<int>(source.size()) != nr)
        throw validation_error("permute_registers: wrong source length");
    std::vector<long> new_dims(source.size());
    for (size_t j = 0; j < source.size(); ++j) new_dims[j] = m.shape.dim(source[j]);
    RegisterShape out_shape(new_dims);

    const long t = m.dim();
    std::vector<long> to_new(static_cast<size_t>(t));
    std::vector<long> new_idx(source.size());
    for (long flat = 0; flat < t; ++flat) {
        const auto idx = m.shape.unflatten(flat);
        for (size_t j = 0; j < source.size(); ++j) new_idx[j] = idx[static_cast<size_t>(source[j])];
        to_new[static_cast<size_t>(flat)] = out_shape.flatten(new_idx);
    }
    Matrix out(t, t);
    for (long i = 0; i < t; ++i)
        for (long j = 0; j < t; ++j)
            out(to_new[static_cast<size_t>(i)], to_new[static_cast<size_t>(j)]) = m.entries(i, j);
    return Operator(std::move(out_shape), std::move(out));
}

inline PureState permute_registers(const PureState& v, const std::vector<int>& source) {
    const int nr = v.shape.num_registers();
    if (static_cast<int>(source.size()) != nr)
        throw validation_error("permute_registers: wrong source length");
    std::vector<long> new_dims(source.size());
    for (size_t j = 0; j < source.size(); ++j) new_dims[j] = v.shape.dim(source[j]);
    RegisterShape out_shape(new_dims);
    Vector out(v.amplitudes.size());
    std::vector<long> new_idx(source.size());
    for (long flat = 0; flat < v.amplitudes.size(); ++flat) {
        const auto idx = v.shape.unflatten(flat);
        for (size_t j = 0; j < source.size(); ++j) new_idx[j] = idx[static_cast<size_t>(source[j])];
        out(out_shape.flatten(new_idx)) = v.amplitudes(flat);
    }
    return PureState(std::move(out_shape), std::move(out));
}

/// Source map turning grouped registers A_1..A_n B_1..B_n into the
/// interleaved layout A_1 B_1 ... A_n B_n.
inline std::vector<int> grouped_to_interleaved(int n) {
    std::vector<int> src;
    for (int i = 0; i < n; ++i) {
        src.push_back(i);
        src.push_back(n + i);
    }
    return src;
}

/// Source map turning interleaved registers A_1 B_1 ... A_n B_n into the
/// grouped layout A_1..A_n B_1..B_n.
inline std::vector<int> interleaved_to_grouped(int n) {
    std::vector<int> src;
    for (int i = 0; i < n; ++i) src.push_back(2 * i);
    for (int i = 0; i < n; ++i) src.push_back(2 * i + 1);
    return src;
}

/// Eigendecomposition contract: ascending eigenvalues, orthonormal
/// eigenvectors. Degeneracies return an arbitrary orthonormal basis.
struct Eigensystem {
    Eigen::VectorXd values;
    Matrix vectors;
};

inline Eigensystem hermitian_eig(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success) throw numerical_error("hermitian eigendecomposition failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

/// PSD square root via eigendecomposition; eigenvalues below
/// -kOpTol * ||m||_inf throw, small negatives are clipped to zero.
inline Matrix psd_sqrt(const Matrix& m) {
    auto es = hermitian_eig(m);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    Eigen::VectorXd vals = es.values;
    for (long i = 0; i < vals.size(); ++i) {
        if (vals(i) < -kOpTol * scale)
            throw validation_error("psd_sqrt: input is not PSD within tolerance");
        vals(i) = std::sqrt(std::max(0.0, vals(i)));
    }
    return es.vectors * vals.asDiagonal() * es.vectors.adjoint();
}

inline double trace_norm(const Matrix& m) {
    return m.jacobiSvd().singularValues().sum();
}

/// 0.5 * ||rho - sigma||_1 for Hermitian inputs.
inline double trace_distance(const Operator& rho, const Operator& sigma) {
    if (rho.shape.total() != sigma.shape.total())
        throw validation_error("trace_distance: shape mismatch");
    auto es = hermitian_eig(rho.entries - sigma.entries);
    return 0.5 * es.values.cwiseAbs().sum();
}

/// F(rho, sigma) = ||rho^{1/2} sigma^{1/2}||_1^2. Equals |<u|v>|^2 on pure
/// inputs. Requires PSD unit-trace inputs of the same total dimension.
inline double fidelity(const Operator& rho, const Operator& sigma) {
    if (rho.shape.total() != sigma.shape.total())
        throw validation_error("fidelity: shape mismatch");
    if (!rho.is_psd() || !sigma.is_psd())
        throw validation_error("fidelity: inputs must be PSD within tolerance");
    const Matrix a = psd_sqrt(rho.entries);
    const Matrix b = psd_sqrt(sigma.entries);
    const double f = trace_norm(a * b);
    return std::clamp(f * f, 0.0, 1.0 + 1e-9);
}

inline double frobenius(const Matrix& m) { return m.norm(); }

/// Clip negative eigenvalues to zero and renormalize to unit trace.
inline Operator project_to_density(const Operator& m) {
    auto es = hermitian_eig(0.5 * (m.entries + m.entries.adjoint()));
    Eigen::VectorXd vals = es.values.cwiseMax(0.0);
    const double tr = vals.sum();
    if (tr <= 0.0) throw numerical_error("project_to_density: zero positive part");
    vals /= tr;
    return Operator(m.shape, es.vectors * vals.asDiagonal() * es.vectors.adjoint());
}

} // namespace tomoforge
