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

#include "estimators.hpp"

namespace tomoforge {

/// tr_{1..n}( P(tau) (psi tensor I^{tensor k}) ) for tau in S_{n+k}, without
/// materializing anything on (C^D)^{tensor (n+k)}: every (inner index, outer
/// row) pair selects exactly one matrix element of psi. This is the workhorse
/// behind all sampling-free moment computations.
inline Matrix contract_permutation(const Matrix& psi, int n, int k, long D, const Perm& tau) {
    const RegisterShape inner = RegisterShape::uniform(n, D);
    const RegisterShape outer = RegisterShape::uniform(k, D);
    const long ni = inner.total(), no = outer.total();
    if (psi.rows() != ni) throw validation_error("contract_permutation: psi size mismatch");
    if (static_cast<int>(tau.size()) != n + k)
        throw validation_error("contract_permutation: permutation degree mismatch");

    Matrix out = Matrix::Zero(no, no);
    std::vector<long> full(static_cast<size_t>(n + k));
    std::vector<long> z(static_cast<size_t>(n)), y(static_cast<size_t>(k));
    for (long x = 0; x < ni; ++x) {
        const auto xi = inner.unflatten(x);
        for (size_t i = 0; i < static_cast<size_t>(n); ++i) full[i] = xi[i];
        for (long X = 0; X < no; ++X) {
            const auto Xi = outer.unflatten(X);
            for (size_t m = 0; m < static_cast<size_t>(k); ++m)
                full[static_cast<size_t>(n) + m] = Xi[m];
            // row tuple of psi and the forced outer column tuple
            for (size_t i = 0; i < static_cast<size_t>(n); ++i)
                z[i] = full[static_cast<size_t>(tau[i])];
            for (size_t m = 0; m < static_cast<size_t>(k); ++m)
                y[m] = full[static_cast<size_t>(tau[static_cast<size_t>(n) + m])];
            out(X, outer.flatten(y)) += psi(inner.flatten(z), x);
        }
    }
    return out;
}

/// Linear extension over a group-algebra element of S_{n+k}.
inline Matrix contract_group_element(const Matrix& psi, int n, int k, long D,
                                     const GroupAlgebraElement& elem) {
    const long no = RegisterShape::uniform(k, D).total();
    Matrix out = Matrix::Zero(no, no);
    for (const auto& [tau, coeff] : elem.terms) {
        if (std::abs(coeff) == 0.0) continue;
        out += coeff * contract_permutation(psi, n, k, D, tau);
    }
    return out;
}

/// First and second GPS moments of Hayashi's measurement on a state in the
/// symmetric subspace, computed exactly as
/// tr_{1..n}( M^{(k)} (psi_sym tensor I^{tensor k}) ), with the second moment
/// split into its Jucys-Murphy main part and the PSD integral Lower part.
struct SymMoments {
    Matrix first;       // on C^D
    Matrix second;      // on (C^D)^{tensor 2}, = second_main - second_lower
    Matrix second_main;
    Matrix second_lower;
};

inline SymMoments exact_moments_on_sym_state(const Operator& psi_sym, int n, long D) {
    if (psi_sym.dim() != RegisterShape::uniform(n, D).total())
        throw validation_error("exact moments: state size does not match (n, D)");
    if (!psi_sym.is_unit_trace(1e-9))
        throw validation_error("exact moments: state must have unit trace");
    const Operator pi = sym_projector(n, D);
    if ((psi_sym.entries - pi.entries * psi_sym.entries * pi.entries).norm() > 1e-9)
        throw validation_error("exact moments: support leaks outside the symmetric subspace");

    const Matrix& psi = psi_sym.entries;
    SymMoments out;

    // first moment: (1/n) X_{n+1}, the projector factor acts trivially
    out.first = contract_group_element(psi, n, 1, D, jucys_murphy(n + 1, n + 1));
    out.first /= static_cast<double>(n);

    // second moment main part: (1/n^2)(X_{n+2} X_{n+1} + (n+1, n+2))
    GroupAlgebraElement main_elem =
        jucys_murphy(n + 2, n + 2) * jucys_murphy(n + 1, n + 2);
    main_elem.add(perm_transposition(n + 2, n, n + 1), 1.0);
    out.second_main = contract_group_element(psi, n, 2, D, main_elem) /
                      (static_cast<double>(n) * static_cast<double>(n));

    // Lower part: ((D+n)/n^2) D[n]/D[n+2] tr_{1..n}(Pi_sym^{n+2} psi tensor I^2),
    // with the big projector expanded through the Jucys-Murphy recurrence
    GroupAlgebraElement lower_elem =
        (GroupAlgebraElement::identity(n + 2) + jucys_murphy(n + 2, n + 2)) *
        (GroupAlgebraElement::identity(n + 2) + jucys_murphy(n + 1, n + 2));
    const double lower_coeff =
        static_cast<double>(D + n) / (static_cast<double>(n) * n) *
        static_cast<double>(sym_dim(D, n)) / static_cast<double>(sym_dim(D, n + 2)) /
        (static_cast<double>(n + 1) * (n + 2));
    out.second_lower = lower_coeff * contract_group_element(psi, n, 2, D, lower_elem);

    out.second = out.second_main - out.second_lower;
    return out;
}

/// The four functional consequences of Lower in SoS(d) that the applications
/// rely on; membership itself is never decided.
struct LowerTermFlags {
    bool swap_trace_nonneg = false;      // tr(SWAP L) >= -tol
    bool obs_square_nonneg = false;      // tr(O tensor O L) >= -tol, random Hermitian O
    bool hermitian_pair_symmetric = false; // tr(O1 tensor O2 L) = tr(O2 tensor O1 L)
    bool q_sandwich_nonneg = false;      // tr(Q^dag tensor Q L) >= -tol, random Q

    bool all() const {
        return swap_trace_nonneg && obs_square_nonneg && hermitian_pair_symmetric &&
               q_sandwich_nonneg;
    }
};

inline LowerTermFlags lower_term_properties(const Operator& lower, Rng& rng,
                                            int n_random = 50, double tol = 1e-9) {
    if (lower.shape.num_registers() != 2 || lower.shape.dim(0) != lower.shape.dim(1))
        throw validation_error("lower_term_properties: expected an operator on two equal registers");
    if (!lower.is_hermitian(1e-8))
        throw validation_error("lower_term_properties: input must be Hermitian");
    const long d = lower.shape.dim(0);
    const Matrix swap = realized_permutation(perm_transposition(2, 0, 1), d);
    const Matrix& l = lower.entries;

    LowerTermFlags flags;
    flags.swap_trace_nonneg = std::real((swap * l).trace()) >= -tol;

    flags.obs_square_nonneg = true;
    flags.hermitian_pair_symmetric = true;
    flags.q_sandwich_nonneg = true;
    for (int t = 0; t < n_random; ++t) {
        const Matrix o = random_hermitian(d, rng).entries;
        Matrix oo(d * d, d * d);
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j)
                oo.block(i * d, j * d, d, d) = o(i, j) * o;
        flags.obs_square_nonneg &= std::real((oo * l).trace()) >= -tol;

        const Matrix o1 = random_hermitian(d, rng).entries;
        const Matrix o2 = random_hermitian(d, rng).entries;
        Matrix o12(d * d, d * d), o21(d * d, d * d);
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j) {
                o12.block(i * d, j * d, d, d) = o1(i, j) * o2;
                o21.block(i * d, j * d, d, d) = o2(i, j) * o1;
            }
        flags.hermitian_pair_symmetric &=
            std::abs((o12 * l).trace() - (o21 * l).trace()) <= tol;

        const Matrix q = ginibre(d, d, rng);
        const Matrix qd = q.adjoint();
        Matrix qq(d * d, d * d);
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j)
                qq.block(i * d, j * d, d, d) = qd(i, j) * q;
        flags.q_sandwich_nonneg &= std::real((qq * l).trace()) >= -tol;
    }
    return flags;
}

/// Exact second-moment decomposition of a mixed-state estimator:
///   E[rho_hat tensor rho_hat] = c1 rho tensor rho
///     + c2 (rho tensor I + I tensor rho) SWAP + c3 SWAP - Lower,
/// with Lower also computed through the independent projector-integral route
/// so the coefficient triple is certified, not fitted.
struct SecondMomentReport {
    Operator first;          // E[rho_hat], exact
    Operator second;         // E[rho_hat tensor rho_hat], exact
    Operator lower_residual; // main3 - second
    Operator lower_direct;   // independent integral route
    double c_rho_rho = 0.0, c_cross = 0.0, c_swap = 0.0;
    double expected_ell = 0.0;           // sum p_lambda ell(lambda) (= r for Mix)
    double decomposition_residual = 0.0; // |lower_residual - lower_direct|_F
    double first_moment_error = 0.0;     // |first - rho|_F
    LowerTermFlags flags;
};

namespace detail {

inline Matrix main3_matrix(const Matrix& rho, double c1, double c2, double c3) {
    const long d = rho.rows();
    const Matrix swap = realized_permutation(perm_transposition(2, 0, 1), d);
    const Matrix id = Matrix::Identity(d, d);
    Matrix rr(d * d, d * d), rx(d * d, d * d), xr(d * d, d * d);
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) {
            rr.block(i * d, j * d, d, d) = rho(i, j) * rho;
            rx.block(i * d, j * d, d, d) = rho(i, j) * id;
            xr.block(i * d, j * d, d, d) = id(i, j) * rho;
        }
    return c1 * rr + c2 * (rx + xr) * swap + c3 * swap;
}

/// Trace out the r-dimensional halves of one or two interleaved (d, r) pairs.
inline Operator trace_out_pairs(const Matrix& m, long d, long r, int copies) {
    std::vector<long> dims;
    std::set<int> keep;
    for (int c = 0; c < copies; ++c) {
        keep.insert(2 * c);
        dims.push_back(d);
        dims.push_back(r);
    }
    return partial_trace(Operator(RegisterShape(dims), m), keep);
}

} // namespace detail

/// Moments of Mix(A_GPS) on n copies of a rank <= r state, via the exact
/// channel output and the moment contraction, B registers traced out.
inline SecondMomentReport mix_gps_moments(const Operator& rho, long r, int n, Rng& rng) {
    const long d = rho.dim();
    const long D = d * r;
    PurifyChannel channel(n, d, r);
    const Operator folded = kron_power(rho, n);
    Operator psi(RegisterShape::uniform(n, D), channel.apply_exact(folded).entries);
    const SymMoments mom = exact_moments_on_sym_state(psi, n, D);

    SecondMomentReport rep;
    rep.first = detail::trace_out_pairs(mom.first, d, r, 1);
    rep.second = detail::trace_out_pairs(mom.second, d, r, 2);
    rep.lower_direct = detail::trace_out_pairs(mom.second_lower, d, r, 2);
    rep.c_rho_rho = (n - 1.0) / n;
    rep.c_cross = 1.0 / n;
    rep.c_swap = static_cast<double>(r) / (static_cast<double>(n) * n);
    rep.expected_ell = static_cast<double>(r);
    const Matrix main3 =
        detail::main3_matrix(rho.entries, rep.c_rho_rho, rep.c_cross, rep.c_swap);
    rep.lower_residual = Operator(rep.second.shape, main3 - rep.second.entries);
    rep.decomposition_residual = (rep.lower_residual.entries - rep.lower_direct.entries).norm();
    rep.first_moment_error = (rep.first.entries - rho.entries).norm();
    rep.flags = lower_term_properties(rep.lower_residual, rng);
    return rep;
}

/// Moments of Mix+(A_GPS): per-lambda quasi-purified branches, each pushed
/// through the moment contraction on C^{d * ell(lambda)} and averaged with
/// the weak Schur sampling weights. The SWAP coefficient becomes
/// E[ell(lambda)] / n^2.
inline SecondMomentReport mix_plus_gps_moments(const Operator& rho, int n, Rng& rng) {
    const long d = rho.dim();
    auto sd = get_schur(n, d);
    const Matrix fold = kron_power(rho, n).entries;

    Matrix first_d = Matrix::Zero(d, d);
    Matrix second_d = Matrix::Zero(d * d, d * d);
    Matrix lower_d = Matrix::Zero(d * d, d * d);
    double expected_ell = 0.0;

    for (size_t i = 0; i < sd->blocks.size(); ++i) {
        const auto& b = sd->blocks[i];
        const double s = schur_polynomial_value(*sd, b, fold);
        const double p = static_cast<double>(b.specht) * s;
        if (p < 1e-14) continue;
        const long ell = b.lambda.length();
        expected_ell += p * static_cast<double>(ell);

        PurifyChannel lift_channel(n, d, ell);
        const Matrix nu = sd->nu_block(b, fold);
        Operator tau = lift_channel.lift_block_state(static_cast<int>(i), nu / s);
        Operator tau_flat(RegisterShape::uniform(n, d * ell), tau.entries);
        const SymMoments mom = exact_moments_on_sym_state(tau_flat, n, d * ell);

        first_d += p * detail::trace_out_pairs(mom.first, d, ell, 1).entries;
        second_d += p * detail::trace_out_pairs(mom.second, d, ell, 2).entries;
        lower_d += p * detail::trace_out_pairs(mom.second_lower, d, ell, 2).entries;
    }

    SecondMomentReport rep;
    rep.first = Operator(RegisterShape::single(d), std::move(first_d));
    rep.second = Operator(RegisterShape::uniform(2, d), std::move(second_d));
    rep.lower_direct = Operator(rep.second.shape, std::move(lower_d));
    rep.c_rho_rho = (n - 1.0) / n;
    rep.c_cross = 1.0 / n;
    rep.c_swap = expected_ell / (static_cast<double>(n) * n);
    rep.expected_ell = expected_ell;
    const Matrix main3 =
        detail::main3_matrix(rho.entries, rep.c_rho_rho, rep.c_cross, rep.c_swap);
    rep.lower_residual = Operator(rep.second.shape, main3 - rep.second.entries);
    rep.decomposition_residual = (rep.lower_residual.entries - rep.lower_direct.entries).norm();
    rep.first_moment_error = (rep.first.entries - rho.entries).norm();
    rep.flags = lower_term_properties(rep.lower_residual, rng);
    return rep;
}

/// E ||rho_hat||_F^2 - ||rho||_F^2 = tr(SWAP E[rho_hat x rho_hat]) - tr(rho^2),
/// the variance functional used by the batching application.
inline double frobenius_excess(const SecondMomentReport& rep, const Operator& rho) {
    const long d = rho.dim();
    const Matrix swap = realized_permutation(perm_transposition(2, 0, 1), d);
    return std::real((swap * rep.second.entries).trace()) -
           std::real((rho.entries * rho.entries).trace());
}

} // namespace tomoforge
