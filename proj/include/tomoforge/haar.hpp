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

#include "operator.hpp"
#include "rng.hpp"

namespace tomoforge {

inline Matrix ginibre(long rows, long cols, Rng& rng) {
    Matrix g(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
    return g;
}

/// Haar-random unitary on U(d): QR of a complex Gaussian matrix with the
/// phases of the R diagonal folded into Q.
inline Operator haar_unitary(long d, Rng& rng) {
    if (d < 1) throw validation_error("haar_unitary: d >= 1 required");
    Matrix z = ginibre(d, d, rng);
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (long i = 0; i < d; ++i) {
        const Complex rii = r(i, i);
        const double a = std::abs(rii);
        q.col(i) *= (a > 0.0) ? rii / a : Complex(1.0, 0.0);
    }
    return Operator(RegisterShape::single(d), std::move(q));
}

/// Haar-random pure state on C^d (normalized complex Gaussian vector).
inline PureState haar_state(long d, Rng& rng) {
    if (d < 1) throw validation_error("haar_state: d >= 1 required");
    if (d == 1) return PureState(RegisterShape::single(1), Vector::Ones(1));
    Vector v(d);
    for (long i = 0; i < d; ++i) v(i) = rng.complex_normal();
    v /= v.norm();
    return PureState(RegisterShape::single(d), std::move(v));
}

/// Haar state in the orthogonal complement of psi.
inline PureState haar_state_orthogonal(const PureState& psi, Rng& rng) {
    const long d = psi.amplitudes.size();
    if (d < 2) throw validation_error("haar_state_orthogonal: need d >= 2");
    for (int attempt = 0; attempt < 64; ++attempt) {
        Vector g(d);
        for (long i = 0; i < d; ++i) g(i) = rng.complex_normal();
        g -= psi.amplitudes * psi.amplitudes.dot(g);
        const double nrm = g.norm();
        if (nrm > 1e-8) return PureState(psi.shape, g / nrm);
    }
    throw numerical_error("haar_state_orthogonal: degenerate draws");
}

inline Operator random_hermitian(long d, Rng& rng) {
    Matrix g = ginibre(d, d, rng);
    return Operator(RegisterShape::single(d), 0.5 * (g + g.adjoint()));
}

/// tr_B of a Haar pure state on C^d tensor C^r: one draw of the rank-r
/// Hilbert-Schmidt measure. Output is PSD, unit trace, rank <= min(d, r).
inline Operator hs_sample(long d, long r, Rng& rng) {
    if (d < 1 || r < 1) throw validation_error("hs_sample: d, r >= 1 required");
    PureState u = haar_state(d * r, rng);
    PureState u2(RegisterShape({d, r}), u.amplitudes);
    return partial_trace(u2.projector(), {0});
}

/// Random rank-k density matrix on C^d (HS-distributed over its support).
inline Operator random_density(long d, long k, Rng& rng) {
    if (k < 1 || k > d) throw validation_error("random_density: need 1 <= rank <= d");
    return hs_sample(d, k, rng);
}

} // namespace tomoforge
