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

#include "tomoforge/schur.hpp"

using namespace tomoforge;

TEST_CASE("n = 1 Schur transform is the identity") {
    auto sd = build_schur_transform(1, 3);
    REQUIRE(sd.blocks.size() == 1);
    REQUIRE(sd.blocks[0].lambda.parts == std::vector<int>{1});
    REQUIRE((sd.u_schur - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("two qubits split into symmetric and antisymmetric blocks") {
    auto sd = build_schur_transform(2, 2);
    REQUIRE(sd.blocks.size() == 2);
    REQUIRE(sd.blocks[0].lambda.parts == std::vector<int>{2});
    REQUIRE(sd.blocks[0].specht == 1);
    REQUIRE(sd.blocks[0].weyl == 3);
    REQUIRE(sd.blocks[1].lambda.parts == std::vector<int>{1, 1});
    REQUIRE(sd.blocks[1].specht == 1);
    REQUIRE(sd.blocks[1].weyl == 1);

    Matrix swap = realized_permutation(perm_transposition(2, 0, 1), 2);
    Matrix conj = sd.to_schur(swap);
    Eigen::Vector4d expect(1, 1, 1, -1);
    REQUIRE((conj - Matrix(expect.cast<Complex>().asDiagonal())).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("three qubits: block dimensions 1x4 and 2x2") {
    auto sd = build_schur_transform(3, 2);
    REQUIRE(sd.blocks.size() == 2);
    REQUIRE(sd.blocks[0].specht * sd.blocks[0].weyl == 4);
    REQUIRE(sd.blocks[1].specht == 2);
    REQUIRE(sd.blocks[1].weyl == 2);
    REQUIRE(sd.total_dim() == 8);
}

TEST_CASE("Schur validation residuals stay below 1e-9") {
    Rng rng(21);
    for (auto [n, d] : std::vector<std::pair<int, long>>{{2, 2}, {3, 2}, {4, 2}, {5, 2}, {2, 3}, {3, 3}, {4, 3}}) {
        auto sd = build_schur_transform(n, d);
        auto v = validate_schur(sd, 5, rng);
        INFO("n=" << n << " d=" << d << " unitarity=" << v.unitarity << " perm=" << v.offblock_perm
                  << " fold=" << v.offblock_fold << " yor=" << v.yor_residual
                  << " nu=" << v.fold_residual);
        REQUIRE(v.dimension_check);
        REQUIRE(v.worst() < 1e-9);
    }
}

TEST_CASE("degenerate inputs: d = 1 purifying register") {
    auto sd = build_schur_transform(3, 1);
    REQUIRE(sd.blocks.size() == 1);
    REQUIRE(sd.blocks[0].specht == 1);
    REQUIRE(sd.blocks[0].weyl == 1);
    REQUIRE(sd.total_dim() == 1);
}

TEST_CASE("off-block leakage over many random inputs") {
    Rng rng(22);
    auto sd = build_schur_transform(3, 2);
    for (int trial = 0; trial < 20; ++trial) {
        Operator rho = random_density(2, 2, rng);
        REQUIRE(offblock_norm(sd, sd.to_schur(kron_power(rho, 3).entries)) < 1e-9);
        Perm pi = perm_identity(3);
        for (int i = 2; i > 0; --i) std::swap(pi[i], pi[rng.uniform_index(i + 1)]);
        REQUIRE(offblock_norm(sd, sd.to_schur(realized_permutation(pi, 2))) < 1e-9);
    }
}

TEST_CASE("schur polynomial values") {
    Rng rng(23);
    SECTION("pure states live in the one-row block") {
        auto sd = build_schur_transform(3, 2);
        PureState psi = haar_state(2, rng);
        Matrix fold = kron_power(psi.projector(), 3).entries;
        REQUIRE(schur_polynomial_value(sd, sd.blocks[0], fold) == Catch::Approx(1.0).margin(1e-10));
        REQUIRE(schur_polynomial_value(sd, sd.blocks[1], fold) == Catch::Approx(0.0).margin(1e-10));
    }
    SECTION("total probability sums to one") {
        auto sd = build_schur_transform(4, 3);
        Operator rho = random_density(3, 3, rng);
        Matrix fold = kron_power(rho, 4).entries;
        double total = 0.0;
        for (const auto& b : sd.blocks)
            total += b.specht * schur_polynomial_value(sd, b, fold);
        REQUIRE(total == Catch::Approx(1.0).margin(1e-9));
    }
    SECTION("maximally mixed two qubits: antisymmetric weight 1/4") {
        auto sd = build_schur_transform(2, 2);
        Operator mm(RegisterShape::single(2), Matrix::Identity(2, 2) / 2.0);
        Matrix fold = kron_power(mm, 2).entries;
        REQUIRE(schur_polynomial_value(sd, sd.blocks[1], fold) ==
                Catch::Approx(0.25).margin(1e-12));
    }
}

TEST_CASE("blambda average reassembles the folded state") {
    // sum over lambda of p_lambda * rho|_lambda equals U rho^{xn} U^dagger
    Rng rng(24);
    auto sd = build_schur_transform(3, 2);
    Operator rho = random_density(2, 2, rng);
    Matrix fold = kron_power(rho, 3).entries;
    Matrix in_schur = sd.to_schur(fold);

    Matrix acc = Matrix::Zero(8, 8);
    for (const auto& b : sd.blocks) {
        const double s = schur_polynomial_value(sd, b, fold);
        const double p = b.specht * s;
        if (p < 1e-14) continue;
        // rho|_lambda = (I_dim/dim) tensor (nu/s) on the block
        Matrix nu = sd.nu_block(b, fold);
        Matrix block = Matrix::Zero(b.size(), b.size());
        for (long si = 0; si < b.specht; ++si)
            block.block(si * b.weyl, si * b.weyl, b.weyl, b.weyl) =
                nu / (static_cast<double>(b.specht) * s);
        acc.block(b.offset, b.offset, b.size(), b.size()) = p * block;
    }
    REQUIRE((acc - in_schur).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("weak Schur sampling") {
    Rng rng(25);
    SECTION("n = 1 always yields the trivial diagram and leaves the state") {
        auto sd = build_schur_transform(1, 2);
        Operator rho = random_density(2, 2, rng);
        auto [idx, post] = weak_schur_sample(rho, sd, rng);
        REQUIRE(idx == 0);
        REQUIRE((sd.from_schur(post.entries) - rho.entries).cwiseAbs().maxCoeff() < 1e-10);
    }
    SECTION("pure product states always collapse to the one-row block") {
        auto sd = build_schur_transform(3, 2);
        PureState psi = PureState::basis(RegisterShape::single(2), 0);
        Operator fold = kron_power(psi.projector(), 3);
        for (int t = 0; t < 20; ++t) {
            auto [idx, post] = weak_schur_sample(fold, sd, rng);
            REQUIRE(idx == 0);
        }
    }
    SECTION("maximally mixed two qubits: Pr[(2)] = 3/4, Pr[(1,1)] = 1/4") {
        auto sd = build_schur_transform(2, 2);
        Operator mm(RegisterShape::uniform(2, 2), Matrix::Identity(4, 4) / 4.0);
        int sym = 0;
        const int n = 20000;
        for (int t = 0; t < n; ++t) {
            auto [idx, post] = weak_schur_sample(mm, sd, rng);
            if (idx == 0) ++sym;
        }
        const double p = static_cast<double>(sym) / n;
        REQUIRE(std::abs(p - 0.75) < 3.0 * std::sqrt(0.75 * 0.25 / n));
    }
    SECTION("collapsed state of a folded input matches rho|_lambda") {
        auto sd = build_schur_transform(2, 2);
        Operator rho = random_density(2, 2, rng);
        Operator fold = kron_power(rho, 2);
        auto [idx, post] = weak_schur_sample(fold, sd, rng);
        const auto& b = sd.blocks[static_cast<size_t>(idx)];
        const double s = schur_polynomial_value(sd, b, fold.entries);
        Matrix nu = sd.nu_block(b, fold.entries);
        Matrix expect = Matrix::Zero(sd.total_dim(), sd.total_dim());
        for (long si = 0; si < b.specht; ++si)
            expect.block(b.offset + si * b.weyl, b.offset + si * b.weyl, b.weyl, b.weyl) =
                nu / (static_cast<double>(b.specht) * s);
        REQUIRE((post.entries - expect).cwiseAbs().maxCoeff() < 1e-9);
    }
}
