// Copyright 2026 The stabmagic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stabmagic/dense.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace stabmagic;
using stabmagic::testing::kron_pauli;

namespace {

// Direct oracle: out[b] = sum_b' U[l(b), l(b')] psi[b'] over b' agreeing with b off `qs`.
DenseState apply_oracle(const DenseState &psi, const Matrix &u, const std::vector<size_t> &qs) {
    DenseState out(psi.n);
    auto local = [&](uint64_t b) {
        uint64_t l = 0;
        for (size_t k = 0; k < qs.size(); k++) l |= ((b >> qs[k]) & 1) << k;
        return l;
    };
    uint64_t mask = 0;
    for (size_t q : qs) mask |= uint64_t{1} << q;
    for (uint64_t b = 0; b < psi.dim(); b++) {
        for (uint64_t c = 0; c < psi.dim(); c++) {
            if ((b & ~mask) != (c & ~mask)) continue;
            out[b] += u(static_cast<Eigen::Index>(local(b)), static_cast<Eigen::Index>(local(c))) * psi[c];
        }
    }
    return out;
}

double max_diff(const DenseState &a, const DenseState &b) {
    double m = 0;
    for (size_t k = 0; k < a.dim(); k++) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

}  // namespace

TEST(gates, standard_matrices) {
    const cplx i(0, 1);
    const double r = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(gates::T().matrix(1, 1) - std::exp(i * std::numbers::pi / 4.0)), 0, 1e-15);
    EXPECT_NEAR(std::abs(gates::S().matrix(1, 1) - i), 0, 1e-15);
    EXPECT_NEAR(std::abs(gates::H().matrix(1, 1) + r), 0, 1e-15);
    EXPECT_NEAR(std::abs(gates::CZ().matrix(3, 3) + 1.0), 0, 1e-15);
    EXPECT_NEAR(std::abs(gates::CS().matrix(3, 3) - i), 0, 1e-15);
    EXPECT_NEAR(std::abs(gates::CCZ().matrix(7, 7) + 1.0), 0, 1e-15);
    // control on qubit 0: |01> (index 1) -> |11> (index 3)
    EXPECT_NEAR(std::abs(gates::CX().matrix(3, 1) - 1.0), 0, 1e-15);
    for (const char *name : {"I", "T", "S", "H", "CZ", "CS", "CCZ", "CX", "CNOT", "Tn:3"}) {
        EXPECT_TRUE(gates::by_name(name).is_unitary(1e-12)) << name;
    }
    EXPECT_EQ(gates::by_name("Tn:3").m, 3);
    EXPECT_TRUE(gates::Tn(2).matrix.isApprox(tensor(gates::T(), gates::T()).matrix));
    EXPECT_THROW(gates::by_name("Q"), std::invalid_argument);
}

TEST(gates, pauli_matrix_matches_kronecker_oracle) {
    for (const char *s : {"X", "-Y", "iZ", "XYZ", "-iZIY"}) {
        auto p = PauliString::from_str(s);
        EXPECT_TRUE(pauli_matrix(p).isApprox(kron_pauli(p), 1e-15)) << s;
    }
}

TEST(apply_on_qubits, matches_oracle_for_permuted_targets) {
    Rng rng(3);
    DenseState psi(4);
    std::normal_distribution<double> g;
    for (size_t k = 0; k < psi.dim(); k++) psi[k] = cplx(g(rng), g(rng));
    psi.normalize();
    for (std::vector<size_t> qs : std::vector<std::vector<size_t>>{{0}, {2}, {0, 1}, {3, 1}, {2, 0, 3}}) {
        auto u = haar_unitary(static_cast<int>(qs.size()), rng);
        auto got = apply_on_qubits(psi, u, std::span<const size_t>(qs));
        EXPECT_LT(max_diff(got, apply_oracle(psi, u.matrix, qs)), 1e-12);
        EXPECT_NEAR(got.norm(), 1.0, 1e-12);
    }
    EXPECT_THROW(apply_on_qubits(psi, gates::CZ(), {1, 1}), DimensionError);
    EXPECT_THROW(apply_on_qubits(psi, gates::CZ(), {1}), DimensionError);
    EXPECT_THROW(apply_on_qubits(psi, gates::T(), {4}), DimensionError);
}

TEST(haar, unitarity_and_determinism) {
    for (int m = 1; m <= 5; m++) {
        auto u = haar_unitary(m, static_cast<uint64_t>(100 + m));
        EXPECT_TRUE(u.is_unitary(1e-10));
        EXPECT_TRUE(u.matrix.isApprox(haar_unitary(m, static_cast<uint64_t>(100 + m)).matrix, 0));
    }
    Limits tiny;
    tiny.max_dense_qubits = 3;
    EXPECT_THROW(haar_unitary(4, uint64_t{1}, tiny), ResourceError);
}

TEST(haar, low_moments_match_haar_values) {
    // E|U_00|^2 = 1/d, E|tr U|^2 = 1, E|tr U|^4 = 2 for d >= 2
    Rng rng(12);
    const int m = 2, samples = 20000;
    const double d = 4;
    double u00 = 0, t2 = 0, t4 = 0;
    for (int s = 0; s < samples; s++) {
        auto u = haar_unitary(m, rng);
        u00 += std::norm(u.matrix(0, 0));
        double tr = std::norm(u.matrix.trace());
        t2 += tr;
        t4 += tr * tr;
    }
    EXPECT_NEAR(u00 / samples, 1 / d, 0.01);
    EXPECT_NEAR(t2 / samples, 1.0, 0.05);
    EXPECT_NEAR(t4 / samples, 2.0, 0.2);
}

TEST(brickwork, layout_examples) {
    auto l = brickwork_layout(6, 3, 2);
    ASSERT_EQ(l.size(), 3u);
    EXPECT_EQ(l[0], (std::vector<std::vector<size_t>>{{0, 1}, {2, 3}, {4, 5}}));
    EXPECT_EQ(l[1], (std::vector<std::vector<size_t>>{{1, 2}, {3, 4}}));
    EXPECT_EQ(l[2], l[0]);
    auto w = brickwork_layout(7, 2, 3);
    EXPECT_EQ(w[0], (std::vector<std::vector<size_t>>{{0, 1, 2}, {3, 4, 5}}));
    EXPECT_EQ(w[1], (std::vector<std::vector<size_t>>{{1, 2, 3}, {4, 5, 6}}));
    EXPECT_TRUE(brickwork_layout(4, 0, 2).empty());
    EXPECT_THROW(brickwork_layout(4, 1, 1), DomainError);
    EXPECT_THROW(brickwork_layout(2, 1, 3), DimensionError);
}

TEST(brickwork, preserves_norm_and_is_seeded) {
    DenseState psi = DenseState::basis(5, 3);
    std::vector<size_t> region = {0, 1, 2, 3};
    auto a = brickwork_apply(psi, region, 3, 2, uint64_t{7});
    auto b = brickwork_apply(psi, region, 3, 2, uint64_t{7});
    EXPECT_NEAR(a.norm(), 1.0, 1e-12);
    EXPECT_EQ(max_diff(a, b), 0.0);
    // qubit 4 is untouched: it stays |0>
    for (size_t k = 0; k < a.dim(); k++) {
        if (k & 16) EXPECT_NEAR(std::abs(a[k]), 0, 1e-15);
    }
}

TEST(choi, identity_gives_bell_pairs) {
    const double r = 1 / std::sqrt(2.0);
    auto c = choi_state(DenseUnitary::identity(1));
    EXPECT_TRUE(equal_up_to_phase(c, DenseState(2, {r, 0, 0, r})));
}

TEST(choi, halves_are_maximally_mixed) {
    for (int m = 1; m <= 3; m++) {
        auto c = choi_state(haar_unitary(m, uint64_t(m)));
        EXPECT_NEAR(c.norm(), 1.0, 1e-12);
        std::vector<size_t> half(static_cast<size_t>(m));
        std::iota(half.begin(), half.end(), size_t{0});
        EXPECT_NEAR(von_neumann_entropy(c, std::span<const size_t>(half)), m, 1e-9);
    }
}

TEST(choi, layout_matches_definition) {
    auto u = haar_unitary(2, uint64_t{5});
    auto c = choi_state(u);
    for (uint64_t i = 0; i < 4; i++) {
        for (uint64_t b = 0; b < 4; b++) {
            EXPECT_NEAR(std::abs(c[i | (b << 2)] - u.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b)) / 2.0),
                        0, 1e-15);
        }
    }
}

TEST(nonstab, imperfect_bell_entropy) {
    NonstabSpec spec;
    spec.theta = std::numbers::pi / 8;
    auto psi = build_nonstab_state(spec, 2, 1);
    EXPECT_EQ(psi.n, 5);
    double c2 = std::pow(std::cos(spec.theta), 2), s2 = 1 - c2;
    double h = -c2 * std::log2(c2) - s2 * std::log2(s2);
    EXPECT_NEAR(von_neumann_entropy(psi, {0, 1, 2}), 2 * h, 1e-10);
    spec.theta = std::numbers::pi / 4;
    EXPECT_NEAR(von_neumann_entropy(build_nonstab_state(spec, 2, 0), {0, 1}), 2.0, 1e-10);
    spec.theta = 2.0;
    EXPECT_THROW(build_nonstab_state(spec, 1, 0), DomainError);
}

TEST(nonstab, spectrum_laws) {
    NonstabSpec spec;
    spec.kind = NonstabSpec::Kind::spectrum;
    spec.law = LambdaLaw::linear;
    auto psi = build_nonstab_state(spec, 1, 0);
    EXPECT_NEAR(von_neumann_entropy(psi, {0}), 0.7219280948873623, 1e-10);
    for (auto law : {LambdaLaw::exp, LambdaLaw::linear, LambdaLaw::quadratic, LambdaLaw::cubic}) {
        spec.law = law;
        auto lam = schmidt_coefficients(spec, 3);
        double norm = 0;
        for (double l : lam) norm += l * l;
        EXPECT_NEAR(norm, 1.0, 1e-12);
        EXPECT_EQ(lambda_law_from_string(to_string(law)), law);
    }
    spec.law = LambdaLaw::quadratic;
    auto q = schmidt_coefficients(spec, 1);
    EXPECT_NEAR(q[1] / q[0], 4.0, 1e-12);
    EXPECT_THROW(lambda_law_from_string("quartic"), std::invalid_argument);
}
