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

#include "stabmagic/pauli.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace stabmagic;
using stabmagic::testing::kron_pauli;

namespace {

PauliString P(const char *s) {
    return PauliString::from_str(s);
}

bool mats_equal(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    return (a - b).cwiseAbs().maxCoeff() < 1e-12;
}

}  // namespace

TEST(pauli, x_times_z_is_minus_i_y) {
    PauliString r = P("X") * P("Z");
    EXPECT_EQ(r.str(), "-iY");
    EXPECT_EQ(r.coefficient(), 3);
    EXPECT_EQ(r, P("-iY"));
}

TEST(pauli, hermitian_squares_to_identity) {
    for (const char *s : {"X", "Y", "Z", "-XYZ", "YYIZ", "-Y"}) {
        PauliString p = P(s);
        PauliString sq = p * p;
        EXPECT_TRUE(sq.is_identity_up_to_phase()) << s;
        EXPECT_EQ(sq.phase(), 0) << s;
        EXPECT_EQ(sq.coefficient(), 0) << s;
    }
}

TEST(pauli, xx_times_zz_matches_matrix_product) {
    PauliString r = P("XX") * P("ZZ");
    EXPECT_EQ(r.str(), "-YY");
    EXPECT_TRUE(mats_equal(kron_pauli(r), kron_pauli(P("XX")) * kron_pauli(P("ZZ"))));
}

TEST(pauli, product_matches_matrices_exhaustively_up_to_three_qubits) {
    for (size_t n = 1; n <= 3; n++) {
        const uint64_t d = uint64_t{1} << n;
        for (uint64_t a = 0; a < d * d; a++) {
            for (uint64_t b = 0; b < d * d; b++) {
                PauliString p = PauliString::from_xz(n, a / d, a % d);
                PauliString q = PauliString::from_xz(n, b / d, b % d);
                // also exercise non-trivial signs
                p.set_coefficient(static_cast<uint8_t>((a + b) & 3));
                PauliString r = p * q;
                ASSERT_TRUE(mats_equal(kron_pauli(r), kron_pauli(p) * kron_pauli(q)))
                    << p.str() << " * " << q.str() << " = " << r.str();
                ASSERT_EQ(r.x_mask(), p.x_mask() ^ q.x_mask());
                ASSERT_EQ(r.z_mask(), p.z_mask() ^ q.z_mask());
            }
        }
    }
}

TEST(pauli, product_is_associative) {
    const size_t n = 2;
    for (uint64_t a = 0; a < 16; a++) {
        for (uint64_t b = 0; b < 16; b++) {
            for (uint64_t c = 0; c < 16; c += 3) {
                auto p = PauliString::from_xz(n, a >> 2, a & 3);
                auto q = PauliString::from_xz(n, b >> 2, b & 3);
                auto r = PauliString::from_xz(n, c >> 2, c & 3);
                ASSERT_EQ((p * q) * r, p * (q * r));
            }
        }
    }
}

TEST(pauli, commutes_examples) {
    EXPECT_EQ(symplectic_inner(P("X"), P("Z")), 1);
    EXPECT_EQ(symplectic_inner(P("XX"), P("ZZ")), 0);
    EXPECT_TRUE(commutes(P("III"), P("XYZ")));
}

TEST(pauli, commutes_matches_matrices_exhaustively_up_to_two_qubits) {
    for (size_t n = 1; n <= 2; n++) {
        const uint64_t d = uint64_t{1} << n;
        for (uint64_t a = 0; a < d * d; a++) {
            for (uint64_t b = 0; b < d * d; b++) {
                auto p = PauliString::from_xz(n, a / d, a % d);
                auto q = PauliString::from_xz(n, b / d, b % d);
                auto mp = kron_pauli(p), mq = kron_pauli(q);
                bool matrix_commute = (mp * mq - mq * mp).cwiseAbs().maxCoeff() < 1e-12;
                ASSERT_EQ(commutes(p, q), matrix_commute) << p.str() << " " << q.str();
            }
        }
    }
}

TEST(pauli, size_mismatch_is_dimension_error) {
    EXPECT_THROW(P("X") * P("XX"), DimensionError);
    EXPECT_THROW(commutes(P("X"), P("XX")), DimensionError);
    EXPECT_THROW(apply_pauli(DenseState(2), P("X")), DimensionError);
}

TEST(pauli, apply_pauli_examples) {
    DenseState zero = DenseState::basis(1, 0);
    DenseState one = apply_pauli(zero, P("X"));
    EXPECT_NEAR(std::abs(one[1] - 1.0), 0, 1e-15);
    EXPECT_NEAR(std::abs(one[0]), 0, 1e-15);

    const double r = 1 / std::sqrt(2.0);
    DenseState plus(1, {r, r});
    DenseState minus = apply_pauli(plus, P("Z"));
    EXPECT_NEAR(std::abs(minus[0] - r), 0, 1e-15);
    EXPECT_NEAR(std::abs(minus[1] + r), 0, 1e-15);

    DenseState bell(2, {r, 0, 0, r});
    DenseState out = apply_pauli(bell, P("XX"));
    for (size_t k = 0; k < 4; k++) {
        EXPECT_NEAR(std::abs(out[k] - bell[k]), 0, 1e-15);
    }
}

TEST(pauli, apply_pauli_matches_matrix_and_is_an_involution) {
    const size_t n = 3;
    std::vector<cplx> amps(8);
    for (size_t k = 0; k < 8; k++) amps[k] = cplx(0.1 * k + 0.3, -0.05 * k * k);
    DenseState s(3, amps);
    Eigen::VectorXcd v(8);
    for (size_t k = 0; k < 8; k++) v(k) = amps[k];
    for (uint64_t a = 0; a < 64; a++) {
        auto p = PauliString::from_xz(n, a >> 3, a & 7);
        if (a % 5 == 0) p.set_coefficient(2);
        DenseState once = apply_pauli(s, p);
        Eigen::VectorXcd expect = kron_pauli(p) * v;
        for (size_t k = 0; k < 8; k++) {
            ASSERT_NEAR(std::abs(once[k] - expect(k)), 0, 1e-12);
        }
        DenseState twice = apply_pauli(once, p);
        for (size_t k = 0; k < 8; k++) {
            ASSERT_EQ(twice[k], s[k]);
        }
    }
}

TEST(pauli, text_round_trip) {
    for (const char *s : {"I", "X", "-Y", "+iZ", "-iXYZI", "YYYY", "-IIII"}) {
        PauliString p = P(s);
        std::string printed = p.str();
        EXPECT_EQ(P(printed.c_str()), p) << s;
    }
    EXPECT_EQ(P("+XZ").str(), "XZ");
    EXPECT_EQ(P("iX").str(), "+iX");
    EXPECT_EQ(P("_X_").str(), "IXI");
    EXPECT_THROW(P("XQ"), std::invalid_argument);
}

TEST(pauli, y_carries_internal_phase_one) {
    PauliString y = P("Y");
    EXPECT_EQ(y.phase(), 1);
    EXPECT_EQ(y.coefficient(), 0);
    EXPECT_TRUE(y.is_hermitian());
    EXPECT_EQ(PauliString::from_xz(2, 3, 3), P("YY"));
}

TEST(pauli, many_word_products_track_phase) {
    // 130 qubits: Y on every site, times X on every site.
    std::string ys(130, 'Y'), xs(130, 'X'), zs(130, 'Z');
    PauliString y = P(ys.c_str()), x = P(xs.c_str());
    // Y X = -i Z per site, (-i)^130 = (-i)^2 = -1
    PauliString r = y * x;
    EXPECT_EQ(r, P(("-" + zs).c_str()));
    EXPECT_EQ(symplectic_inner(y, x), 0);
    EXPECT_EQ(r.weight(), 130u);
}

TEST(pauli, restriction_and_support) {
    PauliString p = P("-XIZY");
    std::vector<size_t> keep = {0, 2, 3};
    EXPECT_EQ(p.restricted(keep).str(), "-XZY");
    EXPECT_TRUE(p.supported_on(keep));
    std::vector<size_t> partial = {0, 1};
    EXPECT_FALSE(p.supported_on(partial));
    EXPECT_EQ(tensor(P("-X"), P("iZ")).str(), "-iXZ");
}
