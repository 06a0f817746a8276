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

#include "stabmagic/exact.hpp"

#include <gtest/gtest.h>

#include "stabmagic/dense.hpp"

using namespace stabmagic;

namespace {

ScenarioDims haar(int64_t a, int64_t e) {
    ScenarioDims d;
    d.scenario = Scenario::bipartite_haar;
    d.d_a = a;
    d.d_e = e;
    return d;
}

ScenarioDims product(int64_t a, int64_t b, int64_t e) {
    ScenarioDims d;
    d.scenario = Scenario::bipartite_product;
    d.d_a = a;
    d.d_b = b;
    d.d_e = e;
    return d;
}

}  // namespace

TEST(weingarten, closed_values) {
    EXPECT_EQ(weingarten({1, 1, 1, 1}, 4), Rational(67, 10080));
    EXPECT_EQ(weingarten({4}, 4), Rational(-1, 1008));
    EXPECT_EQ(weingarten({1}, 3), Rational(1, 3));
    EXPECT_EQ(weingarten({1, 1}, 2), Rational(1, 3));
    EXPECT_EQ(weingarten({2}, 2), Rational(-1, 6));
    EXPECT_THROW(weingarten({1, 1, 1, 1}, 3), DomainError);
    EXPECT_THROW(weingarten({3}, 8), DomainError);
}

TEST(weingarten, class_sums_give_moments_of_a_matrix_entry) {
    // E|U_11|^{2k} = k! sum_sigma Wg(sigma) = k! / (N (N+1) ... (N+k-1))
    for (int64_t n : {4, 5, 8, 16, 1024}) {
        Rational s2 = weingarten({1, 1}, n) + weingarten({2}, n);
        EXPECT_EQ(s2, Rational(1, n * (n + 1)));
        Rational s4 = weingarten({1, 1, 1, 1}, n) + 6 * weingarten({2, 1, 1}, n) + 3 * weingarten({2, 2}, n) +
                      8 * weingarten({3, 1}, n) + 6 * weingarten({4}, n);
        EXPECT_EQ(s4, Rational(1, n * (n + 1) * (n + 2) * (n + 3))) << n;
    }
}

TEST(weingarten, monte_carlo_moments) {
    Rng rng(17);
    for (int m : {2, 3}) {
        const int64_t n = int64_t{1} << m;
        const int samples = 20000;
        double e8 = 0, e8sq = 0, tr = 0;
        Matrix a = Matrix::Zero(n, n), b = Matrix::Zero(n, n);
        a(0, 0) = 1;
        a(1, 1) = 2;
        b(0, 0) = 3;
        b(n - 1, n - 1) = -1;
        for (int s = 0; s < samples; s++) {
            auto u = haar_unitary(m, rng);
            double p = std::pow(std::norm(u.matrix(0, 0)), 4);
            e8 += p;
            e8sq += p * p;
            tr += (a * u.matrix * b * u.matrix.adjoint()).trace().real();
        }
        Rational s4 = weingarten({1, 1, 1, 1}, n) + 6 * weingarten({2, 1, 1}, n) + 3 * weingarten({2, 2}, n) +
                      8 * weingarten({3, 1}, n) + 6 * weingarten({4}, n);
        double expect = 24 * to_double(s4);
        double mean = e8 / samples, sd = std::sqrt((e8sq / samples - mean * mean) / samples);
        EXPECT_NEAR(mean, expect, 5 * sd) << n;
        // <tr(A U B U^dag)> = tr A tr B / N
        EXPECT_NEAR(tr / samples, 3.0 * 2.0 / static_cast<double>(n), 0.05) << n;
    }
}

TEST(exact, haar_on_a_examples) {
    EXPECT_EQ(exact_average_y(haar(8, 1)), Rational(7, 11));
    EXPECT_EQ(haar_state_average_y(8), Rational(7, 11));
    // E = 0 is a Haar-random state on A
    for (int64_t a : {4, 8, 16, 64}) {
        EXPECT_EQ(exact_average_y(haar(a, 1)), haar_state_average_y(a));
    }
}

TEST(exact, product_unentangled_factorizes) {
    for (int64_t a : {4, 8, 32}) {
        for (int64_t b : {4, 16}) {
            Rational gap = Rational(16, (a + 3) * (b + 3));
            EXPECT_EQ(exact_average_y(product(a, b, 1)), 1 - gap);
        }
    }
}

TEST(exact, product_is_symmetric) {
    for (int64_t e : {1, 2, 4}) {
        EXPECT_EQ(exact_average_y(product(4, 16, e)), exact_average_y(product(16, 4, e)));
        EXPECT_EQ(exact_average_y(product(8, 32, e)), exact_average_y(product(32, 8, e)));
    }
}

TEST(exact, tripartite_pair_reduces_to_product) {
    for (int64_t a : {4, 8}) {
        for (int64_t b : {4, 16}) {
            for (int64_t e : {1, 2, 4}) {
                ScenarioDims d;
                d.scenario = Scenario::tripartite_pair;
                d.d_a = a;
                d.d_b = b;
                d.d_ab = e;
                EXPECT_EQ(exact_average_y(d), exact_average_y(product(a, b, e))) << a << " " << b << " " << e;
            }
        }
    }
}

TEST(exact, leading_order_ratio_tends_to_one) {
    // gap_exact / (4 / (D_A D_E)) -> 1 as D_A grows at fixed E
    for (int e = 0; e <= 2; e++) {
        double prev = 1e9;
        for (int na = 4; na <= 20; na += 4) {
            int64_t da = int64_t{1} << na, de = int64_t{1} << e;
            double gap = to_double(1 - exact_average_y(haar(da, de)));
            double lead = 1 - leading_average_y({Scenario::bipartite_haar, na, 0, 0, e}).y;
            double err = std::abs(gap / lead - 1);
            EXPECT_LT(err, prev + 1e-15);
            prev = err;
        }
        EXPECT_LT(prev, 1e-4);
    }
}

TEST(exact, domain_errors) {
    EXPECT_THROW(exact_average_y(haar(2, 1)), DomainError);
    EXPECT_THROW(exact_average_y(haar(6, 1)), DomainError);
    EXPECT_THROW(exact_average_y(product(4, 2, 1)), DomainError);
    ScenarioDims t;
    t.scenario = Scenario::tripartite_triple;
    t.d_a = t.d_b = t.d_c = 4;
    EXPECT_THROW(exact_average_y(t), DomainError);
    EXPECT_THROW(leading_average_y({Scenario::bipartite_haar, -1}), DomainError);
}

TEST(leading, examples) {
    auto v = leading_average_y({Scenario::bipartite_haar, 2, 0, 0, 2});
    EXPECT_DOUBLE_EQ(v.y, 0.75);
    EXPECT_DOUBLE_EQ(v.m2, 2.0);
    EXPECT_DOUBLE_EQ(leading_average_y({Scenario::bipartite_haar, 4, 0, 0, 2}).y, 0.9375);
    // E = 0 product: 4 2^{-nA-nB} (1 + 3)
    EXPECT_DOUBLE_EQ(leading_average_y({Scenario::bipartite_product, 3, 3, 0, 0}).y, 1 - 16.0 / 64);
    EXPECT_FALSE(leading_average_y({Scenario::tripartite_triple, 4, 4, 4, 0, 2, 2, 2, 2}).unreliable);
    auto bad = leading_average_y({Scenario::tripartite_triple, 1, 1, 1, 0, 0, 0, 0, 0});
    EXPECT_TRUE(bad.unreliable);
    EXPECT_TRUE(std::isinf(bad.m2) || bad.y < 0);
}

TEST(scenario, names_round_trip) {
    for (auto s : {Scenario::bipartite_haar, Scenario::bipartite_product, Scenario::tripartite_pair,
                   Scenario::tripartite_triple}) {
        EXPECT_EQ(scenario_from_string(to_string(s)), s);
    }
    EXPECT_THROW(scenario_from_string("quadripartite"), std::invalid_argument);
}
