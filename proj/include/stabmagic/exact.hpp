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

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "stabmagic/errors.hpp"

namespace stabmagic {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational &r) {
    return r.convert_to<double>();
}

enum class Scenario { bipartite_haar, bipartite_product, tripartite_pair, tripartite_triple };

inline std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::bipartite_haar:
            return "bipartite_haar";
        case Scenario::bipartite_product:
            return "bipartite_product";
        case Scenario::tripartite_pair:
            return "tripartite_pair";
        case Scenario::tripartite_triple:
            return "tripartite_triple";
    }
    return "?";
}

inline Scenario scenario_from_string(std::string_view s) {
    if (s == "bipartite_haar") return Scenario::bipartite_haar;
    if (s == "bipartite_product") return Scenario::bipartite_product;
    if (s == "tripartite_pair") return Scenario::tripartite_pair;
    if (s == "tripartite_triple") return Scenario::tripartite_triple;
    throw std::invalid_argument("unknown scenario '" + std::string(s) + "'");
}

/// Weingarten value for a cycle type of S_1, S_2 or S_4 at dimension N.
/// Supported: {1}, {1,1}, {2}, {1,1,1,1}, {2,1,1}, {2,2}, {3,1}, {4}.
inline Rational weingarten(const std::vector<int> &cycle_type, int64_t dim) {
    const Rational n = dim;
    auto require = [&](bool ok) {
        if (!ok) {
            throw DomainError("weingarten: singular dimension N = " + std::to_string(dim));
        }
    };
    if (cycle_type == std::vector<int>{1}) {
        require(dim >= 1);
        return 1 / n;
    }
    if (cycle_type == std::vector<int>{1, 1}) {
        require(dim >= 2);
        return 1 / (n * n - 1);
    }
    if (cycle_type == std::vector<int>{2}) {
        require(dim >= 2);
        return -1 / (n * (n * n - 1));
    }
    const Rational n2 = n * n;
    const Rational den = n2 * (n2 - 1) * (n2 - 4) * (n2 - 9);
    auto four = [&](const Rational &num) {
        require(dim >= 4);
        return num / den;
    };
    if (cycle_type == std::vector<int>{1, 1, 1, 1}) return four(n2 * n2 - 8 * n2 + 6);
    if (cycle_type == std::vector<int>{2, 1, 1}) return four(-n2 * n + 4 * n);
    if (cycle_type == std::vector<int>{2, 2}) return four(n2 + 6);
    if (cycle_type == std::vector<int>{3, 1}) return four(2 * n2 - 3);
    if (cycle_type == std::vector<int>{4}) return four(-5 * n);
    throw DomainError("weingarten: unsupported cycle type");
}

/// Dimensions (powers of two) for the closed-form Haar averages.
/// bipartite_haar: D_A, D_E. bipartite_product: D_A, D_B, D_E.
/// tripartite_*: D_A, D_B, D_C, D_AB, D_AC, D_BC, D_g.
struct ScenarioDims {
    Scenario scenario = Scenario::bipartite_haar;
    int64_t d_a = 1, d_b = 1, d_c = 1, d_e = 1;
    int64_t d_ab = 1, d_ac = 1, d_bc = 1, d_g = 1;
};

namespace detail {

inline void require_power_of_two(int64_t d, const char *name) {
    if (d < 1 || (d & (d - 1)) != 0) {
        throw DomainError(std::string("exact_average_y: ") + name + " = " + std::to_string(d) +
                          " is not a positive power of two");
    }
}

inline void require_haar_acted(int64_t d, const char *name) {
    if (d < 4) {
        throw DomainError(std::string("exact_average_y: ") + name +
                          " < 4 is a singular regime for the fourth-moment formula");
    }
}

}  // namespace detail

/// Exact Haar average of Y_lin.
inline Rational exact_average_y(const ScenarioDims &dims) {
    for (auto [d, name] : {std::pair{dims.d_a, "D_A"}, {dims.d_b, "D_B"}, {dims.d_c, "D_C"}, {dims.d_e, "D_E"},
                           {dims.d_ab, "D_AB"}, {dims.d_ac, "D_AC"}, {dims.d_bc, "D_BC"}, {dims.d_g, "D_g"}}) {
        detail::require_power_of_two(d, name);
    }
    switch (dims.scenario) {
        case Scenario::bipartite_haar: {
            detail::require_haar_acted(dims.d_a, "D_A");
            const Rational a = dims.d_a, e = dims.d_e;
            Rational gap = 4 * (a * a * e * e - 3 * a * e - 6 * e * e + 6) / (a * (a * a - 9) * e * e * e);
            return 1 - gap;
        }
        case Scenario::bipartite_product: {
            detail::require_haar_acted(dims.d_a, "D_A");
            detail::require_haar_acted(dims.d_b, "D_B");
            const Rational a = dims.d_a, b = dims.d_b, e = dims.d_e;
            Rational poly = a * a * b * b * e * (e * e + 3) - 6 * a * b * (a + b) * (e * e + 1) -
                            6 * (a * a + b * b - 9) * e * (e * e - 1) + 3 * a * b * e * (e * e + 11);
            Rational gap = 4 * poly / (a * b * (a * a - 9) * (b * b - 9) * e * e * e);
            return 1 - gap;
        }
        case Scenario::tripartite_pair: {
            detail::require_haar_acted(dims.d_a, "D_A");
            detail::require_haar_acted(dims.d_b, "D_B");
            const Rational A = dims.d_a, B = dims.d_b, ab = dims.d_ab, ac = dims.d_ac, bc = dims.d_bc,
                           g = dims.d_g;
            const Rational A2 = A * A, B2 = B * B, ab2 = ab * ab, ab3 = ab2 * ab, ac2 = ac * ac, bc2 = bc * bc,
                           g2 = g * g;
            Rational poly = A2 * B2 * ab3 * ac2 * bc2 * g2 + 3 * A2 * B2 * ab * ac2 * bc2 * g  //
                            - 6 * A2 * ab3 * ac2 * bc2 * g2 - 6 * A2 * ab2 * ac2 * B * bc * g       //
                            - 18 * A2 * ab * ac2 * bc2 * g + 24 * A2 * ab * ac2                     //
                            - 6 * A2 * ac2 * B * bc + 3 * A * ab3 * ac * B * bc * g                 //
                            - 6 * A * ab2 * ac * B2 * bc2 * g + 36 * A * ab2 * ac * bc2 * g         //
                            - 36 * A * ab2 * ac + 3 * A * ab * ac * B * bc * g                      //
                            + 30 * A * ab * ac * B * bc - 6 * A * ac * B2 * bc2                     //
                            + 36 * A * ac * bc2 - 36 * A * ac                                       //
                            - 6 * ab3 * ac2 * B2 * bc2 * g2 + 36 * ab3 * ac2 * bc2 * g2 + 18 * ab3  //
                            + 36 * ab2 * ac2 * B * bc * g - 36 * ab2 * B * bc                       //
                            - 18 * ab * ac2 * B2 * bc2 * g + 108 * ab * ac2 * bc2 * g               //
                            - 144 * ab * ac2 + 24 * ab * B2 * bc2 - 144 * ab * bc2 + 126 * ab       //
                            + 36 * ac2 * B * bc - 36 * B * bc;
            Rational den = A * B * (A2 - 9) * (B2 - 9) * ab3 * ac * ac2 * bc * bc2 * g * g2;
            return 1 - 4 * poly / den;
        }
        case Scenario::tripartite_triple:
            throw DomainError("exact_average_y: tripartite_triple has no exact formula; use leading_average_y");
    }
    throw DomainError("exact_average_y: unknown scenario");
}

/// Integer sizes for the leading-order expressions.
struct LeadingArgs {
    Scenario scenario = Scenario::bipartite_haar;
    int n_a = 0, n_b = 0, n_c = 0;
    int e = 0;
    int g = 0, b_ab = 0, b_ac = 0, b_bc = 0;
};

struct LeadingValue {
    double y = 0;
    /// -log2(1 - y); infinity when the leading gap is not positive.
    double m2 = 0;
    /// Set for tripartite_triple when the bracket correction exceeds 0.5.
    bool unreliable = false;
};

inline LeadingValue leading_average_y(const LeadingArgs &a) {
    for (int v : {a.n_a, a.n_b, a.n_c, a.e, a.g, a.b_ab, a.b_ac, a.b_bc}) {
        if (v < 0) {
            throw DomainError("leading_average_y: arguments must be non-negative");
        }
    }
    auto p2 = [](double k) { return std::exp2(k); };
    LeadingValue out;
    double gap = 0;
    switch (a.scenario) {
        case Scenario::bipartite_haar:
            gap = 4 * p2(-a.n_a - a.e);
            break;
        case Scenario::bipartite_product:
            gap = 4 * p2(-(a.n_a + a.n_b)) * (1 + 3 * p2(-2 * a.e));
            break;
        case Scenario::tripartite_pair:
            gap = 4 * p2(-a.n_a - a.n_b - a.g - a.b_ac - a.b_bc) * (1 + 3 * p2(-2 * a.b_ab - a.g));
            break;
        case Scenario::tripartite_triple: {
            const int s = a.b_ab + a.b_ac + a.b_bc;
            double bracket = 1 + 3 * p2(-2 * a.b_ab - 2 * a.b_ac - 2 * a.g) + 3 * p2(-2 * a.b_ab - 2 * a.b_bc - 2 * a.g) +
                             3 * p2(-2 * a.b_ac - 2 * a.b_bc - 2 * a.g) + 1.5 * p2(-2 * s - 2 * a.g) +
                             4.5 * p2(-2 * s - 3 * a.g);
            gap = 4 * p2(-(a.n_a + a.n_b + a.n_c)) * bracket;
            out.unreliable = bracket - 1 > 0.5;
            break;
        }
    }
    out.y = 1 - gap;
    out.m2 = gap > 0 ? -std::log2(gap) : std::numeric_limits<double>::infinity();
    return out;
}

/// Mean Y_lin of a Haar-random pure state of dimension D: 1 - 4/(D+3).
inline Rational haar_state_average_y(int64_t dim) {
    return 1 - Rational(4, dim + 3);
}

}  // namespace stabmagic
