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

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "stabmagic/dense.hpp"
#include "stabmagic/errors.hpp"
#include "stabmagic/pauli.hpp"
#include "stabmagic/stabilizer.hpp"
#include "stabmagic/state.hpp"

namespace stabmagic {

/// Renyi index: a non-negative integer or infinity.
constexpr double alpha_infinity = std::numeric_limits<double>::infinity();

namespace detail {

/// In-place Walsh-Hadamard transform: out[z] = sum_c (-1)^{z.c} in[c].
inline void walsh_hadamard(std::vector<cplx> &f) {
    const size_t d = f.size();
    for (size_t h = 1; h < d; h <<= 1) {
        for (size_t i = 0; i < d; i += h << 1) {
            for (size_t j = i; j < i + h; j++) {
                cplx a = f[j], b = f[j + h];
                f[j] = a + b;
                f[j + h] = a - b;
            }
        }
    }
}

inline void check_alpha(double alpha, double min_alpha, const char *what) {
    if (std::isnan(alpha) || alpha < min_alpha) {
        throw DomainError(std::string(what) + ": alpha below " + std::to_string(static_cast<int>(min_alpha)));
    }
    if (!std::isinf(alpha) && alpha != std::floor(alpha)) {
        throw DomainError(std::string(what) + ": alpha must be an integer or infinity");
    }
}

/// Renyi-alpha entropy (bits) of a distribution, minus `offset` bits.
/// alpha = 0 counts entries above 1e-10.
inline double renyi(const std::vector<double> &p, double alpha, double offset) {
    if (alpha == 0) {
        size_t count = 0;
        for (double v : p) {
            if (v > 1e-10) count++;
        }
        return std::log2(static_cast<double>(count)) - offset;
    }
    if (alpha == 1) {
        double h = 0;
        for (double v : p) {
            if (v > 0) h -= v * std::log2(v);
        }
        return h - offset;
    }
    if (std::isinf(alpha)) {
        double mx = *std::max_element(p.begin(), p.end());
        return -std::log2(mx) - offset;
    }
    double s = 0;
    for (double v : p) {
        s += std::pow(v, alpha);
    }
    if (s <= 0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::log2(s) / (1 - alpha) - offset;
}

}  // namespace detail

/// values[(x << n) | z] = tr(P rho) for the Hermitian Pauli with masks (x, z).
struct PauliSpectrum {
    int n = 0;
    std::vector<double> values;

    static size_t index(int n, uint64_t x, uint64_t z) {
        return (static_cast<size_t>(x) << n) | static_cast<size_t>(z);
    }
    double at(uint64_t x, uint64_t z) const {
        return values[index(n, x, z)];
    }
    double at(const PauliString &p) const {
        double v = at(p.x_mask(), p.z_mask());
        return p.sign() < 0 ? -v : v;
    }
};

/// Pauli spectrum of a pure state in O(n 4^n): one Walsh-Hadamard transform per X mask.
inline PauliSpectrum pauli_spectrum(const DenseState &state, const Limits &limits = {}) {
    limits.require_spectrum(state.n, "pauli_spectrum");
    const int n = state.n;
    const size_t d = state.dim();
    PauliSpectrum out;
    out.n = n;
    out.values.resize(d * d);
    std::vector<cplx> f(d);
    for (uint64_t x = 0; x < d; x++) {
        for (uint64_t c = 0; c < d; c++) {
            f[c] = std::conj(state[c ^ x]) * state[c];
        }
        detail::walsh_hadamard(f);
        for (uint64_t z = 0; z < d; z++) {
            cplx v = i_power(static_cast<uint8_t>(std::popcount(x & z) & 3)) * f[z];
            if (std::abs(v.imag()) > 1e-9) {
                throw ToleranceError("pauli_spectrum: imaginary residue " + std::to_string(v.imag()));
            }
            out.values[PauliSpectrum::index(n, x, z)] = v.real();
        }
    }
    return out;
}

/// c[(x << m) | z] = tr(P M) for every Hermitian Pauli P, in O(m 4^m).
inline std::vector<cplx> matrix_pauli_transform(const Matrix &m_op, int m) {
    const size_t d = size_t{1} << m;
    if (static_cast<size_t>(m_op.rows()) != d || static_cast<size_t>(m_op.cols()) != d) {
        throw DimensionError("matrix_pauli_transform: matrix is not 2^m x 2^m");
    }
    std::vector<cplx> out(d * d);
    std::vector<cplx> f(d);
    for (uint64_t x = 0; x < d; x++) {
        for (uint64_t c = 0; c < d; c++) {
            f[c] = m_op(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c ^ x));
        }
        detail::walsh_hadamard(f);
        for (uint64_t z = 0; z < d; z++) {
            out[(x << m) | z] = i_power(static_cast<uint8_t>(std::popcount(x & z) & 3)) * f[z];
        }
    }
    return out;
}

/// Y_alpha = 1 - 2^{-n} sum_P tr(P rho)^{2 alpha}; alpha = infinity counts |tr(P rho)| = 1.
inline double y_lin_alpha(const PauliSpectrum &spec, double alpha = 2) {
    detail::check_alpha(alpha, 1, "y_lin_alpha");
    const double scale = std::ldexp(1.0, -spec.n);
    double s = 0;
    if (std::isinf(alpha)) {
        for (double v : spec.values) {
            if (std::abs(v) >= 1 - 1e-9) s += 1;
        }
    } else {
        const int k = static_cast<int>(2 * alpha);
        for (double v : spec.values) {
            double t = 1;
            for (int j = 0; j < k; j++) t *= v;
            s += t;
        }
    }
    return 1 - scale * s;
}

/// Stabilizer Renyi entropy in bits; +infinity when the sum vanishes.
inline double m_alpha(const PauliSpectrum &spec, double alpha = 2) {
    detail::check_alpha(alpha, 0, "m_alpha");
    const double scale = std::ldexp(1.0, -spec.n);
    std::vector<double> p(spec.values.size());
    for (size_t k = 0; k < p.size(); k++) {
        p[k] = spec.values[k] * spec.values[k] * scale;
    }
    double m = detail::renyi(p, alpha, spec.n);
    return m < 0 && m > -1e-12 ? 0.0 : m;
}

struct MagicReport {
    double y_lin = 0;
    double m2 = 0;
    double y_inf = 0;
};

inline MagicReport magic_report(const DenseState &state, const Limits &limits = {}) {
    auto spec = pauli_spectrum(state, limits);
    MagicReport r;
    r.y_lin = y_lin_alpha(spec, 2);
    r.m2 = r.y_lin < 1 ? -std::log2(1 - r.y_lin) : std::numeric_limits<double>::infinity();
    r.y_inf = y_lin_alpha(spec, alpha_infinity);
    return r;
}

inline double y_lin(const DenseState &state, const Limits &limits = {}) {
    return y_lin_alpha(pauli_spectrum(state, limits), 2);
}

// ---------------------------------------------------------------------------
// Unitary measures

namespace detail {

inline void require_unitary(const DenseUnitary &u, const char *what) {
    if (!u.is_unitary(1e-9)) {
        throw DomainError(std::string(what) + ": input is not unitary (error " +
                          std::to_string(u.unitarity_error()) + ")");
    }
}

/// Columns of U P U^dagger for P with masks (x, z): (U P)[:, c] = U[:, c ^ x] * sign.
inline Matrix conjugated_pauli(const DenseUnitary &u, uint64_t x, uint64_t z) {
    const Eigen::Index d = static_cast<Eigen::Index>(u.dim());
    const cplx g = i_power(static_cast<uint8_t>(std::popcount(x & z) & 3));
    Matrix up(d, d);
    for (Eigen::Index c = 0; c < d; c++) {
        // P|c> = g (-1)^{z.c} |c ^ x>
        double s = (std::popcount(z & static_cast<uint64_t>(c)) & 1) ? -1.0 : 1.0;
        up.col(c) = (g * s) * u.matrix.col(static_cast<Eigen::Index>(static_cast<uint64_t>(c) ^ x));
    }
    return up * u.matrix.adjoint();
}

}  // namespace detail

/// c[i][j] = tr(P_i U P_j U^dagger), flattened as c[(i << 2m) | j] with
/// Pauli index (x << m) | z. Computed one conjugated column at a time.
inline std::vector<double> unitary_pauli_table(const DenseUnitary &u) {
    const int m = u.m;
    const size_t np = size_t{1} << (2 * m);
    std::vector<double> c(np * np);
    for (size_t j = 0; j < np; j++) {
        uint64_t x = j >> m, z = j & ((uint64_t{1} << m) - 1);
        auto coeffs = matrix_pauli_transform(detail::conjugated_pauli(u, x, z), m);
        for (size_t i = 0; i < np; i++) {
            if (std::abs(coeffs[i].imag()) > 1e-8) {
                throw ToleranceError("unitary_pauli_table: imaginary residue");
            }
            c[(i << (2 * m)) | j] = coeffs[i].real();
        }
    }
    return c;
}

/// Same table from the literal trace formula, O(16^m 8^m). For cross-checks at m <= 2.
inline std::vector<double> unitary_pauli_table_literal(const DenseUnitary &u) {
    const int m = u.m;
    if (m > 2) {
        throw ResourceError("unitary_pauli_table_literal: only m <= 2");
    }
    const size_t np = size_t{1} << (2 * m);
    const uint64_t mask = (uint64_t{1} << m) - 1;
    std::vector<Matrix> paulis;
    for (size_t k = 0; k < np; k++) {
        paulis.push_back(pauli_matrix(PauliString::from_xz(m, k >> m, k & mask)));
    }
    std::vector<double> c(np * np);
    for (size_t i = 0; i < np; i++) {
        for (size_t j = 0; j < np; j++) {
            cplx t = (paulis[i] * u.matrix * paulis[j] * u.matrix.adjoint()).trace();
            c[(i << (2 * m)) | j] = t.real();
        }
    }
    return c;
}

inline double unitary_sre_from_table(const std::vector<double> &c, int m, double alpha) {
    const double scale = std::ldexp(1.0, -4 * m);
    std::vector<double> p(c.size());
    for (size_t k = 0; k < c.size(); k++) {
        p[k] = c[k] * c[k] * scale;
    }
    double h = detail::renyi(p, alpha, 2.0 * m);
    return h < 0 && h > -1e-12 ? 0.0 : h;
}

struct UnitarySre {
    double direct = 0;
    double choi = 0;
};

/// H_alpha(U) by the conjugation route and as M_alpha of the Choi state.
inline UnitarySre unitary_sre_both(const DenseUnitary &u, double alpha, const Limits &limits = {}) {
    detail::check_alpha(alpha, 0, "unitary_sre");
    detail::require_unitary(u, "unitary_sre");
    limits.require_spectrum(2 * u.m, "unitary_sre");
    UnitarySre r;
    r.direct = unitary_sre_from_table(unitary_pauli_table(u), u.m, alpha);
    r.choi = m_alpha(pauli_spectrum(choi_state(u, limits), limits), alpha);
    return r;
}

/// H_alpha(U) in bits. Throws ToleranceError if the two routes disagree by more than 1e-9.
inline double unitary_sre(const DenseUnitary &u, double alpha, const Limits &limits = {}) {
    auto r = unitary_sre_both(u, alpha, limits);
    bool both_inf = std::isinf(r.direct) && std::isinf(r.choi);
    if (!both_inf && !(std::abs(r.direct - r.choi) <= 1e-9)) {
        throw ToleranceError("unitary_sre: direct " + std::to_string(r.direct) + " vs Choi " +
                             std::to_string(r.choi));
    }
    return r.direct;
}

/// nu(U) = 2m - log2 |s(U)|, s(U) = Paulis mapped to a single signed Pauli.
inline int unitary_nullity(const DenseUnitary &u, double tol = 1e-6, const Limits &limits = {}) {
    detail::require_unitary(u, "unitary_nullity");
    limits.require_dense(u.m, "unitary_nullity");
    const int m = u.m;
    const size_t np = size_t{1} << (2 * m);
    const double norm = std::ldexp(1.0, -m);
    std::vector<uint64_t> members;
    for (size_t j = 0; j < np; j++) {
        auto coeffs = matrix_pauli_transform(detail::conjugated_pauli(u, j >> m, j & ((uint64_t{1} << m) - 1)), m);
        double mx = 0;
        for (const auto &c : coeffs) {
            mx = std::max(mx, std::abs(c) * norm);
        }
        if (mx >= 1 - tol) {
            members.push_back(j);
        }
    }
    // closure: |s| must equal 2^rank
    std::vector<uint64_t> basis;
    for (uint64_t v : members) {
        for (uint64_t b : basis) {
            v = std::min(v, v ^ b);
        }
        if (v) {
            basis.push_back(v);
            std::sort(basis.rbegin(), basis.rend());
        }
    }
    if (members.size() != (size_t{1} << basis.size())) {
        throw ToleranceError("unitary_nullity: preserved set of size " + std::to_string(members.size()) +
                             " is not a group; tolerance too loose");
    }
    return 2 * m - static_cast<int>(basis.size());
}

struct BoundReport {
    double h0 = 0;
    double h2 = 0;
    int nullity = 0;
    int t_lower = 0;
};

/// H_2 <= H_0 <= nu <= T-count, with t_lower = ceil(H_0).
inline BoundReport t_count_bounds(const DenseUnitary &u, const Limits &limits = {}) {
    BoundReport r;
    r.h0 = unitary_sre(u, 0, limits);
    r.h2 = unitary_sre(u, 2, limits);
    r.nullity = unitary_nullity(u, 1e-6, limits);
    r.t_lower = static_cast<int>(std::ceil(r.h0 - 1e-9));
    if (r.h2 > r.h0 + 1e-9 || r.h0 > r.nullity + 1e-9) {
        throw ToleranceError("t_count_bounds: chain H2 <= H0 <= nullity violated");
    }
    return r;
}

// ---------------------------------------------------------------------------
// Coset-reduced estimator

/// Y_lin of (U_A (x) I)|psi> for the stabilizer state behind `decomp`, using
/// only |A|-qubit operators:
///   1 - Y = 2^{-5|A|-E} sum_{P_A, k} tr(P_A U_A a_k (sum S_A) U_A^dagger)^4.
inline double coset_reduced_y(const CosetDecomposition &decomp, const DenseUnitary &u_a,
                              const Limits &limits = {}) {
    const int na = static_cast<int>(decomp.a_qubits.size());
    if (u_a.m != na) {
        throw DimensionError("coset_reduced_y: unitary size does not match |A|");
    }
    limits.require_spectrum(na, "coset_reduced_y");
    const Eigen::Index d = Eigen::Index{1} << na;
    Matrix sum_sa = Matrix::Zero(d, d);
    for (const auto &s : decomp.s_a.elements()) {
        sum_sa += pauli_matrix(s);
    }
    double total = 0;
    for (size_t k = 0; k < decomp.num_cosets(); k++) {
        Matrix op = pauli_matrix(decomp.coset(k).first) * sum_sa;
        Matrix conj = u_a.matrix * op * u_a.matrix.adjoint();
        for (const auto &t : matrix_pauli_transform(conj, na)) {
            double r = t.real();
            double r2 = r * r;
            total += r2 * r2;
        }
    }
    return 1 - std::ldexp(total, -5 * na - decomp.entanglement);
}

}  // namespace stabmagic
