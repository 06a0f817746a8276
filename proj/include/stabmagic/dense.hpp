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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stabmagic/errors.hpp"
#include "stabmagic/pauli.hpp"
#include "stabmagic/rng.hpp"
#include "stabmagic/state.hpp"

namespace stabmagic {

using Matrix = Eigen::MatrixXcd;

/// Unitary on m qubits. Local qubit k is bit k of the row/column index.
struct DenseUnitary {
    int m = 0;
    Matrix matrix;

    DenseUnitary() = default;
    DenseUnitary(int num_qubits, Matrix mat) : m(num_qubits), matrix(std::move(mat)) {
        const Eigen::Index d = Eigen::Index{1} << m;
        if (matrix.rows() != d || matrix.cols() != d) {
            throw DimensionError("DenseUnitary: matrix is not 2^m x 2^m");
        }
    }
    static DenseUnitary identity(int num_qubits) {
        const Eigen::Index d = Eigen::Index{1} << num_qubits;
        return {num_qubits, Matrix::Identity(d, d)};
    }

    size_t dim() const {
        return size_t{1} << m;
    }

    /// max |(U^dagger U - I)_ij|.
    double unitarity_error() const {
        Matrix e = matrix.adjoint() * matrix - Matrix::Identity(matrix.rows(), matrix.cols());
        return e.cwiseAbs().maxCoeff();
    }
    bool is_unitary(double tol = 1e-9) const {
        return unitarity_error() <= tol;
    }
};

/// Kronecker product with `first` on the low qubits.
inline DenseUnitary tensor(const DenseUnitary &first, const DenseUnitary &second) {
    const Eigen::Index d1 = first.matrix.rows(), d2 = second.matrix.rows();
    Matrix out(d1 * d2, d1 * d2);
    for (Eigen::Index i2 = 0; i2 < d2; i2++) {
        for (Eigen::Index j2 = 0; j2 < d2; j2++) {
            out.block(i2 * d1, j2 * d1, d1, d1) = second.matrix(i2, j2) * first.matrix;
        }
    }
    return {first.m + second.m, std::move(out)};
}

/// Matrix of a Pauli string in the little-endian convention.
inline Matrix pauli_matrix(const PauliString &p) {
    const int n = static_cast<int>(p.num_qubits());
    const uint64_t d = uint64_t{1} << n;
    const uint64_t x = p.x_mask(), z = p.z_mask();
    const cplx g = i_power(p.phase());
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (uint64_t b = 0; b < d; b++) {
        double s = (std::popcount(z & b) & 1) ? -1.0 : 1.0;
        out(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b)) = g * s;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Named gates

namespace gates {

inline DenseUnitary diagonal(int m, const std::vector<cplx> &diag) {
    Matrix mat = Matrix::Zero(Eigen::Index{1} << m, Eigen::Index{1} << m);
    for (size_t k = 0; k < diag.size(); k++) {
        mat(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = diag[k];
    }
    return {m, std::move(mat)};
}

inline DenseUnitary T() {
    return diagonal(1, {1.0, std::polar(1.0, std::numbers::pi / 4)});
}
inline DenseUnitary S() {
    return diagonal(1, {1.0, cplx(0, 1)});
}
inline DenseUnitary H() {
    Matrix mat(2, 2);
    const double r = 1 / std::sqrt(2.0);
    mat << r, r, r, -r;
    return {1, std::move(mat)};
}
inline DenseUnitary CZ() {
    return diagonal(2, {1.0, 1.0, 1.0, -1.0});
}
inline DenseUnitary CS() {
    return diagonal(2, {1.0, 1.0, 1.0, cplx(0, 1)});
}
inline DenseUnitary CCZ() {
    std::vector<cplx> d(8, 1.0);
    d[7] = -1.0;
    return diagonal(3, d);
}
inline DenseUnitary CX() {
    // control qubit 0, target qubit 1
    Matrix mat = Matrix::Zero(4, 4);
    mat(0, 0) = 1;
    mat(3, 1) = 1;
    mat(2, 2) = 1;
    mat(1, 3) = 1;
    return {2, std::move(mat)};
}
inline DenseUnitary Tn(int n) {
    DenseUnitary u = T();
    for (int k = 1; k < n; k++) {
        u = tensor(u, T());
    }
    return u;
}

/// "T", "S", "H", "CZ", "CX", "CS", "CCZ", "I", "Tn:<n>".
inline DenseUnitary by_name(std::string_view name) {
    if (name == "T") return T();
    if (name == "S") return S();
    if (name == "H") return H();
    if (name == "CZ") return CZ();
    if (name == "CX" || name == "CNOT") return CX();
    if (name == "CS") return CS();
    if (name == "CCZ") return CCZ();
    if (name == "I") return DenseUnitary::identity(1);
    if (name.starts_with("Tn:")) {
        int n = std::stoi(std::string(name.substr(3)));
        if (n < 1) {
            throw std::invalid_argument("gate Tn:<n> needs n >= 1");
        }
        return Tn(n);
    }
    throw std::invalid_argument("unknown gate name '" + std::string(name) + "'");
}

}  // namespace gates

// ---------------------------------------------------------------------------
// Haar sampling

/// Haar-random unitary: QR of a complex Ginibre matrix with R's diagonal phases
/// folded back into Q.
inline DenseUnitary haar_unitary(int m, Rng &rng, const Limits &limits = {}) {
    if (m < 1) {
        throw DomainError("haar_unitary: m must be >= 1");
    }
    limits.require_dense(m, "haar_unitary");
    const Eigen::Index d = Eigen::Index{1} << m;
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(d, d);
    for (Eigen::Index c = 0; c < d; c++) {
        for (Eigen::Index r = 0; r < d; r++) {
            double re = normal(rng);
            double im = normal(rng);
            g(r, c) = cplx(re, im);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix &packed = qr.matrixQR();
    for (Eigen::Index k = 0; k < d; k++) {
        cplx r = packed(k, k);
        double a = std::abs(r);
        q.col(k) *= (a == 0 ? cplx(1, 0) : r / a);
    }
    return {m, std::move(q)};
}

inline DenseUnitary haar_unitary(int m, uint64_t seed, const Limits &limits = {}) {
    Rng rng(seed);
    return haar_unitary(m, rng, limits);
}

// ---------------------------------------------------------------------------
// Application

namespace detail {

inline void check_qubit_list(int n, std::span<const size_t> qubits, const char *what) {
    for (size_t k = 0; k < qubits.size(); k++) {
        if (qubits[k] >= static_cast<size_t>(n)) {
            throw DimensionError(std::string(what) + ": qubit index out of range");
        }
        for (size_t j = 0; j < k; j++) {
            if (qubits[j] == qubits[k]) {
                throw DimensionError(std::string(what) + ": repeated qubit index");
            }
        }
    }
}

}  // namespace detail

/// Applies U to the listed qubits in place. Local qubit k of U acts on qubits[k].
inline void apply_on_qubits_inplace(DenseState &state, const DenseUnitary &u, std::span<const size_t> qubits) {
    if (qubits.size() != static_cast<size_t>(u.m)) {
        throw DimensionError("apply_on_qubits: qubit list length does not match gate size");
    }
    detail::check_qubit_list(state.n, qubits, "apply_on_qubits");
    const size_t d = u.dim();
    std::vector<uint64_t> offsets(d, 0);
    uint64_t mask = 0;
    for (size_t l = 0; l < d; l++) {
        for (size_t k = 0; k < qubits.size(); k++) {
            if ((l >> k) & 1) {
                offsets[l] |= uint64_t{1} << qubits[k];
            }
        }
    }
    for (size_t q : qubits) {
        mask |= uint64_t{1} << q;
    }
    std::vector<cplx> in(d), out(d);
    for (uint64_t base = 0; base < state.dim(); base++) {
        if (base & mask) {
            continue;
        }
        for (size_t l = 0; l < d; l++) {
            in[l] = state[base | offsets[l]];
        }
        for (size_t r = 0; r < d; r++) {
            cplx t = 0;
            for (size_t c = 0; c < d; c++) {
                t += u.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
            }
            out[r] = t;
        }
        for (size_t l = 0; l < d; l++) {
            state[base | offsets[l]] = out[l];
        }
    }
}

inline DenseState apply_on_qubits(const DenseState &state, const DenseUnitary &u, std::span<const size_t> qubits) {
    DenseState out = state;
    apply_on_qubits_inplace(out, u, qubits);
    return out;
}

inline DenseState apply_on_qubits(const DenseState &state, const DenseUnitary &u,
                                  std::initializer_list<size_t> qubits) {
    return apply_on_qubits(state, u, std::span<const size_t>(qubits.begin(), qubits.size()));
}

/// Blocks of each brickwork layer as positions inside the region. Even layers
/// start at 0, odd layers at gate_span / 2; blocks that would cross the region
/// boundary are dropped.
inline std::vector<std::vector<std::vector<size_t>>> brickwork_layout(size_t region_size, int depth,
                                                                      size_t gate_span) {
    if (gate_span < 2) {
        throw DomainError("brickwork: gate_span must be >= 2");
    }
    if (region_size < gate_span) {
        throw DimensionError("brickwork: region smaller than gate_span");
    }
    std::vector<std::vector<std::vector<size_t>>> layers;
    for (int layer = 0; layer < depth; layer++) {
        size_t offset = (layer % 2) ? gate_span / 2 : 0;
        std::vector<std::vector<size_t>> blocks;
        for (size_t start = offset; start + gate_span <= region_size; start += gate_span) {
            std::vector<size_t> block(gate_span);
            for (size_t k = 0; k < gate_span; k++) {
                block[k] = start + k;
            }
            blocks.push_back(std::move(block));
        }
        layers.push_back(std::move(blocks));
    }
    return layers;
}

/// Brickwork circuit of independent Haar gates on `region`.
inline DenseState brickwork_apply(const DenseState &state, std::span<const size_t> region, int depth,
                                  size_t gate_span, Rng &rng) {
    detail::check_qubit_list(state.n, region, "brickwork_apply");
    auto layers = brickwork_layout(region.size(), depth, gate_span);
    DenseState out = state;
    std::vector<size_t> qubits(gate_span);
    for (const auto &layer : layers) {
        for (const auto &block : layer) {
            for (size_t k = 0; k < gate_span; k++) {
                qubits[k] = region[block[k]];
            }
            DenseUnitary g = haar_unitary(static_cast<int>(gate_span), rng);
            apply_on_qubits_inplace(out, g, qubits);
        }
    }
    return out;
}

inline DenseState brickwork_apply(const DenseState &state, std::span<const size_t> region, int depth,
                                  size_t gate_span, uint64_t seed) {
    Rng rng(seed);
    return brickwork_apply(state, region, depth, gate_span, rng);
}

// ---------------------------------------------------------------------------
// State builders

/// (U (x) I)|Bell>^m on 2m qubits; system qubit j is paired with qubit m + j.
inline DenseState choi_state(const DenseUnitary &u, const Limits &limits = {}) {
    limits.require_dense(2 * u.m, "choi_state");
    const size_t d = u.dim();
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    DenseState out(2 * u.m);
    for (size_t b = 0; b < d; b++) {
        for (size_t i = 0; i < d; i++) {
            out[i | (b << u.m)] = s * u.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b));
        }
    }
    return out;
}

enum class LambdaLaw { exp, linear, quadratic, cubic };

inline std::string_view to_string(LambdaLaw law) {
    switch (law) {
        case LambdaLaw::exp:
            return "exp";
        case LambdaLaw::linear:
            return "linear";
        case LambdaLaw::quadratic:
            return "quadratic";
        case LambdaLaw::cubic:
            return "cubic";
    }
    return "?";
}

inline LambdaLaw lambda_law_from_string(std::string_view s) {
    if (s == "exp") return LambdaLaw::exp;
    if (s == "linear") return LambdaLaw::linear;
    if (s == "quadratic") return LambdaLaw::quadratic;
    if (s == "cubic") return LambdaLaw::cubic;
    throw std::invalid_argument("unknown lambda law '" + std::string(s) + "'");
}

/// Non-stabilizer entangled input: either k copies of cos(theta)|00> + sin(theta)|11>
/// or sum_i lambda_i |i>_A |i>_B over k-qubit labels i = 1..2^k.
struct NonstabSpec {
    enum class Kind { imperfect_bell, spectrum } kind = Kind::imperfect_bell;
    double theta = std::numbers::pi / 4;
    LambdaLaw law = LambdaLaw::linear;
};

/// Normalized Schmidt coefficients for the given spec.
inline std::vector<double> schmidt_coefficients(const NonstabSpec &spec, int k) {
    const size_t count = size_t{1} << k;
    std::vector<double> lambda(count);
    if (spec.kind == NonstabSpec::Kind::imperfect_bell) {
        const double c = std::cos(spec.theta), s = std::sin(spec.theta);
        for (size_t i = 0; i < count; i++) {
            int ones = std::popcount(i);
            lambda[i] = std::pow(c, k - ones) * std::pow(s, ones);
        }
        return lambda;
    }
    for (size_t i = 0; i < count; i++) {
        double label = static_cast<double>(i + 1);
        switch (spec.law) {
            case LambdaLaw::exp:
                lambda[i] = std::exp(-label / static_cast<double>(count));
                break;
            case LambdaLaw::linear:
                lambda[i] = label;
                break;
            case LambdaLaw::quadratic:
                lambda[i] = label * label;
                break;
            case LambdaLaw::cubic:
                lambda[i] = label * label * label;
                break;
        }
    }
    double norm = 0;
    for (double l : lambda) {
        norm += l * l;
    }
    for (double &l : lambda) {
        l /= std::sqrt(norm);
    }
    return lambda;
}

/// |0>^{f_A} (x) sum_i lambda_i |i>_A |i>_B. A holds qubits [0, f_A + k), B holds the last k.
inline DenseState build_nonstab_state(const NonstabSpec &spec, int k, int f_a, const Limits &limits = {}) {
    if (k < 1) {
        throw DomainError("build_nonstab_state: k must be >= 1");
    }
    if (f_a < 0) {
        throw DomainError("build_nonstab_state: f_A must be >= 0");
    }
    if (spec.kind == NonstabSpec::Kind::imperfect_bell &&
        (!(spec.theta >= 0) || spec.theta > std::numbers::pi / 2 + 1e-12)) {
        throw DomainError("build_nonstab_state: theta must lie in [0, pi/2]");
    }
    const int n = f_a + 2 * k;
    limits.require_dense(n, "build_nonstab_state");
    auto lambda = schmidt_coefficients(spec, k);
    DenseState out(n);
    for (uint64_t i = 0; i < lambda.size(); i++) {
        out[(i << f_a) | (i << (f_a + k))] = lambda[i];
    }
    return out;
}

/// von Neumann entropy (bits) of the reduced state on `cut_a`, via the Schmidt decomposition.
inline double von_neumann_entropy(const DenseState &state, std::span<const size_t> cut_a) {
    detail::check_qubit_list(state.n, cut_a, "von_neumann_entropy");
    std::vector<size_t> cut_b;
    for (size_t q = 0; q < static_cast<size_t>(state.n); q++) {
        if (std::find(cut_a.begin(), cut_a.end(), q) == cut_a.end()) {
            cut_b.push_back(q);
        }
    }
    if (cut_a.empty() || cut_b.empty()) {
        return 0.0;
    }
    const Eigen::Index da = Eigen::Index{1} << cut_a.size();
    const Eigen::Index db = Eigen::Index{1} << cut_b.size();
    Matrix m(da, db);
    for (Eigen::Index a = 0; a < da; a++) {
        for (Eigen::Index b = 0; b < db; b++) {
            uint64_t idx = 0;
            for (size_t k = 0; k < cut_a.size(); k++) {
                if ((a >> k) & 1) idx |= uint64_t{1} << cut_a[k];
            }
            for (size_t k = 0; k < cut_b.size(); k++) {
                if ((b >> k) & 1) idx |= uint64_t{1} << cut_b[k];
            }
            m(a, b) = state[idx];
        }
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    double h = 0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); k++) {
        double p = svd.singularValues()(k) * svd.singularValues()(k);
        if (p > 1e-15) {
            h -= p * std::log2(p);
        }
    }
    return h;
}

inline double von_neumann_entropy(const DenseState &state, std::initializer_list<size_t> cut_a) {
    return von_neumann_entropy(state, std::span<const size_t>(cut_a.begin(), cut_a.size()));
}

}  // namespace stabmagic
