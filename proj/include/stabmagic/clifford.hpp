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

#include <cstdint>
#include <random>
#include <vector>

#include "stabmagic/dense.hpp"
#include "stabmagic/errors.hpp"
#include "stabmagic/pauli.hpp"
#include "stabmagic/rng.hpp"
#include "stabmagic/stabilizer.hpp"

namespace stabmagic {

/// Clifford unitary as its action on the Pauli generators: X_q -> x_images[q],
/// Z_q -> z_images[q]. Images are Hermitian signed Paulis.
struct CliffordAction {
    size_t n = 0;
    std::vector<PauliString> x_images;
    std::vector<PauliString> z_images;

    static CliffordAction identity(size_t n) {
        CliffordAction c;
        c.n = n;
        for (size_t q = 0; q < n; q++) {
            PauliString x(n), z(n);
            x.set_x(q, true);
            z.set_z(q, true);
            c.x_images.push_back(x);
            c.z_images.push_back(z);
        }
        return c;
    }

    /// U p U^dagger.
    PauliString conjugate(const PauliString &p) const {
        PauliString::require_same_size(p, PauliString(n), "CliffordAction::conjugate");
        PauliString out(n);
        out.set_phase(p.phase());
        for (size_t q = 0; q < n; q++) {
            if (p.x(q)) out *= x_images[q];
        }
        for (size_t q = 0; q < n; q++) {
            if (p.z(q)) out *= z_images[q];
        }
        return out;
    }

    StabilizerGroup conjugate(const StabilizerGroup &g) const {
        std::vector<PauliString> gens;
        for (const auto &p : g.generators()) {
            gens.push_back(conjugate(p));
        }
        return {g.num_qubits(), std::move(gens)};
    }

    /// Dense matrix, fixed up to a global phase. Column b is img(X^b) U|0>, and
    /// U|0> is the state stabilized by the Z images.
    DenseUnitary to_unitary(const Limits &limits = {}) const {
        limits.require_dense(static_cast<int>(n), "CliffordAction::to_unitary");
        DenseState psi0 = group_to_state(StabilizerGroup(n, z_images), limits);
        const size_t d = size_t{1} << n;
        Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (uint64_t b = 0; b < d; b++) {
            PauliString img(n);
            for (size_t q = 0; q < n; q++) {
                if ((b >> q) & 1) img *= x_images[q];
            }
            DenseState col = apply_pauli(psi0, img);
            for (size_t r = 0; r < d; r++) {
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b)) = col[r];
            }
        }
        return {static_cast<int>(n), std::move(m)};
    }

    friend bool operator==(const CliffordAction &a, const CliffordAction &b) {
        return a.n == b.n && a.x_images == b.x_images && a.z_images == b.z_images;
    }
};

namespace detail {

// Symplectic vectors in the interleaved basis (x_0, z_0, x_1, z_1, ...).
using SymVec = std::vector<uint8_t>;

inline int sym_inner(const SymVec &v, const SymVec &w) {
    int t = 0;
    for (size_t i = 0; i < v.size() / 2; i++) {
        t += v[2 * i] * w[2 * i + 1] + w[2 * i] * v[2 * i + 1];
    }
    return t & 1;
}

inline SymVec transvection(const SymVec &k, const SymVec &v) {
    SymVec out = v;
    if (sym_inner(k, v)) {
        for (size_t i = 0; i < v.size(); i++) out[i] ^= k[i];
    }
    return out;
}

inline SymVec add(const SymVec &a, const SymVec &b) {
    SymVec out(a.size());
    for (size_t i = 0; i < a.size(); i++) out[i] = a[i] ^ b[i];
    return out;
}

/// h1, h2 with y = Z_h2 Z_h1 x (Koenig & Smolin).
inline std::pair<SymVec, SymVec> find_transvection(const SymVec &x, const SymVec &y) {
    const size_t nn = x.size();
    SymVec zero(nn, 0);
    if (x == y) {
        return {zero, zero};
    }
    if (sym_inner(x, y)) {
        return {add(x, y), zero};
    }
    SymVec z(nn, 0);
    for (size_t i = 0; i < nn / 2; i++) {
        size_t ii = 2 * i;
        if ((x[ii] | x[ii + 1]) && (y[ii] | y[ii + 1])) {
            z[ii] = x[ii] ^ y[ii];
            z[ii + 1] = x[ii + 1] ^ y[ii + 1];
            if (!(z[ii] | z[ii + 1])) {
                z[ii + 1] = 1;
                if (x[ii] != x[ii + 1]) z[ii] = 1;
            }
            return {add(x, z), add(y, z)};
        }
    }
    for (size_t i = 0; i < nn / 2; i++) {
        size_t ii = 2 * i;
        if ((x[ii] | x[ii + 1]) && !(y[ii] | y[ii + 1])) {
            if (x[ii] == x[ii + 1]) {
                z[ii + 1] = 1;
            } else {
                z[ii + 1] = x[ii];
                z[ii] = x[ii + 1];
            }
            break;
        }
    }
    for (size_t i = 0; i < nn / 2; i++) {
        size_t ii = 2 * i;
        if (!(x[ii] | x[ii + 1]) && (y[ii] | y[ii + 1])) {
            if (y[ii] == y[ii + 1]) {
                z[ii + 1] = 1;
            } else {
                z[ii + 1] = y[ii];
                z[ii] = y[ii + 1];
            }
            break;
        }
    }
    return {add(x, z), add(y, z)};
}

/// Uniform element of Sp(2n, F2); row j is the image of basis vector j.
inline std::vector<SymVec> random_symplectic(size_t n, Rng &rng) {
    const size_t nn = 2 * n;
    // f1: uniform nonzero vector
    std::uniform_int_distribution<int> bit(0, 1);
    SymVec f1(nn, 0);
    do {
        for (auto &b : f1) b = static_cast<uint8_t>(bit(rng));
    } while (std::all_of(f1.begin(), f1.end(), [](uint8_t b) { return b == 0; }));
    SymVec bits(nn - 1);
    for (auto &b : bits) b = static_cast<uint8_t>(bit(rng));

    SymVec e1(nn, 0);
    e1[0] = 1;
    auto [t0, t1] = find_transvection(e1, f1);
    SymVec eprime = e1;
    for (size_t j = 2; j < nn; j++) eprime[j] = bits[j - 1];
    SymVec h0 = transvection(t1, transvection(t0, eprime));
    if (bits[0]) {
        std::fill(f1.begin(), f1.end(), 0);
    }

    std::vector<SymVec> g(nn, SymVec(nn, 0));
    g[0][0] = 1;
    g[1][1] = 1;
    if (n > 1) {
        auto sub = random_symplectic(n - 1, rng);
        for (size_t r = 0; r < sub.size(); r++) {
            for (size_t c = 0; c < sub.size(); c++) {
                g[r + 2][c + 2] = sub[r][c];
            }
        }
    }
    for (size_t j = 0; j < nn; j++) {
        g[j] = transvection(t0, g[j]);
        g[j] = transvection(t1, g[j]);
        g[j] = transvection(h0, g[j]);
        g[j] = transvection(f1, g[j]);
    }
    return g;
}

}  // namespace detail

/// Uniform random Clifford (modulo global phase): uniform symplectic part plus
/// uniform image signs.
inline CliffordAction random_clifford(size_t n, Rng &rng) {
    if (n < 1) {
        throw DomainError("random_clifford: n must be >= 1");
    }
    auto g = detail::random_symplectic(n, rng);
    std::uniform_int_distribution<int> bit(0, 1);
    CliffordAction c;
    c.n = n;
    auto to_pauli = [&](const detail::SymVec &v) {
        PauliString p(n);
        for (size_t q = 0; q < n; q++) {
            p.set_x(q, v[2 * q]);
            p.set_z(q, v[2 * q + 1]);
        }
        p.set_coefficient(bit(rng) ? 2 : 0);
        return p;
    };
    for (size_t q = 0; q < n; q++) {
        c.x_images.push_back(to_pauli(g[2 * q]));
        c.z_images.push_back(to_pauli(g[2 * q + 1]));
    }
    return c;
}

inline CliffordAction random_clifford(size_t n, uint64_t seed) {
    Rng rng(seed);
    return random_clifford(n, rng);
}

/// Random stabilizer state: uniform Clifford applied to |0...0>.
inline StabilizerGroup random_stabilizer_group(size_t n, Rng &rng) {
    std::vector<PauliString> zs;
    for (size_t q = 0; q < n; q++) {
        PauliString z(n);
        z.set_z(q, true);
        zs.push_back(z);
    }
    return random_clifford(n, rng).conjugate(StabilizerGroup(n, std::move(zs)));
}

/// Random Clifford+T circuit: C_0 T C_1 T ... T C_t with uniform n-qubit
/// Cliffords and each T on a uniformly chosen qubit.
inline DenseUnitary random_clifford_t(size_t n, int num_t, Rng &rng, const Limits &limits = {}) {
    DenseUnitary u = random_clifford(n, rng).to_unitary(limits);
    std::uniform_int_distribution<size_t> pick(0, n - 1);
    const DenseUnitary t = gates::T();
    for (int k = 0; k < num_t; k++) {
        size_t q = pick(rng);
        Matrix next(u.matrix.rows(), u.matrix.cols());
        for (Eigen::Index c = 0; c < u.matrix.cols(); c++) {
            DenseState col(static_cast<int>(n));
            for (Eigen::Index r = 0; r < u.matrix.rows(); r++) col[static_cast<size_t>(r)] = u.matrix(r, c);
            apply_on_qubits_inplace(col, t, std::span<const size_t>(&q, 1));
            for (Eigen::Index r = 0; r < u.matrix.rows(); r++) next(r, c) = col[static_cast<size_t>(r)];
        }
        u.matrix = random_clifford(n, rng).to_unitary(limits).matrix * next;
    }
    return u;
}

}  // namespace stabmagic
