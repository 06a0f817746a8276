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

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stabmagic/errors.hpp"
#include "stabmagic/state.hpp"

namespace stabmagic {

/// Signed N-qubit Pauli operator i^phase * prod_q X_q^{x_q} Z_q^{z_q}.
///
/// Bits are packed 64 qubits per word, qubit q in bit (q % 64) of word q / 64.
/// The phase is the raw power of i with respect to the X^x Z^z product, so the
/// Hermitian operator Y = i X Z has phase 1. Use `coefficient()` for the
/// power of i in front of the usual I/X/Y/Z tensor form.
class PauliString {
   public:
    PauliString() = default;

    /// Identity on n qubits.
    explicit PauliString(size_t n) : n_(n), xs_(num_words(n)), zs_(num_words(n)) {
    }

    /// Hermitian +P with the given X and Z masks (n <= 64).
    static PauliString from_xz(size_t n, uint64_t x, uint64_t z) {
        if (n > 64) {
            throw DimensionError("PauliString::from_xz: mask form supports at most 64 qubits");
        }
        uint64_t mask = n == 64 ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
        if ((x & ~mask) || (z & ~mask)) {
            throw DimensionError("PauliString::from_xz: mask has bits beyond n");
        }
        PauliString p(n);
        if (n > 0) {
            p.xs_[0] = x;
            p.zs_[0] = z;
        }
        p.phase_ = static_cast<uint8_t>(std::popcount(x & z) & 3);
        return p;
    }

    /// Parses an optional sign ("+", "-", "+i", "-i", "i") followed by I/X/Y/Z characters, qubit 0 first.
    static PauliString from_str(std::string_view text) {
        uint8_t coeff = 0;
        if (text.starts_with("+i")) {
            coeff = 1;
            text.remove_prefix(2);
        } else if (text.starts_with("-i")) {
            coeff = 3;
            text.remove_prefix(2);
        } else if (text.starts_with("i")) {
            coeff = 1;
            text.remove_prefix(1);
        } else if (text.starts_with("+")) {
            text.remove_prefix(1);
        } else if (text.starts_with("-")) {
            coeff = 2;
            text.remove_prefix(1);
        }
        PauliString p(text.size());
        for (size_t q = 0; q < text.size(); q++) {
            switch (text[q]) {
                case 'I':
                case '_':
                    break;
                case 'X':
                    p.set_x(q, true);
                    break;
                case 'Z':
                    p.set_z(q, true);
                    break;
                case 'Y':
                    p.set_x(q, true);
                    p.set_z(q, true);
                    break;
                default:
                    throw std::invalid_argument("PauliString::from_str: unexpected character '" +
                                                std::string(1, text[q]) + "'");
            }
        }
        p.set_coefficient(coeff);
        return p;
    }

    size_t num_qubits() const {
        return n_;
    }
    bool x(size_t q) const {
        return (xs_[q >> 6] >> (q & 63)) & 1;
    }
    bool z(size_t q) const {
        return (zs_[q >> 6] >> (q & 63)) & 1;
    }
    void set_x(size_t q, bool v) {
        set_bit(xs_, q, v);
    }
    void set_z(size_t q, bool v) {
        set_bit(zs_, q, v);
    }

    /// Raw power of i relative to X^x Z^z.
    uint8_t phase() const {
        return phase_;
    }
    void set_phase(uint8_t phase) {
        phase_ = phase & 3;
    }

    /// Number of qubits carrying Y.
    size_t num_y() const {
        size_t t = 0;
        for (size_t w = 0; w < xs_.size(); w++) {
            t += std::popcount(xs_[w] & zs_[w]);
        }
        return t;
    }

    /// Power of i in front of the I/X/Y/Z tensor form: 0 => +, 1 => +i, 2 => -, 3 => -i.
    uint8_t coefficient() const {
        return static_cast<uint8_t>((phase_ + 4 - (num_y() & 3)) & 3);
    }
    void set_coefficient(uint8_t c) {
        phase_ = static_cast<uint8_t>((c + num_y()) & 3);
    }

    bool is_hermitian() const {
        return (coefficient() & 1) == 0;
    }
    /// +1 or -1 for Hermitian operators.
    int sign() const {
        return coefficient() == 2 ? -1 : 1;
    }
    bool is_identity_up_to_phase() const {
        for (size_t w = 0; w < xs_.size(); w++) {
            if (xs_[w] | zs_[w]) {
                return false;
            }
        }
        return true;
    }
    /// Number of non-identity qubits.
    size_t weight() const {
        size_t t = 0;
        for (size_t w = 0; w < xs_.size(); w++) {
            t += std::popcount(xs_[w] | zs_[w]);
        }
        return t;
    }

    std::span<const uint64_t> x_words() const {
        return xs_;
    }
    std::span<const uint64_t> z_words() const {
        return zs_;
    }
    /// X mask, n <= 64 only.
    uint64_t x_mask() const {
        return xs_.empty() ? 0 : xs_[0];
    }
    uint64_t z_mask() const {
        return zs_.empty() ? 0 : zs_[0];
    }

    /// Same operator with coefficient forced to +1.
    PauliString unsigned_form() const {
        PauliString r = *this;
        r.set_coefficient(0);
        return r;
    }

    /// Operator restricted to the listed qubits (in list order). The tensor-form
    /// coefficient is carried over unchanged.
    PauliString restricted(std::span<const size_t> qubits) const {
        PauliString r(qubits.size());
        for (size_t k = 0; k < qubits.size(); k++) {
            if (qubits[k] >= n_) {
                throw DimensionError("PauliString::restricted: qubit index out of range");
            }
            r.set_x(k, x(qubits[k]));
            r.set_z(k, z(qubits[k]));
        }
        r.set_coefficient(coefficient());
        return r;
    }

    /// True when every non-identity qubit lies in `qubits`.
    bool supported_on(std::span<const size_t> qubits) const {
        PauliString mask(n_);
        for (size_t q : qubits) {
            mask.set_x(q, true);
        }
        for (size_t w = 0; w < xs_.size(); w++) {
            if ((xs_[w] | zs_[w]) & ~mask.xs_[w]) {
                return false;
            }
        }
        return true;
    }

    std::string str() const {
        static const char *prefixes[] = {"", "+i", "-", "-i"};
        std::string out = prefixes[coefficient()];
        for (size_t q = 0; q < n_; q++) {
            out += "IXZY"[x(q) | (z(q) << 1)];
        }
        return out;
    }

    /// Symplectic vector comparison (ignores phase). Lexicographic over x words then z words.
    bool same_operator_up_to_phase(const PauliString &o) const {
        return n_ == o.n_ && xs_ == o.xs_ && zs_ == o.zs_;
    }

    friend bool operator==(const PauliString &a, const PauliString &b) {
        return a.n_ == b.n_ && a.phase_ == b.phase_ && a.xs_ == b.xs_ && a.zs_ == b.zs_;
    }
    friend bool operator<(const PauliString &a, const PauliString &b) {
        if (a.n_ != b.n_) {
            return a.n_ < b.n_;
        }
        if (a.xs_ != b.xs_) {
            return a.xs_ < b.xs_;
        }
        if (a.zs_ != b.zs_) {
            return a.zs_ < b.zs_;
        }
        return a.phase_ < b.phase_;
    }

    /// In-place right multiplication: *this = *this * q.
    PauliString &operator*=(const PauliString &q) {
        require_same_size(*this, q, "pauli_mul");
        // X^a Z^b X^c Z^d = (-1)^{b.c} X^{a+c} Z^{b+d}
        size_t anti = 0;
        for (size_t w = 0; w < xs_.size(); w++) {
            anti += std::popcount(zs_[w] & q.xs_[w]);
            xs_[w] ^= q.xs_[w];
            zs_[w] ^= q.zs_[w];
        }
        phase_ = static_cast<uint8_t>((phase_ + q.phase_ + 2 * (anti & 1)) & 3);
        return *this;
    }

    static void require_same_size(const PauliString &p, const PauliString &q, const char *what) {
        if (p.n_ != q.n_) {
            throw DimensionError(std::string(what) + ": qubit count mismatch (" + std::to_string(p.n_) + " vs " +
                                 std::to_string(q.n_) + ")");
        }
    }

   private:
    static size_t num_words(size_t n) {
        return (n + 63) / 64;
    }
    static void set_bit(std::vector<uint64_t> &words, size_t q, bool v) {
        uint64_t m = uint64_t{1} << (q & 63);
        if (v) {
            words[q >> 6] |= m;
        } else {
            words[q >> 6] &= ~m;
        }
    }

    size_t n_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    uint8_t phase_ = 0;
};

inline PauliString pauli_mul(const PauliString &p, const PauliString &q) {
    PauliString r = p;
    r *= q;
    return r;
}

inline PauliString operator*(const PauliString &p, const PauliString &q) {
    return pauli_mul(p, q);
}

/// Symplectic inner product: 0 when p and q commute, 1 when they anticommute.
inline int symplectic_inner(const PauliString &p, const PauliString &q) {
    PauliString::require_same_size(p, q, "symplectic_inner");
    auto px = p.x_words(), pz = p.z_words(), qx = q.x_words(), qz = q.z_words();
    size_t t = 0;
    for (size_t w = 0; w < px.size(); w++) {
        t += std::popcount((px[w] & qz[w]) ^ (pz[w] & qx[w]));
    }
    return static_cast<int>(t & 1);
}

inline bool commutes(const PauliString &p, const PauliString &q) {
    return symplectic_inner(p, q) == 0;
}

/// Tensor product p (first qubits) with q (following qubits). Coefficients multiply.
inline PauliString tensor(const PauliString &p, const PauliString &q) {
    PauliString r(p.num_qubits() + q.num_qubits());
    for (size_t k = 0; k < p.num_qubits(); k++) {
        r.set_x(k, p.x(k));
        r.set_z(k, p.z(k));
    }
    for (size_t k = 0; k < q.num_qubits(); k++) {
        r.set_x(p.num_qubits() + k, q.x(k));
        r.set_z(p.num_qubits() + k, q.z(k));
    }
    r.set_coefficient(static_cast<uint8_t>((p.coefficient() + q.coefficient()) & 3));
    return r;
}

inline const cplx &i_power(uint8_t k) {
    static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[k & 3];
}

/// Applies p to a dense state in O(2^n): Z flips signs, X permutes indices.
inline DenseState apply_pauli(const DenseState &state, const PauliString &p) {
    if (static_cast<size_t>(state.n) != p.num_qubits()) {
        throw DimensionError("apply_pauli: qubit count mismatch");
    }
    const uint64_t x = p.x_mask();
    const uint64_t z = p.z_mask();
    const cplx global = i_power(p.phase());
    DenseState out(state.n);
    for (uint64_t b = 0; b < state.dim(); b++) {
        double s = (std::popcount(z & b) & 1) ? -1.0 : 1.0;
        out[b ^ x] = global * s * state[b];
    }
    return out;
}

}  // namespace stabmagic
