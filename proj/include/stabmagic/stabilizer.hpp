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
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stabmagic/errors.hpp"
#include "stabmagic/pauli.hpp"
#include "stabmagic/state.hpp"

namespace stabmagic {

namespace detail {

/// Symplectic column c: x_c for c < n, z_{c-n} otherwise.
inline bool col_bit(const PauliString &p, size_t c) {
    size_t n = p.num_qubits();
    return c < n ? p.x(c) : p.z(c - n);
}

/// Gauss-Jordan elimination of `rows` over F2, pivoting on `cols` in the given
/// priority order. Row operations are Pauli products, so signs stay exact.
/// Returns the pivot columns; rows past the pivot count vanish on every column
/// in `cols`.
inline std::vector<size_t> eliminate(std::vector<PauliString> &rows, const std::vector<size_t> &cols) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c : cols) {
        if (r == rows.size()) {
            break;
        }
        size_t p = r;
        while (p < rows.size() && !col_bit(rows[p], c)) {
            p++;
        }
        if (p == rows.size()) {
            continue;
        }
        std::swap(rows[r], rows[p]);
        for (size_t i = 0; i < rows.size(); i++) {
            if (i != r && col_bit(rows[i], c)) {
                rows[i] *= rows[r];
            }
        }
        pivots.push_back(c);
        r++;
    }
    return pivots;
}

inline std::vector<size_t> all_columns(size_t n) {
    std::vector<size_t> cols(2 * n);
    std::iota(cols.begin(), cols.end(), size_t{0});
    return cols;
}

/// Columns (x then z) of the listed qubits.
inline std::vector<size_t> columns_of(const std::vector<size_t> &qubits, size_t n) {
    std::vector<size_t> cols;
    for (size_t q : qubits) {
        cols.push_back(q);
    }
    for (size_t q : qubits) {
        cols.push_back(n + q);
    }
    return cols;
}

inline std::vector<size_t> complement(const std::vector<size_t> &cut, size_t n) {
    std::vector<bool> in(n, false);
    for (size_t q : cut) {
        if (q >= n) {
            throw DimensionError("cut index out of range");
        }
        if (in[q]) {
            throw DimensionError("cut has a repeated index");
        }
        in[q] = true;
    }
    std::vector<size_t> out;
    for (size_t q = 0; q < n; q++) {
        if (!in[q]) {
            out.push_back(q);
        }
    }
    return out;
}

/// n-qubit operator equal to a on `qa` and b on `qb`; coefficients multiply.
inline PauliString embed_pair(const PauliString &a, const std::vector<size_t> &qa, const PauliString &b,
                              const std::vector<size_t> &qb, size_t n) {
    PauliString r(n);
    for (size_t k = 0; k < qa.size(); k++) {
        r.set_x(qa[k], a.x(k));
        r.set_z(qa[k], a.z(k));
    }
    for (size_t k = 0; k < qb.size(); k++) {
        r.set_x(qb[k], b.x(k));
        r.set_z(qb[k], b.z(k));
    }
    r.set_coefficient(static_cast<uint8_t>((a.coefficient() + b.coefficient()) & 3));
    return r;
}

inline PauliString embed(const PauliString &a, const std::vector<size_t> &qa, size_t n) {
    return embed_pair(a, qa, PauliString(0), {}, n);
}

}  // namespace detail

/// Abelian Pauli subgroup given by independent, commuting, Hermitian
/// generators. g == n is a pure stabilizer state, g < n a mixed one.
class StabilizerGroup {
   public:
    StabilizerGroup() = default;

    StabilizerGroup(size_t n, std::vector<PauliString> generators) : n_(n), gens_(std::move(generators)) {
        validate();
    }

    /// One generator per line; blank lines and '#' comments are skipped.
    static StabilizerGroup parse(std::string_view text) {
        std::vector<PauliString> gens;
        std::istringstream in{std::string(text)};
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) {
                line.resize(hash);
            }
            line.erase(std::remove_if(line.begin(), line.end(), [](char c) { return std::isspace((unsigned char)c); }),
                       line.end());
            if (!line.empty()) {
                gens.push_back(PauliString::from_str(line));
            }
        }
        if (gens.empty()) {
            throw InvalidGroupError("StabilizerGroup::parse: no generators");
        }
        return {gens[0].num_qubits(), std::move(gens)};
    }

    size_t num_qubits() const {
        return n_;
    }
    size_t num_generators() const {
        return gens_.size();
    }
    const std::vector<PauliString> &generators() const {
        return gens_;
    }
    bool is_pure() const {
        return gens_.size() == n_;
    }

    /// All 2^g elements; element k is the product of generators whose bit is set in k.
    std::vector<PauliString> elements() const {
        if (gens_.size() > 24) {
            throw ResourceError("StabilizerGroup::elements: group too large to enumerate");
        }
        std::vector<PauliString> out;
        out.reserve(size_t{1} << gens_.size());
        out.emplace_back(n_);
        for (const auto &g : gens_) {
            size_t sz = out.size();
            for (size_t k = 0; k < sz; k++) {
                out.push_back(out[k] * g);
            }
        }
        return out;
    }

    /// Whether p (with its sign) is a member.
    bool contains(const PauliString &p) const {
        PauliString::require_same_size(p, PauliString(n_), "StabilizerGroup::contains");
        std::vector<PauliString> rows = gens_;
        auto pivots = detail::eliminate(rows, detail::all_columns(n_));
        PauliString r = p;
        for (size_t i = 0; i < pivots.size(); i++) {
            if (detail::col_bit(r, pivots[i])) {
                r *= rows[i];
            }
        }
        return r.is_identity_up_to_phase() && r.phase() == 0;
    }

    std::string str() const {
        std::string out;
        for (const auto &g : gens_) {
            out += (g.sign() < 0 ? "" : "+") + g.str() + "\n";
        }
        return out;
    }

    friend bool operator==(const StabilizerGroup &a, const StabilizerGroup &b) {
        return a.n_ == b.n_ && a.gens_ == b.gens_;
    }

   private:
    void validate() const {
        for (const auto &g : gens_) {
            if (g.num_qubits() != n_) {
                throw DimensionError("StabilizerGroup: generator size does not match n");
            }
            if (!g.is_hermitian()) {
                throw InvalidGroupError("StabilizerGroup: generator " + g.str() + " is not Hermitian");
            }
        }
        if (gens_.size() > n_) {
            throw InvalidGroupError("StabilizerGroup: more generators than qubits");
        }
        for (size_t i = 0; i < gens_.size(); i++) {
            for (size_t j = i + 1; j < gens_.size(); j++) {
                if (!commutes(gens_[i], gens_[j])) {
                    throw InvalidGroupError("StabilizerGroup: generators " + gens_[i].str() + " and " +
                                            gens_[j].str() + " anticommute");
                }
            }
        }
        std::vector<PauliString> rows = gens_;
        auto pivots = detail::eliminate(rows, detail::all_columns(n_));
        if (pivots.size() < rows.size()) {
            const PauliString &zero = rows[pivots.size()];
            if (zero.phase() == 2) {
                throw InvalidGroupError("StabilizerGroup: generators produce -I");
            }
            throw InvalidGroupError("StabilizerGroup: generators are dependent");
        }
    }

    size_t n_ = 0;
    std::vector<PauliString> gens_;
};

/// Reduced row-echelon generators (columns x_0..x_{n-1}, z_0..z_{n-1}).
/// Same group, unique per group, idempotent.
inline StabilizerGroup canonicalize(const StabilizerGroup &group) {
    std::vector<PauliString> rows = group.generators();
    detail::eliminate(rows, detail::all_columns(group.num_qubits()));
    return {group.num_qubits(), std::move(rows)};
}

inline StabilizerGroup canonicalize(size_t n, std::vector<PauliString> generators) {
    return canonicalize(StabilizerGroup(n, std::move(generators)));
}

/// Elements supported entirely on `region`, as operators on the region's
/// qubits (in region order). Signs are those of the parent group.
inline StabilizerGroup restrict_to(const StabilizerGroup &group, const std::vector<size_t> &region) {
    const size_t n = group.num_qubits();
    auto rest = detail::complement(region, n);
    std::vector<PauliString> rows = group.generators();
    auto pivots = detail::eliminate(rows, detail::columns_of(rest, n));
    std::vector<PauliString> sub;
    for (size_t i = pivots.size(); i < rows.size(); i++) {
        sub.push_back(rows[i].restricted(region));
    }
    return canonicalize(StabilizerGroup(region.size(), std::move(sub)));
}

/// Stabilizer entanglement across A | complement, in bits: |A| - dim(S_A).
inline int entanglement_entropy(const StabilizerGroup &group, const std::vector<size_t> &cut_a) {
    if (!group.is_pure()) {
        throw InvalidGroupError("entanglement_entropy: mixed groups are not supported");
    }
    if (cut_a.empty()) {
        return 0;
    }
    auto sa = restrict_to(group, cut_a);
    return static_cast<int>(cut_a.size() - sa.num_generators());
}

/// S = union over k of (a_k S_A) (x) (b_k S_B).
struct CosetDecomposition {
    size_t n = 0;
    std::vector<size_t> a_qubits;
    std::vector<size_t> b_qubits;
    StabilizerGroup s_a;
    StabilizerGroup s_b;
    /// 2E generator pairs (a_i, b_i); a_i (x) b_i is a group element.
    std::vector<std::pair<PauliString, PauliString>> logical_pairs;
    int entanglement = 0;

    size_t num_cosets() const {
        return size_t{1} << logical_pairs.size();
    }

    /// Representative pair of coset k, reduced to the lexicographically smallest
    /// symplectic vector in a_k S_A and in b_k S_B.
    std::pair<PauliString, PauliString> coset(size_t k) const {
        PauliString a(a_qubits.size()), b(b_qubits.size());
        for (size_t i = 0; i < logical_pairs.size(); i++) {
            if ((k >> i) & 1) {
                a *= logical_pairs[i].first;
                b *= logical_pairs[i].second;
            }
        }
        // keep the whole coefficient on the A side
        uint8_t total = static_cast<uint8_t>((a.coefficient() + b.coefficient()) & 3);
        b.set_coefficient(0);
        a.set_coefficient(total);
        reduce(a, s_a);
        reduce(b, s_b);
        return {a, b};
    }

    /// Full n-qubit elements of coset k (size |S_A| * |S_B|).
    std::vector<PauliString> coset_elements(size_t k) const {
        auto [a, b] = coset(k);
        std::vector<PauliString> out;
        for (const auto &sa : s_a.elements()) {
            for (const auto &sb : s_b.elements()) {
                out.push_back(detail::embed_pair(a * sa, a_qubits, b * sb, b_qubits, n));
            }
        }
        return out;
    }

   private:
    static void reduce(PauliString &p, const StabilizerGroup &canonical) {
        size_t m = p.num_qubits();
        for (const auto &row : canonical.generators()) {
            size_t c = 0;
            while (c < 2 * m && !detail::col_bit(row, c)) {
                c++;
            }
            if (detail::col_bit(p, c)) {
                p *= row;
            }
        }
    }
};

inline CosetDecomposition coset_decompose(const StabilizerGroup &group, const std::vector<size_t> &cut_a) {
    if (!group.is_pure()) {
        throw InvalidGroupError("coset_decompose: mixed groups are not supported");
    }
    const size_t n = group.num_qubits();
    CosetDecomposition d;
    d.n = n;
    d.a_qubits = cut_a;
    d.b_qubits = detail::complement(cut_a, n);
    d.s_a = restrict_to(group, d.a_qubits);
    d.s_b = restrict_to(group, d.b_qubits);
    d.entanglement = static_cast<int>(d.a_qubits.size() - d.s_a.num_generators());

    // Grow a basis starting from S_A (x) S_B; whatever group generators are
    // still independent afterwards are the logical operators.
    std::vector<PauliString> basis;
    for (const auto &g : d.s_a.generators()) {
        basis.push_back(detail::embed(g, d.a_qubits, n));
    }
    for (const auto &g : d.s_b.generators()) {
        basis.push_back(detail::embed(g, d.b_qubits, n));
    }
    const auto cols = detail::all_columns(n);
    const StabilizerGroup canon = canonicalize(group);
    for (const auto &g : canon.generators()) {
        std::vector<PauliString> trial = basis;
        trial.push_back(g);
        auto pivots = detail::eliminate(trial, cols);
        if (pivots.size() == trial.size()) {
            basis.push_back(g);
            d.logical_pairs.emplace_back(g.restricted(d.a_qubits), [&] {
                PauliString b = g.restricted(d.b_qubits);
                b.set_coefficient(0);
                return b;
            }());
        }
    }
    if (d.logical_pairs.size() != static_cast<size_t>(2 * d.entanglement)) {
        throw InvalidGroupError("coset_decompose: logical operator count does not match 2E");
    }
    return d;
}

// ---------------------------------------------------------------------------
// Normal-form states

/// Stabilizer state in normal form with its subsystem layout.
struct NormalState {
    StabilizerGroup group;
    std::vector<size_t> a;
    std::vector<size_t> b;
    std::vector<size_t> c;
    std::optional<DenseState> state;
};

/// Dense state stabilized by every generator of a pure group.
inline DenseState group_to_state(const StabilizerGroup &group, const Limits &limits = {}) {
    if (!group.is_pure()) {
        throw InvalidGroupError("group_to_state: group is not pure");
    }
    const size_t n = group.num_qubits();
    limits.require_dense(static_cast<int>(n), "group_to_state");
    // Z-type elements fix the support: -1^{z.b} must equal their sign.
    std::vector<size_t> x_cols(n);
    std::iota(x_cols.begin(), x_cols.end(), size_t{0});
    std::vector<PauliString> rows = group.generators();
    auto pivots = detail::eliminate(rows, x_cols);
    std::vector<std::pair<uint64_t, int>> eqs;
    for (size_t i = pivots.size(); i < rows.size(); i++) {
        eqs.emplace_back(rows[i].z_mask(), rows[i].sign() < 0 ? 1 : 0);
    }
    uint64_t b = 0;
    {
        size_t r = 0;
        std::vector<int> pivot_col;
        for (size_t col = 0; col < n && r < eqs.size(); col++) {
            size_t p = r;
            while (p < eqs.size() && !((eqs[p].first >> col) & 1)) {
                p++;
            }
            if (p == eqs.size()) {
                continue;
            }
            std::swap(eqs[r], eqs[p]);
            for (size_t i = 0; i < eqs.size(); i++) {
                if (i != r && ((eqs[i].first >> col) & 1)) {
                    eqs[i].first ^= eqs[r].first;
                    eqs[i].second ^= eqs[r].second;
                }
            }
            pivot_col.push_back(static_cast<int>(col));
            r++;
        }
        for (size_t i = 0; i < pivot_col.size(); i++) {
            if (eqs[i].second) {
                b |= uint64_t{1} << pivot_col[i];
            }
        }
    }
    DenseState psi = DenseState::basis(static_cast<int>(n), b);
    for (const auto &g : group.generators()) {
        DenseState gp = apply_pauli(psi, g);
        for (size_t k = 0; k < psi.dim(); k++) {
            psi[k] = 0.5 * (psi[k] + gp[k]);
        }
    }
    psi.normalize();
    return psi;
}

enum class Filler { plus, zero };

/// |f>^{f_A} (x) Bell^E (x) |f>^{f_B}. A = [f_A fillers, E halves],
/// B = [f_B fillers, E partners]; Bell pair i joins qubits f_A + i and |A| + f_B + i.
inline NormalState build_normal_state(int f_a, int e, int f_b, Filler filler = Filler::plus,
                                      const Limits &limits = {}) {
    if (f_a < 0 || e < 0 || f_b < 0) {
        throw DomainError("build_normal_state: counts must be non-negative");
    }
    const size_t na = f_a + e, nb = f_b + e, n = na + nb;
    NormalState out;
    for (size_t q = 0; q < na; q++) out.a.push_back(q);
    for (size_t q = 0; q < nb; q++) out.b.push_back(na + q);
    std::vector<PauliString> gens;
    auto single = [&](size_t q) {
        PauliString p(n);
        if (filler == Filler::plus) {
            p.set_x(q, true);
        } else {
            p.set_z(q, true);
        }
        gens.push_back(p);
    };
    for (int k = 0; k < f_a; k++) single(k);
    for (int k = 0; k < f_b; k++) single(na + k);
    for (int i = 0; i < e; i++) {
        size_t qa = f_a + i, qb = na + f_b + i;
        PauliString xx(n), zz(n);
        xx.set_x(qa, true);
        xx.set_x(qb, true);
        zz.set_z(qa, true);
        zz.set_z(qb, true);
        gens.push_back(xx);
        gens.push_back(zz);
    }
    out.group = StabilizerGroup(n, std::move(gens));
    if (static_cast<int>(n) <= limits.max_dense_qubits) {
        out.state = group_to_state(out.group, limits);
    }
    return out;
}

/// Counts for a GHZ / Bell / single-qubit tripartite stabilizer state.
struct TripartiteShape {
    int g = 0;
    int b_ab = 0, b_ac = 0, b_bc = 0;
    int f_a = 0, f_b = 0, f_c = 0;

    int size_a() const {
        return f_a + b_ab + b_ac + g;
    }
    int size_b() const {
        return f_b + b_ab + b_bc + g;
    }
    int size_c() const {
        return f_c + b_ac + b_bc + g;
    }
    int total() const {
        return size_a() + size_b() + size_c();
    }
};

/// A = [f_A, b_AB, b_AC, g], B = [f_B, b_AB, b_BC, g], C = [f_C, b_AC, b_BC, g],
/// with A, B, C occupying consecutive qubit ranges. GHZ triples carry XXX, Z_A Z_B, Z_B Z_C.
inline NormalState build_normal_state(const TripartiteShape &s, Filler filler = Filler::plus,
                                      const Limits &limits = {}) {
    for (int v : {s.g, s.b_ab, s.b_ac, s.b_bc, s.f_a, s.f_b, s.f_c}) {
        if (v < 0) {
            throw DomainError("build_normal_state: tripartite counts must be non-negative");
        }
    }
    const size_t na = s.size_a(), nb = s.size_b(), n = s.total();
    const size_t oa = 0, ob = na, oc = na + nb;
    NormalState out;
    for (size_t q = 0; q < na; q++) out.a.push_back(oa + q);
    for (size_t q = 0; q < nb; q++) out.b.push_back(ob + q);
    for (size_t q = 0; q < static_cast<size_t>(s.size_c()); q++) out.c.push_back(oc + q);

    std::vector<PauliString> gens;
    auto single = [&](size_t q) {
        PauliString p(n);
        if (filler == Filler::plus) {
            p.set_x(q, true);
        } else {
            p.set_z(q, true);
        }
        gens.push_back(p);
    };
    auto bell = [&](size_t q1, size_t q2) {
        PauliString xx(n), zz(n);
        xx.set_x(q1, true);
        xx.set_x(q2, true);
        zz.set_z(q1, true);
        zz.set_z(q2, true);
        gens.push_back(xx);
        gens.push_back(zz);
    };
    for (int k = 0; k < s.f_a; k++) single(oa + k);
    for (int k = 0; k < s.f_b; k++) single(ob + k);
    for (int k = 0; k < s.f_c; k++) single(oc + k);
    for (int i = 0; i < s.b_ab; i++) bell(oa + s.f_a + i, ob + s.f_b + i);
    for (int i = 0; i < s.b_ac; i++) bell(oa + s.f_a + s.b_ab + i, oc + s.f_c + i);
    for (int i = 0; i < s.b_bc; i++) bell(ob + s.f_b + s.b_ab + i, oc + s.f_c + s.b_ac + i);
    for (int i = 0; i < s.g; i++) {
        size_t qa = oa + s.f_a + s.b_ab + s.b_ac + i;
        size_t qb = ob + s.f_b + s.b_ab + s.b_bc + i;
        size_t qc = oc + s.f_c + s.b_ac + s.b_bc + i;
        PauliString xxx(n), zab(n), zbc(n);
        xxx.set_x(qa, true);
        xxx.set_x(qb, true);
        xxx.set_x(qc, true);
        zab.set_z(qa, true);
        zab.set_z(qb, true);
        zbc.set_z(qb, true);
        zbc.set_z(qc, true);
        gens.push_back(xxx);
        gens.push_back(zab);
        gens.push_back(zbc);
    }
    out.group = StabilizerGroup(n, std::move(gens));
    if (static_cast<int>(n) <= limits.max_dense_qubits) {
        out.state = group_to_state(out.group, limits);
    }
    return out;
}

/// n-qubit GHZ group {X...X, Z_i Z_{i+1}}.
inline StabilizerGroup ghz_group(size_t n) {
    if (n < 1) {
        throw DomainError("ghz_group: n must be >= 1");
    }
    std::vector<PauliString> gens;
    PauliString all_x(n);
    for (size_t q = 0; q < n; q++) all_x.set_x(q, true);
    gens.push_back(all_x);
    for (size_t q = 0; q + 1 < n; q++) {
        PauliString zz(n);
        zz.set_z(q, true);
        zz.set_z(q + 1, true);
        gens.push_back(zz);
    }
    return {n, std::move(gens)};
}

namespace detail {

inline std::vector<int> parse_int_list(std::string_view text, size_t expected, const std::string &what) {
    std::vector<int> out;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) {
        try {
            size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            out.push_back(v);
        } catch (const std::exception &) {
            throw std::invalid_argument(what + ": bad integer '" + item + "'");
        }
    }
    if (out.size() != expected) {
        throw std::invalid_argument(what + ": expected " + std::to_string(expected) + " comma-separated integers");
    }
    return out;
}

}  // namespace detail

/// "ghz:<n>", "bell:<k>", "normal:fA,E,fB", "tri:g,bAB,bAC,bBC,fA,fB,fC".
inline NormalState named_state(std::string_view name, const Limits &limits = {}) {
    auto colon = name.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("named_state: expected <kind>:<args>, got '" + std::string(name) + "'");
    }
    std::string_view kind = name.substr(0, colon), args = name.substr(colon + 1);
    if (kind == "ghz") {
        int n = detail::parse_int_list(args, 1, "ghz")[0];
        NormalState out;
        out.group = ghz_group(static_cast<size_t>(n));
        if (n <= limits.max_dense_qubits) {
            out.state = group_to_state(out.group, limits);
        }
        return out;
    }
    if (kind == "bell") {
        int k = detail::parse_int_list(args, 1, "bell")[0];
        return build_normal_state(0, k, 0, Filler::plus, limits);
    }
    if (kind == "normal") {
        auto v = detail::parse_int_list(args, 3, "normal");
        return build_normal_state(v[0], v[1], v[2], Filler::plus, limits);
    }
    if (kind == "tri") {
        auto v = detail::parse_int_list(args, 7, "tri");
        return build_normal_state(TripartiteShape{v[0], v[1], v[2], v[3], v[4], v[5], v[6]}, Filler::plus, limits);
    }
    throw std::invalid_argument("named_state: unknown kind '" + std::string(kind) + "'");
}

}  // namespace stabmagic
