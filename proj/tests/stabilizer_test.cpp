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

#include "stabmagic/stabilizer.hpp"

#include <gtest/gtest.h>

#include <set>

#include "stabmagic/clifford.hpp"
#include "stabmagic/dense.hpp"

using namespace stabmagic;

namespace {

PauliString P(const char *s) {
    return PauliString::from_str(s);
}

StabilizerGroup G(std::initializer_list<const char *> gens) {
    std::vector<PauliString> v;
    for (const char *g : gens) v.push_back(P(g));
    return {v.front().num_qubits(), v};
}

std::set<std::string> unsigned_set(const std::vector<PauliString> &ps) {
    std::set<std::string> out;
    for (const auto &p : ps) out.insert(p.unsigned_form().str());
    return out;
}

std::vector<size_t> range(size_t lo, size_t hi) {
    std::vector<size_t> v;
    for (size_t q = lo; q < hi; q++) v.push_back(q);
    return v;
}

}  // namespace

TEST(stabilizer_group, rejects_invalid_generators) {
    EXPECT_THROW(G({"XX", "ZZ", "-YY"}), InvalidGroupError);
    EXPECT_THROW(G({"XX", "ZI"}), InvalidGroupError);
    EXPECT_THROW(G({"ZZ", "-ZZ"}), InvalidGroupError);
    EXPECT_THROW(G({"XX", "XX"}), InvalidGroupError);
    EXPECT_THROW(G({"iX"}), InvalidGroupError);
    EXPECT_THROW(StabilizerGroup(3, {P("XX")}), DimensionError);
}

TEST(stabilizer_group, canonicalize_examples) {
    auto g = canonicalize(G({"XX", "ZZ"}));
    EXPECT_EQ(g.generators()[0].str(), "XX");
    EXPECT_EQ(g.generators()[1].str(), "ZZ");
    auto h = canonicalize(G({"ZZ", "YY"}));
    EXPECT_EQ(canonicalize(h), h);
    EXPECT_EQ(h, canonicalize(G({"-XX", "ZZ"})));
}

TEST(stabilizer_group, canonical_form_is_unique_per_group) {
    Rng rng(7);
    for (int trial = 0; trial < 30; trial++) {
        size_t n = 1 + trial % 6;
        auto g = random_stabilizer_group(n, rng);
        // scramble the generators by random products
        auto gens = g.generators();
        std::uniform_int_distribution<size_t> pick(0, n - 1);
        for (int k = 0; k < 20; k++) {
            size_t i = pick(rng), j = pick(rng);
            if (i != j) gens[i] *= gens[j];
        }
        StabilizerGroup h(n, gens);
        EXPECT_EQ(canonicalize(g), canonicalize(h));
        EXPECT_EQ(unsigned_set(g.elements()), unsigned_set(h.elements()));
        auto c = canonicalize(h);
        EXPECT_EQ(canonicalize(c), c);
    }
}

TEST(stabilizer_group, ghz5_generators_are_independent) {
    // Column 1 of the GHZ_5 decomposition table contains these generators.
    auto g = G({"IZZII", "ZZIII", "IIIZZ", "XXXXX", "IIZZI"});
    EXPECT_EQ(canonicalize(g).num_generators(), 5u);
    EXPECT_TRUE(g.is_pure());
}

TEST(stabilizer_group, parse_text) {
    auto g = StabilizerGroup::parse("# bell\nXX\n\n  -YY  \n");
    EXPECT_EQ(g.num_generators(), 2u);
    EXPECT_TRUE(g.contains(P("ZZ")));
    EXPECT_FALSE(g.contains(P("-ZZ")));
    EXPECT_THROW(StabilizerGroup::parse(""), InvalidGroupError);
}

TEST(entanglement, examples) {
    auto ghz = ghz_group(5);
    EXPECT_EQ(entanglement_entropy(ghz, range(0, 3)), 1);
    auto zeros = G({"ZII", "IZI", "IIZ"});
    EXPECT_EQ(entanglement_entropy(zeros, {0}), 0);
    EXPECT_EQ(entanglement_entropy(zeros, {0, 2}), 0);
    for (int e = 0; e <= 3; e++) {
        auto ns = build_normal_state(1, e, 2);
        EXPECT_EQ(entanglement_entropy(ns.group, ns.a), e);
        EXPECT_EQ(entanglement_entropy(ns.group, ns.b), e);
    }
    EXPECT_EQ(entanglement_entropy(ghz, {}), 0);
    EXPECT_THROW(entanglement_entropy(G({"ZI"}), {0}), InvalidGroupError);
}

TEST(entanglement, matches_von_neumann_entropy_of_dense_state) {
    Rng rng(11);
    for (int trial = 0; trial < 40; trial++) {
        size_t n = 2 + trial % 7;
        auto g = random_stabilizer_group(n, rng);
        auto psi = group_to_state(g);
        std::vector<size_t> cut;
        std::bernoulli_distribution coin(0.5);
        for (size_t q = 0; q < n; q++) {
            if (coin(rng)) cut.push_back(q);
        }
        int e = entanglement_entropy(g, cut);
        EXPECT_NEAR(von_neumann_entropy(psi, std::span<const size_t>(cut)), e, 1e-9);
        EXPECT_EQ(e, entanglement_entropy(g, detail::complement(cut, n)));
    }
}

TEST(coset_decompose, ghz5_partitions_into_the_table_columns) {
    const std::vector<std::set<std::string>> table = {
        {"IIIII", "IZZII", "ZZIII", "ZIZII", "IIIZZ", "IZZZZ", "ZZIZZ", "ZIZZZ"},
        {"XXXXX", "XYYXX", "YYXXX", "YXYXX", "XXXYY", "XYYYY", "YYXYY", "YXYYY"},
        {"IIZZI", "IZIZI", "ZZZZI", "ZIIZI", "IIZIZ", "IZIIZ", "ZZZIZ", "ZIIIZ"},
        {"XXYYX", "XYXYX", "YYYYX", "YXXYX", "XXYXY", "XYXXY", "YYYXY", "YXXXY"}};
    auto d = coset_decompose(ghz_group(5), range(0, 3));
    EXPECT_EQ(d.entanglement, 1);
    ASSERT_EQ(d.num_cosets(), 4u);
    std::set<std::set<std::string>> got, want(table.begin(), table.end());
    for (size_t k = 0; k < d.num_cosets(); k++) {
        got.insert(unsigned_set(d.coset_elements(k)));
    }
    EXPECT_EQ(got, want);
    EXPECT_EQ(unsigned_set(d.s_a.elements()), (std::set<std::string>{"III", "IZZ", "ZIZ", "ZZI"}));
    EXPECT_EQ(unsigned_set(d.s_b.elements()), (std::set<std::string>{"II", "ZZ"}));
}

TEST(coset_decompose, bell_pair) {
    auto bell = G({"XX", "ZZ"});
    auto d = coset_decompose(bell, {0});
    EXPECT_EQ(d.entanglement, 1);
    EXPECT_EQ(d.s_a.num_generators(), 0u);
    EXPECT_EQ(d.s_b.num_generators(), 0u);
    ASSERT_EQ(d.logical_pairs.size(), 2u);
    std::set<std::string> pairs;
    for (const auto &[a, b] : d.logical_pairs) pairs.insert(a.unsigned_form().str() + "|" + b.unsigned_form().str());
    EXPECT_EQ(pairs, (std::set<std::string>{"X|X", "Z|Z"}));
    std::set<std::string> all;
    for (size_t k = 0; k < 4; k++) {
        for (const auto &p : d.coset_elements(k)) {
            EXPECT_TRUE(bell.contains(p)) << p.str();
            all.insert(p.str());
        }
    }
    EXPECT_EQ(all, (std::set<std::string>{"II", "XX", "ZZ", "-YY"}));
}

TEST(coset_decompose, unentangled_group_has_one_coset) {
    auto d = coset_decompose(G({"ZI", "IX"}), {0});
    EXPECT_EQ(d.entanglement, 0);
    EXPECT_TRUE(d.logical_pairs.empty());
    EXPECT_EQ(d.num_cosets(), 1u);
    EXPECT_EQ(d.coset_elements(0).size(), 4u);
}

TEST(coset_decompose, tiling_and_pairing_on_random_groups) {
    Rng rng(3);
    for (int trial = 0; trial < 60; trial++) {
        size_t n = 2 + trial % 7;
        auto g = random_stabilizer_group(n, rng);
        std::uniform_int_distribution<size_t> cut_size(1, n - 1);
        std::vector<size_t> qubits = range(0, n);
        std::shuffle(qubits.begin(), qubits.end(), rng);
        std::vector<size_t> cut(qubits.begin(), qubits.begin() + cut_size(rng));
        auto d = coset_decompose(g, cut);
        const size_t e = static_cast<size_t>(d.entanglement);
        EXPECT_EQ(d.s_a.num_generators(), cut.size() - e);
        EXPECT_EQ(d.s_b.num_generators(), n - cut.size() - e);
        // every listed element is in the group, with its sign
        std::set<std::string> seen;
        size_t total = 0;
        for (size_t k = 0; k < d.num_cosets(); k++) {
            for (const auto &p : d.coset_elements(k)) {
                ASSERT_TRUE(g.contains(p)) << p.str();
                seen.insert(p.unsigned_form().str());
                total++;
            }
        }
        EXPECT_EQ(total, size_t{1} << n);
        EXPECT_EQ(seen.size(), size_t{1} << n);
        for (size_t i = 0; i < d.logical_pairs.size(); i++) {
            for (size_t j = 0; j < d.logical_pairs.size(); j++) {
                EXPECT_EQ(commutes(d.logical_pairs[i].first, d.logical_pairs[j].first),
                          commutes(d.logical_pairs[i].second, d.logical_pairs[j].second));
            }
        }
    }
}

TEST(coset_decompose, representatives_are_lexicographically_minimal) {
    auto d = coset_decompose(ghz_group(5), range(0, 3));
    for (size_t k = 0; k < d.num_cosets(); k++) {
        auto [a, b] = d.coset(k);
        for (const auto &s : d.s_a.elements()) {
            PauliString other = a * s;
            // compare symplectic vectors with column x_0 most significant
            auto key = [](const PauliString &p) {
                std::string v;
                for (size_t q = 0; q < p.num_qubits(); q++) v += p.x(q) ? '1' : '0';
                for (size_t q = 0; q < p.num_qubits(); q++) v += p.z(q) ? '1' : '0';
                return v;
            };
            EXPECT_LE(key(a), key(other));
        }
    }
}

TEST(normal_state, bipartite_examples) {
    const double r = 1 / std::sqrt(2.0);
    auto bell = build_normal_state(0, 1, 0);
    ASSERT_TRUE(bell.state);
    EXPECT_TRUE(equal_up_to_phase(*bell.state, DenseState(2, {r, 0, 0, r})));
    auto ns = build_normal_state(1, 1, 0);
    EXPECT_NEAR(von_neumann_entropy(*ns.state, std::span<const size_t>(ns.a)), 1.0, 1e-12);
    EXPECT_EQ(ns.a, (std::vector<size_t>{0, 1}));
    EXPECT_EQ(ns.b, (std::vector<size_t>{2}));
    auto zero = build_normal_state(2, 0, 1, Filler::zero);
    EXPECT_TRUE(equal_up_to_phase(*zero.state, DenseState::basis(3, 0)));
    EXPECT_THROW(build_normal_state(-1, 0, 0), DomainError);
    Limits tiny;
    tiny.max_dense_qubits = 3;
    EXPECT_FALSE(build_normal_state(2, 1, 1, Filler::plus, tiny).state.has_value());
}

TEST(normal_state, tripartite_layout) {
    TripartiteShape ghz{1, 0, 0, 0, 0, 0, 0};
    auto g3 = build_normal_state(ghz);
    const double r = 1 / std::sqrt(2.0);
    DenseState expect(3);
    expect[0] = r;
    expect[7] = r;
    EXPECT_TRUE(equal_up_to_phase(*g3.state, expect));

    TripartiteShape s{1, 1, 1, 1, 1, 0, 2};
    auto t = build_normal_state(s);
    EXPECT_EQ(t.a.size(), 4u);
    EXPECT_EQ(t.b.size(), 3u);
    EXPECT_EQ(t.c.size(), 5u);
    auto ab = t.a;
    ab.insert(ab.end(), t.b.begin(), t.b.end());
    // AB|C entanglement: bAC + bBC + g
    EXPECT_EQ(entanglement_entropy(t.group, ab), 3);
    EXPECT_EQ(entanglement_entropy(t.group, t.a), 3);
    EXPECT_EQ(entanglement_entropy(t.group, t.b), 3);
}

TEST(group_to_state, examples) {
    const double r = 1 / std::sqrt(2.0);
    EXPECT_TRUE(equal_up_to_phase(group_to_state(G({"X"})), DenseState(1, {r, r})));
    EXPECT_TRUE(equal_up_to_phase(group_to_state(G({"-X"})), DenseState(1, {r, -r})));
    EXPECT_TRUE(equal_up_to_phase(group_to_state(G({"XX", "ZZ"})), DenseState(2, {r, 0, 0, r})));
    auto table = G({"IZZII", "ZZIII", "IIIZZ", "XXXXX", "IIZZI"});
    DenseState ghz(5);
    ghz[0] = r;
    ghz[31] = r;
    EXPECT_TRUE(equal_up_to_phase(group_to_state(table), ghz));
}

TEST(group_to_state, every_generator_stabilizes) {
    Rng rng(5);
    for (int trial = 0; trial < 30; trial++) {
        size_t n = 1 + trial % 8;
        auto g = random_stabilizer_group(n, rng);
        auto psi = group_to_state(g);
        EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
        for (const auto &s : g.generators()) {
            auto t = apply_pauli(psi, s);
            for (size_t k = 0; k < psi.dim(); k++) {
                ASSERT_NEAR(std::abs(t[k] - psi[k]), 0, 1e-10);
            }
        }
    }
    Limits tiny;
    tiny.max_dense_qubits = 2;
    EXPECT_THROW(group_to_state(ghz_group(3), tiny), ResourceError);
}

TEST(named_state, parses_each_kind) {
    EXPECT_EQ(named_state("ghz:5").group.num_qubits(), 5u);
    EXPECT_EQ(named_state("bell:2").group.num_qubits(), 4u);
    auto n = named_state("normal:1,2,3");
    EXPECT_EQ(n.a.size(), 3u);
    EXPECT_EQ(n.b.size(), 5u);
    auto t = named_state("tri:1,0,0,0,1,1,1");
    EXPECT_EQ(t.group.num_qubits(), 6u);
    EXPECT_THROW(named_state("ghz"), std::invalid_argument);
    EXPECT_THROW(named_state("normal:1,2"), std::invalid_argument);
    EXPECT_THROW(named_state("cat:3"), std::invalid_argument);
}
