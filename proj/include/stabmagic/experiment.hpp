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
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "stabmagic/clifford.hpp"
#include "stabmagic/dense.hpp"
#include "stabmagic/errors.hpp"
#include "stabmagic/exact.hpp"
#include "stabmagic/magic.hpp"
#include "stabmagic/records.hpp"
#include "stabmagic/rng.hpp"
#include "stabmagic/stabilizer.hpp"

namespace stabmagic {

/// Monte Carlo experiment description. Field names match the JSON keys.
struct ExperimentConfig {
    std::string scenario;
    std::optional<int> nA, nB, nC, E, g, bAB, bAC, bBC, fA, fB, fC;
    std::vector<int> depths;
    int gate_span = 2;
    double theta = std::numbers::pi / 4;
    std::string lambda_law = "linear";
    int k = 0;
    int samples = 0;
    uint64_t master_seed = 0;
    std::string estimator = "brute";
    bool prescramble = false;
    int workers = 1;
    Limits limits;
};

inline const std::vector<std::string> &experiment_scenarios() {
    static const std::vector<std::string> s = {"bipartite_haar", "bipartite_product", "tripartite_pair",
                                               "tripartite_triple", "brickwork",       "nonstab_bell",
                                               "nonstab_spectrum", "unitary_sre",     "tcount_report"};
    return s;
}

/// Strict JSON parse: unknown keys and wrong types are ConfigErrors.
inline ExperimentConfig config_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw ConfigError("config: root must be a JSON object");
    }
    ExperimentConfig c;
    static const std::set<std::string> known = {
        "scenario", "nA",    "nB",       "nC",          "E",         "g",          "bAB",
        "bAC",      "bBC",   "fA",       "fB",          "fC",        "depth",      "depths",
        "gate_span", "theta", "lambda_law", "k",        "samples",   "master_seed", "estimator",
        "prescramble", "workers", "max_dense_qubits", "max_spectrum_qubits"};
    for (const auto &[key, _] : j.items()) {
        if (!known.count(key)) {
            throw ConfigError("config: unknown field '" + key + "'");
        }
    }
    auto get = [&](const char *key, auto &out) {
        if (!j.contains(key)) {
            return;
        }
        using T = std::decay_t<decltype(out)>;
        try {
            if constexpr (std::is_same_v<T, std::optional<int>>) {
                out = j.at(key).get<int>();
            } else {
                out = j.at(key).get<T>();
            }
        } catch (const nlohmann::json::exception &) {
            throw ConfigError(std::string("config: field '") + key + "' has the wrong type");
        }
    };
    if (!j.contains("scenario")) throw ConfigError("config: missing 'scenario'");
    if (!j.contains("samples")) throw ConfigError("config: missing 'samples'");
    get("scenario", c.scenario);
    get("nA", c.nA);
    get("nB", c.nB);
    get("nC", c.nC);
    get("E", c.E);
    get("g", c.g);
    get("bAB", c.bAB);
    get("bAC", c.bAC);
    get("bBC", c.bBC);
    get("fA", c.fA);
    get("fB", c.fB);
    get("fC", c.fC);
    if (j.contains("depth")) {
        int d = 0;
        get("depth", d);
        c.depths = {d};
    }
    if (j.contains("depths")) {
        if (j.contains("depth")) throw ConfigError("config: give either 'depth' or 'depths'");
        get("depths", c.depths);
    }
    get("gate_span", c.gate_span);
    get("theta", c.theta);
    get("lambda_law", c.lambda_law);
    get("k", c.k);
    get("samples", c.samples);
    get("master_seed", c.master_seed);
    get("estimator", c.estimator);
    get("prescramble", c.prescramble);
    get("workers", c.workers);
    get("max_dense_qubits", c.limits.max_dense_qubits);
    get("max_spectrum_qubits", c.limits.max_spectrum_qubits);
    return c;
}

inline nlohmann::json config_to_json(const ExperimentConfig &c) {
    nlohmann::json j;
    j["scenario"] = c.scenario;
    auto put = [&](const char *key, const std::optional<int> &v) {
        if (v) j[key] = *v;
    };
    put("nA", c.nA);
    put("nB", c.nB);
    put("nC", c.nC);
    put("E", c.E);
    put("g", c.g);
    put("bAB", c.bAB);
    put("bAC", c.bAC);
    put("bBC", c.bBC);
    put("fA", c.fA);
    put("fB", c.fB);
    put("fC", c.fC);
    if (!c.depths.empty()) j["depths"] = c.depths;
    j["gate_span"] = c.gate_span;
    j["theta"] = c.theta;
    j["lambda_law"] = c.lambda_law;
    j["k"] = c.k;
    j["samples"] = c.samples;
    j["master_seed"] = c.master_seed;
    j["estimator"] = c.estimator;
    j["prescramble"] = c.prescramble;
    j["workers"] = c.workers;
    j["max_dense_qubits"] = c.limits.max_dense_qubits;
    j["max_spectrum_qubits"] = c.limits.max_spectrum_qubits;
    return j;
}

namespace detail {

/// Sum in a fixed binary-tree order, independent of how samples were scheduled.
inline double pairwise_sum(const double *v, size_t n) {
    if (n == 0) return 0;
    if (n == 1) return v[0];
    if (n <= 8) {
        double s = 0;
        for (size_t i = 0; i < n; i++) s += v[i];
        return s;
    }
    size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

struct Stats {
    double mean = 0;
    double stderr_ = 0;
};

inline Stats stats(const std::vector<double> &v) {
    Stats s;
    const size_t n = v.size();
    s.mean = pairwise_sum(v.data(), n) / static_cast<double>(n);
    if (n > 1) {
        std::vector<double> dev(n);
        for (size_t i = 0; i < n; i++) dev[i] = (v[i] - s.mean) * (v[i] - s.mean);
        double var = pairwise_sum(dev.data(), n) / static_cast<double>(n - 1);
        s.stderr_ = std::sqrt(var / static_cast<double>(n));
    }
    return s;
}

/// Runs body(i) for i in [0, n) on `workers` threads. Exceptions are rethrown
/// (lowest index first).
inline void parallel_for(size_t n, int workers, const std::function<void(size_t)> &body) {
    if (workers <= 1 || n <= 1) {
        for (size_t i = 0; i < n; i++) body(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    auto run = [&] {
        for (size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min<int>(workers, static_cast<int>(n)); w++) pool.emplace_back(run);
    for (auto &t : pool) t.join();
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

inline DenseState apply_region(const DenseState &s, const DenseUnitary &u, const std::vector<size_t> &region) {
    return apply_on_qubits(s, u, std::span<const size_t>(region));
}

inline CliffordAction embed_action(const CliffordAction &local, const std::vector<size_t> &region, size_t n,
                                   CliffordAction base) {
    for (size_t k = 0; k < region.size(); k++) {
        base.x_images[region[k]] = embed(local.x_images[k], region, n);
        base.z_images[region[k]] = embed(local.z_images[k], region, n);
    }
    return base;
}

inline double m2_of(double y) {
    return y < 1 ? -std::log2(1 - y) : std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// Validated, fully resolved experiment: region sizes, initial state, references.
struct ExperimentPlan {
    ExperimentConfig cfg;
    int n_a = 0, n_b = 0, n_c = 0, e = 0;
    TripartiteShape shape;
    NormalState initial;                   // stabilizer scenarios
    std::optional<DenseState> nonstab;     // nonstab_* scenarios
    std::optional<double> init_m2;
    std::optional<double> exact_y;
    std::optional<double> leading_y;
    bool coset = false;
};

inline ExperimentPlan plan_experiment(const ExperimentConfig &cfg) {
    ExperimentPlan p;
    p.cfg = cfg;
    const auto &sc = cfg.scenario;
    const auto &all = experiment_scenarios();
    if (std::find(all.begin(), all.end(), sc) == all.end()) {
        throw ConfigError("config: unknown scenario '" + sc + "'");
    }
    if (cfg.samples < 1) throw ConfigError("config: samples must be >= 1");
    if (cfg.workers < 1) throw ConfigError("config: workers must be >= 1");
    if (cfg.estimator != "brute" && cfg.estimator != "coset_reduced") {
        throw ConfigError("config: estimator must be 'brute' or 'coset_reduced'");
    }
    p.coset = cfg.estimator == "coset_reduced";
    if (p.coset && sc != "bipartite_haar") {
        throw ConfigError("config: coset_reduced is only valid for bipartite_haar");
    }
    if (sc != "brickwork" && !cfg.depths.empty()) {
        throw ConfigError("config: depth/depths only apply to the brickwork scenario");
    }
    const Limits &lim = cfg.limits;
    auto nonneg = [](const std::optional<int> &v, const char *name) {
        if (v && *v < 0) throw ConfigError(std::string("config: ") + name + " must be non-negative");
        return v.value_or(0);
    };
    auto resolve_size = [&](const std::optional<int> &n, const std::optional<int> &f, int entangled, const char *nn,
                            const char *fn) {
        int size;
        if (n) {
            size = *n;
            if (f && *f != size - entangled) {
                throw ConfigError(std::string("config: ") + nn + " and " + fn + " disagree");
            }
        } else if (f) {
            size = *f + entangled;
        } else {
            throw ConfigError(std::string("config: need ") + nn + " or " + fn);
        }
        if (size - entangled < 0) {
            throw ConfigError(std::string("config: ") + nn + " is smaller than its entangled qubit count");
        }
        return size;
    };
    auto bits = [](int k) { return int64_t{1} << k; };

    if (sc == "bipartite_haar" || sc == "bipartite_product" || sc == "brickwork") {
        p.e = nonneg(cfg.E, "E");
        p.n_a = resolve_size(cfg.nA, cfg.fA, p.e, "nA", "fA");
        p.n_b = resolve_size(cfg.nB, cfg.fB, p.e, "nB", "fB");
        if (p.n_a < 1) throw ConfigError("config: nA must be >= 1");
        if (sc == "bipartite_product" && p.n_b < 1) throw ConfigError("config: nB must be >= 1");
        const int n = p.n_a + p.n_b;
        if (!p.coset) {
            if (n > lim.max_dense_qubits) {
                throw ResourceError("config: " + std::to_string(n) + " qubits exceeds the dense cap");
            }
            lim.require_spectrum(n, "experiment");
        } else {
            lim.require_spectrum(p.n_a, "experiment");
        }
        Limits build = lim;
        if (p.coset) build.max_dense_qubits = 0;
        p.initial = build_normal_state(p.n_a - p.e, p.e, p.n_b - p.e, Filler::plus, build);
        if (sc == "bipartite_product") {
            if (p.n_a >= 2 && p.n_b >= 2) {
                p.exact_y = to_double(exact_average_y({Scenario::bipartite_product, bits(p.n_a), bits(p.n_b), 1,
                                                       bits(p.e)}));
            }
            p.leading_y = leading_average_y({Scenario::bipartite_product, p.n_a, p.n_b, 0, p.e}).y;
        } else {
            if (p.n_a >= 2) {
                p.exact_y = to_double(exact_average_y({Scenario::bipartite_haar, bits(p.n_a), 1, 1, bits(p.e)}));
            }
            p.leading_y = leading_average_y({Scenario::bipartite_haar, p.n_a, p.n_b, 0, p.e}).y;
        }
        if (sc == "brickwork") {
            if (cfg.depths.empty()) throw ConfigError("config: brickwork needs depth or depths");
            for (int d : cfg.depths) {
                if (d < 0) throw ConfigError("config: depths must be non-negative");
            }
            if (cfg.gate_span < 2) throw ConfigError("config: gate_span must be >= 2");
            if (cfg.gate_span > p.n_a) throw ConfigError("config: gate_span exceeds nA");
            lim.require_dense(cfg.gate_span, "brickwork gate");
        }
        return p;
    }

    if (sc == "tripartite_pair" || sc == "tripartite_triple") {
        TripartiteShape s;
        s.g = nonneg(cfg.g, "g");
        s.b_ab = nonneg(cfg.bAB, "bAB");
        s.b_ac = nonneg(cfg.bAC, "bAC");
        s.b_bc = nonneg(cfg.bBC, "bBC");
        p.n_a = resolve_size(cfg.nA, cfg.fA, s.b_ab + s.b_ac + s.g, "nA", "fA");
        p.n_b = resolve_size(cfg.nB, cfg.fB, s.b_ab + s.b_bc + s.g, "nB", "fB");
        p.n_c = resolve_size(cfg.nC, cfg.fC, s.b_ac + s.b_bc + s.g, "nC", "fC");
        s.f_a = p.n_a - s.b_ab - s.b_ac - s.g;
        s.f_b = p.n_b - s.b_ab - s.b_bc - s.g;
        s.f_c = p.n_c - s.b_ac - s.b_bc - s.g;
        if (p.n_a < 1 || p.n_b < 1) throw ConfigError("config: nA and nB must be >= 1");
        if (sc == "tripartite_triple" && p.n_c < 1) throw ConfigError("config: nC must be >= 1");
        p.shape = s;
        const int n = s.total();
        if (n > lim.max_dense_qubits) {
            throw ResourceError("config: " + std::to_string(n) + " qubits exceeds the dense cap");
        }
        lim.require_spectrum(n, "experiment");
        p.initial = build_normal_state(s, Filler::plus, lim);
        LeadingArgs la{sc == "tripartite_pair" ? Scenario::tripartite_pair : Scenario::tripartite_triple,
                       p.n_a, p.n_b, p.n_c, 0, s.g, s.b_ab, s.b_ac, s.b_bc};
        p.leading_y = leading_average_y(la).y;
        if (sc == "tripartite_pair" && p.n_a >= 2 && p.n_b >= 2) {
            ScenarioDims d{Scenario::tripartite_pair, bits(p.n_a), bits(p.n_b), bits(p.n_c), 1,
                           bits(s.b_ab), bits(s.b_ac), bits(s.b_bc), bits(s.g)};
            p.exact_y = to_double(exact_average_y(d));
        }
        return p;
    }

    if (sc == "nonstab_bell" || sc == "nonstab_spectrum") {
        if (cfg.k < 1) throw ConfigError("config: k must be >= 1");
        p.e = cfg.k;
        p.n_a = resolve_size(cfg.nA, cfg.fA, cfg.k, "nA", "fA");
        p.n_b = cfg.k;
        if (cfg.nB && *cfg.nB != cfg.k) throw ConfigError("config: nonstab scenarios have nB == k");
        const int n = p.n_a + p.n_b;
        if (n > lim.max_dense_qubits) {
            throw ResourceError("config: " + std::to_string(n) + " qubits exceeds the dense cap");
        }
        lim.require_spectrum(n, "experiment");
        NonstabSpec spec;
        if (sc == "nonstab_bell") {
            spec.kind = NonstabSpec::Kind::imperfect_bell;
            spec.theta = cfg.theta;
        } else {
            spec.kind = NonstabSpec::Kind::spectrum;
            try {
                spec.law = lambda_law_from_string(cfg.lambda_law);
            } catch (const std::invalid_argument &e) {
                throw ConfigError(std::string("config: ") + e.what());
            }
        }
        try {
            p.nonstab = build_nonstab_state(spec, cfg.k, p.n_a - cfg.k, lim);
        } catch (const DomainError &e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
        p.init_m2 = detail::m2_of(y_lin(*p.nonstab, lim));
        if (sc == "nonstab_bell" && std::abs(cfg.theta - std::numbers::pi / 4) < 1e-12) {
            if (p.n_a >= 2) {
                p.exact_y = to_double(exact_average_y({Scenario::bipartite_haar, bits(p.n_a), 1, 1, bits(p.e)}));
            }
            p.leading_y = leading_average_y({Scenario::bipartite_haar, p.n_a, p.n_b, 0, p.e}).y;
        }
        return p;
    }

    // unitary_sre and tcount_report act on nA qubits.
    p.n_a = cfg.nA.value_or(0);
    if (p.n_a < 1) throw ConfigError("config: nA must be >= 1");
    lim.require_spectrum(2 * p.n_a, "experiment");
    if (sc == "unitary_sre") {
        p.e = p.n_a;
        p.n_b = p.n_a;
        if (p.n_a >= 2) {
            p.exact_y =
                to_double(exact_average_y({Scenario::bipartite_haar, bits(p.n_a), 1, 1, bits(p.n_a)}));
        }
        p.leading_y = leading_average_y({Scenario::bipartite_haar, p.n_a, p.n_a, 0, p.n_a}).y;
    } else if (cfg.k < 0) {
        throw ConfigError("config: k (T count) must be non-negative");
    }
    return p;
}

/// Per-sample outputs of one depth (or the single unitary stage).
struct SampleSeries {
    std::vector<double> y;
    std::vector<double> m2;
    std::vector<double> extra;
};

namespace detail {

/// Random local Cliffords on each listed region, applied to the dense state.
inline void prescramble_dense(DenseState &s, const std::vector<std::vector<size_t>> &regions, Rng &rng,
                              const Limits &lim) {
    for (const auto &r : regions) {
        if (r.empty()) continue;
        auto c = random_clifford(r.size(), rng).to_unitary(lim);
        apply_on_qubits_inplace(s, c, std::span<const size_t>(r));
    }
}

}  // namespace detail

/// Y_lin per sample for each stage; stage = depth index for brickwork, else 0.
inline std::vector<SampleSeries> run_samples(const ExperimentPlan &p) {
    const auto &cfg = p.cfg;
    const auto &sc = cfg.scenario;
    const Limits &lim = cfg.limits;
    const size_t ns = static_cast<size_t>(cfg.samples);
    const size_t stages = sc == "brickwork" ? cfg.depths.size() : 1;
    std::vector<SampleSeries> out(stages);
    for (auto &s : out) {
        s.y.assign(ns, 0);
        s.m2.assign(ns, 0);
        s.extra.assign(ns, 0);
    }
    const auto &a = p.initial.a;
    const auto &b = p.initial.b;
    const auto &c = p.initial.c;
    std::vector<size_t> na_region(static_cast<size_t>(p.n_a)), nb_region(static_cast<size_t>(p.n_b));
    for (int q = 0; q < p.n_a; q++) na_region[q] = q;
    for (int q = 0; q < p.n_b; q++) nb_region[q] = p.n_a + q;

    auto body = [&](size_t i) {
        Rng rng(derive_seed(cfg.master_seed, i));
        auto record = [&](size_t stage, double y) {
            out[stage].y[i] = y;
            out[stage].m2[i] = detail::m2_of(y);
        };
        if (sc == "unitary_sre") {
            auto u = haar_unitary(p.n_a, rng, lim);
            double h2 = unitary_sre(u, 2, lim);
            out[0].y[i] = 1 - std::exp2(-h2);
            out[0].m2[i] = h2;
            return;
        }
        if (sc == "tcount_report") {
            auto u = random_clifford_t(static_cast<size_t>(p.n_a), cfg.k, rng, lim);
            auto br = t_count_bounds(u, lim);
            out[0].y[i] = 1 - std::exp2(-br.h2);
            out[0].m2[i] = br.h0;
            out[0].extra[i] = br.nullity;
            return;
        }
        if (sc == "nonstab_bell" || sc == "nonstab_spectrum") {
            DenseState s = *p.nonstab;
            if (cfg.prescramble) detail::prescramble_dense(s, {na_region, nb_region}, rng, lim);
            s = detail::apply_region(s, haar_unitary(p.n_a, rng, lim), na_region);
            record(0, y_lin(s, lim));
            return;
        }
        if (p.coset) {
            const size_t n = p.initial.group.num_qubits();
            StabilizerGroup g = p.initial.group;
            if (cfg.prescramble) {
                CliffordAction act = CliffordAction::identity(n);
                act = detail::embed_action(random_clifford(a.size(), rng), a, n, act);
                if (!b.empty()) act = detail::embed_action(random_clifford(b.size(), rng), b, n, act);
                g = act.conjugate(g);
            }
            auto decomp = coset_decompose(g, a);
            record(0, coset_reduced_y(decomp, haar_unitary(p.n_a, rng, lim), lim));
            return;
        }
        DenseState s = *p.initial.state;
        if (cfg.prescramble) detail::prescramble_dense(s, {a, b, c}, rng, lim);
        if (sc == "brickwork") {
            for (size_t d = 0; d < cfg.depths.size(); d++) {
                Rng gate_rng(derive_seed(cfg.master_seed, i, 1 + static_cast<uint64_t>(d)));
                DenseState t = brickwork_apply(s, std::span<const size_t>(a), cfg.depths[d],
                                               static_cast<size_t>(cfg.gate_span), gate_rng);
                record(d, y_lin(t, lim));
            }
            return;
        }
        s = detail::apply_region(s, haar_unitary(static_cast<int>(a.size()), rng, lim), a);
        if (sc == "bipartite_product" || sc == "tripartite_pair" || sc == "tripartite_triple") {
            s = detail::apply_region(s, haar_unitary(static_cast<int>(b.size()), rng, lim), b);
        }
        if (sc == "tripartite_triple") {
            s = detail::apply_region(s, haar_unitary(static_cast<int>(c.size()), rng, lim), c);
        }
        record(0, y_lin(s, lim));
    };
    detail::parallel_for(ns, cfg.workers, body);
    return out;
}

inline std::vector<ResultRecord> run_experiment(const ExperimentConfig &cfg) {
    ExperimentPlan p = plan_experiment(cfg);
    auto series = run_samples(p);
    const auto &sc = cfg.scenario;
    std::vector<ResultRecord> out;
    for (size_t stage = 0; stage < series.size(); stage++) {
        ResultRecord r;
        r.scenario = sc;
        r.samples = cfg.samples;
        r.master_seed = cfg.master_seed;
        r.estimator = cfg.estimator;
        r.prescramble = cfg.prescramble;
        r.nA = p.n_a;
        if (sc != "unitary_sre" && sc != "tcount_report") {
            r.nB = p.n_b;
        }
        if (sc == "tripartite_pair" || sc == "tripartite_triple") {
            r.nC = p.n_c;
            r.g = p.shape.g;
            r.bAB = p.shape.b_ab;
            r.bAC = p.shape.b_ac;
            r.bBC = p.shape.b_bc;
            r.fA = p.shape.f_a;
            r.fB = p.shape.f_b;
            r.fC = p.shape.f_c;
        } else if (sc == "bipartite_haar" || sc == "bipartite_product" || sc == "brickwork") {
            r.E = p.e;
            r.fA = p.n_a - p.e;
            r.fB = p.n_b - p.e;
        } else if (sc == "nonstab_bell" || sc == "nonstab_spectrum") {
            r.E = p.e;
            r.fA = p.n_a - p.e;
            r.fB = 0;
            r.k = cfg.k;
            if (sc == "nonstab_bell") r.theta = cfg.theta;
            else r.lambda_law = cfg.lambda_law;
        } else if (sc == "unitary_sre") {
            r.E = p.e;
        } else {
            r.k = cfg.k;
        }
        if (sc == "brickwork") {
            r.depth = cfg.depths[stage];
            r.gate_span = cfg.gate_span;
        }
        auto ys = detail::stats(series[stage].y);
        auto ms = detail::stats(series[stage].m2);
        r.mean_y_lin = ys.mean;
        r.stderr_y_lin = ys.stderr_;
        r.mean_m2 = ms.mean;
        r.stderr_m2 = ms.stderr_;
        if (p.init_m2) {
            r.init_m2 = *p.init_m2;
            r.delta_m2_mean = ms.mean - *p.init_m2;
            r.delta_m2_stderr = ms.stderr_;
        }
        if (sc == "tcount_report") {
            auto nu = detail::stats(series[stage].extra);
            r.delta_m2_mean = nu.mean;
            r.delta_m2_stderr = nu.stderr_;
        }
        r.exact_y = p.exact_y;
        r.leading_y = p.leading_y;
        if (r.exact_y && r.stderr_y_lin > 0) {
            r.z_score = (r.mean_y_lin - *r.exact_y) / r.stderr_y_lin;
        }
        out.push_back(std::move(r));
    }
    return out;
}

/// Raw per-sample Y values (first stage), for estimator equivalence checks.
inline std::vector<double> sample_values(const ExperimentConfig &cfg) {
    return run_samples(plan_experiment(cfg))[0].y;
}

struct ComparisonRow {
    size_t index = 0;
    std::string scenario;
    double mean = 0;
    double exact = 0;
    double z = 0;
    double gap = 0;
    bool pass = false;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    bool all_pass = true;
};

/// Pass iff |z| <= z_max and |mean - exact| <= gap_max for every row.
inline ComparisonReport compare_mc_exact(const std::vector<ResultRecord> &records, double z_max = 4.0,
                                         double gap_max = 0.01) {
    ComparisonReport rep;
    for (size_t i = 0; i < records.size(); i++) {
        const auto &r = records[i];
        if (!r.exact_y) {
            throw ConfigError("compare: record " + std::to_string(i) + " (" + r.scenario + ") has no exact_y");
        }
        ComparisonRow row;
        row.index = i;
        row.scenario = r.scenario;
        row.mean = r.mean_y_lin;
        row.exact = *r.exact_y;
        row.gap = std::abs(r.mean_y_lin - *r.exact_y);
        if (r.stderr_y_lin > 0) {
            row.z = (r.mean_y_lin - *r.exact_y) / r.stderr_y_lin;
        } else {
            row.z = row.gap == 0 ? 0.0 : std::numeric_limits<double>::infinity();
        }
        row.pass = std::abs(row.z) <= z_max && row.gap <= gap_max;
        rep.all_pass = rep.all_pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace stabmagic
