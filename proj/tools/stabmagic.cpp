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

// stabmagic command-line driver.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "stabmagic/stabmagic.hpp"

using namespace stabmagic;

namespace {

constexpr int kExitCompare = 2;
constexpr int kExitConfig = 3;
constexpr int kExitResource = 4;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

nlohmann::json read_json_file(const std::string &path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError("'" + path + "': " + e.what());
    }
}

// "dA=8,dE=2" -> ScenarioDims. Keys are case-insensitive, with or without an underscore.
ScenarioDims parse_dims(Scenario s, const std::string &text) {
    ScenarioDims d;
    d.scenario = s;
    std::map<std::string, int64_t *> slots = {{"da", &d.d_a},   {"db", &d.d_b},   {"dc", &d.d_c},
                                              {"de", &d.d_e},   {"dab", &d.d_ab}, {"dac", &d.d_ac},
                                              {"dbc", &d.d_bc}, {"dg", &d.d_g}};
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("dims: expected key=value, got '" + item + "'");
        std::string key;
        for (char c : item.substr(0, eq)) {
            if (c != '_') key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
        auto it = slots.find(key);
        if (it == slots.end()) throw ConfigError("dims: unknown key '" + item.substr(0, eq) + "'");
        try {
            *it->second = std::stoll(item.substr(eq + 1));
        } catch (const std::exception &) {
            throw ConfigError("dims: bad value in '" + item + "'");
        }
    }
    return d;
}

int log2_exact(int64_t d) {
    if (d < 1 || (d & (d - 1))) throw ConfigError("dims: " + std::to_string(d) + " is not a power of two");
    return std::countr_zero(static_cast<uint64_t>(d));
}

DenseUnitary load_unitary(const std::string &gate, const std::string &matrix_path) {
    if (!gate.empty() && !matrix_path.empty()) throw ConfigError("give either --gate or --matrix");
    if (!gate.empty()) {
        try {
            return gates::by_name(gate);
        } catch (const std::invalid_argument &e) {
            throw ConfigError(e.what());
        }
    }
    if (matrix_path.empty()) throw ConfigError("need --gate or --matrix");
    // rows of entries; an entry is a number or [re, im]
    auto j = read_json_file(matrix_path);
    if (!j.is_array() || j.empty()) throw ConfigError("matrix: expected a non-empty array of rows");
    const size_t d = j.size();
    if (d & (d - 1)) throw ConfigError("matrix: dimension is not a power of two");
    Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (size_t r = 0; r < d; r++) {
        if (!j[r].is_array() || j[r].size() != d) throw ConfigError("matrix: row " + std::to_string(r) + " has wrong size");
        for (size_t c = 0; c < d; c++) {
            const auto &e = j[r][c];
            cplx v;
            if (e.is_number()) {
                v = e.get<double>();
            } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
                v = cplx(e[0].get<double>(), e[1].get<double>());
            } else {
                throw ConfigError("matrix: bad entry at (" + std::to_string(r) + "," + std::to_string(c) + ")");
            }
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }
    }
    return {std::countr_zero(d), std::move(m)};
}

double parse_alpha(const std::string &s) {
    if (s == "inf" || s == "infinity") return alpha_infinity;
    try {
        size_t pos = 0;
        double a = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return a;
    } catch (const std::exception &) {
        throw ConfigError("alpha: bad value '" + s + "'");
    }
}

int cmd_exact(const std::string &scenario, const std::string &dims_text) {
    Scenario s;
    try {
        s = scenario_from_string(scenario);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    ScenarioDims d = parse_dims(s, dims_text);
    LeadingArgs la;
    la.scenario = s;
    la.n_a = log2_exact(d.d_a);
    la.n_b = log2_exact(d.d_b);
    la.n_c = log2_exact(d.d_c);
    la.e = log2_exact(d.d_e);
    la.g = log2_exact(d.d_g);
    la.b_ab = log2_exact(d.d_ab);
    la.b_ac = log2_exact(d.d_ac);
    la.b_bc = log2_exact(d.d_bc);
    std::printf("scenario: %s\n", scenario.c_str());
    if (s != Scenario::tripartite_triple) {
        Rational y = exact_average_y(d);
        std::printf("exact_y: %s\n", y.str().c_str());
        std::printf("exact_y_float: %s\n", fmt(to_double(y)).c_str());
        double gap = to_double(1 - y);
        std::printf("exact_m2: %s\n", fmt(gap > 0 ? -std::log2(gap) : INFINITY).c_str());
    }
    auto lead = leading_average_y(la);
    std::printf("leading_y: %s\n", fmt(lead.y).c_str());
    std::printf("leading_m2: %s\n", fmt(lead.m2).c_str());
    if (lead.unreliable) std::printf("warning: leading-order bracket correction exceeds 0.5; value is unreliable\n");
    return 0;
}

int cmd_mc(const std::string &config_path, const std::string &out, const std::string &format, int workers) {
    auto cfg = config_from_json(read_json_file(config_path));
    if (workers > 0) cfg.workers = workers;
    auto records = run_experiment(cfg);
    RecordFormat f;
    if (format == "csv") {
        f = RecordFormat::csv;
    } else if (format == "json") {
        f = RecordFormat::json;
    } else {
        throw ConfigError("format must be csv or json");
    }
    if (out.empty() || out == "-") {
        if (f == RecordFormat::csv) std::cout << records_to_csv(records);
        else std::cout << records_to_json(records).dump(2) << "\n";
    } else {
        write_records(records, out, f);
        std::fprintf(stderr, "wrote %zu record(s) to %s\n", records.size(), out.c_str());
    }
    return 0;
}

int cmd_compare(const std::string &in, double z_max, double gap_max) {
    auto rep = compare_mc_exact(read_records(in), z_max, gap_max);
    std::printf("%-5s %-18s %-14s %-14s %-10s %-10s %s\n", "row", "scenario", "mean_y_lin", "exact_y", "z", "gap",
                "verdict");
    for (const auto &r : rep.rows) {
        std::printf("%-5zu %-18s %-14s %-14s %-10s %-10s %s\n", r.index, r.scenario.c_str(), fmt(r.mean).c_str(),
                    fmt(r.exact).c_str(), fmt(r.z).c_str(), fmt(r.gap).c_str(), r.pass ? "PASS" : "FAIL");
    }
    std::printf("%s\n", rep.all_pass ? "all rows pass" : "comparison failed");
    return rep.all_pass ? 0 : kExitCompare;
}

int cmd_unitary(const std::string &gate, const std::string &matrix, const std::string &alpha_text) {
    auto u = load_unitary(gate, matrix);
    double alpha = parse_alpha(alpha_text);
    auto both = unitary_sre_both(u, alpha);
    double h = unitary_sre(u, alpha);
    std::printf("m: %d\n", u.m);
    std::printf("alpha: %s\n", alpha_text.c_str());
    std::printf("H_alpha: %s\n", fmt(h).c_str());
    std::printf("M_alpha(choi): %s\n", fmt(both.choi).c_str());
    return 0;
}

int cmd_bounds(const std::string &gate, const std::string &matrix) {
    auto u = load_unitary(gate, matrix);
    auto b = t_count_bounds(u);
    std::printf("m: %d\n", u.m);
    std::printf("H2: %s\n", fmt(b.h2).c_str());
    std::printf("H0: %s\n", fmt(b.h0).c_str());
    std::printf("nullity: %d\n", b.nullity);
    std::printf("t_count_lower_bound: %d\n", b.t_lower);
    return 0;
}

int cmd_decompose(const std::string &state, int cut) {
    NormalState ns;
    try {
        ns = named_state(state);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    const int n = static_cast<int>(ns.group.num_qubits());
    if (cut < 0 || cut > n) throw ConfigError("cut must lie in [0, " + std::to_string(n) + "]");
    std::vector<size_t> a(static_cast<size_t>(cut));
    std::iota(a.begin(), a.end(), size_t{0});
    auto d = coset_decompose(ns.group, a);
    std::printf("state: %s (%d qubits), cut %d|%d\n", state.c_str(), n, cut, n - cut);
    std::printf("E: %d\n", d.entanglement);
    std::printf("S_A:");
    for (const auto &g : d.s_a.generators()) std::printf(" %s", g.str().c_str());
    std::printf("\nS_B:");
    for (const auto &g : d.s_b.generators()) std::printf(" %s", g.str().c_str());
    std::printf("\n");
    const bool list = d.num_cosets() <= 64 && d.s_a.num_generators() + d.s_b.num_generators() <= 8;
    for (size_t k = 0; k < d.num_cosets(); k++) {
        auto [ra, rb] = d.coset(k);
        std::printf("coset %zu: rep %s | %s", k, ra.str().c_str(), rb.str().c_str());
        if (list) {
            std::printf(" :");
            for (const auto &p : d.coset_elements(k)) std::printf(" %s", p.str().c_str());
        }
        std::printf("\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"stabmagic: stabilizer entanglement and magic injection workbench"};
    app.require_subcommand(1);

    std::string scenario, dims;
    auto *exact = app.add_subcommand("exact", "Exact and leading-order Haar averages of Y_lin");
    exact->add_option("--scenario", scenario, "bipartite_haar | bipartite_product | tripartite_pair | tripartite_triple")
        ->required();
    exact->add_option("--dims", dims, "Comma list of dimensions, e.g. dA=8,dE=2 (keys dA dB dC dE dAB dAC dBC dg)")
        ->required();

    std::string config, out, format = "csv";
    int workers = 0;
    auto *mc = app.add_subcommand("mc", "Run a Monte Carlo experiment from a JSON config");
    mc->add_option("--config", config, "Experiment config (JSON)")->required();
    mc->add_option("--out", out, "Output path; '-' or omitted writes to stdout");
    mc->add_option("--format", format, "csv or json");
    mc->add_option("--workers", workers, "Override the worker count");

    std::string in;
    double z_max = 4, gap_max = 0.01;
    auto *compare = app.add_subcommand("compare", "Compare Monte Carlo records with exact references");
    compare->add_option("--in", in, "Records file (CSV or JSON)")->required();
    compare->add_option("--z-max", z_max, "Largest accepted |z|");
    compare->add_option("--gap-max", gap_max, "Largest accepted |mean - exact|");

    std::string gate, matrix, alpha = "2";
    auto *unitary = app.add_subcommand("unitary", "Unitary stabilizer Renyi entropy");
    unitary->add_option("--gate", gate, "Named gate: I T S H CZ CS CCZ CX Tn:<n>");
    unitary->add_option("--matrix", matrix, "JSON matrix file");
    unitary->add_option("--alpha", alpha, "Order: non-negative integer or inf");

    auto *bounds = app.add_subcommand("bounds", "T-count lower bounds H2 <= H0 <= nullity");
    bounds->add_option("--gate", gate, "Named gate");
    bounds->add_option("--matrix", matrix, "JSON matrix file");

    std::string state;
    int cut = 0;
    auto *decompose = app.add_subcommand("decompose", "Coset decomposition of a stabilizer state");
    decompose->add_option("--state", state, "ghz:n | bell:k | normal:fA,E,fB | tri:g,bAB,bAC,bBC,fA,fB,fC")->required();
    decompose->add_option("--cut", cut, "Size of A (the first qubits)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*exact) return cmd_exact(scenario, dims);
        if (*mc) return cmd_mc(config, out, format, workers);
        if (*compare) return cmd_compare(in, z_max, gap_max);
        if (*unitary) return cmd_unitary(gate, matrix, alpha);
        if (*bounds) return cmd_bounds(gate, matrix);
        if (*decompose) return cmd_decompose(state, cut);
    } catch (const ResourceError &e) {
        std::fprintf(stderr, "resource limit: %s\n", e.what());
        return kExitResource;
    } catch (const ConfigError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const DomainError &e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return kExitConfig;
    } catch (const DimensionError &e) {
        std::fprintf(stderr, "dimension error: %s\n", e.what());
        return kExitConfig;
    } catch (const InvalidGroupError &e) {
        std::fprintf(stderr, "invalid group: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
