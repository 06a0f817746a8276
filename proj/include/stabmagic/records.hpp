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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "stabmagic/errors.hpp"

namespace stabmagic {

/// One aggregated Monte Carlo row: config echo, sample statistics and references.
struct ResultRecord {
    std::string scenario;
    std::optional<int> nA, nB, nC, E, g, bAB, bAC, bBC, fA, fB, fC, depth, gate_span;
    std::optional<double> theta;
    std::optional<std::string> lambda_law;
    std::optional<int> k;
    int samples = 0;
    uint64_t master_seed = 0;
    std::string estimator = "brute";
    bool prescramble = false;
    double mean_y_lin = 0, stderr_y_lin = 0, mean_m2 = 0, stderr_m2 = 0;
    std::optional<double> init_m2, delta_m2_mean, delta_m2_stderr, exact_y, leading_y, z_score;

    friend bool operator==(const ResultRecord &, const ResultRecord &) = default;
};

inline const std::vector<std::string> &record_columns() {
    static const std::vector<std::string> cols = {
        "scenario",   "nA",          "nB",           "nC",          "E",           "g",
        "bAB",        "bAC",         "bBC",          "fA",          "fB",          "fC",
        "depth",      "gate_span",   "theta",        "lambda_law",  "k",           "samples",
        "master_seed", "estimator",  "prescramble",  "mean_y_lin",  "stderr_y_lin", "mean_m2",
        "stderr_m2",  "init_m2",     "delta_m2_mean", "delta_m2_stderr", "exact_y", "leading_y",
        "z_score"};
    return cols;
}

namespace detail {

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double parse_double(const std::string &s, const std::string &col) {
    char *end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw ConfigError("records: bad number '" + s + "' in column " + col);
    }
    return v;
}

inline long long parse_int(const std::string &s, const std::string &col) {
    char *end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw ConfigError("records: bad integer '" + s + "' in column " + col);
    }
    return v;
}

/// Visits every column of a record with (name, field) in header order.
template <typename Rec, typename F>
void for_each_field(Rec &r, F &&f) {
    f("scenario", r.scenario);
    f("nA", r.nA);
    f("nB", r.nB);
    f("nC", r.nC);
    f("E", r.E);
    f("g", r.g);
    f("bAB", r.bAB);
    f("bAC", r.bAC);
    f("bBC", r.bBC);
    f("fA", r.fA);
    f("fB", r.fB);
    f("fC", r.fC);
    f("depth", r.depth);
    f("gate_span", r.gate_span);
    f("theta", r.theta);
    f("lambda_law", r.lambda_law);
    f("k", r.k);
    f("samples", r.samples);
    f("master_seed", r.master_seed);
    f("estimator", r.estimator);
    f("prescramble", r.prescramble);
    f("mean_y_lin", r.mean_y_lin);
    f("stderr_y_lin", r.stderr_y_lin);
    f("mean_m2", r.mean_m2);
    f("stderr_m2", r.stderr_m2);
    f("init_m2", r.init_m2);
    f("delta_m2_mean", r.delta_m2_mean);
    f("delta_m2_stderr", r.delta_m2_stderr);
    f("exact_y", r.exact_y);
    f("leading_y", r.leading_y);
    f("z_score", r.z_score);
}

struct CellWriter {
    std::string operator()(const std::string &v) const {
        return v;
    }
    std::string operator()(int v) const {
        return std::to_string(v);
    }
    std::string operator()(uint64_t v) const {
        return std::to_string(v);
    }
    std::string operator()(bool v) const {
        return v ? "true" : "false";
    }
    std::string operator()(double v) const {
        return fmt_double(v);
    }
    template <typename T>
    std::string operator()(const std::optional<T> &v) const {
        return v ? (*this)(*v) : std::string();
    }
};

struct CellReader {
    const std::string &col;
    void read(const std::string &s, std::string &v) const {
        v = s;
    }
    void read(const std::string &s, int &v) const {
        v = static_cast<int>(parse_int(s, col));
    }
    void read(const std::string &s, uint64_t &v) const {
        char *end = nullptr;
        v = std::strtoull(s.c_str(), &end, 10);
        if (s.empty() || end != s.c_str() + s.size()) {
            throw ConfigError("records: bad unsigned '" + s + "' in column " + col);
        }
    }
    void read(const std::string &s, bool &v) const {
        if (s == "true" || s == "1") {
            v = true;
        } else if (s == "false" || s == "0") {
            v = false;
        } else {
            throw ConfigError("records: bad boolean '" + s + "' in column " + col);
        }
    }
    void read(const std::string &s, double &v) const {
        v = parse_double(s, col);
    }
    template <typename T>
    void read(const std::string &s, std::optional<T> &v) const {
        if (s.empty()) {
            v.reset();
            return;
        }
        T t{};
        read(s, t);
        v = t;
    }
};

inline nlohmann::json json_double(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

inline double json_to_double(const nlohmann::json &j, const std::string &col) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        return parse_double(j.get<std::string>(), col);
    }
    throw ConfigError("records: column " + col + " is not a number");
}

}  // namespace detail

inline std::string records_to_csv(const std::vector<ResultRecord> &records) {
    std::string out;
    const auto &cols = record_columns();
    for (size_t c = 0; c < cols.size(); c++) {
        out += (c ? "," : "") + cols[c];
    }
    out += "\n";
    for (const auto &r : records) {
        bool first = true;
        detail::for_each_field(r, [&](const char *, const auto &field) {
            out += (first ? "" : ",") + detail::CellWriter{}(field);
            first = false;
        });
        out += "\n";
    }
    return out;
}

inline std::vector<ResultRecord> records_from_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError("records: empty CSV");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto &cols = record_columns();
    {
        std::string expect;
        for (size_t c = 0; c < cols.size(); c++) {
            expect += (c ? "," : "") + cols[c];
        }
        if (line != expect) {
            throw ConfigError("records: CSV header does not match the expected column set");
        }
    }
    std::vector<ResultRecord> out;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        if (line.back() == ',') {
            cells.emplace_back();
        }
        if (cells.size() != cols.size()) {
            throw ConfigError("records: line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                              " cells, expected " + std::to_string(cols.size()));
        }
        ResultRecord r;
        size_t idx = 0;
        detail::for_each_field(r, [&](const char *name, auto &field) {
            std::string col = name;
            detail::CellReader{col}.read(cells[idx++], field);
        });
        out.push_back(std::move(r));
    }
    return out;
}

inline nlohmann::json records_to_json(const std::vector<ResultRecord> &records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &r : records) {
        nlohmann::json obj = nlohmann::json::object();
        detail::for_each_field(r, [&](const char *name, const auto &field) {
            using T = std::decay_t<decltype(field)>;
            if constexpr (std::is_same_v<T, double>) {
                obj[name] = detail::json_double(field);
            } else if constexpr (std::is_same_v<T, std::optional<double>>) {
                obj[name] = field ? detail::json_double(*field) : nlohmann::json(nullptr);
            } else if constexpr (std::is_same_v<T, std::optional<int>> ||
                                 std::is_same_v<T, std::optional<std::string>>) {
                obj[name] = field ? nlohmann::json(*field) : nlohmann::json(nullptr);
            } else {
                obj[name] = field;
            }
        });
        arr.push_back(std::move(obj));
    }
    return arr;
}

inline std::vector<ResultRecord> records_from_json(const nlohmann::json &arr) {
    if (!arr.is_array()) {
        throw ConfigError("records: JSON root must be an array");
    }
    std::vector<ResultRecord> out;
    for (const auto &obj : arr) {
        if (!obj.is_object()) {
            throw ConfigError("records: JSON array entries must be objects");
        }
        ResultRecord r;
        detail::for_each_field(r, [&](const char *name, auto &field) {
            using T = std::decay_t<decltype(field)>;
            std::string col = name;
            if (!obj.contains(col)) {
                throw ConfigError("records: JSON object missing field " + col);
            }
            const auto &j = obj.at(col);
            try {
                if constexpr (std::is_same_v<T, double>) {
                    field = detail::json_to_double(j, col);
                } else if constexpr (std::is_same_v<T, std::optional<double>>) {
                    if (j.is_null()) field.reset();
                    else field = detail::json_to_double(j, col);
                } else if constexpr (std::is_same_v<T, std::optional<int>> ||
                                     std::is_same_v<T, std::optional<std::string>>) {
                    if (j.is_null()) field.reset();
                    else field = j.get<typename T::value_type>();
                } else {
                    field = j.get<T>();
                }
            } catch (const nlohmann::json::exception &e) {
                throw ConfigError("records: field " + col + ": " + e.what());
            }
        });
        out.push_back(std::move(r));
    }
    return out;
}

enum class RecordFormat { csv, json };

inline void write_records(const std::vector<ResultRecord> &records, const std::string &path,
                          RecordFormat format = RecordFormat::csv) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("write_records: cannot open '" + path + "' for writing");
    }
    if (format == RecordFormat::csv) {
        f << records_to_csv(records);
    } else {
        f << records_to_json(records).dump(2) << "\n";
    }
    if (!f) {
        throw std::runtime_error("write_records: write to '" + path + "' failed");
    }
}

/// Reads CSV or JSON; the format is taken from the first non-blank character.
inline std::vector<ResultRecord> read_records(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("read_records: cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << f.rdbuf();
    std::string text = ss.str();
    auto pos = text.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && text[pos] == '[') {
        try {
            return records_from_json(nlohmann::json::parse(text));
        } catch (const nlohmann::json::parse_error &e) {
            throw ConfigError("read_records: '" + path + "': " + e.what());
        }
    }
    return records_from_csv(text);
}

}  // namespace stabmagic
