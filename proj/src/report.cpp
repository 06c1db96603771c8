// Copyright 2026 The SBQS Authors
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

#include "sbqs/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sbqs/errors.hpp"

namespace sbqs {

namespace {

using Field = std::optional<double> ResultRow::*;

const std::array<Field, 9> kValueFields = {
    &ResultRow::fidelity_sbqs_vs_ground, &ResultRow::fidelity_exact_ite_vs_ground,
    &ResultRow::bures_sbqs_vs_exact_ite, &ResultRow::success_prob_formula,
    &ResultRow::success_prob_faithful,   &ResultRow::success_prob_empirical,
    &ResultRow::energy_sbqs,             &ResultRow::bound_eq15,
    &ResultRow::fidelity_bound_sm};

std::string number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string quote(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(s);
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::vector<std::string>> split_records(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            record.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
                ++i;
            }
            record.push_back(std::move(field));
            field.clear();
            records.push_back(std::move(record));
            record.clear();
            any = false;
        } else {
            field += c;
            any = true;
        }
    }
    if (quoted) {
        throw ConfigError("csv: unterminated quoted field");
    }
    if (any) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    return records;
}

double parse_number(const std::string &s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        throw ConfigError("csv: not a number: '" + s + "'");
    }
    if (used != s.size()) {
        throw ConfigError("csv: not a number: '" + s + "'");
    }
    return v;
}

nlohmann::json optional_json(const std::optional<double> &v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json probability_json(const ProbabilityEstimate &p) {
    return {{"value", p.value}, {"log10", p.log10_value}, {"clamped", p.clamped}};
}

nlohmann::json report_json(const BoundsReport &r) {
    return {{"l", r.terms},
            {"beta", r.beta},
            {"N", r.steps},
            {"h", r.h_max},
            {"d", r.dimension},
            {"gap", r.gap},
            {"F0", r.f0},
            {"norm_H", r.norm_h},
            {"epsilon", r.epsilon},
            {"degenerate", r.degenerate},
            {"trotter_error", r.trotter_error},
            {"sim_distance_bound", r.sim_distance_bound},
            {"fidelity_lower_bound", optional_json(r.fidelity_lower_bound_main)},
            {"fidelity_lower_bound_sm", optional_json(r.fidelity_lower_bound_sm)},
            {"distance_upper_bound", optional_json(r.distance_upper_bound)},
            {"error_budget", optional_json(r.error_budget)},
            {"beta_star", optional_json(r.beta_star)},
            {"N_star", optional_json(r.n_star)},
            {"p_star", r.p_star ? probability_json(*r.p_star) : nlohmann::json(nullptr)},
            {"success_probability",
             {{"A", probability_json(r.strategyA_probability)},
              {"B-global", probability_json(r.strategyB_global_probability)},
              {"B-local", probability_json(r.strategyB_local_probability)},
              {"B-local-alt", probability_json(r.strategyB_local_probability_alt)}}},
            {"notes", r.notes}};
}

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << content;
    if (!out) {
        throw Error("write failed for " + path.string());
    }
}

}  // namespace

const std::vector<std::string> &csv_columns() {
    static const std::vector<std::string> cols = {
        "beta",          "fidelity_sbqs_vs_ground", "fidelity_exact_ite_vs_ground", "bures_sbqs_vs_exact_ite",
        "success_prob_formula", "success_prob_faithful", "success_prob_empirical", "energy_sbqs",
        "bound_eq15",    "fidelity_bound_sm"};
    return cols;
}

std::string format_csv(const std::vector<ResultRow> &rows) {
    const bool with_dim = std::any_of(rows.begin(), rows.end(), [](const auto &r) { return r.ground_space_dim > 1; });
    const bool with_status = std::any_of(rows.begin(), rows.end(), [](const auto &r) { return !r.status.empty(); });
    std::ostringstream out;
    auto header = csv_columns();
    if (with_dim) {
        header.push_back("ground_space_dim");
    }
    if (with_status) {
        header.push_back("status");
    }
    for (std::size_t k = 0; k < header.size(); ++k) {
        out << (k ? "," : "") << header[k];
    }
    out << '\n';
    for (const auto &r : rows) {
        out << number(r.beta);
        for (Field f : kValueFields) {
            out << ',';
            if (const auto &v = r.*f; v) {
                out << number(*v);
            }
        }
        if (with_dim) {
            out << ',' << r.ground_space_dim;
        }
        if (with_status) {
            out << ',' << quote(r.status);
        }
        out << '\n';
    }
    return out.str();
}

void emit_csv(const std::vector<ResultRow> &rows, const std::filesystem::path &path) {
    write_file(path, format_csv(rows));
}

std::vector<ResultRow> parse_csv(std::string_view text) {
    auto records = split_records(text);
    if (records.empty()) {
        throw ConfigError("csv: empty input");
    }
    const auto &header = records.front();
    const auto &cols = csv_columns();
    if (header.size() < cols.size() || !std::equal(cols.begin(), cols.end(), header.begin())) {
        throw ConfigError("csv: unexpected header");
    }
    int dim_col = -1;
    int status_col = -1;
    for (std::size_t k = cols.size(); k < header.size(); ++k) {
        if (header[k] == "ground_space_dim") {
            dim_col = static_cast<int>(k);
        } else if (header[k] == "status") {
            status_col = static_cast<int>(k);
        } else {
            throw ConfigError("csv: unknown column '" + header[k] + "'");
        }
    }
    std::vector<ResultRow> rows;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto &rec = records[i];
        if (rec.size() != header.size()) {
            throw ConfigError("csv: record " + std::to_string(i) + " has " + std::to_string(rec.size()) +
                              " fields, expected " + std::to_string(header.size()));
        }
        ResultRow r;
        r.beta = parse_number(rec[0]);
        for (std::size_t k = 0; k < kValueFields.size(); ++k) {
            if (!rec[k + 1].empty()) {
                r.*kValueFields[k] = parse_number(rec[k + 1]);
            }
        }
        if (dim_col >= 0) {
            r.ground_space_dim = static_cast<int>(parse_number(rec[dim_col]));
        }
        if (status_col >= 0) {
            r.status = rec[status_col];
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string format_svg(const std::vector<ResultRow> &rows) {
    constexpr double width = 640.0;
    constexpr double height = 400.0;
    constexpr double left = 60.0;
    constexpr double right = 20.0;
    constexpr double top = 20.0;
    constexpr double bottom = 50.0;
    double bmin = rows.empty() ? 0.0 : rows.front().beta;
    double bmax = rows.empty() ? 1.0 : rows.back().beta;
    if (!(bmax > bmin)) {
        bmax = bmin + 1.0;
    }
    auto x = [&](double b) { return left + (b - bmin) / (bmax - bmin) * (width - left - right); };
    auto y = [&](double f) { return top + (1.0 - std::clamp(f, 0.0, 1.0)) * (height - top - bottom); };
    auto points = [&](Field f) {
        std::ostringstream s;
        bool first = true;
        for (const auto &r : rows) {
            if (const auto &v = r.*f; v) {
                s << (first ? "" : " ") << number(x(r.beta)) << ',' << number(y(*v));
                first = false;
            }
        }
        return s.str();
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
        << height - bottom << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
        << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double f = 0.25 * k;
        out << "<text x=\"" << left - 8 << "\" y=\"" << number(y(f) + 4) << "\" font-size=\"11\" text-anchor=\"end\">"
            << number(f) << "</text>\n";
        const double b = bmin + (bmax - bmin) * 0.25 * k;
        out << "<text x=\"" << number(x(b)) << "\" y=\"" << height - bottom + 16
            << "\" font-size=\"11\" text-anchor=\"middle\">" << number(b) << "</text>\n";
    }
    out << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 10
        << "\" font-size=\"12\" text-anchor=\"middle\">beta</text>\n";
    out << "<text x=\"14\" y=\"" << (top + height - bottom) / 2 << "\" font-size=\"12\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 14 " << (top + height - bottom) / 2 << ")\">fidelity with ground space</text>\n";
    out << "<polyline class=\"sbqs\" fill=\"none\" stroke=\"#1b7837\" stroke-width=\"2\" points=\""
        << points(&ResultRow::fidelity_sbqs_vs_ground) << "\"/>\n";
    out << "<polyline class=\"exact-ite\" fill=\"none\" stroke=\"#b2182b\" stroke-width=\"2\" "
        << "stroke-dasharray=\"6 4\" points=\"" << points(&ResultRow::fidelity_exact_ite_vs_ground) << "\"/>\n";
    out << "<text x=\"" << width - right - 110 << "\" y=\"" << height - bottom - 30
        << "\" font-size=\"11\" fill=\"#1b7837\">SBQS</text>\n";
    out << "<text x=\"" << width - right - 110 << "\" y=\"" << height - bottom - 14
        << "\" font-size=\"11\" fill=\"#b2182b\">exact ITE</text>\n";
    out << "</svg>\n";
    return out.str();
}

void emit_svg(const std::vector<ResultRow> &rows, const std::filesystem::path &path) {
    write_file(path, format_svg(rows));
}

std::string bounds_to_json(const BoundsReport &report) {
    return report_json(report).dump(2) + "\n";
}

std::string bounds_to_json(const std::vector<BoundsReport> &reports) {
    auto arr = nlohmann::json::array();
    for (const auto &r : reports) {
        arr.push_back(report_json(r));
    }
    return arr.dump(2) + "\n";
}

}  // namespace sbqs
