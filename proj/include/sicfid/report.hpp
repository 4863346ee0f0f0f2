// Copyright 2026 The sicfid Authors
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

#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sicfid/io.hpp"
#include "sicfid/pipeline.hpp"

namespace sicfid {

// ---------------------------------------------------------------------------
// Table of prime dimensions

struct DimensionRow {
    long n = 0;
    long d = 0;
    long h = 0;
    long ell = 0;
    std::string degree;  ///< factored absolute degree, "2^2x11"
    long log_height = 0;
};

inline std::vector<DimensionRow> parse_dimension_table(const std::filesystem::path& path) {
    Json j = parse_json(read_text(path), path.string());
    const Json& rows = detail::field(j, "rows", path.string());
    if (!rows.is_array()) throw ParseError(path.string() + ": rows must be a list");
    std::vector<DimensionRow> out;
    for (size_t i = 0; i < rows.size(); ++i) {
        std::string where = path.string() + ".rows[" + std::to_string(i) + "]";
        DimensionRow r;
        r.n = detail::get_long(rows[i], "n", where);
        r.d = detail::get_long(rows[i], "d", where);
        r.h = detail::get_long(rows[i], "h", where);
        r.ell = detail::get_long(rows[i], "ell", where);
        r.degree = detail::get_string(rows[i], "degree", where);
        r.log_height = detail::get_long(rows[i], "log_height", where);
        out.push_back(r);
    }
    return out;
}

/// Recomputes h, ℓ and the factored degree 2hm of the small ray class field.
inline CheckResult dimension_row_check(const DimensionRow& row) {
    DimensionInfo info = classify_dimension(row.d);
    std::string got = "h=" + std::to_string(info.h) + " ell=" + std::to_string(info.ell) +
                      " degree=" + factor_string(2 * degree_small_rcf(info));
    std::string want = "h=" + std::to_string(row.h) + " ell=" + std::to_string(row.ell) + " degree=" + row.degree;
    bool ok = got == want && info.n == row.n;
    return {"dimension-table d=" + std::to_string(row.d), ok ? Verdict3::pass : Verdict3::fail,
            ok ? got : "computed " + got + ", table " + want};
}

// ---------------------------------------------------------------------------
// Run reports

enum class ReportFormat { human, machine };

inline std::string to_string(RunStatus s) {
    switch (s) {
        case RunStatus::pass:
            return "PASS";
        case RunStatus::check_failed:
            return "FAIL";
        case RunStatus::conjecture_failure:
            return "CONJECTURE-FAIL";
        case RunStatus::computation_failure:
            return "ERROR";
    }
    return "?";
}

namespace detail {

inline Json poly_json(const KPoly& p) {
    Json arr = Json::array();
    for (const auto& c : p.coeffs()) {
        arr.push_back(Json::array({Json::array({c.a().get_num().get_str(), c.a().get_den().get_str()}),
                                   Json::array({c.b().get_num().get_str(), c.b().get_den().get_str()})}));
    }
    return arr;
}

inline std::string verdict_line(const RecipeRun& run, const char* check, const char* label) {
    const CheckResult* c = run.check(check);
    if (!c) return "";
    return std::string(label) + ": " + to_string(c->verdict) + "\n";
}

}  // namespace detail

/// Machine reports are canonical JSON with no timings, so identical inputs give identical bytes.
inline Json report_json(const RecipeRun& run) {
    const DimensionInfo& info = run.info;
    Json j;
    j["d"] = info.d;
    j["n"] = info.n;
    j["D"] = info.D;
    j["h"] = info.h;
    j["ell"] = info.ell;
    j["m"] = info.m;
    j["degree"] = factor_string(info.absolute_degree());
    j["source"] = to_string(run.source);
    j["precision"] = run.precision.digits;
    j["status"] = to_string(run.status);
    if (!run.error.empty()) j["error"] = {{"stage", run.failed_stage}, {"message", run.error}};
    Json polys = Json::object();
    auto put = [&](const char* name, const std::optional<KPoly>& p) {
        if (p) polys[name] = detail::poly_json(*p);
    };
    put("p1", run.p1);
    put("g1", run.g1);
    put("p3", run.p3);
    put("p4", run.p4);
    put("g4", run.g4);
    j["polynomials"] = polys;
    if (!run.thetas.empty()) {
        j["theta"] = {{"sign", run.sign}, {"accepted", run.accepted_thetas()}, {"chosen", run.theta}, {"p4_negated", run.p4_flipped}};
    }
    Json ledger = Json::array();
    for (const auto& s : run.ledger) {
        ledger.push_back({{"stage", s.stage}, {"input_hash", s.input_hash}, {"precision", s.precision}, {"residual", s.residual}, {"note", s.note}});
    }
    j["ledger"] = ledger;
    Json checks = Json::array();
    for (const auto& c : run.checks) checks.push_back({{"name", c.name}, {"verdict", to_string(c.verdict)}, {"detail", c.detail}});
    j["checks"] = checks;
    return j;
}

inline std::string emit_report(const RecipeRun& run, ReportFormat format,
                               const std::vector<CheckResult>& extra = {}) {
    if (format == ReportFormat::machine) {
        Json j = report_json(run);
        if (!extra.empty()) {
            for (const auto& c : extra) j["checks"].push_back({{"name", c.name}, {"verdict", to_string(c.verdict)}, {"detail", c.detail}});
        }
        return j.dump(2) + "\n";
    }
    const DimensionInfo& info = run.info;
    std::ostringstream os;
    os << "d = " << info.d << " (n = " << info.n << "), K = Q(sqrt " << info.D << "), h = " << info.h << ", ell = " << info.ell
       << ", m = " << info.m << ", degree " << factor_string(info.absolute_degree()) << "\n";
    os << "source: " << to_string(run.source) << ", precision " << run.precision.digits << " digits\n\n";
    os << "stages:\n";
    for (const auto& s : run.ledger) {
        os << "  " << s.stage << "  [" << s.input_hash << ", " << s.precision << " digits]  residual " << s.residual;
        if (!s.note.empty()) os << "  (" << s.note << ")";
        os << "\n";
    }
    if (!run.thetas.empty()) {
        os << "\nsign: " << (run.sign > 0 ? "+" : "-") << "\ntheta:";
        for (long t : run.accepted_thetas()) os << " " << t;
        os << " (" << run.accepted_thetas().size() << " accepted)\n";
    }
    os << "\nchecks:\n";
    for (const auto& c : run.checks) os << "  " << to_string(c.verdict) << "  " << c.name << ": " << c.detail << "\n";
    for (const auto& c : extra) os << "  " << to_string(c.verdict) << "  " << c.name << ": " << c.detail << "\n";
    os << "\n";
    os << detail::verdict_line(run, "numeric-verification", "numeric verification");
    os << detail::verdict_line(run, "exact-verification", "exact verification");
    if (!run.error.empty()) os << "error in stage " << run.failed_stage << ": " << run.error << "\n";
    os << "verdict: " << to_string(run.status) << "\n";
    return os.str();
}

}  // namespace sicfid
