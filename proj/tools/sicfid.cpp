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

// Command line front end.
//
//   sicfid run --d 7
//   sicfid run --d 199 --source data/d199 --exact --verify spot --precision 100
//   sicfid stark --d 19 --out stark.json
//   sicfid classify --d 19603
//   sicfid verify --fiducial out.json
//
// Exit status: 0 all checks pass, 2 a conjectured identity failed, 1 anything else.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "sicfid/sicfid.hpp"

namespace {

using namespace sicfid;

std::optional<Coverage> coverage_from(const std::string& s) {
    if (s == "none") return std::nullopt;
    return s == "spot" ? Coverage::spot : Coverage::full;
}

void print_or_write(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_text(path, text);
    }
}

struct RunArgs {
    long d = 0;
    std::string source;
    bool exact = false;
    std::string verify = "full";
    std::string exact_verify;
    long precision = 60;
    unsigned threads = 1;
    double tolerance = 0;
    long spot_count = 8;
    std::string format = "human";
    std::string report;
    std::string out;
    std::string table;
};

int cmd_run(const RunArgs& a) {
    RecipeConfig cfg;
    cfg.precision = Precision{a.precision};
    if (!a.source.empty()) {
        cfg.source = StarkSource::ingested;
        cfg.source_dir = a.source;
    }
    cfg.exact = a.exact;
    cfg.numeric_verify = coverage_from(a.verify);
    cfg.exact_verify = coverage_from(a.exact_verify.empty() ? a.verify : a.exact_verify);
    cfg.threads = a.threads;
    cfg.spot_count = a.spot_count;
    if (a.tolerance > 0) cfg.tolerance = a.tolerance;
    RecipeRun run = run_recipe(a.d, cfg);
    std::vector<CheckResult> extra;
    if (!a.table.empty()) {
        for (const auto& row : parse_dimension_table(a.table)) {
            if (row.d == a.d) extra.push_back(dimension_row_check(row));
        }
    }
    print_or_write(emit_report(run, a.format == "machine" ? ReportFormat::machine : ReportFormat::human, extra), a.report);
    if (!a.out.empty() && run.fiducial) write_text(a.out, serialize_fiducial(fiducial_to_file(*run.fiducial, run.info.D)));
    int code = run.exit_code();
    for (const auto& c : extra) {
        if (c.verdict != Verdict3::pass && code == 0) code = 1;
    }
    return code;
}

int cmd_stark(long d, long precision, unsigned threads, const std::string& out) {
    DimensionInfo info = classify_dimension(d);
    StarkUnitSet u = stark_units(info, Precision{precision}, threads);
    StarkFile f;
    f.d = d;
    f.D = info.D;
    f.ell = info.ell;
    f.precision = precision;
    f.generator_label = u.generator_label;
    f.provenance = "computed by sicfid stark";
    for (const auto& v : u.values) f.values.push_back(v.to_string(precision));
    print_or_write(serialize_stark(f), out);
    return 0;
}

int cmd_classify(long d) {
    DimensionInfo info = classify_dimension(d);
    std::cout << "d = " << info.d << " = " << info.n << "^2 + 3\n";
    std::cout << "prime: " << (info.prime ? "yes" : "no") << "\n";
    std::cout << "K = Q(sqrt " << info.D << "), sqrt(d+1) = " << info.f << " sqrt " << info.D << "\n";
    std::cout << "u_K = " << info.unit << "\n";
    std::cout << "h = " << info.h << ", ell = " << info.ell << "\n";
    if (info.prime) {
        std::cout << "m = " << info.m << ", degree over K = " << info.degree_over_K() << ", absolute degree "
                  << factor_string(info.absolute_degree()) << "\n";
    }
    std::cout << "x0 = " << info.x0() << "\n";
    return 0;
}

int cmd_verify(const std::string& path, const std::string& verify, bool exact, double tolerance, unsigned threads) {
    FiducialFile file = parse_fiducial(path);
    FiducialVector f = fiducial_from_file(file);
    VerifyOptions o;
    o.coverage = verify == "spot" ? Coverage::spot : Coverage::full;
    o.threads = threads;
    if (tolerance > 0) o.tolerance = Real(tolerance, f.precision());
    bool ok = true;
    OverlapReport r = sic_verify(f, o);
    std::cout << "numeric verification: " << (r.passed ? "PASS" : "FAIL") << " (" << r.checked << " overlaps, max deviation "
              << r.max_deviation.to_string(3) << ")\n";
    ok = ok && r.passed;
    if (exact) {
        if (f.mode != FiducialMode::exact) throw InvalidInput("--exact needs an exact fiducial file");
        o.mode = FiducialMode::exact;
        OverlapReport e = sic_verify(f, o);
        std::cout << "exact verification: " << (e.passed ? "PASS" : "FAIL") << " (" << e.checked << " identities, " << e.nonzero
                  << " nonzero)\n";
        ok = ok && e.passed;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SIC fiducials from Stark units in dimensions d = n^2 + 3"};
    app.require_subcommand(1);

    RunArgs ra;
    auto* run = app.add_subcommand("run", "run the recipe for one dimension");
    run->add_option("--d", ra.d, "dimension")->required();
    run->add_option("--source", ra.source, "directory with p4/g4, stark.json or p1 files (default: compute Stark units)");
    run->add_flag("--exact", ra.exact, "assemble the fiducial over L and verify exactly");
    run->add_option("--verify", ra.verify, "coverage of the checks")->check(CLI::IsMember({"full", "spot", "none"}));
    run->add_option("--exact-verify", ra.exact_verify, "coverage of the exact check (default: --verify)")
        ->check(CLI::IsMember({"full", "spot", "none"}));
    run->add_option("--precision", ra.precision, "working decimal digits")->check(CLI::Range(20L, 100000L));
    run->add_option("--threads", ra.threads, "worker threads");
    run->add_option("--tolerance", ra.tolerance, "numeric tolerance (default 10^(-0.3 precision))");
    run->add_option("--spot-count", ra.spot_count, "random pairs for spot checks");
    run->add_option("--format", ra.format, "report format")->check(CLI::IsMember({"human", "machine"}));
    run->add_option("--report", ra.report, "report file (default stdout)");
    run->add_option("--out", ra.out, "write the fiducial here");
    run->add_option("--table", ra.table, "table of expected h, ell, degree to cross-check");

    long sd = 0, sprec = 60;
    unsigned sthreads = 1;
    std::string sout;
    auto* stark = app.add_subcommand("stark", "compute Stark units numerically");
    stark->add_option("--d", sd, "dimension")->required();
    stark->add_option("--precision", sprec, "decimal digits")->check(CLI::Range(20L, 100000L));
    stark->add_option("--threads", sthreads, "worker threads");
    stark->add_option("--out", sout, "output file (default stdout)");

    long cd = 0;
    auto* classify = app.add_subcommand("classify", "locate d in its tower");
    classify->add_option("--d", cd, "dimension")->required();

    std::string vpath, vcov = "full";
    bool vexact = false;
    double vtol = 0;
    unsigned vthreads = 1;
    auto* verify = app.add_subcommand("verify", "check a stored fiducial");
    verify->add_option("--fiducial", vpath, "fiducial file")->required()->check(CLI::ExistingFile);
    verify->add_option("--verify", vcov, "coverage")->check(CLI::IsMember({"full", "spot"}));
    verify->add_flag("--exact", vexact, "also check the G(i,k) identities exactly");
    verify->add_option("--tolerance", vtol, "numeric tolerance");
    verify->add_option("--threads", vthreads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*run) return cmd_run(ra);
        if (*stark) return cmd_stark(sd, sprec, sthreads, sout);
        if (*classify) return cmd_classify(cd);
        if (*verify) return cmd_verify(vpath, vcov, vexact, vtol, vthreads);
    } catch (const ConjectureFailure& e) {
        std::cerr << "conjecture check failed: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
