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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sicfid/galois.hpp"
#include "sicfid/heisenberg.hpp"
#include "sicfid/io.hpp"
#include "sicfid/polyfield.hpp"
#include "sicfid/quadfield.hpp"
#include "sicfid/zeta.hpp"

namespace sicfid {

enum class StarkSource { zeta, ingested };

inline std::string to_string(StarkSource s) { return s == StarkSource::zeta ? "zeta" : "ingested"; }

struct RecipeConfig {
    Precision precision{60};
    StarkSource source = StarkSource::zeta;
    std::filesystem::path source_dir;  ///< for ingested runs
    bool exact = true;                 ///< assemble over L and verify exactly
    std::optional<Coverage> numeric_verify = Coverage::full;
    std::optional<Coverage> exact_verify = Coverage::full;
    long spot_count = 8;
    unsigned seed = 1;
    unsigned threads = 1;
    double theta_threshold = 1e-10;
    /// Numeric check tolerance; default 10^(−0.3·precision).
    std::optional<double> tolerance;
    long hk_generator = 0;  ///< √r generating H_K over K when h = 2
};

/// One row of the precision ledger.
struct StageRecord {
    std::string stage;
    std::string input_hash;  ///< FNV-1a of the serialized stage input
    long precision = 0;
    std::string residual;    ///< verification residual, or "exact"
    std::string note;
};

enum class Verdict3 { pass, fail, conjecture_fail };

inline std::string to_string(Verdict3 v) {
    switch (v) {
        case Verdict3::pass:
            return "PASS";
        case Verdict3::fail:
            return "FAIL";
        case Verdict3::conjecture_fail:
            return "CONJECTURE-FAIL";
    }
    return "?";
}

struct CheckResult {
    std::string name;
    Verdict3 verdict = Verdict3::fail;
    std::string detail;
};

enum class RunStatus { pass, check_failed, conjecture_failure, computation_failure };

struct ThetaHit {
    long theta = 0;
    int sign = 1;
    Real deviation;  ///< | |⟨Ψ|X|Ψ⟩|² − 1/(d+1) |
};

struct RecipeRun {
    DimensionInfo info;
    StarkSource source = StarkSource::zeta;
    Precision precision;
    std::optional<StarkUnitSet> units;
    std::optional<KPoly> p1, g1, p2, g2, p3, p4, g4;
    std::vector<Complex> y;  ///< Galois-ordered roots of p3 (Stark phase units)
    std::vector<Complex> z;  ///< Galois-ordered roots of p4
    std::vector<ThetaHit> thetas;
    long theta = 0;
    int sign = 0;
    bool p4_flipped = false;  ///< p4(t) replaced by p4(−t) to make the sign +
    std::optional<FiducialVector> fiducial;
    std::optional<OverlapReport> numeric_report;
    std::optional<OverlapReport> exact_report;
    std::vector<StageRecord> ledger;
    std::vector<CheckResult> checks;
    RunStatus status = RunStatus::computation_failure;
    std::string failed_stage;
    std::string error;

    int exit_code() const {
        switch (status) {
            case RunStatus::pass:
                return 0;
            case RunStatus::conjecture_failure:
                return 2;
            default:
                return 1;
        }
    }
    const CheckResult* check(const std::string& name) const {
        for (const auto& c : checks) {
            if (c.name == name) return &c;
        }
        return nullptr;
    }
    std::vector<long> accepted_thetas() const {
        std::vector<long> out;
        for (const auto& h : thetas) {
            if (h.sign == sign) out.push_back(h.theta);
        }
        return out;
    }
};

namespace detail {

inline std::string fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<size_t>(i)] = hex[h & 15];
    return out;
}

inline std::string poly_hash(const KPoly& p, long D) { return fnv1a(serialize_poly(make_poly_file(p, D))); }

inline std::string sci(const Real& x) { return x.is_zero() ? "0" : x.to_string(3); }

inline Real max_abs_eval(const KPoly& p, const std::vector<Complex>& pts, Precision prec) {
    CPoly pn = embed(p, prec);
    Real worst(prec);
    for (const auto& x : pts) worst = std::max(worst, abs(pn.eval(x)));
    return worst;
}

/// p3 with x₀^m p3(t²/x₀) = p4(t)p4(−t).
inline KPoly p3_from_p4(const KPoly& p4, const QuadElem& x0) {
    KPoly A = p4 * p4.negate_variable();
    const int m = p4.degree();
    std::vector<QuadElem> c;
    QuadElem scale = one_like(x0), x0m = x0.pow(m);
    for (int i = 0; i <= m; ++i) {
        QuadElem ai = A.coeff_or_zero(static_cast<size_t>(2 * i), zero_like(x0));
        c.push_back(ai * scale / x0m);
        scale = scale * x0;
    }
    for (int i = 0; i <= 2 * m; i += 2) {
        if (!A.coeff_or_zero(static_cast<size_t>(i + 1), zero_like(x0)).is_zero()) throw InconsistencyError("p4(t)p4(-t) is not even");
    }
    return KPoly(std::move(c));
}

}  // namespace detail

/// |⟨Ψ|X|Ψ⟩|²/‖Ψ‖⁴ for the candidate built from z with (θ, sign).
inline Real single_overlap(const std::vector<Complex>& z, const QuadElem& x0, long d, long theta, int sign) {
    FiducialVector f = make_numeric_fiducial(d, 0, theta, sign, x0, z);
    auto v = f.normalized();
    return shift_expectation(v, 1).norm_sq();
}

/// All (θ, sign) with θ a primitive root mod d whose candidate has
/// | |⟨Ψ|X|Ψ⟩|² − 1/(d+1) | < threshold, θ ascending, + before −.
inline std::vector<ThetaHit> theta_search(const std::vector<Complex>& z, const QuadElem& x0, long d, long m,
                                          double threshold = 1e-10) {
    if (static_cast<long>(z.size()) != m) throw InvalidInput("theta_search: need m roots");
    Precision p = z.at(0).precision();
    const Real target = Real(1L, p) / Real(d + 1, p);
    const Real thr(threshold, p);
    std::vector<ThetaHit> out;
    for (long theta = 2; theta < d; ++theta) {
        if (!is_primitive_root(theta, d)) continue;
        for (int sign : {1, -1}) {
            Real dev = abs(single_overlap(z, x0, d, theta, sign) - target);
            if (dev < thr) out.push_back({theta, sign, dev});
        }
    }
    return out;
}

/// Components Ψ̂_{θ^j} = g4^[j](γ) over L, Ψ̂_0 = sign·x₀.
inline FiducialVector assemble_exact(const KPoly& p4, const KPoly& g4, long theta, int sign, const DimensionInfo& info,
                                     const Complex& z0) {
    return make_exact_fiducial(info.d, info.ell, theta, sign, info.x0(), p4, g4, z0);
}

namespace detail {

class Runner {
   public:
    Runner(RecipeRun& run, const RecipeConfig& cfg) : run_(run), cfg_(cfg), prec_(cfg.precision) {}

    void record(const std::string& stage, const std::string& hash, const std::string& residual, const std::string& note = "") {
        run_.ledger.push_back({stage, hash, prec_.digits, residual, note});
    }
    void check(const std::string& name, bool ok, const std::string& detail, bool conjecture = false) {
        run_.checks.push_back({name, ok ? Verdict3::pass : (conjecture ? Verdict3::conjecture_fail : Verdict3::fail), detail});
    }

    void stage(const std::string& name, const std::function<void()>& body) {
        current_ = name;
        body();
    }
    const std::string& current() const { return current_; }

    void run() {
        const DimensionInfo& info = run_.info;
        const long D = info.D;
        const QuadElem x0 = info.x0();
        if (!info.prime) throw InvalidInput(std::to_string(info.d) + " is not prime");
        std::optional<std::vector<Complex>> ordered_units;

        bool have_p4 = false;
        if (cfg_.source == StarkSource::ingested) {
            stage("ingest", [&] { have_p4 = ingest(ordered_units); });
        } else {
            stage("stark", [&] {
                run_.units = stark_units(info, prec_, cfg_.threads);
                const auto& u = *run_.units;
                record("stark", fnv1a("d=" + std::to_string(info.d)), sci(inverse_pair_deviation(u)),
                       "generator " + u.generator_label + ", sigma_T = gen^" + std::to_string(u.sigma_T_index));
                check("stark-inverse-pairs", inverse_pair_deviation(u) < pow10(-(prec_.digits / 2), prec_),
                      "max |e_j e_{sigma_T j} - 1| = " + sci(inverse_pair_deviation(u)));
                ordered_units.emplace();
                for (const auto& v : u.values) ordered_units->emplace_back(v);
            });
            stage("p1", [&] {
                run_.p1 = minpoly_stark(*run_.units);
                record("p1", fnv1a("stark"), sci(max_abs_eval(*run_.p1, *ordered_units, prec_)));
            });
        }

        if (!have_p4) {
            stage("g1", [&] {
                if (!run_.g1) {
                    if (!ordered_units) throw InvalidInput("no Galois ordering: supply g1 or ordered Stark units");
                    run_.g1 = interpolate_galois(*run_.p1, *ordered_units, prec_).g;
                }
                GaloisExactCheck ex = verify_galois_exact(*run_.p1, *run_.g1);
                record("g1", poly_hash(*run_.p1, D), ex.maps_roots ? "exact" : "not a root map",
                       "order " + std::to_string(ex.order));
                if (!ex.maps_roots || ex.order != run_.p1->degree()) {
                    throw InconsistencyError("g1 does not cycle the roots of p1");
                }
            });
            stage("p2", [&] {
                run_.p2 = tau_conjugate(*run_.p1);
                run_.g2 = tau_conjugate(*run_.g1);
                record("p2", poly_hash(*run_.p1, D), "exact");
            });
            stage("p3", [&] {
                if (!run_.p3) {
                    HcfFactorization hf = factor_over_hcf(*run_.p2, info.h, D, prec_, cfg_.hk_generator, &*run_.g2);
                    if (info.h != 1) {
                        throw Unsupported("class number 2: p3 found over H_K but the remaining steps need p3 over K");
                    }
                    run_.p3 = hf.p3_over_K;
                }
                record("p3", poly_hash(*run_.p2, D), "exact", "h = " + std::to_string(info.h));
            });
            stage("roots", [&] {
                auto roots = find_roots(*run_.p3, Embedding::j, prec_).roots;
                run_.y = order_roots(*run_.p3, *run_.g2, roots[0], info.m, prec_);
                Real circle(prec_);
                for (const auto& y : run_.y) circle = std::max(circle, abs(abs(y) - Real(1L, prec_)));
                record("roots", poly_hash(*run_.p3, D), sci(max_abs_eval(*run_.p3, run_.y, prec_)));
                check("phase-units-on-circle", circle < pow10(-(prec_.digits / 2), prec_), "max ||y_j| - 1| = " + sci(circle));
            });
            stage("p4", [&] {
                SqrtFactor sf = sqrt_factor(*run_.p3, x0, run_.y, prec_);
                run_.p4 = sf.p4;
                run_.z = sf.z;
                record("p4", poly_hash(*run_.p3, D), sci(max_abs_eval(*run_.p4, run_.z, prec_)), sf.method);
            });
            stage("g4", [&] {
                run_.g4 = interpolate_galois(*run_.p4, run_.z, prec_).g;
                record("g4", poly_hash(*run_.p4, D), "exact");
            });
        }

        stage("witness", [&] {
            bool ok = *run_.p4 * run_.p4->negate_variable() == scaled_square_substitution(*run_.p3, x0);
            check("sqrt-factor-identity", ok, ok ? "p4(t)p4(-t) - x0^m p3(t^2/x0) = 0" : "nonzero remainder", true);
            if (!ok) throw ConjectureFailure("p4(t)p4(-t) != x0^m p3(t^2/x0)");
            GaloisActionReport ga = verify_galois_action(*run_.p4, *run_.g4, run_.z, x0, prec_);
            check("galois-action", ga.passed,
                  "order " + std::to_string(ga.order) + ", cycle " + sci(ga.max_cycle_error) + ", conjugation " +
                      sci(ga.max_conjugation_error) + ", inversion " + sci(ga.max_inversion_error));
            if (!ga.passed) throw InconsistencyError("g4 does not act as the cyclic Galois group on the roots of p4");
        });

        stage("theta", [&] {
            run_.thetas = theta_search(run_.z, x0, info.d, info.m, cfg_.theta_threshold);
            if (run_.thetas.empty()) throw ConjectureFailure("no (theta, sign) gives |<psi|X|psi>|^2 = 1/(d+1)");
            bool plus = false, minus = false;
            for (const auto& h : run_.thetas) (h.sign > 0 ? plus : minus) = true;
            run_.sign = plus ? 1 : -1;
            if (!plus && !have_p4) {
                // p4 was computed here, so it is only fixed up to t -> -t;
                // absorb the sign into p4: roots −z_j, g4(t) → −g4(−t)
                run_.p4 = run_.p4->negate_variable();
                run_.g4 = -run_.g4->negate_variable();
                for (auto& zj : run_.z) zj = -zj;
                for (auto& h : run_.thetas) h.sign = -h.sign;
                run_.sign = 1;
                run_.p4_flipped = true;
            }
            run_.theta = run_.accepted_thetas().front();
            std::string list;
            for (long t : run_.accepted_thetas()) list += (list.empty() ? "" : ",") + std::to_string(t);
            record("theta", poly_hash(*run_.p4, D), sci(run_.thetas.front().deviation),
                   "sign " + std::string(run_.sign > 0 ? "+" : "-") + ", theta {" + list + "}" +
                       (run_.p4_flipped ? ", p4(t) -> p4(-t)" : ""));
        });

        stage("assemble", [&] {
            if (cfg_.exact) {
                run_.fiducial = assemble_exact(*run_.p4, *run_.g4, run_.theta, run_.sign, info, run_.z[0]);
            } else {
                run_.fiducial = make_numeric_fiducial(info.d, info.ell, run_.theta, run_.sign, x0, run_.z);
            }
            record("assemble", poly_hash(*run_.g4, D), "exact", cfg_.exact ? "exact over L" : "numeric");
        });

        stage("verify", [&] {
            const FiducialVector& f = *run_.fiducial;
            if (cfg_.numeric_verify) {
                VerifyOptions o;
                o.coverage = *cfg_.numeric_verify;
                o.spot_count = cfg_.spot_count;
                o.seed = cfg_.seed;
                o.threads = cfg_.threads;
                o.tolerance = tolerance();
                run_.numeric_report = sic_verify(f, o);
                const auto& r = *run_.numeric_report;
                check("numeric-verification", r.passed,
                      std::to_string(r.checked) + " overlaps, max deviation " + sci(r.max_deviation));
            }
            if (cfg_.exact && cfg_.exact_verify) {
                VerifyOptions o;
                o.mode = FiducialMode::exact;
                o.coverage = *cfg_.exact_verify;
                o.spot_count = cfg_.spot_count;
                o.seed = cfg_.seed;
                o.threads = cfg_.threads;
                run_.exact_report = sic_verify(f, o);
                const auto& r = *run_.exact_report;
                check("exact-verification", r.passed,
                      std::to_string(r.checked) + " G(i,k) identities, " + std::to_string(r.nonzero) + " nonzero");
            }
            Real tol = tolerance();
            FlatnessReport fl = flatness_and_norm(f, tol);
            check("flatness-and-norm", fl.passed,
                  "a0 " + sci(fl.a0_deviation) + ", ak " + sci(fl.ak_deviation) + ", N^2 " + sci(fl.norm_deviation));
            FourierReport fr = fourier_real(f, tol);
            check("fourier-real", fr.passed,
                  "imag " + sci(fr.max_imag) + ", autocorrelation " + sci(fr.max_autocorr_deviation) + ", wiener-khinchin " +
                      sci(fr.max_wk_deviation));
            SymmetryReport sr = symmetry_check(f, tol);
            check("zauner-symmetry", sr.passed, "alpha " + std::to_string(sr.alpha) + " of order " + std::to_string(sr.alpha_order));
            std::vector<Complex> y = run_.y;
            PhaseReport pr = overlap_phase_check(f, y, tol);
            check("overlap-phases", pr.passed,
                  "multiset " + sci(pr.multiset_deviation) + ", ratio " + pr.ratio.re.to_string(6) + (pr.ratio.im.sign() < 0 ? "" : "+") +
                      pr.ratio.im.to_string(3) + "i, spread " + sci(pr.ratio_spread),
                  true);
        });
    }

   private:
    Real tolerance() const {
        return cfg_.tolerance ? Real(*cfg_.tolerance, prec_) : pow10(-(prec_.digits * 3 / 10), prec_);
    }

    /// Reads the source directory. Returns true when p4 and g4 were given.
    bool ingest(std::optional<std::vector<Complex>>& ordered_units) {
        namespace fs = std::filesystem;
        const fs::path& dir = cfg_.source_dir;
        const DimensionInfo& info = run_.info;
        const QuadElem x0 = info.x0();
        auto load = [&](const char* name) -> std::optional<KPoly> {
            fs::path p = dir / name;
            if (!fs::exists(p)) return std::nullopt;
            PolyFile f = parse_poly(p);
            if (f.ring != "K" || f.D != info.D) throw InvalidInput(p.string() + ": expected a polynomial over Q(sqrt " + std::to_string(info.D) + ")");
            record(std::string("ingest ") + name, fnv1a(read_text(p)), "exact", f.provenance);
            return f.k;
        };
        if (!fs::is_directory(dir)) throw InvalidInput("source directory " + dir.string() + " not found");
        run_.p4 = load("p4.json");
        run_.g4 = load("g4.json");
        if (run_.p4 && run_.g4) {
            run_.p3 = load("p3.json");
            if (!run_.p3) {
                run_.p3 = p3_from_p4(*run_.p4, x0);
                record("p3", poly_hash(*run_.p4, info.D), "exact", "derived from p4; the p4 witness is tautological");
            }
            auto roots = find_roots(*run_.p4, Embedding::j, prec_).roots;
            run_.z = order_roots(*run_.p4, *run_.g4, roots[0], info.m, prec_);
            Complex x0c(x0.to_real(prec_));
            run_.y.clear();
            for (const auto& zj : run_.z) run_.y.push_back(zj * zj / x0c);
            record("roots", poly_hash(*run_.p4, info.D), sci(max_abs_eval(*run_.p4, run_.z, prec_)),
                   "ordering from the file's g4");
            return true;
        }
        fs::path stark = dir / "stark.json";
        if (fs::exists(stark)) {
            StarkFile s = parse_stark(stark);
            if (s.d != info.d || s.D != info.D) throw InvalidInput(stark.string() + ": d or D disagree");
            if (s.precision < prec_.digits) prec_ = Precision{s.precision};
            StarkUnitSet u;
            u.d = s.d;
            u.D = s.D;
            u.ell = s.ell;
            u.precision = prec_;
            u.values = s.reals(prec_);
            u.generator_label = s.generator_label;
            u.sigma_T_index = static_cast<long>(u.values.size()) / 2;
            record("ingest stark.json", fnv1a(read_text(stark)), sci(inverse_pair_deviation(u)), "ordering trusted as given");
            ordered_units.emplace();
            for (const auto& v : u.values) ordered_units->emplace_back(v);
            run_.p1 = minpoly_stark(u);
            run_.units = std::move(u);
            record("p1", fnv1a(read_text(stark)), sci(max_abs_eval(*run_.p1, *ordered_units, prec_)));
        } else {
            run_.p1 = load("p1.json");
            if (!run_.p1) throw InvalidInput(dir.string() + ": need p4.json+g4.json, stark.json or p1.json");
        }
        run_.g1 = load("g1.json");
        if (!run_.g1 && !ordered_units) {
            if (run_.p1->degree() > 2) throw InvalidInput("p1 of degree > 2 needs g1.json for the Galois ordering");
            ordered_units.emplace();
            auto r = find_roots(*run_.p1, Embedding::j, prec_).roots;
            for (auto& x : r) ordered_units->push_back(x);
        }
        run_.p3 = load("p3.json");
        return false;
    }

    RecipeRun& run_;
    const RecipeConfig& cfg_;
    Precision prec_;
    std::string current_;
};

}  // namespace detail

/// Runs the recipe. Stage errors are captured in the returned run (stage tag,
/// message, status); nothing is thrown for failures of the computation itself.
inline RecipeRun run_recipe(long d, const RecipeConfig& cfg) {
    RecipeRun run;
    run.info = classify_dimension(d);
    run.source = cfg.source;
    run.precision = cfg.precision;
    detail::Runner r(run, cfg);
    try {
        r.run();
        bool ok = true, conj_ok = true;
        for (const auto& c : run.checks) {
            if (c.verdict == Verdict3::fail) ok = false;
            if (c.verdict == Verdict3::conjecture_fail) conj_ok = false;
        }
        run.status = !ok ? RunStatus::check_failed : !conj_ok ? RunStatus::conjecture_failure : RunStatus::pass;
    } catch (const ConjectureFailure& e) {
        run.status = RunStatus::conjecture_failure;
        run.failed_stage = r.current();
        run.error = e.what();
    } catch (const Error& e) {
        run.status = RunStatus::computation_failure;
        run.failed_stage = r.current();
        run.error = e.what();
    }
    return run;
}

}  // namespace sicfid
