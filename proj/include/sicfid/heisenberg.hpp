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

#include <mpfr.h>

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "sicfid/bigreal.hpp"
#include "sicfid/errors.hpp"
#include "sicfid/galois.hpp"
#include "sicfid/polyfield.hpp"
#include "sicfid/quadfield.hpp"

namespace sicfid {

// ---------------------------------------------------------------------------
// Fiducial vectors

enum class FiducialMode { numeric, exact };

/// Exact components: entry 0 is c0 = sign·x₀ ∈ K, entry r ≠ 0 is z_{label[r]}
/// where z_k = g^[k](γ) in L = K[t]/(p4).
struct ExactFiducial {
    std::shared_ptr<const ResidueRing> ring;
    QuadElem c0;
    std::vector<ResidueElem> z;
    std::vector<int> label;
};

/// Ψ̂ in the θ-labelling: Ψ̂_0 = sign·x₀, Ψ̂_{θ^j} = z_{j mod m}. Components are
/// kept un-normalized; norm_sq = x₀² − (d−1)x₀ since |z_j|² = −x₀.
struct FiducialVector {
    long d = 0;
    long ell = 0;
    long m = 0;
    long theta = 0;
    int sign = 1;
    QuadElem x0;
    FiducialMode mode = FiducialMode::numeric;
    std::vector<Complex> components;
    std::optional<ExactFiducial> exact;

    QuadElem norm_sq() const { return x0 * x0 - x0 * (d - 1); }
    Precision precision() const { return components.at(0).precision(); }
    /// Ψ̂ / |Ψ̂|
    std::vector<Complex> normalized() const {
        Real n2(precision());
        for (const auto& c : components) n2 += c.norm_sq();
        Real n = sqrt(n2);
        std::vector<Complex> out;
        out.reserve(components.size());
        for (const auto& c : components) out.push_back(c / n);
        return out;
    }
};

inline bool is_primitive_root(long theta, long d) {
    if (theta % d == 0) return false;
    for (const auto& [q, e] : factorize(d - 1)) {
        (void)e;
        if (mod_pow(((theta % d) + d) % d, (d - 1) / q, d) == 1) return false;
    }
    return true;
}

/// label[θ^j mod d] = j mod m; label[0] = −1.
inline std::vector<int> theta_labels(long d, long theta, long m) {
    if (!is_primitive_root(theta, d)) throw InvalidInput(std::to_string(theta) + " is not a primitive root mod " + std::to_string(d));
    if ((d - 1) % m) throw InvalidInput("cycle length does not divide d-1");
    std::vector<int> lab(static_cast<size_t>(d), -1);
    long p = 1;
    for (long j = 0; j < d - 1; ++j) {
        lab[static_cast<size_t>(p)] = static_cast<int>(j % m);
        p = p * theta % d;
    }
    return lab;
}

inline FiducialVector make_numeric_fiducial(long d, long ell, long theta, int sign, const QuadElem& x0,
                                            const std::vector<Complex>& z) {
    FiducialVector f;
    f.d = d;
    f.ell = ell;
    f.m = static_cast<long>(z.size());
    f.theta = theta;
    f.sign = sign;
    f.x0 = x0;
    Precision p = z.at(0).precision();
    auto lab = theta_labels(d, theta, f.m);
    f.components.assign(static_cast<size_t>(d), Complex(p));
    f.components[0] = Complex(x0.to_real(p) * static_cast<long>(sign));
    for (long r = 1; r < d; ++r) f.components[static_cast<size_t>(r)] = z[static_cast<size_t>(lab[static_cast<size_t>(r)])];
    return f;
}

/// Exact fiducial in L = K[t]/(p4) with z_k = g^[k](γ); numeric components are
/// ι-images for ι(γ) = z0.
inline FiducialVector make_exact_fiducial(long d, long ell, long theta, int sign, const QuadElem& x0, const KPoly& p4,
                                          const KPoly& g4, const Complex& z0) {
    GaloisExactCheck ex = verify_galois_exact(p4, g4);
    if (!ex.maps_roots) throw InconsistencyError("g4 does not map roots of p4 to roots");
    if (ex.order != p4.degree()) {
        throw InconsistencyError("g4 has order " + std::to_string(ex.order) + " on L, expected " + std::to_string(p4.degree()));
    }
    const long m = p4.degree();
    std::vector<Complex> zn;
    for (const auto& it : ex.iterates) zn.push_back(it.embed(z0));
    FiducialVector f = make_numeric_fiducial(d, ell, theta, sign, x0, zn);
    f.mode = FiducialMode::exact;
    ExactFiducial e;
    e.ring = ex.iterates[0].ring();
    e.c0 = x0 * static_cast<long>(sign);
    e.z = std::move(ex.iterates);
    e.label = theta_labels(d, theta, m);
    f.exact = std::move(e);
    return f;
}

// ---------------------------------------------------------------------------
// Weyl–Heisenberg operators

/// D_{a,b} v with D_{a,b} = (−e^{iπ/d})^{ab} X^a Z^b, X|r⟩ = |r+1⟩, Z|r⟩ = ω^r|r⟩.
inline std::vector<Complex> displacement_apply(long d, long a, long b, const std::vector<Complex>& v) {
    if (static_cast<long>(v.size()) != d) throw InvalidInput("displacement_apply: vector length != d");
    Precision p = v.at(0).precision();
    a = ((a % d) + d) % d;
    b = ((b % d) + d) % d;
    // (−e^{iπ/d})^{ab} = e^{iπ ab (d+1)/d}; period 2d in ab
    long ab = static_cast<long>(static_cast<__int128>(a) * b % (2 * d));
    Complex phase = root_of_unity(ab * (d + 1) % (2 * d), 2 * d, p);
    std::vector<Complex> out(static_cast<size_t>(d), Complex(p));
    for (long r = 0; r < d; ++r) {
        long s = ((r - a) % d + d) % d;
        out[static_cast<size_t>(r)] = phase * root_of_unity(b * s % d, d, p) * v[static_cast<size_t>(s)];
    }
    return out;
}

inline Complex inner(const std::vector<Complex>& u, const std::vector<Complex>& v) {
    Complex s(u.at(0).precision());
    for (size_t i = 0; i < u.size(); ++i) s += conj(u[i]) * v[i];
    return s;
}

/// ⟨Ψ|D_{a,b}|Ψ⟩ for the normalized fiducial.
inline Complex overlap(const FiducialVector& psi, long a, long b) {
    auto v = psi.normalized();
    return inner(v, displacement_apply(psi.d, a, b, v));
}

/// ⟨v|X^k|v⟩ with (X^k v)_r = v_{r−k}.
inline Complex shift_expectation(const std::vector<Complex>& v, long k) {
    const long d = static_cast<long>(v.size());
    Complex s(v.at(0).precision());
    for (long r = 0; r < d; ++r) s += conj(v[static_cast<size_t>(r)]) * v[static_cast<size_t>(((r - k) % d + d) % d)];
    return s;
}

/// |⟨v|X^a Z^b|v⟩|² for all a, b, row-major. Raw MPFR inner loop, rows split over threads.
inline std::vector<Real> overlap_moduli(const std::vector<Complex>& v, unsigned threads = 1) {
    const long d = static_cast<long>(v.size());
    Precision p = v.at(0).precision();
    const mpfr_prec_t bits = p.bits();
    std::vector<Real> cs, sn;
    for (long k = 0; k < d; ++k) {
        Complex w = root_of_unity(k, d, p);
        cs.push_back(w.re);
        sn.push_back(w.im);
    }
    std::vector<Real> out(static_cast<size_t>(d * d), Real(p));
    auto rows = [&](long a0, long a1) {
        mpfr_t t, re, im;
        std::vector<Real> wre(static_cast<size_t>(d), Real(p)), wim(static_cast<size_t>(d), Real(p));
        mpfr_inits2(bits, t, re, im, static_cast<mpfr_ptr>(nullptr));
        for (long a = a0; a < a1; ++a) {
            // w_s = conj(v_{s+a}) v_s
            for (long s = 0; s < d; ++s) {
                Complex w = conj(v[static_cast<size_t>((s + a) % d)]) * v[static_cast<size_t>(s)];
                wre[static_cast<size_t>(s)] = w.re;
                wim[static_cast<size_t>(s)] = w.im;
            }
            for (long b = 0; b < d; ++b) {
                mpfr_set_zero(re, 1);
                mpfr_set_zero(im, 1);
                long idx = 0;
                for (long s = 0; s < d; ++s) {
                    const auto& c = cs[static_cast<size_t>(idx)];
                    const auto& sv = sn[static_cast<size_t>(idx)];
                    const auto& x = wre[static_cast<size_t>(s)];
                    const auto& y = wim[static_cast<size_t>(s)];
                    mpfr_mul(t, c.raw(), x.raw(), MPFR_RNDN);
                    mpfr_add(re, re, t, MPFR_RNDN);
                    mpfr_mul(t, sv.raw(), y.raw(), MPFR_RNDN);
                    mpfr_sub(re, re, t, MPFR_RNDN);
                    mpfr_mul(t, c.raw(), y.raw(), MPFR_RNDN);
                    mpfr_add(im, im, t, MPFR_RNDN);
                    mpfr_mul(t, sv.raw(), x.raw(), MPFR_RNDN);
                    mpfr_add(im, im, t, MPFR_RNDN);
                    idx += b;
                    if (idx >= d) idx -= d;
                }
                Real& o = out[static_cast<size_t>(a * d + b)];
                mpfr_sqr(t, re, MPFR_RNDN);
                mpfr_sqr(o.raw(), im, MPFR_RNDN);
                mpfr_add(o.raw(), o.raw(), t, MPFR_RNDN);
            }
        }
        mpfr_clears(t, re, im, static_cast<mpfr_ptr>(nullptr));
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        rows(0, d);
    } else {
        std::vector<std::thread> pool;
        long chunk = (d + static_cast<long>(threads) - 1) / static_cast<long>(threads);
        for (long a0 = 0; a0 < d; a0 += chunk) pool.emplace_back(rows, a0, std::min(d, a0 + chunk));
        for (auto& th : pool) th.join();
    }
    return out;
}

// ---------------------------------------------------------------------------
// G(i,k)

/// Σ_r conj(a_{r+i}) conj(a_{r+k}) a_r a_{r+i+k}
inline Complex gik_numeric(const std::vector<Complex>& a, long i, long k) {
    const long d = static_cast<long>(a.size());
    Complex s(a.at(0).precision());
    auto at = [&](long r) -> const Complex& { return a[static_cast<size_t>(((r % d) + d) % d)]; };
    for (long r = 0; r < d; ++r) s += conj(at(r + i)) * conj(at(r + k)) * at(r) * at(r + i + k);
    return s;
}

/// Exact G(i,k) = Σ_r a_{−r−i} a_{−r−k} a_r a_{r+i+k} in L. Pair products of
/// labelled components are precomputed over one common denominator, so each
/// G needs one product per distinct outer pair and integer additions only.
class ExactGik {
   public:
    explicit ExactGik(const ExactFiducial& f) : f_(f) {
        const size_t L = f.z.size() + 1;  // label L−1 is c0
        comps_ = f.z;
        comps_.push_back(ResidueElem::from_K(f.ring, f.c0));
        pairs_.resize(L * (L + 1) / 2);
        mpz_class den = 1;
        for (size_t x = 0; x < L; ++x) {
            for (size_t y = x; y < L; ++y) {
                ResidueElem pr = comps_[x] * comps_[y];
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), pr.den().get_mpz_t());
                pairs_[key(x, y)] = std::move(pr);
            }
        }
        den_ = den;
        scaledA_.resize(pairs_.size());
        scaledB_.resize(pairs_.size());
        for (size_t q = 0; q < pairs_.size(); ++q) {
            mpz_class f2 = den_ / pairs_[q].den();
            for (size_t c = 0; c < pairs_[q].A().size(); ++c) {
                scaledA_[q].push_back(pairs_[q].A()[c] * f2);
                scaledB_[q].push_back(pairs_[q].B()[c] * f2);
            }
        }
    }

    ResidueElem G(long i, long k) const {
        const long d = static_cast<long>(f_.label.size());
        const size_t m = static_cast<size_t>(f_.ring->degree());
        std::map<size_t, std::pair<std::vector<mpz_class>, std::vector<mpz_class>>> acc;
        for (long r = 0; r < d; ++r) {
            size_t outer = key(lab(-r - i), lab(-r - k));
            size_t innr = key(lab(r), lab(r + i + k));
            auto [it, fresh] = acc.try_emplace(outer);
            auto& [va, vb] = it->second;
            if (fresh) {
                va.assign(m, 0);
                vb.assign(m, 0);
            }
            for (size_t c = 0; c < m; ++c) {
                va[c] += scaledA_[innr][c];
                vb[c] += scaledB_[innr][c];
            }
        }
        const auto& ring = f_.ring;
        std::vector<mpz_class> totA(m, 0), totB(m, 0);
        mpz_class totden = den_ * den_;
        for (const auto& [outer, v] : acc) {
            std::vector<mpz_class> A, B;
            mpz_class den = totden;
            ResidueElem::raw_product(*ring, scaledA_[outer], scaledB_[outer], v.first, v.second, A, B);
            ring->reduce(A, B, den);
            if (den != totden) {
                // non-monic modulus: rescale the running total
                mpz_class f2 = den / totden;
                for (size_t c = 0; c < m; ++c) {
                    totA[c] *= f2;
                    totB[c] *= f2;
                }
                totden = den;
            }
            for (size_t c = 0; c < m; ++c) {
                totA[c] += A[c];
                totB[c] += B[c];
            }
        }
        return ResidueElem::from_raw(ring, std::move(totA), std::move(totB), totden);
    }

    /// G(i,k)·(d+1) − (δ_{i0}+δ_{k0})·norm_sq²; zero iff the SIC equation holds.
    ResidueElem residual(long i, long k, const QuadElem& norm_sq) const {
        const long d = static_cast<long>(f_.label.size());
        ResidueElem g = G(i, k) * (d + 1);
        long delta = (i % d == 0 ? 1 : 0) + (k % d == 0 ? 1 : 0);
        if (delta) g = g - ResidueElem::from_K(f_.ring, norm_sq * norm_sq * delta);
        return g;
    }

   private:
    size_t lab(long r) const {
        const long d = static_cast<long>(f_.label.size());
        int l = f_.label[static_cast<size_t>(((r % d) + d) % d)];
        return l < 0 ? comps_.size() - 1 : static_cast<size_t>(l);
    }
    static size_t key(size_t x, size_t y) {
        if (x > y) std::swap(x, y);
        return y * (y + 1) / 2 + x;
    }

    const ExactFiducial& f_;
    std::vector<ResidueElem> comps_;
    std::vector<ResidueElem> pairs_;
    mpz_class den_ = 1;
    std::vector<std::vector<mpz_class>> scaledA_, scaledB_;
};

// ---------------------------------------------------------------------------
// Verification

enum class Coverage { full, spot };

struct VerifyOptions {
    FiducialMode mode = FiducialMode::numeric;
    Coverage coverage = Coverage::full;
    /// Numeric tolerance; default 10^(−precision/3).
    std::optional<Real> tolerance;
    /// Pairs for spot checks; when empty, `spot_count` random pairs with i, k ≠ 0.
    std::vector<std::pair<long, long>> spot;
    long spot_count = 8;
    unsigned seed = 1;
    unsigned threads = 1;
};

struct OverlapEntry {
    long i = 0;
    long k = 0;
    double deviation = 0;  ///< numeric: |deviation|; exact: 0 or 1
    double seconds = 0;
};

struct OverlapReport {
    FiducialMode mode = FiducialMode::numeric;
    Coverage coverage = Coverage::full;
    long precision = 0;
    long checked = 0;
    Real max_deviation;
    long worst_i = 0;
    long worst_k = 0;
    long nonzero = 0;  ///< exact: number of failing (i,k)
    bool passed = false;
    std::vector<OverlapEntry> entries;  ///< spot entries, or the worst failures
    Real tolerance;
};

namespace detail {

/// One representative (i,k) per orbit of (i,k) ↦ (k,i), (−i,−k), (αi,αk).
inline std::vector<std::pair<long, long>> reduced_pairs(long d, long alpha) {
    std::vector<char> seen(static_cast<size_t>(d * d), 0);
    std::vector<std::pair<long, long>> reps;
    for (long i = 0; i < d; ++i) {
        for (long k = 0; k < d; ++k) {
            if (seen[static_cast<size_t>(i * d + k)]) continue;
            reps.emplace_back(i, k);
            long a = 1;
            do {
                for (long s : {1L, d - 1}) {
                    long ii = i * a % d * s % d, kk = k * a % d * s % d;
                    seen[static_cast<size_t>(ii * d + kk)] = 1;
                    seen[static_cast<size_t>(kk * d + ii)] = 1;
                }
                a = a * alpha % d;
            } while (a != 1);
        }
    }
    return reps;
}

inline std::vector<std::pair<long, long>> spot_pairs(const FiducialVector& psi, const VerifyOptions& opt) {
    if (!opt.spot.empty()) return opt.spot;
    std::mt19937 rng(opt.seed);
    std::uniform_int_distribution<long> pick(1, psi.d - 1);
    std::vector<std::pair<long, long>> out;
    for (long s = 0; s < opt.spot_count; ++s) out.emplace_back(pick(rng), pick(rng));
    return out;
}

}  // namespace detail

/// Zauner multiplier α = θ^m, of order 3ℓ.
inline long zauner_alpha(const FiducialVector& psi) { return mod_pow(psi.theta, psi.m, psi.d); }

inline OverlapReport sic_verify(const FiducialVector& psi, const VerifyOptions& opt = {}) {
    OverlapReport rep;
    rep.mode = opt.mode;
    rep.coverage = opt.coverage;
    const long d = psi.d;
    Precision p = psi.precision();
    rep.precision = p.digits;
    rep.max_deviation = Real(p);
    rep.tolerance = opt.tolerance ? opt.tolerance->with_precision(p) : pow10(-(p.digits / 3), p);

    if (opt.mode == FiducialMode::numeric) {
        auto v = psi.normalized();
        const Real target = Real(1L, p) / (d + 1);
        auto note = [&](long i, long k, const Real& dev) {
            ++rep.checked;
            if (dev > rep.max_deviation) {
                rep.max_deviation = dev;
                rep.worst_i = i;
                rep.worst_k = k;
            }
        };
        if (opt.coverage == Coverage::full) {
            auto mods = overlap_moduli(v, opt.threads);
            for (long a = 0; a < d; ++a) {
                for (long b = 0; b < d; ++b) {
                    if (a == 0 && b == 0) continue;
                    note(a, b, abs(mods[static_cast<size_t>(a * d + b)] - target));
                }
            }
        } else {
            for (auto [a, b] : detail::spot_pairs(psi, opt)) {
                auto t0 = std::chrono::steady_clock::now();
                Real dev = abs(overlap(psi, a, b).norm_sq() - target);
                double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                note(a, b, dev);
                rep.entries.push_back({a, b, dev.to_double(), sec});
            }
        }
        rep.passed = rep.max_deviation < rep.tolerance;
        return rep;
    }

    if (!psi.exact) throw InvalidInput("exact verification needs an exact fiducial");
    ExactGik gik(*psi.exact);
    const QuadElem nsq = psi.norm_sq();
    std::vector<std::pair<long, long>> pairs =
        opt.coverage == Coverage::full ? detail::reduced_pairs(d, zauner_alpha(psi)) : detail::spot_pairs(psi, opt);
    std::vector<char> ok(pairs.size(), 0);
    std::vector<double> secs(pairs.size(), 0);
    auto work = [&](size_t lo, size_t hi) {
        for (size_t q = lo; q < hi; ++q) {
            auto t0 = std::chrono::steady_clock::now();
            ok[q] = gik.residual(pairs[q].first, pairs[q].second, nsq).is_zero() ? 1 : 0;
            secs[q] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    unsigned threads = std::max(1u, opt.threads);
    if (threads == 1) {
        work(0, pairs.size());
    } else {
        std::vector<std::thread> pool;
        size_t chunk = (pairs.size() + threads - 1) / threads;
        for (size_t lo = 0; lo < pairs.size(); lo += chunk) pool.emplace_back(work, lo, std::min(pairs.size(), lo + chunk));
        for (auto& th : pool) th.join();
    }
    for (size_t q = 0; q < pairs.size(); ++q) {
        ++rep.checked;
        if (!ok[q]) {
            if (rep.nonzero == 0) {
                rep.worst_i = pairs[q].first;
                rep.worst_k = pairs[q].second;
            }
            ++rep.nonzero;
            if (rep.entries.size() < 10 || opt.coverage == Coverage::spot) {
                rep.entries.push_back({pairs[q].first, pairs[q].second, 1.0, secs[q]});
            }
        } else if (opt.coverage == Coverage::spot) {
            rep.entries.push_back({pairs[q].first, pairs[q].second, 0.0, secs[q]});
        }
    }
    rep.max_deviation = Real(rep.nonzero ? 1L : 0L, p);
    rep.passed = rep.nonzero == 0;
    return rep;
}

// ---------------------------------------------------------------------------
// Structural checks

struct FlatnessReport {
    Real a0_deviation;      ///< | |a₀|² − (√(d+1)+d−1)/(d√(d+1)) |
    Real ak_deviation;      ///< max over k ≠ 0
    Real norm_deviation;    ///< | 1/|Ψ̂|² − (d+3−3√(d+1))/(d(d−3)√(d+1)) |
    std::optional<bool> exact_moduli;  ///< z_k·conj(z_k) = −x₀ in L
    bool passed = false;
};

inline FlatnessReport flatness_and_norm(const FiducialVector& psi, std::optional<Real> tolerance = std::nullopt) {
    const long d = psi.d;
    Precision p = psi.precision();
    Real tol = tolerance ? tolerance->with_precision(p) : pow10(-(p.digits / 3), p);
    Real s = sqrt(Real(d + 1, p));
    Real A0 = (s + Real(d - 1, p)) / (Real(d, p) * s);
    Real Ak = (s - Real(1L, p)) / (Real(d, p) * s);
    Real N2 = (Real(d + 3, p) - s * 3L) / (Real(d * (d - 3), p) * s);
    FlatnessReport r{Real(p), Real(p), Real(p), std::nullopt, false};
    auto v = psi.normalized();
    r.a0_deviation = abs(v[0].norm_sq() - A0);
    for (long k = 1; k < d; ++k) r.ak_deviation = std::max(r.ak_deviation, abs(v[static_cast<size_t>(k)].norm_sq() - Ak));
    Real n2(p);
    for (const auto& c : psi.components) n2 += c.norm_sq();
    r.norm_deviation = abs(Real(1L, p) / n2 - N2);
    r.passed = r.a0_deviation < tol && r.ak_deviation < tol && r.norm_deviation < tol;
    if (psi.exact) {
        const auto& z = psi.exact->z;
        const size_t m = z.size(), half = m / 2;
        ResidueElem target = ResidueElem::from_K(psi.exact->ring, -psi.x0);
        bool ok = m % 2 == 0;
        for (size_t k = 0; ok && k < m; ++k) ok = z[k] * z[(k + half) % m] == target;
        r.exact_moduli = ok;
        r.passed = r.passed && ok;
    }
    return r;
}

struct FourierReport {
    std::vector<Real> psi_real;   ///< normalized real fiducial
    Real max_imag;                ///< largest imaginary part after removing the global i
    Real max_autocorr_deviation;  ///< max_i≠0 |√(d+1)⟨Ψ_R|X^i|Ψ_R⟩ − 1|
    Real max_wk_deviation;        ///< Wiener–Khinchin residual
    bool passed = false;
};

/// Ψ̂ = U_F Ψ_R with (U_F)_{r,s} = e^{2πirs/d}/√(−d). For conjugate-symmetric Ψ̂
/// the inverse transform is i times a real vector; that global i is removed.
inline FourierReport fourier_real(const FiducialVector& psi, std::optional<Real> tolerance = std::nullopt) {
    const long d = psi.d;
    Precision p = psi.precision();
    Real tol = tolerance ? tolerance->with_precision(p) : pow10(-(p.digits / 3), p);
    auto a = psi.normalized();
    Real sd = sqrt(Real(d, p));
    FourierReport r{{}, Real(p), Real(p), Real(p)};
    std::vector<Complex> psi_r;
    for (long x = 0; x < d; ++x) {
        // (U_F^† a)_x = Σ_s a_s e^{−2πixs/d} / (−i√d) = (i/√d) Σ_s a_s ω^{−xs}
        Complex s(p);
        for (long y = 0; y < d; ++y) s += a[static_cast<size_t>(y)] * root_of_unity(-x * y % d, d, p);
        Complex val = Complex(-s.im, s.re) / sd;  // i·s/√d
        Complex real_part = Complex(val.im, -val.re);  // divide by i
        psi_r.push_back(real_part);
        r.max_imag = std::max(r.max_imag, abs(real_part.im));
        r.psi_real.push_back(real_part.re);
    }
    Real s1 = sqrt(Real(d + 1, p));
    std::vector<Complex> ac;
    for (long i = 0; i < d; ++i) {
        ac.push_back(shift_expectation(psi_r, i));
        if (i) r.max_autocorr_deviation = std::max(r.max_autocorr_deviation, abs(ac.back() * s1 - Complex(Real(1L, p))));
    }
    for (long k = 0; k < d; ++k) {
        Complex s(p);
        for (long i = 0; i < d; ++i) s += root_of_unity(-k * i % d, d, p) * ac[static_cast<size_t>(i)];
        s = s / Real(d, p);
        r.max_wk_deviation = std::max(r.max_wk_deviation, abs(s - Complex(a[static_cast<size_t>(k)].norm_sq())));
    }
    r.passed = r.max_imag < tol && r.max_autocorr_deviation < tol && r.max_wk_deviation < tol;
    return r;
}

struct SymmetryReport {
    long alpha = 0;            ///< θ^m, order 3ℓ
    long alpha_order = 0;
    Real zauner_deviation;     ///< max |a_{αr} − a_r|
    Real conjugate_deviation;  ///< max |a_{−r} − conj(a_r)|
    long distinct_values = 0;
    bool uniform_multiplicity = false;
    bool passed = false;
};

inline SymmetryReport symmetry_check(const FiducialVector& psi, std::optional<Real> tolerance = std::nullopt) {
    const long d = psi.d;
    Precision p = psi.precision();
    Real tol = tolerance ? tolerance->with_precision(p) : pow10(-(p.digits / 3), p);
    SymmetryReport r{zauner_alpha(psi), 0, Real(p), Real(p)};
    long a = r.alpha;
    r.alpha_order = 1;
    while (a != 1) {
        a = a * r.alpha % d;
        ++r.alpha_order;
    }
    const auto& c = psi.components;
    for (long x = 0; x < d; ++x) {
        r.zauner_deviation = std::max(r.zauner_deviation, abs(c[static_cast<size_t>(x * r.alpha % d)] - c[static_cast<size_t>(x)]));
        r.conjugate_deviation =
            std::max(r.conjugate_deviation, abs(c[static_cast<size_t>((d - x) % d)] - conj(c[static_cast<size_t>(x)])));
    }
    // cluster nonzero-index components
    std::vector<std::pair<Complex, long>> vals;
    for (long x = 1; x < d; ++x) {
        bool found = false;
        for (auto& [v, n] : vals) {
            if (abs(v - c[static_cast<size_t>(x)]) < tol) {
                ++n;
                found = true;
                break;
            }
        }
        if (!found) vals.emplace_back(c[static_cast<size_t>(x)], 1);
    }
    r.distinct_values = static_cast<long>(vals.size());
    r.uniform_multiplicity = std::all_of(vals.begin(), vals.end(), [&](const auto& pr) { return pr.second == 3 * psi.ell; });
    r.passed = r.alpha_order == 3 * psi.ell && r.zauner_deviation < tol && r.conjugate_deviation < tol &&
               r.distinct_values == (d - 1) / (3 * psi.ell) && r.uniform_multiplicity;
    return r;
}

struct PhaseReport {
    Real multiset_deviation;  ///< max_j min_k |√(d+1)⟨Ψ|X^j|Ψ⟩ − y_k|
    bool multiplicity_ok = false;
    Complex ratio;            ///< c with √(d+1)⟨Ψ|X^{−2j}|Ψ⟩ = c·a_j²/|a_j|²
    Real ratio_spread;        ///< max_j |ratio_j − c|
    bool passed = false;
};

/// Compares the overlap phases with the Stark phase units y_j. The second
/// identity is checked up to a j-independent unit c fixed by the global phase of Ψ.
inline PhaseReport overlap_phase_check(const FiducialVector& psi, const std::vector<Complex>& y,
                                       std::optional<Real> tolerance = std::nullopt) {
    const long d = psi.d;
    Precision p = psi.precision();
    Real tol = tolerance ? tolerance->with_precision(p) : pow10(-(p.digits / 3), p);
    auto v = psi.normalized();
    Real s1 = sqrt(Real(d + 1, p));
    PhaseReport r{Real(p), false, Complex(p), Real(p)};
    std::vector<long> hits(y.size(), 0);
    for (long j = 1; j < d; ++j) {
        Complex e = shift_expectation(v, j) * s1;
        size_t best = 0;
        Real bd = abs(e - y[0]);
        for (size_t k = 1; k < y.size(); ++k) {
            Real dk = abs(e - y[k]);
            if (dk < bd) {
                bd = dk;
                best = k;
            }
        }
        ++hits[best];
        r.multiset_deviation = std::max(r.multiset_deviation, bd);
    }
    r.multiplicity_ok = std::all_of(hits.begin(), hits.end(), [&](long h) { return h == 3 * psi.ell; });
    std::vector<Complex> ratios;
    for (long j = 1; j < d; ++j) {
        const Complex& aj = v[static_cast<size_t>(j)];
        Complex lhs = shift_expectation(v, (-2 * j % d + d) % d) * s1;
        Complex rhs = aj * aj / aj.norm_sq();
        ratios.push_back(lhs / rhs);
    }
    r.ratio = ratios[0];
    for (const auto& q : ratios) r.ratio_spread = std::max(r.ratio_spread, abs(q - r.ratio));
    Real unit_dev = abs(abs(r.ratio) - Real(1L, p));
    r.passed = r.multiset_deviation < tol && r.multiplicity_ok && r.ratio_spread < tol && unit_dev < tol;
    return r;
}

}  // namespace sicfid
