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

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sicfid/bigreal.hpp"
#include "sicfid/errors.hpp"
#include "sicfid/lll.hpp"
#include "sicfid/poly.hpp"
#include "sicfid/quadfield.hpp"

namespace sicfid {

using CPoly = Poly<Complex>;

/// log10 of the largest coefficient modulus (0 for tiny polynomials).
inline long coefficient_height_digits(const CPoly& p) {
    long h = 0;
    for (const auto& c : p.coeffs()) h = std::max(h, abs(c).log10_abs() + 1);
    return h;
}

inline CPoly with_precision(const CPoly& p, Precision prec) {
    return p.map([&](const Complex& c) { return c.with_precision(prec); });
}

/// Lexicographic (re, im) order with a tolerance on the real part.
inline void sort_roots(std::vector<Complex>& r, const Real& tol) {
    std::sort(r.begin(), r.end(), [&](const Complex& a, const Complex& b) {
        Real dr = a.re - b.re;
        if (abs(dr) > tol) return a.re < b.re;
        return a.im < b.im;
    });
}

/// Residual history of a Newton run.
struct NewtonTrace {
    std::vector<long> log10_residuals;
};

/// Newton's method on p (coefficients already rendered at the target
/// precision) starting from x0. Stops when the step is below the precision
/// floor. Throws if the residual grows three times in a row.
inline Complex newton_polish(const CPoly& p, const Complex& x0, Precision target, NewtonTrace* trace = nullptr) {
    if (p.degree() < 1) throw InvalidInput("newton_polish needs a non-constant polynomial");
    CPoly pt = with_precision(p, target);
    CPoly dp = pt.derivative();
    Complex z = x0.with_precision(target);
    const Real floor_step = pow10(-(target.digits - 2), target);
    Real last_res(-1L, target);
    int growth = 0;
    for (int it = 0; it < 400; ++it) {
        Complex v = pt.eval(z);
        Real res = abs(v);
        if (trace) trace->log10_residuals.push_back(res.log10_abs());
        if (res.is_zero()) return z;
        if (last_res.sign() >= 0 && res > last_res) {
            if (++growth >= 3) throw ComputationError("newton_polish diverged, residual " + res.to_string(6));
        } else {
            growth = 0;
        }
        last_res = res;
        Complex dv = dp.eval(z);
        if (dv.is_zero()) throw ComputationError("newton_polish hit a critical point");
        Complex step = v / dv;
        z -= step;
        if (abs(step) <= floor_step * (abs(z) + Real(1L, target))) {
            if (trace) trace->log10_residuals.push_back(abs(pt.eval(z)).log10_abs());
            return z;
        }
    }
    throw ComputationError("newton_polish did not converge, residual " + last_res.to_string(6));
}

/// Polish against an exact K-polynomial, rendered at the target precision.
inline Complex newton_polish(const KPoly& p, Embedding e, const Complex& x0, Precision target,
                             NewtonTrace* trace = nullptr) {
    return newton_polish(embed(p, target, e), x0, target, trace);
}

struct RootResult {
    std::vector<Complex> roots;
    long guard_digits = 0;  ///< each |p(root)| < 10^(−precision + guard)
    Real max_residual;
};

/// All roots by Aberth–Ehrlich iteration followed by Newton polishing.
/// Roots are returned in (re, im) order.
inline RootResult find_roots(const CPoly& p_in, Precision prec) {
    const int n = p_in.degree();
    if (n < 1) throw InvalidInput("find_roots needs degree >= 1");
    const long height = coefficient_height_digits(p_in);
    const long guard = height + static_cast<long>(std::ceil(std::log10(n + 1.0))) + 5;
    const Precision work{std::min(prec.digits, std::max(40L, 2 * height + 30))};
    CPoly p = with_precision(p_in, work);
    CPoly dp = p.derivative();

    // Initial guesses on a circle of radius |a0/an|^(1/n), with an irrational angle offset.
    Real r0 = abs(p[0]).is_zero() ? Real(1L, work) : exp(log(abs(p[0]) / abs(p.leading())) / static_cast<long>(n));
    std::vector<Complex> z;
    Real twopi = Real::pi(work) * 2L;
    for (int k = 0; k < n; ++k) {
        Real ang = twopi * static_cast<long>(k) / static_cast<long>(n) + Real(0.4, work);
        z.push_back(expi(ang) * r0);
    }
    const Real tol = pow10(-(work.digits - height - 8), work);
    bool done = false;
    for (int it = 0; it < 2000 && !done; ++it) {
        done = true;
        for (int k = 0; k < n; ++k) {
            Complex v = p.eval(z[k]);
            if (v.is_zero()) continue;
            Complex w = v / dp.eval(z[k]);
            Complex s(work);
            for (int j = 0; j < n; ++j) {
                if (j != k) s += Complex(Real(1L, work)) / (z[k] - z[j]);
            }
            Complex a = w / (Complex(Real(1L, work)) - w * s);
            z[k] -= a;
            if (abs(a) > tol * (abs(z[k]) + Real(1L, work))) done = false;
        }
    }
    if (!done) throw ComputationError("find_roots: Aberth iteration did not converge");

    RootResult out;
    out.guard_digits = guard;
    out.max_residual = Real(prec);
    CPoly pf = with_precision(p_in, prec);
    for (auto& r : z) {
        Complex polished = prec.digits > work.digits ? newton_polish(pf, r, prec) : r.with_precision(prec);
        Real res = abs(pf.eval(polished));
        if (res > out.max_residual) out.max_residual = res;
        out.roots.push_back(polished);
    }
    // Distinctness: Newton from two guesses must not land on one root.
    const Real sep = pow10(-(prec.digits / 2), prec);
    for (size_t i = 0; i < out.roots.size(); ++i) {
        for (size_t j = i + 1; j < out.roots.size(); ++j) {
            if (abs(out.roots[i] - out.roots[j]) < sep) throw ComputationError("find_roots: two roots coincide");
        }
    }
    sort_roots(out.roots, pow10(-(prec.digits / 2), prec));
    return out;
}

/// Roots of an exact K-polynomial under an embedding; checks square-freeness exactly.
inline RootResult find_roots(const KPoly& p, Embedding e, Precision prec) {
    if (p.degree() >= 1 && gcd(p, p.derivative()).degree() > 0) throw InvalidInput("find_roots: polynomial is not square-free");
    return find_roots(embed(p, prec, e), prec);
}

/// Π (t − r_j), constant-first.
inline CPoly minpoly_from_roots(const std::vector<Complex>& roots) {
    if (roots.empty()) throw InvalidInput("minpoly_from_roots needs at least one root");
    Precision prec = roots[0].precision();
    std::vector<Complex> c{Complex(Real(1L, prec))};
    for (const auto& r : roots) {
        std::vector<Complex> next(c.size() + 1, Complex(prec));
        for (size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= c[i] * r;
        }
        c = std::move(next);
    }
    return CPoly(std::move(c));
}

// ---------------------------------------------------------------------------
// Integer relations

enum class Verdict { accepted, rejected };

struct IntegerRelationResult {
    /// target ≈ Σ coefficients[i] · basis[i] / denominator
    std::vector<mpz_class> coefficients;
    mpz_class denominator = 1;
    Real residual;
    size_t basis_size = 0;
    Verdict verdict = Verdict::rejected;
    std::string reason;

    bool accepted() const { return verdict == Verdict::accepted; }
};

struct IntegerRelationOptions {
    /// Reject when the recovered denominator exceeds this (0 = no bound).
    mpz_class denominator_bound = 0;
    /// Digits used for the lattice scale; defaults to the working precision minus a guard.
    long scale_digits = 0;
};

namespace detail {

/// One LLL run on (target, basis...) at scale 10^digits. Returns the relation
/// vector with positive target coefficient, or nothing.
inline std::optional<std::vector<mpz_class>> relation_at_scale(const std::vector<Real>& x, long digits) {
    const size_t n = x.size();
    Precision p = x[0].precision();
    Real S = pow10(digits, Precision{std::max(p.digits, digits + 10)});
    std::vector<IntVec> rows(n, IntVec(n + 1, 0));
    for (size_t i = 0; i < n; ++i) {
        rows[i][i] = 1;
        rows[i][n] = (x[i].with_precision(S.precision()) * S).round_to_integer();
    }
    lll_reduce(rows);
    for (const auto& r : rows) {
        if (r[0] == 0) continue;
        std::vector<mpz_class> v(r.begin(), r.begin() + static_cast<long>(n));
        if (v[0] < 0) {
            for (auto& c : v) c = -c;
        }
        mpz_class g = 0;
        for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), mpz_class(abs(c)).get_mpz_t());
        if (g > 1) {
            for (auto& c : v) c /= g;
        }
        return v;
    }
    return std::nullopt;
}

}  // namespace detail

/// Find integers with target ≈ Σ c_i basis_i / den by LLL on the standard
/// relation lattice. Accepted only if runs at two lattice scales agree and the
/// full-precision residual is below 10^(−precision/2).
inline IntegerRelationResult integer_relation(const Real& target, const std::vector<Real>& basis, Precision prec,
                                              const IntegerRelationOptions& opt = {}) {
    IntegerRelationResult out;
    out.basis_size = basis.size();
    out.residual = Real(prec);
    if (basis.empty()) throw InvalidInput("integer_relation needs a basis");
    std::vector<Real> x;
    x.push_back(target.with_precision(prec));
    for (const auto& b : basis) x.push_back(b.with_precision(prec));

    long digits = opt.scale_digits > 0 ? opt.scale_digits : std::max(10L, prec.digits - 10);
    auto full = detail::relation_at_scale(x, digits);
    auto coarse = detail::relation_at_scale(x, std::max(8L, (digits * 3) / 4));
    if (!full) {
        out.reason = "no relation involving the target";
        return out;
    }
    const auto& v = *full;
    out.denominator = v[0];
    out.coefficients.clear();
    for (size_t i = 1; i < v.size(); ++i) out.coefficients.push_back(-v[i]);

    Real value(prec);
    for (size_t i = 0; i < basis.size(); ++i) value += x[i + 1] * Real(out.coefficients[i], prec);
    value /= Real(out.denominator, prec);
    out.residual = abs(value - x[0]);

    const Real bound = pow10(-(prec.digits / 2), prec);
    if (!(out.residual < bound)) {
        out.reason = "residual " + out.residual.to_string(5) + " above 10^-" + std::to_string(prec.digits / 2);
    } else if (!coarse || *coarse != v) {
        out.reason = "relation not stable under a coarser lattice scale";
    } else if (opt.denominator_bound > 0 && out.denominator > opt.denominator_bound) {
        out.reason = "denominator " + out.denominator.get_str() + " exceeds bound";
    } else {
        out.verdict = Verdict::accepted;
    }
    return out;
}

/// Integral basis element ω of K: √D, or (1+√D)/2 when D ≡ 1 mod 4.
inline QuadElem integral_omega(long D) {
    return D % 4 == 1 ? QuadElem(mpq_class(1, 2), mpq_class(1, 2), D) : QuadElem::sqrt_d(D);
}

/// Recognize a real number as an element of K (under 𝔧 or 𝔧^τ) using the basis (1, ω).
inline std::optional<QuadElem> recognize_in_K(const Real& value, long D, Embedding e, Precision prec,
                                              IntegerRelationResult* detail_out = nullptr,
                                              const IntegerRelationOptions& opt = {}) {
    QuadElem w = integral_omega(D);
    std::vector<Real> basis{Real(1L, prec), w.to_real(prec, e)};
    IntegerRelationResult r = integer_relation(value, basis, prec, opt);
    if (detail_out) *detail_out = r;
    if (!r.accepted()) return std::nullopt;
    QuadElem q = (QuadElem::rational(mpq_class(r.coefficients[0]), D) + w * mpq_class(r.coefficients[1])) *
                 mpq_class(1, 1) * mpq_class(mpz_class(1), r.denominator);
    return q;
}

}  // namespace sicfid
