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

#include <cmath>
#include <future>
#include <string>
#include <vector>

#include "sicfid/bigreal.hpp"
#include "sicfid/errors.hpp"
#include "sicfid/numerics.hpp"
#include "sicfid/quadfield.hpp"

namespace sicfid {

// ---------------------------------------------------------------------------
// Ray class group of modulus ∂·𝔧, class number one only.
//
// Realized as (Z/d)^× × {±1} modulo the images of −1 and u_K. A pair (e, s)
// stands for the residue r^e mod ∂ (r a primitive root mod d) together with
// the sign of the generator at the ramified place 𝔧.

struct RayClassGroup {
    long d = 0;
    long D = 0;
    long order = 0;
    long primitive_root = 0;
    /// (e, s) of the chosen generator; group elements are its powers.
    long gen_e = 0;
    int gen_s = 0;
    /// Power of the generator representing σ_T (class of β ≡ 1 mod ∂, 𝔧(β) < 0).
    long sigma_T = 0;
    std::vector<long> dlog;   ///< dlog[x] = e with r^e = x mod d
    std::vector<long> power;  ///< power[2e + s] = k with (e, s) ~ gen^k
    long sqrt_D_mod = 0;      ///< √D mod ∂

    /// Class of the principal ideal (α), α = (a + b√D)/2 with 𝔧(α) of sign s.
    long class_of(long a, long b, int s) const {
        long r = (((a % d) + (b % d) * sqrt_D_mod % d) % d + d) % d;
        r = r * mod_inverse(2, d) % d;
        if (r == 0) throw InvalidInput("ideal not coprime to the modulus");
        return power[static_cast<size_t>(2 * dlog[static_cast<size_t>(r)] + s)];
    }

    /// Cyclic structure such as "2x11".
    std::string structure() const {
        long odd = order;
        long two = 1;
        while (odd % 2 == 0) {
            odd /= 2;
            two *= 2;
        }
        if (odd == 1) return std::to_string(two);
        if (two == 1) return std::to_string(odd);
        return std::to_string(two) + "x" + std::to_string(odd);
    }

    std::string generator_label() const {
        long r = mod_pow(primitive_root, gen_e, d);
        return "(" + std::to_string(r) + " mod " + std::to_string(d) + ", " + (gen_s ? "-" : "+") + ")";
    }
};

inline long primitive_root_mod(long p) {
    auto fs = factorize(p - 1);
    for (long g = 2; g < p; ++g) {
        bool ok = true;
        for (const auto& [q, e] : fs) {
            if (mod_pow(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw InvalidInput("no primitive root mod " + std::to_string(p));
}

inline RayClassGroup ray_class_group(const DimensionInfo& info) {
    if (!info.prime) throw InvalidInput("ray_class_group: d=" + std::to_string(info.d) + " is not prime");
    if (info.h != 1) throw Unsupported("ray_class_group: class number " + std::to_string(info.h) + " > 1");
    const long d = info.d, n = d - 1;
    RayClassGroup G;
    G.d = d;
    G.D = info.D;
    G.primitive_root = primitive_root_mod(d);
    G.dlog.assign(static_cast<size_t>(d), -1);
    for (long e = 0, x = 1; e < n; ++e, x = x * G.primitive_root % d) G.dlog[static_cast<size_t>(x)] = e;
    G.sqrt_D_mod = ((-mod_inverse(info.f, d)) % d + d) % d;

    // u_K = (ua + ub√D)/2 is positive at 𝔧
    const long ua = mpz_class(info.unit.a() * 2).get_si(), ub = mpz_class(info.unit.b() * 2).get_si();
    long ur = ((ua % d + ub % d * G.sqrt_D_mod) % d + d) % d * mod_inverse(2, d) % d;
    const std::pair<long, int> gens[2] = {{n / 2, 1}, {G.dlog[static_cast<size_t>(ur)], 0}};

    // subgroup H generated by the unit images
    std::vector<char> inH(static_cast<size_t>(2 * n), 0);
    std::vector<std::pair<long, int>> stack{{0, 0}};
    inH[0] = 1;
    while (!stack.empty()) {
        auto [e, s] = stack.back();
        stack.pop_back();
        for (const auto& [ge, gs] : gens) {
            long e2 = (e + ge) % n;
            int s2 = (s + gs) % 2;
            if (!inH[static_cast<size_t>(2 * e2 + s2)]) {
                inH[static_cast<size_t>(2 * e2 + s2)] = 1;
                stack.emplace_back(e2, s2);
            }
        }
    }
    long hsize = 0;
    for (char c : inH) hsize += c;
    G.order = 2 * n / hsize;
    if (G.order != info.m) {
        throw InconsistencyError("ray class group order " + std::to_string(G.order) + " differs from (d-1)/(3 ell) = " +
                                 std::to_string(info.m));
    }

    // first element (in (e, s) order) whose powers meet every coset
    bool found = false;
    for (long e = 0; e < n && !found; ++e) {
        for (int s = 0; s < 2; ++s) {
            std::vector<long> pw(static_cast<size_t>(2 * n), -1);
            long ce = 0;
            int cs = 0;
            long k = 0;
            for (; k < G.order; ++k) {
                if (pw[static_cast<size_t>(2 * ce + cs)] >= 0) break;
                // mark the whole coset (ce, cs) + H
                for (long he = 0; he < n; ++he) {
                    for (int hs = 0; hs < 2; ++hs) {
                        if (inH[static_cast<size_t>(2 * he + hs)]) {
                            pw[static_cast<size_t>(2 * ((ce + he) % n) + (cs + hs) % 2)] = k;
                        }
                    }
                }
                ce = (ce + e) % n;
                cs = (cs + s) % 2;
            }
            if (k == G.order) {
                G.gen_e = e;
                G.gen_s = s;
                G.power = std::move(pw);
                found = true;
                break;
            }
        }
    }
    if (!found) throw InconsistencyError("ray class group is not cyclic");
    G.sigma_T = G.power[1];  // (e, s) = (0, 1)
    if (G.order > 1 && (2 * G.sigma_T) % G.order != 0) throw InconsistencyError("sigma_T is not of order 2");
    return G;
}

// ---------------------------------------------------------------------------
// Characters χ_k(gen^j) = e^{2πi jk/|G|}

struct Character {
    long k = 0;
    long order = 0;  ///< |G|
    bool odd = false;  ///< χ(σ_T) = −1

    Complex value(long j, Precision p) const { return root_of_unity(j * k, order, p); }
};

inline std::vector<Character> characters(const RayClassGroup& G) {
    std::vector<Character> out;
    for (long k = 0; k < G.order; ++k) {
        Character c;
        c.k = k;
        c.order = G.order;
        c.odd = (k * G.sigma_T) % G.order != 0;
        out.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dirichlet coefficients

/// counts[n][j]: integral ideals of norm n in the class gen^j.
struct IdealCounts {
    long cutoff = 0;
    std::vector<std::vector<long>> counts;
};

/// Each ideal (α) has one generator with 𝔧(α) > 0 and 1 ≤ α/|α^τ| < u_K²,
/// so enumerating such α of norm ≤ cutoff lists every ideal once.
inline IdealCounts ideal_counts(const DimensionInfo& info, const RayClassGroup& G, long cutoff) {
    IdealCounts out;
    out.cutoff = cutoff;
    out.counts.assign(static_cast<size_t>(cutoff + 1), std::vector<long>(static_cast<size_t>(G.order), 0));
    const long D = info.D;
    const bool half = D % 4 == 1;
    const long ua = mpz_class(info.unit.a() * 2).get_si(), ub = mpz_class(info.unit.b() * 2).get_si();
    const double u = info.unit.to_real(Precision{20}).to_double();
    const long A = static_cast<long>(2.0 * std::sqrt(static_cast<double>(cutoff)) * u) + 2;
    const long B = static_cast<long>(static_cast<double>(A) / std::sqrt(static_cast<double>(D))) + 2;
    auto sgn = [](__int128 x) { return (x > 0) - (x < 0); };
    for (long a = -A; a <= A; ++a) {
        for (long b = -B; b <= B; ++b) {
            if (((a - b) % 2) != 0) continue;
            if (!half && ((a % 2) != 0 || (b % 2) != 0)) continue;
            // 𝔧(α) > 0 with α = (a + b√D)/2
            __int128 a2 = static_cast<__int128>(a) * a, bd = static_cast<__int128>(b) * b * D;
            bool pos = (a >= 0 && b >= 0 && (a || b)) || (a > 0 && a2 > bd) || (b > 0 && bd > a2);
            if (!pos) continue;
            __int128 nm = (a2 - bd) / 4;
            if (nm < 0) nm = -nm;
            if (nm == 0 || nm > cutoff) continue;
            // α ≥ |α^τ|  ⇔  ab ≥ 0
            if (sgn(a) * sgn(b) < 0) continue;
            // α/u_K < |(α/u_K)^τ|  ⇔  a'b' < 0 for α u_K^{-1} = (a' + b'√D)/2
            __int128 ap = -static_cast<__int128>(a) * ua + static_cast<__int128>(b) * ub * D;
            __int128 bp = static_cast<__int128>(a) * ub - static_cast<__int128>(b) * ua;
            if (!(sgn(ap) * sgn(bp) < 0)) continue;
            long r = ((a % G.d + (b % G.d) * G.sqrt_D_mod) % G.d + G.d) % G.d;
            if (r == 0) continue;
            out.counts[static_cast<size_t>(nm)][static_cast<size_t>(G.class_of(a, b, 0))] += 1;
        }
    }
    return out;
}

/// Norm of the conductor times disc(K), and A = √N/(2π).
inline Real lfunction_scale(const DimensionInfo& info, Precision p) {
    return sqrt(Real(discriminant(info.D) * info.d, p)) / (Real::pi(p) * 2L);
}

/// Cutoff so that the smoothed tails at t ∈ {1, 6/5} fall below 10^−digits.
inline long lfunction_cutoff(const DimensionInfo& info, long digits) {
    double A = std::sqrt(static_cast<double>(discriminant(info.D) * info.d)) / (2.0 * M_PI);
    return static_cast<long>(std::ceil(1.2 * A * (static_cast<double>(digits) * std::log(10.0) + 10.0))) + 5;
}

struct LDerivative {
    Complex value;
    Complex root_number;  ///< W fitted from two test points; |W| = 1 for a correct cutoff
};

/// Character-independent smoothing weights E1(nt/A) and (A/n) e^{−n/(tA)}
/// for t ∈ {1, 6/5} and n ≤ cutoff.
struct LKernel {
    Precision precision;
    long cutoff = 0;
    std::vector<Real> e1[2];
    std::vector<Real> dual[2];
};

inline LKernel lfunction_kernel(const DimensionInfo& info, long cutoff, Precision work) {
    LKernel k;
    k.precision = work;
    k.cutoff = cutoff;
    const Real A = lfunction_scale(info, work);
    const Real ts[2] = {Real(1L, work), Real(6L, work) / 5L};
    for (int i = 0; i < 2; ++i) {
        k.e1[i].push_back(Real(work));
        k.dual[i].push_back(Real(work));
        for (long n = 1; n <= cutoff; ++n) {
            Real nn(n, work);
            k.e1[i].push_back(expint_e1(nn * ts[i] / A));
            k.dual[i].push_back(A / nn * exp(-nn / (ts[i] * A)));
        }
    }
    return k;
}

/// L′(0, χ) for Λ(s) = A^s Γ(s) L(s) = W·conj(Λ)(1 − s). With L(0) = 0,
/// L′(0) = Σ c_n E1(nt/A) + W Σ conj(c_n) (A/n) e^{−n/(tA)} for every t > 0;
/// W is fixed by equating t = 1 and t = 6/5.
inline LDerivative lfunction_deriv0(const Character& chi, const IdealCounts& ic, const LKernel& ker, Precision prec) {
    LDerivative out{Complex(prec), Complex(prec)};
    if (!chi.odd) return out;
    const Precision work = ker.precision;
    if (ker.cutoff < ic.cutoff) throw InvalidInput("lfunction_deriv0: kernel shorter than the coefficient list");
    std::vector<Complex> chiv;
    for (long j = 0; j < chi.order; ++j) chiv.push_back(chi.value(j, work));
    Complex s1[2] = {Complex(work), Complex(work)}, s2[2] = {Complex(work), Complex(work)};
    for (long n = 1; n <= ic.cutoff; ++n) {
        Complex cn(work);
        for (long j = 0; j < chi.order; ++j) {
            long cnt = ic.counts[static_cast<size_t>(n)][static_cast<size_t>(j)];
            if (cnt) cn += chiv[static_cast<size_t>(j)] * cnt;
        }
        if (cn.is_zero()) continue;
        for (int i = 0; i < 2; ++i) {
            s1[i] += cn * ker.e1[i][static_cast<size_t>(n)];
            s2[i] += conj(cn) * ker.dual[i][static_cast<size_t>(n)];
        }
    }
    Complex W = (s1[1] - s1[0]) / (s2[0] - s2[1]);
    out.value = (s1[0] + W * s2[0]).with_precision(prec);
    out.root_number = W.with_precision(prec);
    Real dev = abs(abs(W) - Real(1L, work));
    if (dev > pow10(-(prec.digits - 5), work)) {
        throw ComputationError("lfunction_deriv0: fitted root number has |W| - 1 = " + dev.to_string(5) +
                               "; cutoff " + std::to_string(ic.cutoff) + " too small, try " +
                               std::to_string(2 * ic.cutoff));
    }
    return out;
}

inline LDerivative lfunction_deriv0(const Character& chi, const IdealCounts& ic, const DimensionInfo& info,
                                    Precision prec) {
    if (!chi.odd) return {Complex(prec), Complex(prec)};
    return lfunction_deriv0(chi, ic, lfunction_kernel(info, ic.cutoff, Precision{prec.digits + 10}), prec);
}

// ---------------------------------------------------------------------------
// Stark units

struct StarkUnitSet {
    long d = 0;
    long D = 0;
    long ell = 0;
    Precision precision;
    std::vector<Real> values;  ///< ε_j for the class gen^j
    long sigma_T_index = 0;
    std::string generator_label;
    std::vector<Complex> l_derivatives;  ///< L′(0, χ_k), zero for even k
};

/// ε_j = exp(δ′(0, gen^j)), δ′(0, σ) = (2/|G|) Σ_{χ odd} conj(χ(σ)) L′(0, χ).
inline StarkUnitSet stark_units(const DimensionInfo& info, Precision prec, unsigned threads = 1) {
    RayClassGroup G = ray_class_group(info);
    std::vector<Character> chars = characters(G);
    Precision work{prec.digits + 10};
    IdealCounts ic = ideal_counts(info, G, lfunction_cutoff(info, work.digits));
    LKernel ker = lfunction_kernel(info, ic.cutoff, work);

    std::vector<Complex> Lp(chars.size(), Complex(work));
    if (threads <= 1) {
        for (size_t k = 0; k < chars.size(); ++k) Lp[k] = lfunction_deriv0(chars[k], ic, ker, work).value;
    } else {
        std::vector<std::future<LDerivative>> jobs;
        for (const auto& ch : chars) {
            jobs.push_back(std::async(std::launch::async, [&, ch] { return lfunction_deriv0(ch, ic, ker, work); }));
        }
        for (size_t k = 0; k < jobs.size(); ++k) Lp[k] = jobs[k].get().value;
    }

    StarkUnitSet out;
    out.d = info.d;
    out.D = info.D;
    out.ell = info.ell;
    out.precision = prec;
    out.sigma_T_index = G.sigma_T;
    out.generator_label = G.generator_label();
    const Real tiny = pow10(-(prec.digits - 5), work);
    for (long j = 0; j < G.order; ++j) {
        Complex s(work);
        for (const auto& ch : chars) {
            if (ch.odd) s += conj(ch.value(j, work)) * Lp[static_cast<size_t>(ch.k)];
        }
        s = s * Real(2L, work) / Real(G.order, work);
        if (abs(s.im) > tiny) throw ComputationError("stark_units: partial zeta derivative is not real");
        out.values.push_back(exp(s.re).with_precision(prec));
    }
    for (auto& v : Lp) out.l_derivatives.push_back(v.with_precision(prec));
    return out;
}

/// Max |ε_j ε_{σ_T j} − 1|.
inline Real inverse_pair_deviation(const StarkUnitSet& s) {
    Real worst(s.precision);
    const long G = static_cast<long>(s.values.size());
    for (long j = 0; j < G; ++j) {
        Real dev = abs(s.values[static_cast<size_t>(j)] * s.values[static_cast<size_t>((j + s.sigma_T_index) % G)] -
                       Real(1L, s.precision));
        if (dev > worst) worst = dev;
    }
    return worst;
}

/// Exact minimal polynomial over K of real values (𝔧-embedding), coefficientwise
/// integer relations on (1, ω).
inline KPoly minpoly_stark(const std::vector<Real>& values, long D, Precision prec) {
    if (values.empty()) throw InvalidInput("minpoly_stark: no values");
    std::vector<Complex> roots;
    for (const auto& v : values) roots.emplace_back(v.with_precision(prec));
    CPoly num = minpoly_from_roots(roots);
    std::vector<QuadElem> c;
    for (size_t i = 0; i < num.size(); ++i) {
        IntegerRelationResult detail;
        auto q = recognize_in_K(num[i].re, D, Embedding::j, prec, &detail);
        if (!q) {
            throw ComputationError("minpoly_stark: coefficient " + std::to_string(i) + " not recognized (" + detail.reason +
                                   "); the relation height must stay below half the working digits, raise precision");
        }
        c.push_back(*q);
    }
    KPoly p(std::move(c));
    CPoly pe = embed(p, prec, Embedding::j);
    const Real tol = pow10(-(prec.digits / 2), prec);
    for (const auto& r : roots) {
        if (abs(pe.eval(r)) > tol) throw ComputationError("minpoly_stark: recovered polynomial misses a value");
    }
    return p;
}

inline KPoly minpoly_stark(const StarkUnitSet& units) {
    KPoly p = minpoly_stark(units.values, units.D, units.precision);
    mpq_class nc = p.coeff_or_zero(0, QuadElem::rational(0, units.D)).norm();
    if (nc != 1 && nc != -1) throw ComputationError("minpoly_stark: constant term is not a unit");
    return p;
}

}  // namespace sicfid
