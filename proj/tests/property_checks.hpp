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

// Randomized identities shared by the property tests and the acceptance run.
// Each check returns true when the identity holds for the given seed.

#pragma once

#include <random>
#include <vector>

#include "sicfid/sicfid.hpp"

namespace sicfid::props {

inline const Precision kP{40};

inline Real tol() { return pow10(-30, kP); }

inline std::vector<Complex> random_vector(long d, std::mt19937& rng) {
    std::uniform_int_distribution<long> c(-60, 60);
    std::vector<Complex> v;
    for (long i = 0; i < d; ++i) v.emplace_back(Real(c(rng), kP) / 13L, Real(c(rng), kP) / 17L);
    return v;
}

inline std::vector<Complex> normalize(std::vector<Complex> v) {
    Real n(kP);
    for (const auto& x : v) n += x.norm_sq();
    n = sqrt(n);
    for (auto& x : v) x = x / n;
    return v;
}

inline Real dist(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Real m(kP);
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, abs(a[i] - b[i]));
    return m;
}

// Labels are reduced mod d. For even d that changes D_{a,b} by a sign, so the
// product identities hold up to ±1 there.
inline bool same_up_to_label_sign(long d, const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (dist(a, b) < tol()) return true;
    if (d % 2) return false;
    std::vector<Complex> nb;
    for (const auto& x : b) nb.push_back(-x);
    return dist(a, nb) < tol();
}

/// Z X = ω X Z and D_{a,b} D_{−a,−b} = 1.
inline bool weyl_commutation(long d, unsigned seed) {
    std::mt19937 rng(seed);
    auto v = random_vector(d, rng);
    auto zx = displacement_apply(d, 0, 1, displacement_apply(d, 1, 0, v));
    auto xz = displacement_apply(d, 1, 0, displacement_apply(d, 0, 1, v));
    Complex w = root_of_unity(1, d, kP);
    for (auto& x : xz) x = x * w;
    if (!(dist(zx, xz) < tol())) return false;
    std::uniform_int_distribution<long> pick(0, d - 1);
    long a = pick(rng), b = pick(rng);
    return same_up_to_label_sign(d, displacement_apply(d, -a, -b, displacement_apply(d, a, b, v)), v);
}

/// U_F² = −P for (U_F)_{rs} = ω^{rs}/√(−d), and P D_{a,b} P = D_{−a,−b}.
inline bool parity(long d, unsigned seed) {
    std::mt19937 rng(seed);
    auto v = random_vector(d, rng);
    auto fourier = [&](const std::vector<Complex>& x) {
        // 1/√(−d) = −i/√d
        Real s = sqrt(Real(d, kP));
        std::vector<Complex> out(static_cast<size_t>(d), Complex(kP));
        for (long r = 0; r < d; ++r) {
            Complex acc(kP);
            for (long c = 0; c < d; ++c) acc += root_of_unity(r * c, d, kP) * x[static_cast<size_t>(c)];
            out[static_cast<size_t>(r)] = Complex(acc.im / s, -acc.re / s);
        }
        return out;
    };
    auto P = [&](const std::vector<Complex>& x) {
        std::vector<Complex> out(x.size(), Complex(kP));
        for (long r = 0; r < d; ++r) out[static_cast<size_t>(r)] = x[static_cast<size_t>((d - r) % d)];
        return out;
    };
    auto ff = fourier(fourier(v));
    auto mp = P(v);
    for (auto& x : mp) x = -x;
    if (!(dist(ff, mp) < tol())) return false;
    std::uniform_int_distribution<long> pick(0, d - 1);
    long a = pick(rng), b = pick(rng);
    return same_up_to_label_sign(d, P(displacement_apply(d, a, b, P(v))), displacement_apply(d, -a, -b, v));
}

/// G(i,k) = G(k,i) = G(−i,−k) and conj G(i,k) = G(−i,k) for any vector.
inline bool g_symmetries(long d, unsigned seed) {
    std::mt19937 rng(seed);
    auto v = random_vector(d, rng);
    std::uniform_int_distribution<long> pick(0, d - 1);
    for (int t = 0; t < 5; ++t) {
        long i = pick(rng), k = pick(rng);
        Complex g = gik_numeric(v, i, k);
        Real scale = abs(g) + Real(1L, kP);
        if (!(abs(g - gik_numeric(v, k, i)) < tol() * scale)) return false;
        if (!(abs(g - gik_numeric(v, -i, -k)) < tol() * scale)) return false;
        if (!(abs(conj(g) - gik_numeric(v, -i, k)) < tol() * scale)) return false;
    }
    return true;
}

/// Σ_{a,b} |⟨v|D_{a,b}|v⟩|² = d for unit v.
inline bool completeness(long d, unsigned seed) {
    std::mt19937 rng(seed);
    auto v = normalize(random_vector(d, rng));
    Real s(kP);
    for (const auto& x : overlap_moduli(v)) s += x;
    return abs(s - Real(d, kP)) < tol();
}

/// Recognizing a random element of K at two working precisions and two
/// lattice scales never gives a wrong answer, and the finest scale finds it.
/// A coarse scale may decline when the height is too large for it.
inline bool integer_relation_scales(unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> c(-5000, 5000), den(1, 300);
    const long Ds[] = {2, 3, 5, 13, 26};
    long D = Ds[seed % 5];
    QuadElem x(mpq_class(c(rng), den(rng)), mpq_class(c(rng), den(rng)), D);
    for (long digits : {40L, 60L}) {
        Precision p{digits};
        for (long scale : {digits - 10, digits - 20}) {
            IntegerRelationOptions opt;
            opt.scale_digits = scale;
            auto got = recognize_in_K(x.to_real(p), D, Embedding::j, p, nullptr, opt);
            if (got && *got != x) return false;
            if (!got && scale >= 40) return false;
        }
    }
    return true;
}

/// τ is a ring involution on K, on K[t] and on K(√r).
inline bool tau_involution(unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> c(-50, 50), den(1, 20);
    const long D = seed % 2 ? 2 : 5;
    auto rnd = [&] { return QuadElem(mpq_class(c(rng), den(rng)), mpq_class(c(rng), den(rng)), D); };
    QuadElem x = rnd(), y = rnd();
    if (x.tau().tau() != x) return false;
    if ((x * y).tau() != x.tau() * y.tau() || (x + y).tau() != x.tau() + y.tau()) return false;
    KPoly p({rnd(), rnd(), rnd(), rnd()}), q({rnd(), rnd()});
    if (tau_conjugate(tau_conjugate(p)) != p) return false;
    if (tau_conjugate(p * q) != tau_conjugate(p) * tau_conjugate(q)) return false;
    HKElem h(x, y, 3);
    return h.tau().tau() == h && h.conj_r().conj_r() == h;
}

/// Roots of a random square-free monic p over K give p back coefficientwise.
inline bool root_minpoly_roundtrip(unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> c(-9, 9);
    const long D = seed % 2 ? 2 : 5;
    const int deg = 2 + static_cast<int>(seed % 4);
    std::vector<QuadElem> cs;
    for (int i = 0; i < deg; ++i) cs.emplace_back(c(rng), c(rng), D);
    cs.emplace_back(1, 0, D);
    KPoly p(cs);
    if (gcd(p, p.derivative()).degree() > 0) return true;  // not square-free: nothing to test
    const Precision prec{60};
    auto roots = find_roots(p, Embedding::j, prec).roots;
    CPoly back = minpoly_from_roots(roots);
    std::vector<QuadElem> rec;
    for (size_t i = 0; i < back.size(); ++i) {
        if (!(abs(back[i].im) < pow10(-40, prec))) return false;
        auto q = recognize_in_K(back[i].re, D, Embedding::j, prec);
        if (!q) return false;
        rec.push_back(*q);
    }
    return KPoly(rec) == p;
}

}  // namespace sicfid::props
