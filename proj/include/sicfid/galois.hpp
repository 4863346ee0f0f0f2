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

#include <memory>
#include <string>
#include <vector>

#include "sicfid/bigreal.hpp"
#include "sicfid/errors.hpp"
#include "sicfid/numerics.hpp"
#include "sicfid/polyfield.hpp"
#include "sicfid/quadfield.hpp"

namespace sicfid {

/// A polynomial g with g(r_j) = r_{j+1} on the roots of some p.
struct GaloisPoly {
    KPoly g;
    long cycle_length = 0;
    long block_count = 1;
};

/// Interpolating polynomial through (x_j, y_j), constant-first.
inline CPoly lagrange_interpolate(const std::vector<Complex>& x, const std::vector<Complex>& y) {
    if (x.size() != y.size() || x.empty()) throw InvalidInput("lagrange_interpolate: size mismatch");
    const size_t n = x.size();
    Precision prec = x[0].precision();
    CPoly M = minpoly_from_roots(x);
    CPoly dM = M.derivative();
    std::vector<Complex> out(n, Complex(prec));
    for (size_t j = 0; j < n; ++j) {
        Complex w = y[j] / dM.eval(x[j]);
        // M(t)/(t − x_j) by synthetic division, highest first
        Complex carry = M[n];
        for (size_t k = n; k-- > 0;) {
            out[k] += carry * w;
            carry = M[k] + carry * x[j];
        }
    }
    return CPoly(std::move(out));
}

/// Recognize g with g(r_j) = r_{j+1 mod n} on the given root order and check it exactly.
inline GaloisPoly interpolate_galois(const KPoly& p, const std::vector<Complex>& ordered, Precision prec,
                                     Embedding e = Embedding::j) {
    const size_t n = ordered.size();
    if (static_cast<int>(n) != p.degree()) throw InvalidInput("interpolate_galois: need all roots of p");
    const long D = p.leading().D();
    if (n == 1) {
        GaloisPoly id;
        id.g = KPoly::identity(p.leading());
        id.cycle_length = 1;
        return id;
    }
    std::vector<Complex> img;
    for (size_t j = 0; j < n; ++j) img.push_back(ordered[(j + 1) % n]);
    CPoly num = lagrange_interpolate(ordered, img);
    const Real tiny = pow10(-(prec.digits / 2), prec);
    std::vector<QuadElem> c;
    for (size_t i = 0; i < num.size(); ++i) {
        if (abs(num[i].im) > tiny * (abs(num[i].re) + Real(1L, prec))) {
            throw ComputationError("interpolate_galois: coefficient " + std::to_string(i) + " is not real");
        }
        IntegerRelationResult detail;
        auto q = recognize_in_K(num[i].re, D, e, prec, &detail);
        if (!q) {
            throw ComputationError("interpolate_galois: coefficient " + std::to_string(i) + " not recognized (" +
                                   detail.reason + "); raise precision");
        }
        c.push_back(*q);
    }
    GaloisPoly out;
    out.g = KPoly(std::move(c));
    out.cycle_length = static_cast<long>(n);
    out.block_count = 1;
    return out;
}

/// r, g(r), g(g(r)), ... polished against p at each step.
inline std::vector<Complex> order_roots(const KPoly& p, const KPoly& g, const Complex& seed, long count,
                                        Precision prec, Embedding e = Embedding::j) {
    const long guard = coefficient_height_digits(embed(g, Precision{30}, e)) + 10;
    Precision work{prec.digits + guard};
    CPoly pn = embed(p, prec, e), gn = embed(g, work, e);
    std::vector<Complex> out{newton_polish(pn, seed, prec)};
    for (long k = 1; k < count; ++k) {
        Complex next = gn.eval(out.back().with_precision(work)).with_precision(prec);
        out.push_back(newton_polish(pn, next, prec));
    }
    const Real tol = pow10(-(prec.digits / 2), prec);
    for (size_t i = 0; i < out.size(); ++i) {
        for (size_t j = i + 1; j < out.size(); ++j) {
            if (abs(out[i] - out[j]) < tol) throw InconsistencyError("order_roots: g has a cycle shorter than requested");
        }
    }
    return out;
}

/// Exact facts about g acting on L = K[t]/(p).
struct GaloisExactCheck {
    bool maps_roots = false;   ///< p(g(γ)) = 0 in L
    long order = 0;            ///< least k with g^[k](γ) = γ (0 if none up to deg p)
    std::vector<ResidueElem> iterates;  ///< g^[k](γ) for k = 0..order−1
};

inline GaloisExactCheck verify_galois_exact(const KPoly& p, const KPoly& g) {
    GaloisExactCheck out;
    auto ring = std::make_shared<const ResidueRing>(p);
    ResidueElem gamma = ResidueElem::gamma(ring);
    ResidueElem gg = apply_poly(g, gamma);
    out.maps_roots = apply_poly(p, gg).is_zero();
    ResidueElem cur = gamma;
    out.iterates.push_back(cur);
    for (int k = 1; k <= p.degree(); ++k) {
        cur = apply_poly(g, cur);
        if (cur == gamma) {
            out.order = k;
            return out;
        }
        out.iterates.push_back(cur);
    }
    out.iterates.clear();
    return out;
}

/// Numeric view of the cyclic action on the roots z_j of p4 (ordered so that
/// g(z_j) = z_{j+1}) and on the phases y_j = z_j²/x₀. The half-turn g^[m/2]
/// is taken from the exact iterates, reduced mod p4.
struct GaloisActionReport {
    long order = 0;              ///< exact order of g on L
    bool maps_roots = false;
    Real max_cycle_error;        ///< max |g(z_j) − z_{j+1}|
    Real max_conjugation_error;  ///< max |g^[m/2](z_j) − conj(z_j)|
    Real max_inversion_error;    ///< max |y_{j+m/2} y_j − 1|
    bool passed = false;
};

inline GaloisActionReport verify_galois_action(const KPoly& p4, const KPoly& g, const std::vector<Complex>& z,
                                               const QuadElem& x0, Precision prec) {
    const size_t m = z.size();
    GaloisActionReport r{0, false, Real(prec), Real(prec), Real(prec)};
    if (m == 1) {
        r.order = 1;
        r.maps_roots = r.passed = true;
        return r;
    }
    if (m % 2) throw InvalidInput("verify_galois_action: need an even number of roots");
    GaloisExactCheck ex = verify_galois_exact(p4, g);
    r.order = ex.order;
    r.maps_roots = ex.maps_roots;
    if (ex.order != static_cast<long>(m)) return r;
    const size_t half = m / 2;
    auto guarded = [&](const KPoly& q) {
        Precision work{prec.digits + coefficient_height_digits(embed(q, Precision{30})) + 10};
        return std::make_pair(embed(q, work), work);
    };
    auto [gn, gw] = guarded(g);
    auto [hn, hw] = guarded(ex.iterates[half].to_poly());
    Complex x0c(x0.to_real(prec));
    for (size_t j = 0; j < m; ++j) {
        Real err = abs(gn.eval(z[j].with_precision(gw)).with_precision(prec) - z[(j + 1) % m]);
        if (err > r.max_cycle_error) r.max_cycle_error = err;
        Real cerr = abs(hn.eval(z[j].with_precision(hw)).with_precision(prec) - conj(z[j]));
        if (cerr > r.max_conjugation_error) r.max_conjugation_error = cerr;
        Complex yj = z[j] * z[j] / x0c, yk = z[(j + half) % m] * z[(j + half) % m] / x0c;
        Real ierr = abs(yj * yk - Complex(Real(1L, prec)));
        if (ierr > r.max_inversion_error) r.max_inversion_error = ierr;
    }
    const Real tol = pow10(-(prec.digits - 10), prec);
    r.passed = r.maps_roots && r.max_cycle_error < tol && r.max_conjugation_error < tol && r.max_inversion_error < tol;
    return r;
}

}  // namespace sicfid
