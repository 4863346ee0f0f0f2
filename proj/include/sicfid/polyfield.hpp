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

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sicfid/bigreal.hpp"
#include "sicfid/errors.hpp"
#include "sicfid/numerics.hpp"
#include "sicfid/poly.hpp"
#include "sicfid/quadfield.hpp"

namespace sicfid {

// ---------------------------------------------------------------------------
// τ on polynomials

inline KPoly tau_conjugate(const KPoly& p) {
    return p.map([](const QuadElem& c) { return c.tau(); });
}

inline bool has_rational_coefficients(const KPoly& p) {
    for (const auto& c : p.coeffs()) {
        if (!c.is_rational()) return false;
    }
    return true;
}

/// x₀^m p(t²/x₀) for a polynomial p of degree m.
inline KPoly scaled_square_substitution(const KPoly& p, const QuadElem& x0) {
    const int m = p.degree();
    std::vector<QuadElem> out(2 * static_cast<size_t>(m) + 1, zero_like(x0));
    for (int i = 0; i <= m; ++i) out[2 * static_cast<size_t>(i)] = p[static_cast<size_t>(i)] * x0.pow(m - i);
    return KPoly(std::move(out));
}

// ---------------------------------------------------------------------------
// H_K = K(√r) for class number two

/// α + β√r with α, β ∈ K.
class HKElem {
   public:
    HKElem() = default;
    HKElem(QuadElem alpha, QuadElem beta, long r) : a_(std::move(alpha)), b_(std::move(beta)), r_(r) {}
    static HKElem from_K(const QuadElem& x, long r) { return HKElem(x, zero_like(x), r); }

    const QuadElem& alpha() const { return a_; }
    const QuadElem& beta() const { return b_; }
    long r() const { return r_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool in_K() const { return b_.is_zero(); }

    /// √r ↦ −√r
    HKElem conj_r() const { return HKElem(a_, -b_, r_); }
    HKElem tau() const { return HKElem(a_.tau(), b_.tau(), r_); }

    Real to_real(Precision p, Embedding e = Embedding::j, int sqrt_r_sign = 1) const {
        Real v = a_.to_real(p, e);
        if (!b_.is_zero()) v += b_.to_real(p, e) * sqrt(Real(r_, p)) * static_cast<long>(sqrt_r_sign);
        return v;
    }

    friend HKElem operator+(const HKElem& x, const HKElem& y) { return HKElem(x.a_ + y.a_, x.b_ + y.b_, join(x, y)); }
    friend HKElem operator-(const HKElem& x, const HKElem& y) { return HKElem(x.a_ - y.a_, x.b_ - y.b_, join(x, y)); }
    friend HKElem operator-(const HKElem& x) { return HKElem(-x.a_, -x.b_, x.r_); }
    friend HKElem operator*(const HKElem& x, const HKElem& y) {
        long r = join(x, y);
        return HKElem(x.a_ * y.a_ + x.b_ * y.b_ * r, x.a_ * y.b_ + x.b_ * y.a_, r);
    }
    friend HKElem operator*(const HKElem& x, long k) { return HKElem(x.a_ * k, x.b_ * k, x.r_); }
    HKElem inverse() const {
        QuadElem n = a_ * a_ - b_ * b_ * r_;
        if (n.is_zero()) throw InvalidInput("inverse of zero in H_K");
        QuadElem ni = n.inverse();
        return HKElem(a_ * ni, -(b_ * ni), r_);
    }
    friend HKElem operator/(const HKElem& x, const HKElem& y) { return x * y.inverse(); }
    friend bool operator==(const HKElem& x, const HKElem& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

    std::string to_string() const {
        if (b_.is_zero()) return a_.to_string();
        return "(" + a_.to_string() + ") + (" + b_.to_string() + ")*sqrt(" + std::to_string(r_) + ")";
    }
    friend std::ostream& operator<<(std::ostream& os, const HKElem& x) { return os << x.to_string(); }

   private:
    static long join(const HKElem& x, const HKElem& y) {
        if (x.r_ == y.r_ || y.r_ == 0) return x.r_;
        if (x.r_ == 0) return y.r_;
        throw InvalidInput("mixing different H_K generators");
    }
    QuadElem a_, b_;
    long r_ = 0;
};

inline bool is_zero(const HKElem& x) { return x.is_zero(); }
inline HKElem zero_like(const HKElem& x) { return HKElem(zero_like(x.alpha()), zero_like(x.alpha()), x.r()); }
inline HKElem one_like(const HKElem& x) { return HKElem(one_like(x.alpha()), zero_like(x.alpha()), x.r()); }

using HKPoly = Poly<HKElem>;

inline HKPoly lift_to_HK(const KPoly& p, long r) {
    return p.map([&](const QuadElem& c) { return HKElem::from_K(c, r); });
}

/// Recognize a real number as α + β√r with α, β ∈ K, basis (1, ω, √r, ω√r).
inline std::optional<HKElem> recognize_in_HK(const Real& value, long D, long r, Precision prec) {
    QuadElem w = integral_omega(D);
    Real wr = w.to_real(prec), sr = sqrt(Real(r, prec));
    std::vector<Real> basis{Real(1L, prec), wr, sr, wr * sr};
    IntegerRelationResult res = integer_relation(value, basis, prec);
    if (!res.accepted()) return std::nullopt;
    mpq_class inv(mpz_class(1), res.denominator);
    inv.canonicalize();
    QuadElem alpha = (QuadElem::rational(mpq_class(res.coefficients[0]), D) + w * mpq_class(res.coefficients[1])) * inv;
    QuadElem beta = (QuadElem::rational(mpq_class(res.coefficients[2]), D) + w * mpq_class(res.coefficients[3])) * inv;
    return HKElem(alpha, beta, r);
}

struct HcfFactorization {
    KPoly p3_over_K;                ///< set when h = 1
    std::optional<HKPoly> p3;       ///< set when h = 2
    std::optional<HKPoly> p3_conj;  ///< the √r-conjugate factor
    long r = 0;
};

/// Factor p₂ over the Hilbert class field. h = 1 is the identity. For h = 2
/// the roots are split into the two Galois cycles (via g₂ when given, by
/// exhaustive search otherwise) and each coefficient of one factor is
/// recognized in K(√r).
inline HcfFactorization factor_over_hcf(const KPoly& p2, long h, long D, Precision prec, long r = 0,
                                        const KPoly* g2 = nullptr) {
    HcfFactorization out;
    if (h == 1) {
        out.p3_over_K = p2;
        return out;
    }
    if (h != 2) throw Unsupported("factor_over_hcf: class number " + std::to_string(h) + " not supported");
    if (r <= 1) throw InvalidInput("factor_over_hcf: h = 2 needs a configured generator sqrt(r) of H_K");
    out.r = r;
    const int deg = p2.degree();
    if (deg % 2) throw InvalidInput("factor_over_hcf: odd degree for h = 2");
    const int m = deg / 2;
    auto roots = find_roots(p2, Embedding::j, prec).roots;

    auto try_subset = [&](const std::vector<Complex>& part) -> bool {
        CPoly num = minpoly_from_roots(part);
        std::vector<HKElem> coeffs;
        for (int i = 0; i <= m; ++i) {
            if (abs(num[static_cast<size_t>(i)].im) > pow10(-(prec.digits / 2), prec)) return false;
            auto c = recognize_in_HK(num[static_cast<size_t>(i)].re, D, r, prec);
            if (!c) return false;
            coeffs.push_back(*c);
        }
        HKPoly f(coeffs);
        HKPoly fc = f.map([](const HKElem& x) { return x.conj_r(); });
        if (f * fc != lift_to_HK(p2, r)) return false;
        out.p3 = f;
        out.p3_conj = fc;
        return true;
    };

    if (g2) {
        CPoly g2n = embed(*g2, prec);
        std::vector<Complex> cyc{roots[0]};
        for (int j = 1; j < m; ++j) cyc.push_back(newton_polish(p2, Embedding::j, g2n.eval(cyc.back()), prec));
        if (try_subset(cyc)) return out;
        throw ComputationError("factor_over_hcf: g2 cycle did not reconstruct over H_K; raise precision or check r");
    }
    if (deg > 16) throw Unsupported("factor_over_hcf: exhaustive split limited to degree 16 without g2");
    for (uint32_t mask = 0; mask < (1u << deg); ++mask) {
        if (__builtin_popcount(mask) != m || !(mask & 1u)) continue;
        std::vector<Complex> part;
        for (int i = 0; i < deg; ++i) {
            if (mask & (1u << i)) part.push_back(roots[static_cast<size_t>(i)]);
        }
        if (try_subset(part)) return out;
    }
    throw ComputationError("factor_over_hcf: no split over K(sqrt " + std::to_string(r) + ") found");
}

// ---------------------------------------------------------------------------
// Square-root factorization

struct SqrtFactor {
    KPoly p4;                 ///< canonical factor (t^{m−1} coefficient positive under 𝔧)
    std::vector<Complex> z;   ///< z_j with z_j² = x₀ y_j, roots of p4, same order as the y_j
    std::string method;       ///< how the sign pattern was found
};

namespace detail {

/// Recognize all coefficients of Π(t − z_j) in K; empty on failure.
inline std::optional<KPoly> reconstruct_over_K(const std::vector<Complex>& z, long D, Precision prec) {
    CPoly num = minpoly_from_roots(z);
    const Real tiny = pow10(-(prec.digits / 2), prec);
    std::vector<QuadElem> c;
    for (size_t i = 0; i < num.size(); ++i) {
        if (abs(num[i].im) > tiny * (abs(num[i].re) + Real(1L, prec))) return std::nullopt;
        auto q = recognize_in_K(num[i].re, D, Embedding::j, prec);
        if (!q) return std::nullopt;
        c.push_back(*q);
    }
    return KPoly(std::move(c));
}

}  // namespace detail

/// Split x₀^m p₃(t²/x₀) = p₄(t) p₄(−t) using the Galois-ordered roots y_j of p₃.
inline SqrtFactor sqrt_factor(const KPoly& p3, const QuadElem& x0, const std::vector<Complex>& y, Precision prec) {
    const int m = p3.degree();
    if (m < 1) throw InvalidInput("sqrt_factor: constant polynomial");
    if (m % 2) throw ConjectureFailure("sqrt_factor: odd degree " + std::to_string(m) + " cannot split as p4(t)p4(-t)");
    if (static_cast<int>(y.size()) != m) throw InvalidInput("sqrt_factor: need one root per degree");
    const long D = x0.D();
    const KPoly A = scaled_square_substitution(p3, x0);
    const Complex x0c(x0.to_real(prec));
    const size_t half = static_cast<size_t>(m / 2);
    const Real tol = pow10(-(prec.digits / 2), prec);

    std::vector<Complex> w;
    for (const auto& yj : y) w.push_back(sqrt(x0c * yj));

    bool paired = true;
    for (size_t j = 0; j < half; ++j) {
        if (abs(y[j + half] - conj(y[j])) > tol) paired = false;
    }

    auto assemble = [&](const std::vector<int>& s) {
        std::vector<Complex> z(static_cast<size_t>(m), Complex(prec));
        for (size_t j = 0; j < half; ++j) {
            z[j] = s[j] > 0 ? w[j] : -w[j];
            z[j + half] = conj(z[j]);
        }
        return z;
    };
    auto finish = [&](const KPoly& p4raw, const std::string& how) {
        if (p4raw * p4raw.negate_variable() != A) return std::optional<SqrtFactor>{};
        SqrtFactor out;
        out.method = how;
        out.p4 = p4raw;
        if (static_cast<int>(p4raw.size()) >= 2 && p4raw[static_cast<size_t>(m - 1)].sign() < 0) out.p4 = p4raw.negate_variable();
        if (out.p4.leading() != one_like(x0)) out.p4 = out.p4.monic();
        // Per-root sign: whichever of ±w_j the exact p4 annihilates.
        CPoly p4n = embed(out.p4, prec);
        for (size_t j = 0; j < static_cast<size_t>(m); ++j) {
            Complex plus = w[j], minus = -w[j];
            Complex pick = abs(p4n.eval(plus)) < abs(p4n.eval(minus)) ? plus : minus;
            out.z.push_back(newton_polish(p4n, pick, prec));
        }
        return std::optional<SqrtFactor>{out};
    };

    if (paired) {
        // Knapsack: Σ z_j = 2 Σ_{j<m/2} s_j Re w_j lies in K.
        if (half > 1) {
            std::vector<Real> basis;
            for (size_t j = 1; j < half; ++j) basis.push_back(w[j].re * 2L);
            QuadElem om = integral_omega(D);
            basis.push_back(Real(1L, prec));
            basis.push_back(om.to_real(prec));
            IntegerRelationResult r = integer_relation(w[0].re * 2L, basis, prec);
            if (r.accepted() && abs(r.denominator) == 1) {
                std::vector<int> s{1};
                bool ok = true;
                for (size_t j = 0; j + 1 < half; ++j) {
                    mpz_class c = -r.coefficients[j];
                    if (c == 1) s.push_back(1);
                    else if (c == -1) s.push_back(-1);
                    else ok = false;
                }
                if (ok) {
                    if (auto p4 = detail::reconstruct_over_K(assemble(s), D, prec)) {
                        if (auto res = finish(*p4, "knapsack")) return *res;
                    }
                }
            }
        }
        if (half > 20) throw ComputationError("sqrt_factor: knapsack failed and exhaustive search is too large");
        for (uint32_t mask = 0; mask < (1u << (half - 1)); ++mask) {
            std::vector<int> s{1};
            for (size_t j = 1; j < half; ++j) s.push_back((mask >> (j - 1)) & 1u ? -1 : 1);
            auto z = assemble(s);
            Complex e1(prec);
            for (const auto& zj : z) e1 += zj;
            if (!recognize_in_K(e1.re, D, Embedding::j, prec)) continue;
            if (auto p4 = detail::reconstruct_over_K(z, D, prec)) {
                if (auto res = finish(*p4, "exhaustive")) return *res;
            }
        }
    } else {
        if (m > 20) throw ComputationError("sqrt_factor: roots not conjugate-paired and too many for exhaustive search");
        for (uint32_t mask = 0; mask < (1u << (m - 1)); ++mask) {
            std::vector<Complex> z{w[0]};
            for (int j = 1; j < m; ++j) z.push_back((mask >> (j - 1)) & 1u ? -w[static_cast<size_t>(j)] : w[static_cast<size_t>(j)]);
            if (auto p4 = detail::reconstruct_over_K(z, D, prec)) {
                if (auto res = finish(*p4, "exhaustive-unpaired")) return *res;
            }
        }
    }
    throw ConjectureFailure("sqrt_factor: x0^m p3(t^2/x0) does not split as p4(t)p4(-t) over K");
}

// ---------------------------------------------------------------------------
// L = K[t]/(p4)

/// Modulus data for residue arithmetic. Coefficients are kept as integer
/// numerators over a common denominator so that products need no gcds.
class ResidueRing {
   public:
    explicit ResidueRing(const KPoly& p4) : p4_(p4) {
        if (p4.degree() < 1) throw InvalidInput("ResidueRing needs a non-constant modulus");
        KPoly mon = p4.monic();
        D_ = mon.leading().D();
        m_ = mon.degree();
        // p4 = t^m + Σ (P_i/e) t^i
        mpz_class e = 1;
        for (const auto& c : mon.coeffs()) {
            mpz_lcm(e.get_mpz_t(), e.get_mpz_t(), c.a().get_den_mpz_t());
            mpz_lcm(e.get_mpz_t(), e.get_mpz_t(), c.b().get_den_mpz_t());
        }
        e_ = e;
        for (int i = 0; i < m_; ++i) {
            const auto& c = mon[static_cast<size_t>(i)];
            mpq_class a = c.a() * e, b = c.b() * e;
            Pa_.push_back(a.get_num());
            Pb_.push_back(b.get_num());
        }
    }

    long D() const { return D_; }
    int degree() const { return m_; }
    const KPoly& modulus() const { return p4_; }
    const mpz_class& e() const { return e_; }

    /// Reduce a raw product of length ≤ 2m−1 (numerators over `den`) in place.
    void reduce(std::vector<mpz_class>& A, std::vector<mpz_class>& B, mpz_class& den) const {
        const size_t m = static_cast<size_t>(m_);
        if (A.size() <= m) {
            A.resize(m);
            B.resize(m);
            return;
        }
        for (size_t k = A.size(); k-- > m;) {
            if (A[k] == 0 && B[k] == 0) continue;
            mpz_class ca = A[k], cb = B[k];
            if (e_ != 1) {
                for (size_t i = 0; i < k; ++i) {
                    A[i] *= e_;
                    B[i] *= e_;
                }
                den *= e_;
            }
            // subtract (ca + cb√D) Σ (P_i + Q_i√D) t^{k−m+i}
            for (size_t i = 0; i < m; ++i) {
                size_t t = k - m + i;
                A[t] -= ca * Pa_[i] + cb * Pb_[i] * D_;
                B[t] -= ca * Pb_[i] + cb * Pa_[i];
            }
            A[k] = 0;
            B[k] = 0;
        }
        A.resize(m);
        B.resize(m);
    }

   private:
    KPoly p4_;
    long D_ = 0;
    int m_ = 0;
    mpz_class e_ = 1;
    std::vector<mpz_class> Pa_, Pb_;
};

/// Element of L = K[t]/(p4): Σ (A_i + B_i √D)/den γ^i.
class ResidueElem {
   public:
    ResidueElem() = default;
    explicit ResidueElem(std::shared_ptr<const ResidueRing> ring)
        : ring_(std::move(ring)), A_(static_cast<size_t>(ring_->degree())), B_(static_cast<size_t>(ring_->degree())), den_(1) {}

    static ResidueElem from_K(std::shared_ptr<const ResidueRing> ring, const QuadElem& c) {
        ResidueElem r(std::move(ring));
        mpz_class den = c.a().get_den();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.b().get_den_mpz_t());
        mpq_class a = c.a() * den, b = c.b() * den;
        r.A_[0] = a.get_num();
        r.B_[0] = b.get_num();
        r.den_ = den;
        return r;
    }
    /// γ = class of t.
    static ResidueElem gamma(std::shared_ptr<const ResidueRing> ring) {
        if (ring->degree() == 1) {
            // t ≡ −p_0
            QuadElem c = -ring->modulus().monic()[0];
            return from_K(ring, c);
        }
        ResidueElem r(std::move(ring));
        r.A_[1] = 1;
        return r;
    }
    static ResidueElem from_poly(std::shared_ptr<const ResidueRing> ring, const KPoly& p) {
        ResidueElem acc = from_K(ring, QuadElem::rational(0, ring->D()));
        ResidueElem g = gamma(ring);
        for (size_t i = p.size(); i-- > 0;) acc = acc * g + from_K(ring, p[i]);
        return acc;
    }

    /// Σ (A_i + B_i√D)/den γ^i from already reduced numerators.
    static ResidueElem from_raw(std::shared_ptr<const ResidueRing> ring, std::vector<mpz_class> A, std::vector<mpz_class> B,
                                mpz_class den) {
        ResidueElem r(std::move(ring));
        if (A.size() != r.A_.size() || B.size() != r.B_.size() || den <= 0) throw InvalidInput("from_raw: bad shape");
        r.A_ = std::move(A);
        r.B_ = std::move(B);
        r.den_ = std::move(den);
        r.normalize();
        return r;
    }

    const std::shared_ptr<const ResidueRing>& ring() const { return ring_; }
    const std::vector<mpz_class>& A() const { return A_; }
    const std::vector<mpz_class>& B() const { return B_; }
    const mpz_class& den() const { return den_; }

    bool is_zero() const {
        for (size_t i = 0; i < A_.size(); ++i) {
            if (A_[i] != 0 || B_[i] != 0) return false;
        }
        return true;
    }
    /// Constant in K?
    bool is_constant() const {
        for (size_t i = 1; i < A_.size(); ++i) {
            if (A_[i] != 0 || B_[i] != 0) return false;
        }
        return true;
    }

    KPoly to_poly() const {
        std::vector<QuadElem> c;
        for (size_t i = 0; i < A_.size(); ++i) c.push_back(QuadElem(mpq_class(A_[i], den_), mpq_class(B_[i], den_), ring_->D()));
        return KPoly(std::move(c));
    }
    QuadElem constant_term() const { return to_poly().coeff_or_zero(0, QuadElem::rational(0, ring_->D())); }

    /// ι: evaluate at a numeric root of p4 (𝔧 embedding of K).
    Complex embed(const Complex& z0) const {
        Precision p = z0.precision();
        return ::sicfid::embed(to_poly(), p).eval(z0);
    }

    void normalize() {
        mpz_class g = den_;
        for (size_t i = 0; i < A_.size() && g != 1; ++i) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), A_[i].get_mpz_t());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), B_[i].get_mpz_t());
        }
        if (g != 1 && g != 0) {
            for (size_t i = 0; i < A_.size(); ++i) {
                mpz_divexact(A_[i].get_mpz_t(), A_[i].get_mpz_t(), g.get_mpz_t());
                mpz_divexact(B_[i].get_mpz_t(), B_[i].get_mpz_t(), g.get_mpz_t());
            }
            mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
        }
    }

    friend ResidueElem operator+(const ResidueElem& x, const ResidueElem& y) { return x.addsub(y, 1); }
    friend ResidueElem operator-(const ResidueElem& x, const ResidueElem& y) { return x.addsub(y, -1); }
    friend ResidueElem operator-(const ResidueElem& x) {
        ResidueElem r = x;
        for (size_t i = 0; i < r.A_.size(); ++i) {
            r.A_[i] = -r.A_[i];
            r.B_[i] = -r.B_[i];
        }
        return r;
    }
    friend ResidueElem operator*(const ResidueElem& x, const ResidueElem& y) {
        check_same(x, y);
        ResidueElem r(x.ring_);
        std::vector<mpz_class> A, B;
        mpz_class den = x.den_ * y.den_;
        raw_product(*x.ring_, x.A_, x.B_, y.A_, y.B_, A, B);
        x.ring_->reduce(A, B, den);
        r.A_ = std::move(A);
        r.B_ = std::move(B);
        r.den_ = std::move(den);
        r.normalize();
        return r;
    }
    friend ResidueElem operator*(const ResidueElem& x, long k) {
        ResidueElem r = x;
        for (size_t i = 0; i < r.A_.size(); ++i) {
            r.A_[i] *= k;
            r.B_[i] *= k;
        }
        r.normalize();
        return r;
    }
    friend bool operator==(const ResidueElem& x, const ResidueElem& y) { return (x - y).is_zero(); }

    /// Inverse by extended gcd over K; throws naming the common factor.
    ResidueElem inverse() const {
        KPoly a = to_poly();
        auto [g, s] = gcd_ext(a, ring_->modulus());
        if (g.degree() != 0) throw InvalidInput("residue not invertible: gcd with p4 is " + g.to_string());
        return from_poly(ring_, s);
    }
    friend ResidueElem operator/(const ResidueElem& x, const ResidueElem& y) { return x * y.inverse(); }

    /// Raw (unreduced in den) product of coefficient vectors.
    static void raw_product(const ResidueRing& ring, const std::vector<mpz_class>& xa, const std::vector<mpz_class>& xb,
                            const std::vector<mpz_class>& ya, const std::vector<mpz_class>& yb,
                            std::vector<mpz_class>& A, std::vector<mpz_class>& B) {
        const size_t n = xa.size();
        A.assign(2 * n - 1, 0);
        B.assign(2 * n - 1, 0);
        mpz_class t1;
        const long D = ring.D();
        for (size_t i = 0; i < n; ++i) {
            bool xai = xa[i] != 0, xbi = xb[i] != 0;
            if (!xai && !xbi) continue;
            for (size_t j = 0; j < n; ++j) {
                if (xai) {
                    mpz_addmul(A[i + j].get_mpz_t(), xa[i].get_mpz_t(), ya[j].get_mpz_t());
                    mpz_addmul(B[i + j].get_mpz_t(), xa[i].get_mpz_t(), yb[j].get_mpz_t());
                }
                if (xbi) {
                    mpz_mul(t1.get_mpz_t(), xb[i].get_mpz_t(), yb[j].get_mpz_t());
                    mpz_addmul_ui(A[i + j].get_mpz_t(), t1.get_mpz_t(), static_cast<unsigned long>(D));
                    mpz_addmul(B[i + j].get_mpz_t(), xb[i].get_mpz_t(), ya[j].get_mpz_t());
                }
            }
        }
    }

   private:
    static void check_same(const ResidueElem& x, const ResidueElem& y) {
        if (x.ring_ != y.ring_ && (!x.ring_ || !y.ring_ || !(x.ring_->modulus() == y.ring_->modulus()))) {
            throw InvalidInput("residues of different moduli");
        }
    }
    ResidueElem addsub(const ResidueElem& y, int sgn) const {
        check_same(*this, y);
        ResidueElem r(ring_);
        if (den_ == y.den_) {
            for (size_t i = 0; i < A_.size(); ++i) {
                r.A_[i] = sgn > 0 ? mpz_class(A_[i] + y.A_[i]) : mpz_class(A_[i] - y.A_[i]);
                r.B_[i] = sgn > 0 ? mpz_class(B_[i] + y.B_[i]) : mpz_class(B_[i] - y.B_[i]);
            }
            r.den_ = den_;
        } else {
            for (size_t i = 0; i < A_.size(); ++i) {
                mpz_class u = A_[i] * y.den_, v = y.A_[i] * den_;
                r.A_[i] = sgn > 0 ? mpz_class(u + v) : mpz_class(u - v);
                mpz_class s = B_[i] * y.den_, t = y.B_[i] * den_;
                r.B_[i] = sgn > 0 ? mpz_class(s + t) : mpz_class(s - t);
            }
            r.den_ = den_ * y.den_;
        }
        r.normalize();
        return r;
    }

    std::shared_ptr<const ResidueRing> ring_;
    std::vector<mpz_class> A_, B_;
    mpz_class den_ = 1;
};

enum class ResidueOp { add, sub, mul, div };

inline ResidueElem residue_arith(const ResidueElem& a, const ResidueElem& b, ResidueOp op) {
    switch (op) {
        case ResidueOp::add: return a + b;
        case ResidueOp::sub: return a - b;
        case ResidueOp::mul: return a * b;
        default: return a / b;
    }
}

/// g(x) for an exact K-polynomial g acting on L.
inline ResidueElem apply_poly(const KPoly& g, const ResidueElem& x) {
    const auto& ring = x.ring();
    ResidueElem acc = ResidueElem::from_K(ring, QuadElem::rational(0, ring->D()));
    for (size_t i = g.size(); i-- > 0;) acc = acc * x + ResidueElem::from_K(ring, g[i]);
    return acc;
}

}  // namespace sicfid
