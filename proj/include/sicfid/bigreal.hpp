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
#include <cmath>
#include <gmpxx.h>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace sicfid {

/// Working precision in decimal digits. Every big number carries one; there is
/// no ambient default.
struct Precision {
    long digits = 30;

    mpfr_prec_t bits() const {
        return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(digits) * 3.321928094887362)) + 16;
    }
    friend bool operator==(Precision a, Precision b) { return a.digits == b.digits; }
    friend auto operator<=>(Precision a, Precision b) { return a.digits <=> b.digits; }
};

inline Precision min_precision(Precision a, Precision b) { return a.digits < b.digits ? a : b; }

/// Arbitrary-precision real number backed by an MPFR value.
class Real {
   public:
    explicit Real(Precision p = Precision{}) : prec_(p) {
        mpfr_init2(v_, p.bits());
        mpfr_set_zero(v_, 1);
    }
    Real(long x, Precision p) : Real(p) { mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(int x, Precision p) : Real(static_cast<long>(x), p) {}
    Real(double x, Precision p) : Real(p) { mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(const mpz_class& x, Precision p) : Real(p) { mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
    Real(const mpq_class& x, Precision p) : Real(p) { mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }
    Real(const std::string& s, Precision p) : Real(p) {
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
            throw std::invalid_argument("not a decimal number: " + s);
        }
    }

    Real(const Real& o) : prec_(o.prec_) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            prec_ = o.prec_;
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        std::swap(prec_, o.prec_);
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    Precision precision() const { return prec_; }
    /// Copy rounded (or zero-extended) to another precision.
    Real with_precision(Precision p) const {
        Real r(p);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    static Real pi(Precision p) {
        Real r(p);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Decimal exponent estimate: floor(log10 |x|), or a large negative value for zero.
    long log10_abs() const {
        if (is_zero()) return -1000000000L;
        return static_cast<long>(std::floor(static_cast<double>(mpfr_get_exp(v_) - 1) * 0.30102999566398120));
    }

    mpz_class round_to_integer() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
        return z;
    }

    /// Fixed-significand decimal rendering such as "1.8832035059e0".
    std::string to_string(long digits) const {
        if (mpfr_nan_p(v_)) return "nan";
        if (is_zero()) return "0";
        digits = std::max(1L, digits);
        mpfr_exp_t exp10 = 0;
        char* s = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
        std::string m(s);
        mpfr_free_str(s);
        bool neg = !m.empty() && m[0] == '-';
        if (neg) m.erase(0, 1);
        std::string out = neg ? "-" : "";
        out += m.substr(0, 1);
        if (m.size() > 1) out += "." + m.substr(1);
        out += "e" + std::to_string(static_cast<long>(exp10) - 1);
        return out;
    }
    std::string to_string() const { return to_string(prec_.digits); }

    Real& operator+=(const Real& o) {
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator-=(const Real& o) {
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator*=(const Real& o) {
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator/=(const Real& o) {
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

    friend Real operator-(const Real& a) {
        Real r(a);
        mpfr_neg(r.v_, r.v_, MPFR_RNDN);
        return r;
    }
#define SICFID_REAL_BINOP(OP, FN)                                       \
    friend Real operator OP(const Real& a, const Real& b) {             \
        Real r(min_precision(a.prec_, b.prec_));                        \
        FN(r.v_, a.v_, b.v_, MPFR_RNDN);                                \
        return r;                                                       \
    }
    SICFID_REAL_BINOP(+, mpfr_add)
    SICFID_REAL_BINOP(-, mpfr_sub)
    SICFID_REAL_BINOP(*, mpfr_mul)
    SICFID_REAL_BINOP(/, mpfr_div)
#undef SICFID_REAL_BINOP

    friend Real operator*(const Real& a, long k) {
        Real r(a.prec_);
        mpfr_mul_si(r.v_, a.v_, k, MPFR_RNDN);
        return r;
    }
    friend Real operator*(long k, const Real& a) { return a * k; }
    friend Real operator/(const Real& a, long k) {
        Real r(a.prec_);
        mpfr_div_si(r.v_, a.v_, k, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    friend std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.to_string(20); }

   private:
    Precision prec_;
    mpfr_t v_;
};

#define SICFID_REAL_UNARY(NAME, FN)        \
    inline Real NAME(const Real& x) {      \
        Real r(x.precision());             \
        FN(r.raw(), x.raw(), MPFR_RNDN);   \
        return r;                          \
    }
SICFID_REAL_UNARY(sqrt, mpfr_sqrt)
SICFID_REAL_UNARY(exp, mpfr_exp)
SICFID_REAL_UNARY(log, mpfr_log)
SICFID_REAL_UNARY(abs, mpfr_abs)
SICFID_REAL_UNARY(cos, mpfr_cos)
SICFID_REAL_UNARY(sin, mpfr_sin)
#undef SICFID_REAL_UNARY

inline Real atan2(const Real& y, const Real& x) {
    Real r(min_precision(x.precision(), y.precision()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

/// Exponential integral E1(x) = Γ(0, x) for x > 0.
inline Real expint_e1(const Real& x) {
    Real r(x.precision());
    Real negx = -x;
    mpfr_eint(r.raw(), negx.raw(), MPFR_RNDN);  // Ei(-x) = -E1(x)
    mpfr_neg(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}

inline Real pow10(long e, Precision p) {
    Real r(p);
    mpfr_ui_pow_ui(r.raw(), 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
    if (e < 0) mpfr_ui_div(r.raw(), 1, r.raw(), MPFR_RNDN);
    return r;
}

/// Complex number with arbitrary-precision real and imaginary parts.
struct Complex {
    Real re;
    Real im;

    explicit Complex(Precision p = Precision{}) : re(p), im(p) {}
    Complex(Real r) : re(std::move(r)), im(Real(re.precision())) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    Precision precision() const { return min_precision(re.precision(), im.precision()); }
    Complex with_precision(Precision p) const { return {re.with_precision(p), im.with_precision(p)}; }

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Complex& a, const Real& k) { return {a.re * k, a.im * k}; }
    friend Complex operator*(const Real& k, const Complex& a) { return a * k; }
    friend Complex operator/(const Complex& a, const Real& k) { return {a.re / k, a.im / k}; }
    friend Complex operator*(const Complex& a, long k) { return {a.re * k, a.im * k}; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real den = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }

    Real norm_sq() const { return re * re + im * im; }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }

inline bool is_zero(const Complex& z) { return z.is_zero(); }
inline Complex zero_like(const Complex& z) { return Complex(z.precision()); }
inline Complex one_like(const Complex& z) { return Complex(Real(1L, z.precision())); }
inline Real abs(const Complex& z) { return sqrt(z.norm_sq()); }
inline Real arg(const Complex& z) { return atan2(z.im, z.re); }

/// e^{iθ}
inline Complex expi(const Real& theta) { return {cos(theta), sin(theta)}; }

inline Complex exp(const Complex& z) { return expi(z.im) * exp(z.re); }

/// Principal square root (branch cut on the negative real axis, Re ≥ 0).
inline Complex sqrt(const Complex& z) {
    Precision p = z.precision();
    if (z.is_zero()) return Complex(p);
    Real r = abs(z);
    Real a = sqrt((r + abs(z.re)) / 2L);
    if (z.re.sign() >= 0) {
        return {a, z.im / (2L * a)};
    }
    Real b = z.im.sign() < 0 ? -a : a;
    return {abs(z.im) / (2L * a), b};
}

/// e^{2πi k / n}
inline Complex root_of_unity(long k, long n, Precision p) {
    long kk = ((k % n) + n) % n;
    return expi(Real::pi(p) * (2L * kk) / n);
}

inline std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << "(" << z.re.to_string(20) << ", " << z.im.to_string(20) << ")";
}

}  // namespace sicfid
