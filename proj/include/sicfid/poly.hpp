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

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sicfid/errors.hpp"

namespace sicfid {

// Ring hooks for plain rationals. Every coefficient type provides the same
// three functions (found by ADL for types in this namespace).
inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
inline mpq_class zero_like(const mpq_class&) { return mpq_class(0); }
inline mpq_class one_like(const mpq_class&) { return mpq_class(1); }

namespace detail {
template <class F>
bool coeff_is_zero(const F& x) {
    return is_zero(x);
}
}  // namespace detail

/// Dense univariate polynomial, coefficients stored constant-first.
/// The zero polynomial has no coefficients; trailing zeros are trimmed.
template <class F>
class Poly {
   public:
    Poly() = default;
    explicit Poly(std::vector<F> c) : c_(std::move(c)) { trim(); }

    static Poly constant(const F& c) { return Poly(std::vector<F>{c}); }
    static Poly monomial(const F& c, size_t k) {
        std::vector<F> v(k + 1, zero_like(c));
        v[k] = c;
        return Poly(std::move(v));
    }
    /// The polynomial t (with the ring taken from `like`).
    static Poly identity(const F& like) { return monomial(one_like(like), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    size_t size() const { return c_.size(); }
    const std::vector<F>& coeffs() const { return c_; }
    const F& operator[](size_t i) const { return c_.at(i); }
    const F& leading() const {
        if (c_.empty()) throw InvalidInput("leading coefficient of zero polynomial");
        return c_.back();
    }
    /// Coefficient of t^i, or a zero built from `like` when out of range.
    F coeff_or_zero(size_t i, const F& like) const { return i < c_.size() ? c_[i] : zero_like(like); }

    template <class X>
    X eval(const X& x) const {
        if (c_.empty()) return x - x;
        X acc = X(c_.back());
        for (size_t i = c_.size() - 1; i-- > 0;) {
            acc = acc * x + X(c_[i]);
        }
        return acc;
    }

    /// Apply f to every coefficient.
    template <class Fn>
    auto map(Fn f) const -> Poly<decltype(f(std::declval<const F&>()))> {
        using G = decltype(f(std::declval<const F&>()));
        std::vector<G> out;
        out.reserve(c_.size());
        for (const auto& x : c_) out.push_back(f(x));
        return Poly<G>(std::move(out));
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<F> out;
        out.reserve(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) out.push_back(c_[i] * static_cast<long>(i));
        return Poly(std::move(out));
    }

    /// p(-t)
    Poly negate_variable() const {
        std::vector<F> out = c_;
        for (size_t i = 1; i < out.size(); i += 2) out[i] = -out[i];
        return Poly(std::move(out));
    }

    /// p(t^2)
    Poly substitute_square() const {
        if (c_.empty()) return Poly();
        std::vector<F> out(2 * c_.size() - 1, zero_like(c_[0]));
        for (size_t i = 0; i < c_.size(); ++i) out[2 * i] = c_[i];
        return Poly(std::move(out));
    }

    /// p(q(t))
    Poly compose(const Poly& q) const {
        Poly acc;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * q + Poly::constant(c_[i]);
        return acc;
    }

    Poly monic() const { return *this / leading(); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<F> out = a.c_.size() >= b.c_.size() ? a.c_ : b.c_;
        size_t n = std::min(a.c_.size(), b.c_.size());
        for (size_t i = 0; i < n; ++i) out[i] = a.c_[i] + b.c_[i];
        return Poly(std::move(out));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<F> out;
        out.reserve(a.c_.size());
        for (const auto& x : a.c_) out.push_back(-x);
        return Poly(std::move(out));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c_.empty() || b.c_.empty()) return Poly();
        std::vector<F> out(a.c_.size() + b.c_.size() - 1, zero_like(a.c_[0]));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (sicfid_is_zero(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(std::move(out));
    }
    friend Poly operator*(const Poly& a, const F& k) {
        std::vector<F> out;
        out.reserve(a.c_.size());
        for (const auto& x : a.c_) out.push_back(x * k);
        return Poly(std::move(out));
    }
    friend Poly operator*(const F& k, const Poly& a) { return a * k; }
    friend Poly operator/(const Poly& a, const F& k) {
        std::vector<F> out;
        out.reserve(a.c_.size());
        for (const auto& x : a.c_) out.push_back(x / k);
        return Poly(std::move(out));
    }

    /// Euclidean division over a field: a = q*b + r with deg r < deg b.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw InvalidInput("polynomial division by zero");
        if (a.degree() < b.degree()) return {Poly(), a};
        std::vector<F> r = a.c_;
        std::vector<F> q(a.c_.size() - b.c_.size() + 1, zero_like(a.c_[0]));
        F inv_lead = one_like(b.leading()) / b.leading();
        for (size_t k = q.size(); k-- > 0;) {
            F t = r[k + b.c_.size() - 1] * inv_lead;
            q[k] = t;
            if (sicfid_is_zero(t)) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[k + j] = r[k + j] - t * b.c_[j];
        }
        r.resize(b.c_.size() - 1);
        return {Poly(std::move(q)), Poly(std::move(r))};
    }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Human-readable rendering, highest degree first.
    std::string to_string(const std::string& var = "t") const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (size_t i = c_.size(); i-- > 0;) {
            if (sicfid_is_zero(c_[i])) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << c_[i] << ")";
            if (i >= 1) os << "*" << var;
            if (i >= 2) os << "^" << i;
        }
        return os.str();
    }

   private:
    static bool sicfid_is_zero(const F& x) { return detail::coeff_is_zero(x); }
    void trim() {
        while (!c_.empty() && sicfid_is_zero(c_.back())) c_.pop_back();
    }

    std::vector<F> c_;
};

template <class F>
Poly<F> pow(const Poly<F>& p, unsigned k, const F& like) {
    Poly<F> r = Poly<F>::constant(one_like(like));
    Poly<F> b = p;
    while (k) {
        if (k & 1u) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

/// Monic gcd over a field.
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        Poly<F> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

/// Extended Euclid: returns (g, s) with s*a ≡ g mod m, g monic.
template <class F>
std::pair<Poly<F>, Poly<F>> gcd_ext(const Poly<F>& a, const Poly<F>& m) {
    if (m.is_zero()) throw InvalidInput("gcd_ext with zero modulus");
    const F& like = m.leading();
    Poly<F> r0 = m, r1 = a % m;
    Poly<F> s0, s1 = Poly<F>::constant(one_like(like));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        Poly<F> s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    F lead = r0.leading();
    return {r0 / lead, s0 / lead};
}

using QPoly = Poly<mpq_class>;

}  // namespace sicfid
