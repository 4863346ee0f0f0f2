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
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sicfid/bigreal.hpp"
#include "sicfid/errors.hpp"
#include "sicfid/poly.hpp"

namespace sicfid {

/// Which real embedding of K: `j` sends √D to the positive root, `j_tau` to the negative one.
enum class Embedding { j, j_tau };

/// Exact element a + b√D of the real quadratic field Q(√D).
///
/// D = 0 marks a plain rational that has not been attached to a field yet;
/// it adopts the field of whatever it is combined with.
class QuadElem {
   public:
    QuadElem() = default;
    QuadElem(mpq_class a, mpq_class b, long D) : a_(std::move(a)), b_(std::move(b)), D_(D) {
        a_.canonicalize();
        b_.canonicalize();
        if (D_ == 0 && sgn(b_) != 0) throw InvalidInput("irrational part without a field");
        if (D_ != 0 && D_ < 2) throw InvalidInput("QuadElem needs square-free D >= 2");
    }
    static QuadElem rational(const mpq_class& a, long D = 0) { return QuadElem(a, 0, D); }
    static QuadElem sqrt_d(long D) { return QuadElem(0, 1, D); }

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }
    long D() const { return D_; }
    bool is_rational() const { return sgn(b_) == 0; }
    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_integral() const {
        // a + b√D in Z_K: a, b ∈ Z, or (D ≡ 1 mod 4) both in 1/2 + Z.
        if (a_.get_den() == 1 && b_.get_den() == 1) return true;
        if (D_ % 4 != 1) return false;
        mpq_class a2 = a_ * 2, b2 = b_ * 2;
        return a2.get_den() == 1 && b2.get_den() == 1;
    }

    /// √D ↦ −√D
    QuadElem tau() const { return QuadElem(a_, -b_, D_); }
    mpq_class norm() const { return a_ * a_ - b_ * b_ * D_; }
    mpq_class trace() const { return 2 * a_; }

    /// Sign of the image under 𝔧 (√D > 0), decided exactly.
    int sign(Embedding e = Embedding::j) const {
        int sa = sgn(a_);
        int sb = sgn(b_) * (e == Embedding::j ? 1 : -1);
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        mpq_class lhs = a_ * a_, rhs = b_ * b_ * D_;
        int c = cmp(lhs, rhs);
        return c > 0 ? sa : sb;
    }

    Real to_real(Precision p, Embedding e = Embedding::j) const {
        Real r(a_, p);
        if (!is_rational()) {
            Real s = sqrt(Real(D_, p)) * Real(b_, p);
            if (e == Embedding::j) r += s;
            else r -= s;
        }
        return r;
    }

    QuadElem inverse() const {
        if (is_zero()) throw InvalidInput("inverse of zero in K");
        mpq_class n = norm();
        return QuadElem(a_ / n, -b_ / n, D_);
    }
    QuadElem pow(long k) const {
        if (k < 0) return inverse().pow(-k);
        QuadElem r = rational(1, D_), b = *this;
        while (k) {
            if (k & 1) r = r * b;
            k >>= 1;
            if (k) b = b * b;
        }
        return r;
    }

    friend QuadElem operator+(const QuadElem& x, const QuadElem& y) {
        return QuadElem(x.a_ + y.a_, x.b_ + y.b_, join(x, y));
    }
    friend QuadElem operator-(const QuadElem& x, const QuadElem& y) {
        return QuadElem(x.a_ - y.a_, x.b_ - y.b_, join(x, y));
    }
    friend QuadElem operator-(const QuadElem& x) { return QuadElem(-x.a_, -x.b_, x.D_); }
    friend QuadElem operator*(const QuadElem& x, const QuadElem& y) {
        long D = join(x, y);
        return QuadElem(x.a_ * y.a_ + x.b_ * y.b_ * D, x.a_ * y.b_ + x.b_ * y.a_, D);
    }
    friend QuadElem operator*(const QuadElem& x, long k) { return QuadElem(x.a_ * k, x.b_ * k, x.D_); }
    friend QuadElem operator*(const QuadElem& x, const mpq_class& k) { return QuadElem(x.a_ * k, x.b_ * k, x.D_); }
    friend QuadElem operator/(const QuadElem& x, const QuadElem& y) { return x * y.inverse(); }
    QuadElem& operator+=(const QuadElem& y) { return *this = *this + y; }
    QuadElem& operator-=(const QuadElem& y) { return *this = *this - y; }
    QuadElem& operator*=(const QuadElem& y) { return *this = *this * y; }

    /// Values compare equal regardless of an unattached D on a rational.
    friend bool operator==(const QuadElem& x, const QuadElem& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.D_ == y.D_ || x.is_rational());
    }

    std::string to_string() const {
        std::ostringstream os;
        if (is_rational()) {
            os << a_.get_str();
            return os.str();
        }
        if (sgn(a_) != 0) os << a_.get_str() << (sgn(b_) > 0 ? " + " : " - ");
        else if (sgn(b_) < 0) os << "-";
        mpq_class ab = abs(b_);
        if (ab != 1) os << ab.get_str() << "*";
        os << "sqrt(" << D_ << ")";
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const QuadElem& x) { return os << x.to_string(); }

   private:
    static long join(const QuadElem& x, const QuadElem& y) {
        if (x.D_ == y.D_ || y.D_ == 0) return x.D_;
        if (x.D_ == 0) return y.D_;
        throw InvalidInput("mixing Q(sqrt " + std::to_string(x.D_) + ") with Q(sqrt " + std::to_string(y.D_) + ")");
    }

    mpq_class a_{0};
    mpq_class b_{0};
    long D_ = 0;
};

inline bool is_zero(const QuadElem& x) { return x.is_zero(); }
inline QuadElem zero_like(const QuadElem& x) { return QuadElem::rational(0, x.D()); }
inline QuadElem one_like(const QuadElem& x) { return QuadElem::rational(1, x.D()); }

using KPoly = Poly<QuadElem>;

/// Render a K-polynomial as complex numbers under an embedding.
inline Poly<Complex> embed(const KPoly& p, Precision prec, Embedding e = Embedding::j) {
    return p.map([&](const QuadElem& c) { return Complex(c.to_real(prec, e)); });
}

// ---------------------------------------------------------------------------
// Integer helpers

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long q = 2; q * q <= n; ++q) {
        if (n % q == 0) return false;
    }
    return true;
}

/// Prime factorization as (prime, exponent) pairs in increasing order.
inline std::vector<std::pair<long, int>> factorize(long n) {
    std::vector<std::pair<long, int>> out;
    for (long q = 2; q * q <= n; ++q) {
        int e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        if (e) out.push_back({q, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

/// "2^2x11" style rendering.
inline std::string factor_string(long n) {
    std::string s;
    for (auto [p, e] : factorize(n)) {
        if (!s.empty()) s += "x";
        s += std::to_string(p);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

inline long isqrt(long n) {
    mpz_class r;
    mpz_class nn(n);
    mpz_sqrt(r.get_mpz_t(), nn.get_mpz_t());
    return r.get_si();
}

inline long mod_pow(long b, long e, long m) {
    mpz_class r, bb(b), ee(e), mm(m);
    mpz_powm(r.get_mpz_t(), bb.get_mpz_t(), ee.get_mpz_t(), mm.get_mpz_t());
    return r.get_si();
}

inline long mod_inverse(long a, long m) {
    mpz_class r, aa(((a % m) + m) % m), mm(m);
    if (!mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), mm.get_mpz_t())) {
        throw InvalidInput(std::to_string(a) + " is not invertible mod " + std::to_string(m));
    }
    return r.get_si();
}

/// Reduce a rational modulo a prime (denominator must be coprime to it).
inline long rational_mod(const mpq_class& x, long p) {
    mpz_class n = x.get_num() % p, den = x.get_den() % p;
    if (den == 0) throw InvalidInput("denominator divisible by " + std::to_string(p));
    long r = (n.get_si() % p + p) % p;
    return static_cast<long>((static_cast<__int128>(r) * mod_inverse(den.get_si(), p)) % p);
}

/// n divided by the largest square dividing it.
inline long squarefree_part(long n) {
    if (n < 1) throw InvalidInput("squarefree_part needs n >= 1");
    long out = 1;
    for (auto [p, e] : factorize(n)) {
        if (e % 2) out *= p;
    }
    return out;
}

/// Fundamental discriminant of Q(√D).
inline long discriminant(long D) { return D % 4 == 1 ? D : 4 * D; }

// ---------------------------------------------------------------------------
// Units

/// Fundamental unit u_K > 1 of Q(√D), from the continued fraction of the
/// ring generator ω (√D, or (1+√D)/2 when D ≡ 1 mod 4).
inline QuadElem fundamental_unit(long D) {
    if (D < 2 || squarefree_part(D) != D) throw InvalidInput("fundamental_unit needs square-free D >= 2");
    const bool half = D % 4 == 1;
    const QuadElem omega = half ? QuadElem(mpq_class(1, 2), mpq_class(1, 2), D) : QuadElem::sqrt_d(D);
    const QuadElem omega_tau = omega.tau();
    const long s = isqrt(D);
    // Complete quotients (P + √D)/Q.
    long P = half ? 1 : 0, Q = half ? 2 : 1;
    // p_prev/q_prev = p_{k-1}/q_{k-1}, p_cur/q_cur = p_{k-2}/q_{k-2}
    mpz_class p_prev = 1, p_cur = 0, q_prev = 0, q_cur = 1;
    for (long iter = 0; iter < 1000000; ++iter) {
        long a = (P + s) / Q;
        mpz_class pn = a * p_prev + p_cur, qn = a * q_prev + q_cur;
        p_cur = p_prev;
        q_cur = q_prev;
        p_prev = pn;
        q_prev = qn;
        // p - q ω has norm ±1 at the end of the period.
        QuadElem cand = QuadElem::rational(mpq_class(pn), D) - omega * mpq_class(qn);
        mpq_class nm = cand.norm();
        if (nm == 1 || nm == -1) {
            QuadElem u = QuadElem::rational(mpq_class(pn), D) - omega_tau * mpq_class(qn);
            if (u.sign() < 0) u = -u;
            if (u.to_real(Precision{20}) < Real(1L, Precision{20})) u = u.inverse();
            return u;
        }
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
    throw ComputationError("continued fraction period exceeded cap for D=" + std::to_string(D));
}

// ---------------------------------------------------------------------------
// Class number by cycles of reduced indefinite forms.

/// Narrow class number h⁺ of discriminant disc > 0 (non-square).
inline long narrow_class_number(long disc) {
    const long s = isqrt(disc);
    struct Form {
        long a, b, c;
        bool operator<(const Form& o) const { return std::tie(a, b, c) < std::tie(o.a, o.b, o.c); }
    };
    auto reduced = [&](long a, long b) {
        // 0 < b < √Δ and √Δ − b < 2|a| < √Δ + b
        long A = 2 * std::labs(a);
        if (b <= 0 || b > s) return false;
        __int128 hi = static_cast<__int128>(A + b) * (A + b);
        if (hi <= disc) return false;
        long lo = A - b;
        if (lo >= 0 && static_cast<__int128>(lo) * lo >= disc) return false;
        return true;
    };
    std::set<Form> forms;
    for (long b = (disc % 2 == 0 ? 2 : 1); b <= s; b += 2) {
        long N = (disc - b * b) / 4;  // -ac
        if (N <= 0) continue;
        for (long a = 1; a <= N; ++a) {
            if (N % a) continue;
            for (long sg : {1L, -1L}) {
                long aa = sg * a, cc = -N / aa;
                if (reduced(aa, b)) forms.insert({aa, b, cc});
            }
        }
    }
    auto rho = [&](const Form& f) {
        long C = 2 * std::labs(f.c);
        long bp = s - (((s + f.b) % C) + C) % C;
        long cp = (bp * bp - disc) / (4 * f.c);
        return Form{f.c, bp, cp};
    };
    std::set<Form> seen;
    long cycles = 0;
    for (const auto& f : forms) {
        if (seen.count(f)) continue;
        ++cycles;
        Form g = f;
        while (!seen.count(g)) {
            seen.insert(g);
            g = rho(g);
            if (!forms.count(g)) throw InconsistencyError("reduction left the reduced set");
        }
    }
    return cycles;
}

/// Class number of Q(√D). Narrow and wide agree when N(u_K) = −1.
inline long class_number(long D) {
    long hp = narrow_class_number(discriminant(D));
    QuadElem u = fundamental_unit(D);
    return u.norm() == -1 ? hp : hp / 2;
}

// ---------------------------------------------------------------------------
// Dimension towers

/// T*_k(x) = 1 + 2 T_k((x−1)/2).
inline QPoly chebyshev_shifted(unsigned k) {
    std::vector<QPoly> t;
    t.push_back(QPoly::constant(3));
    t.push_back(QPoly::identity(mpq_class(0)));
    t.push_back(QPoly(std::vector<mpq_class>{0, -2, 1}));
    const QPoly x = QPoly::identity(mpq_class(0));
    for (unsigned n = 3; n <= k; ++n) t.push_back(x * t[n - 1] - x * t[n - 2] + t[n - 3]);
    return t.at(k);
}

/// d_ℓ = u^{2ℓ} + u^{−2ℓ} + 1 for ℓ = 1..count.
inline std::vector<mpz_class> dimension_tower(long D, int count) {
    QuadElem u = fundamental_unit(D);
    QuadElem u2 = u * u, p = u2;
    std::vector<mpz_class> out;
    for (int l = 1; l <= count; ++l) {
        mpq_class v = (p + p.inverse()).a() + 1;
        if (v.get_den() != 1) throw InconsistencyError("non-integral tower entry");
        out.push_back(v.get_num());
        p = p * u2;
    }
    // Composition check: d_ℓ = T*_ℓ(d_1).
    for (int l = 1; l <= count; ++l) {
        mpq_class viaT = chebyshev_shifted(static_cast<unsigned>(l)).eval(mpq_class(out[0]));
        if (viaT != mpq_class(out[l - 1])) throw InconsistencyError("tower disagrees with shifted Chebyshev");
    }
    return out;
}

enum class Splitting { split, inert, ramified };

inline std::string to_string(Splitting s) {
    switch (s) {
        case Splitting::split: return "split";
        case Splitting::inert: return "inert";
        default: return "ramified";
    }
}

/// Decomposition of the rational prime q in Q(√D).
inline Splitting prime_splitting(long q, long D) {
    if (!is_prime(q)) throw InvalidInput("prime_splitting: " + std::to_string(q) + " is not prime");
    if (q == 2) {
        long r = D % 8;
        if (r == 1) return Splitting::split;
        if (r == 5) return Splitting::inert;
        return Splitting::ramified;
    }
    long r = ((D % q) + q) % q;
    if (r == 0) return Splitting::ramified;
    return mod_pow(r, (q - 1) / 2, q) == 1 ? Splitting::split : Splitting::inert;
}

/// Everything derived from a dimension d = n² + 3.
struct DimensionInfo {
    long d = 0;
    long n = 0;
    long D = 0;
    long ell = 0;
    long h = 0;
    long m = 0;      ///< (d−1)/(3ℓ): cycle length, degree of the small ray class field over H_K
    long f = 0;      ///< √(d+1) = f√D
    bool prime = false;
    QuadElem unit;   ///< u_K

    long degree_over_K() const { return h * m; }
    long absolute_degree() const { return 2 * h * m; }
    /// x₀ = −2 − √(d+1)
    QuadElem x0() const { return QuadElem(-2, -f, D); }
    /// √(d+1)
    QuadElem sqrt_d_plus_1() const { return QuadElem(0, f, D); }
};

/// Locate d in the tower of its field.
inline DimensionInfo classify_dimension(long d) {
    if (d < 4) throw InvalidInput("dimension must be >= 4");
    long n = isqrt(d - 3);
    if (n * n != d - 3) throw InvalidInput(std::to_string(d) + " is not of the form n^2+3");
    DimensionInfo info;
    info.d = d;
    info.n = n;
    info.D = squarefree_part((d + 1) * (d - 3));
    info.unit = fundamental_unit(info.D);
    if (info.unit.norm() != -1) throw InconsistencyError("fundamental unit of norm +1 for D=" + std::to_string(info.D));
    const QuadElem& u = info.unit;
    QuadElem u2 = u * u, step = u2 * u2, p = u2;
    for (long l = 1;; l += 2) {
        mpq_class v = (p + p.inverse()).a() + 1;
        if (v > d) throw InconsistencyError(std::to_string(d) + " not found in the tower of D=" + std::to_string(info.D));
        if (v == d) {
            info.ell = l;
            break;
        }
        p = p * step;
    }
    QuadElem ul = u.pow(info.ell);
    if (ul.trace() != n || ul.norm() != -1) throw InconsistencyError("u^ell does not have minimal polynomial X^2 - nX - 1");
    mpz_class f2 = (d + 1) / info.D;
    info.f = isqrt(f2.get_si());
    if (info.f * info.f * info.D != d + 1) throw InconsistencyError("d+1 is not f^2 D");
    info.h = class_number(info.D);
    info.prime = is_prime(d);
    info.m = (d - 1) % (3 * info.ell) == 0 ? (d - 1) / (3 * info.ell) : 0;
    if (info.prime && info.m == 0) throw InconsistencyError("3*ell does not divide d-1");
    return info;
}

/// h(d−1)/(3ℓ): degree of the small ray class field over K.
inline long degree_small_rcf(const DimensionInfo& info) {
    if (!info.prime) throw Unsupported("degree formula needs prime d");
    return info.h * info.m;
}

/// Principal generators ∂ = 1 + √(d+1) and ∂^τ.
struct PartialIdeal {
    QuadElem dee;
    QuadElem dee_tau;
    long d = 0;

    /// Image in Z_K/∂ ≅ F_d (d prime). √D ≡ −1/f there.
    long reduce(const QuadElem& x) const {
        long sD = ((-mod_inverse(f_, d)) % d + d) % d;
        long a = rational_mod(x.a(), d), b = rational_mod(x.b(), d);
        return static_cast<long>((a + static_cast<__int128>(b) * sD) % d);
    }

    long f_ = 0;
};

inline PartialIdeal partial_ideal(const DimensionInfo& info) {
    PartialIdeal p;
    p.dee = QuadElem(1, info.f, info.D);
    p.dee_tau = p.dee.tau();
    p.d = info.d;
    p.f_ = info.f;
    if (p.dee + p.dee_tau != QuadElem::rational(2) || p.dee * p.dee_tau != QuadElem::rational(-info.d)) {
        throw InconsistencyError("partial ideal identities failed");
    }
    return p;
}

/// Multiplicative order of u_K in (Z_K/dZ_K)^×; must equal 6ℓ.
inline long unit_order_mod(const DimensionInfo& info) {
    const long d = info.d;
    long ua = rational_mod(info.unit.a(), d), ub = rational_mod(info.unit.b(), d), D = info.D % d;
    long x = 1, y = 0;
    for (long k = 1; k <= 4 * d; ++k) {
        long nx = static_cast<long>((static_cast<__int128>(x) * ua + static_cast<__int128>(y) * ub % d * D) % d);
        long ny = static_cast<long>((static_cast<__int128>(x) * ub + static_cast<__int128>(y) * ua) % d);
        x = nx;
        y = ny;
        if (x == 1 && y == 0) {
            if (k != 6 * info.ell) {
                throw InconsistencyError("order of u_K mod d is " + std::to_string(k) + ", expected " +
                                         std::to_string(6 * info.ell));
            }
            return k;
        }
    }
    throw InconsistencyError("u_K has no finite order mod d");
}

inline long unit_order_mod(long d) { return unit_order_mod(classify_dimension(d)); }

/// Order of u_K modulo ∂ (prime d); 3ℓ.
inline long unit_order_mod_dee(const DimensionInfo& info) {
    PartialIdeal p = partial_ideal(info);
    long u = p.reduce(info.unit), x = 1;
    for (long k = 1; k <= info.d; ++k) {
        x = static_cast<long>(static_cast<__int128>(x) * u % info.d);
        if (x == 1) return k;
    }
    throw InconsistencyError("u_K has no finite order mod dee");
}

/// ξ² = x₀ satisfies X⁴ + 4X² − n² (checked exactly on x₀).
inline bool xi_minpoly_holds(const DimensionInfo& info) {
    QuadElem x0 = info.x0();
    return x0 * x0 + x0 * 4L - QuadElem::rational(info.n * info.n, info.D) == zero_like(x0);
}

/// −u = (1−u)² x₀₁ / n₁² where x₀₁, n₁ belong to the ℓ = 1 dimension of D.
/// Returns the exact residual (zero when the identity holds).
inline QuadElem unit_square_residual(long D) {
    QuadElem u = fundamental_unit(D);
    mpz_class tr = (u * u + (u * u).inverse()).a().get_num();
    long d1 = tr.get_si() + 1;
    long n1 = isqrt(d1 - 3);
    long f1 = isqrt((d1 + 1) / D);
    QuadElem x01(-2, -f1, D);
    QuadElem one = one_like(u);
    return (one - u) * (one - u) * x01 + u * (n1 * n1);
}

}  // namespace sicfid
