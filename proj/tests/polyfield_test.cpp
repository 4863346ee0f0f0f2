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

#include "sicfid/polyfield.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sicfid;

namespace {

const Precision P50{50};

QuadElem q2(long a, long b) { return QuadElem(a, b, 2); }

KPoly p1_d7() { return KPoly({q2(1, 0), q2(-1, -1), q2(1, 0)}); }
KPoly p4_d7() { return KPoly({q2(2, 2), q2(2, 1), q2(1, 0)}); }

QuadElem random_k(std::mt19937& rng, long D) {
    std::uniform_int_distribution<long> c(-9, 9), den(1, 5);
    return QuadElem(mpq_class(c(rng), den(rng)), mpq_class(c(rng), den(rng)), D);
}

}  // namespace

TEST(Polyfield, TauConjugateProductIsRational) {
    KPoly p1 = p1_d7();
    KPoly p2 = tau_conjugate(p1);
    EXPECT_EQ(p2, KPoly({q2(1, 0), q2(-1, 1), q2(1, 0)}));
    EXPECT_TRUE(has_rational_coefficients(p1 * p2));
    EXPECT_FALSE(has_rational_coefficients(p1));
    EXPECT_EQ(tau_conjugate(p2), p1);
}

TEST(Polyfield, ScaledSquareSubstitutionD7) {
    KPoly p3 = tau_conjugate(p1_d7());
    QuadElem x0(-2, -2, 2);
    KPoly A = scaled_square_substitution(p3, x0);
    EXPECT_EQ(A, KPoly({q2(12, 8), q2(0, 0), q2(-2, 0), q2(0, 0), q2(1, 0)}));
    EXPECT_EQ(p4_d7() * p4_d7().negate_variable(), A);
}

TEST(Polyfield, SqrtFactorRecoversD7) {
    KPoly p3 = tau_conjugate(p1_d7());
    QuadElem x0(-2, -2, 2);
    auto y = find_roots(p3, Embedding::j, P50).roots;
    // conjugate pair in (re, im) order
    std::swap(y[0], y[1]);
    SqrtFactor s = sqrt_factor(p3, x0, y, P50);
    EXPECT_EQ(s.p4, p4_d7());
    ASSERT_EQ(s.z.size(), 2u);
    CPoly p4n = embed(s.p4, P50);
    Complex x0c(x0.to_real(P50));
    for (size_t j = 0; j < 2; ++j) {
        EXPECT_LT(abs(p4n.eval(s.z[j])), pow10(-40, P50));
        EXPECT_LT(abs(s.z[j] * s.z[j] - x0c * y[j]), pow10(-40, P50));
    }
    EXPECT_LT(abs(s.z[1] - conj(s.z[0])), pow10(-40, P50));
}

TEST(Polyfield, SqrtFactorRejectsOddDegree) {
    KPoly t1({q2(-1, 0), q2(1, 0)});
    std::vector<Complex> y{Complex(Real(1L, P50))};
    EXPECT_THROW(sqrt_factor(t1, QuadElem(-2, -2, 2), y, P50), ConjectureFailure);
}

TEST(Polyfield, SqrtFactorRejectsNonSplitting) {
    // t^4 + 3 has no factor p(t) over Q(√2) with p(t)p(-t) = t^4 + 3
    KPoly p3({q2(3, 0), q2(0, 0), q2(1, 0)});
    auto y = find_roots(p3, Embedding::j, P50).roots;
    std::swap(y[0], y[1]);
    EXPECT_THROW(sqrt_factor(p3, QuadElem(1, 0, 2), y, P50), ConjectureFailure);
}

TEST(Residue, GammaSatisfiesP4) {
    auto ring = std::make_shared<const ResidueRing>(p4_d7());
    ResidueElem g = ResidueElem::gamma(ring);
    ResidueElem lhs = g * g;
    ResidueElem rhs = -(g * ResidueElem::from_K(ring, q2(2, 1))) - ResidueElem::from_K(ring, q2(2, 2));
    EXPECT_EQ(lhs, rhs);
    EXPECT_TRUE(apply_poly(p4_d7(), g).is_zero());
}

TEST(Residue, FieldAxiomsRandom) {
    std::mt19937 rng(7);
    KPoly mod({QuadElem(mpq_class(3, 2), 1, 5), QuadElem(0, mpq_class(1, 3), 5), QuadElem(-1, 0, 5),
               QuadElem(2, 0, 5)});  // non-monic on purpose
    auto ring = std::make_shared<const ResidueRing>(mod);
    auto rnd = [&] {
        KPoly p({random_k(rng, 5), random_k(rng, 5), random_k(rng, 5)});
        return ResidueElem::from_poly(ring, p);
    };
    for (int trial = 0; trial < 20; ++trial) {
        ResidueElem a = rnd(), b = rnd(), c = rnd();
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.inverse(), ResidueElem::from_K(ring, QuadElem::rational(1, 5)));
        }
        // exact product agrees with polynomial reduction
        EXPECT_EQ((a * b).to_poly(), (a.to_poly() * b.to_poly()) % mod);
    }
}

TEST(Residue, EmbeddingIsHomomorphism) {
    auto ring = std::make_shared<const ResidueRing>(p4_d7());
    auto roots = find_roots(p4_d7(), Embedding::j, P50).roots;
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        ResidueElem a = ResidueElem::from_poly(ring, KPoly({random_k(rng, 2), random_k(rng, 2)}));
        ResidueElem b = ResidueElem::from_poly(ring, KPoly({random_k(rng, 2), random_k(rng, 2)}));
        for (const auto& z : roots) {
            EXPECT_LT(abs((a * b).embed(z) - a.embed(z) * b.embed(z)), pow10(-40, P50));
            EXPECT_LT(abs((a + b).embed(z) - a.embed(z) - b.embed(z)), pow10(-40, P50));
        }
    }
}

TEST(Residue, NonInvertibleNamesFactor) {
    // modulus (t-1)(t-2) is not irreducible; t-1 has no inverse
    KPoly mod({q2(2, 0), q2(-3, 0), q2(1, 0)});
    auto ring = std::make_shared<const ResidueRing>(mod);
    ResidueElem x = ResidueElem::from_poly(ring, KPoly({q2(-1, 0), q2(1, 0)}));
    try {
        (void)x.inverse();
        FAIL() << "expected throw";
    } catch (const InvalidInput& e) {
        EXPECT_NE(std::string(e.what()).find("gcd"), std::string::npos);
    }
}

TEST(HilbertClassField, ArithmeticAndConjugation) {
    HKElem x(QuadElem(1, 1, 5), QuadElem(2, 0, 5), 3), y(QuadElem(0, 1, 5), QuadElem(-1, 1, 5), 3);
    EXPECT_EQ((x * y) / y, x);
    EXPECT_EQ((x * y).conj_r(), x.conj_r() * y.conj_r());
    Real xr = x.to_real(P50), yr = y.to_real(P50);
    EXPECT_LT(abs((x * y).to_real(P50) - xr * yr), pow10(-40, P50));
}

TEST(HilbertClassField, FactorSyntheticQuartic) {
    // p3 = t^2 + (1 + √5√3) t + (2 + √3) over K(√3), K = Q(√5)
    const long r = 3;
    HKPoly p3({HKElem(QuadElem(2, 0, 5), QuadElem(1, 0, 5), r), HKElem(QuadElem(1, 0, 5), QuadElem(0, 1, 5), r),
               HKElem(QuadElem(1, 0, 5), QuadElem(0, 0, 5), r)});
    HKPoly p3c = p3.map([](const HKElem& c) { return c.conj_r(); });
    HKPoly prod = p3 * p3c;
    std::vector<QuadElem> kc;
    for (const auto& c : prod.coeffs()) {
        ASSERT_TRUE(c.in_K());
        kc.push_back(c.alpha());
    }
    KPoly p2(kc);
    HcfFactorization f = factor_over_hcf(p2, 2, 5, P50, r);
    ASSERT_TRUE(f.p3.has_value());
    EXPECT_TRUE(*f.p3 == p3 || *f.p3 == p3c);
    EXPECT_EQ(factor_over_hcf(p2, 1, 5, P50).p3_over_K, p2);
    EXPECT_THROW(factor_over_hcf(p2, 3, 5, P50, r), Unsupported);
}
