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

#include "sicfid/zeta.hpp"

#include <gtest/gtest.h>

using namespace sicfid;

namespace {

const Precision P40{40};

// roots of t² − (1+√2)t + 1 by the quadratic formula
std::pair<Real, Real> d7_p1_roots(Precision p) {
    Real s = Real(1L, p) + sqrt(Real(2L, p));
    Real disc = sqrt(s * s - Real(4L, p));
    return {(s + disc) / 2L, (s - disc) / 2L};
}

}  // namespace

TEST(SpecialFunctions, ExponentialIntegral) {
    // E1(1) = 0.21938393439552027367716377546012164903104729340691
    Real e = expint_e1(Real(1L, P40));
    Real ref("0.21938393439552027367716377546012164903104729340691", P40);
    EXPECT_LT(abs(e - ref), pow10(-38, P40));
}

TEST(RayClassGroup, Orders) {
    EXPECT_EQ(ray_class_group(classify_dimension(7)).order, 2);
    EXPECT_EQ(ray_class_group(classify_dimension(19)).order, 2);
    RayClassGroup g199 = ray_class_group(classify_dimension(199));
    EXPECT_EQ(g199.order, 22);
    EXPECT_EQ(g199.structure(), "2x11");
    EXPECT_EQ(g199.sigma_T, 11);
    EXPECT_EQ(ray_class_group(classify_dimension(67)).order, 22);
    EXPECT_THROW(ray_class_group(classify_dimension(103)), Unsupported);
    EXPECT_THROW(ray_class_group(classify_dimension(39)), InvalidInput);
}

TEST(RayClassGroup, UnitsAreTrivial) {
    DimensionInfo info = classify_dimension(199);
    RayClassGroup G = ray_class_group(info);
    // −1 and u_K generate principal ideals already counted as the identity class
    const long ua = mpz_class(info.unit.a() * 2).get_si(), ub = mpz_class(info.unit.b() * 2).get_si();
    EXPECT_EQ(G.class_of(ua, ub, 0), 0);
    EXPECT_EQ(G.class_of(-2, 0, 1), 0);
    EXPECT_EQ(G.class_of(2, 0, 1), G.sigma_T);
}

TEST(Characters, ParityCounts) {
    auto c7 = characters(ray_class_group(classify_dimension(7)));
    ASSERT_EQ(c7.size(), 2u);
    EXPECT_FALSE(c7[0].odd);
    EXPECT_TRUE(c7[1].odd);
    Complex one = c7[0].value(0, P40);
    EXPECT_EQ(one.re, Real(1L, P40));
    auto c199 = characters(ray_class_group(classify_dimension(199)));
    long odd = 0;
    for (const auto& c : c199) odd += c.odd;
    EXPECT_EQ(c199.size(), 22u);
    EXPECT_EQ(odd, 11);
    // conjugate pairs: χ_k odd ⇔ χ_{−k} odd
    for (const auto& c : c199) EXPECT_EQ(c.odd, c199[static_cast<size_t>((22 - c.k) % 22)].odd);
}

TEST(IdealCounts, NormOneAndSplitPrimes) {
    DimensionInfo info = classify_dimension(7);
    RayClassGroup G = ray_class_group(info);
    IdealCounts ic = ideal_counts(info, G, 50);
    auto total = [&](long n) {
        long s = 0;
        for (long c : ic.counts[static_cast<size_t>(n)]) s += c;
        return s;
    };
    EXPECT_EQ(total(1), 1);
    EXPECT_EQ(ic.counts[1][0], 1);
    EXPECT_EQ(total(2), 1);   // 2 ramifies in Q(√2)
    EXPECT_EQ(total(3), 0);   // inert
    EXPECT_EQ(total(9), 1);
    EXPECT_EQ(total(7), 1);   // 7 = ∂∂^τ, only ∂^τ is coprime to ∂
    EXPECT_EQ(total(17), 2);  // split
    EXPECT_EQ(total(49), 1);
}

TEST(LFunction, EvenVanishesAndConjugatePairs) {
    DimensionInfo info = classify_dimension(7);
    RayClassGroup G = ray_class_group(info);
    auto chars = characters(G);
    IdealCounts ic = ideal_counts(info, G, lfunction_cutoff(info, 40));
    LDerivative even = lfunction_deriv0(chars[0], ic, info, P40);
    EXPECT_TRUE(even.value.is_zero());
    LDerivative odd = lfunction_deriv0(chars[1], ic, info, P40);
    EXPECT_LT(abs(abs(odd.root_number) - Real(1L, P40)), pow10(-30, P40));
    EXPECT_LT(abs(odd.value.im), pow10(-30, P40));  // real character
    IdealCounts small = ideal_counts(info, G, 4);
    EXPECT_THROW(lfunction_deriv0(chars[1], small, info, P40), ComputationError);
}

TEST(LFunction, D199ConjugateCharactersGiveConjugateDerivatives) {
    DimensionInfo info = classify_dimension(199);
    RayClassGroup G = ray_class_group(info);
    auto chars = characters(G);
    const Precision p{20};
    IdealCounts ic = ideal_counts(info, G, lfunction_cutoff(info, 30));
    LDerivative a = lfunction_deriv0(chars[1], ic, info, p);
    LDerivative b = lfunction_deriv0(chars[21], ic, info, p);
    EXPECT_LT(abs(a.value - conj(b.value)), pow10(-15, p));
}

TEST(StarkUnits, D7MatchesP1Roots) {
    StarkUnitSet s = stark_units(classify_dimension(7), P40);
    ASSERT_EQ(s.values.size(), 2u);
    auto [r1, r2] = d7_p1_roots(P40);
    Real lo = std::min(s.values[0], s.values[1]), hi = std::max(s.values[0], s.values[1]);
    EXPECT_LT(abs(hi - r1), pow10(-30, P40));
    EXPECT_LT(abs(lo - r2), pow10(-30, P40));
    EXPECT_LT(inverse_pair_deviation(s), pow10(-30, P40));
    KPoly p1 = minpoly_stark(s);
    EXPECT_EQ(p1, KPoly({QuadElem(1, 0, 2), QuadElem(-1, -1, 2), QuadElem(1, 0, 2)}));
}

TEST(StarkUnits, D19UnitMinpoly) {
    StarkUnitSet s = stark_units(classify_dimension(19), P40, 2);
    for (const auto& v : s.values) EXPECT_GT(v.sign(), 0);
    EXPECT_LT(inverse_pair_deviation(s), pow10(-30, P40));
    KPoly p1 = minpoly_stark(s);
    EXPECT_EQ(p1.degree(), 2);
    mpq_class nc = p1.coeff_or_zero(0, QuadElem::rational(0, 5)).norm();
    EXPECT_EQ(nc * nc, 1);
    // ε₀ + ε₁ = (5+√5)/2
    EXPECT_EQ(p1.coeff_or_zero(1, QuadElem::rational(0, 5)), -QuadElem(mpq_class(5, 2), mpq_class(1, 2), 5));
}

TEST(MinpolyStark, SyntheticUnit) {
    Real u = Real(2L, P40) + sqrt(Real(3L, P40));
    KPoly p = minpoly_stark({u, Real(1L, P40) / u}, 3, P40);
    EXPECT_EQ(p, KPoly({QuadElem(1, 0, 3), QuadElem(-4, 0, 3), QuadElem(1, 0, 3)}));
    // a transcendental value has no short relation
    EXPECT_THROW(minpoly_stark({Real::pi(P40)}, 3, P40), ComputationError);
}
