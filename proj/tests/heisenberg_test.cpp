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

#include "sicfid/heisenberg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sicfid;

namespace {

const Precision P50{50};

QuadElem q2(long a, long b) { return QuadElem(a, b, 2); }
KPoly p4_d7() { return KPoly({q2(2, 2), q2(2, 1), q2(1, 0)}); }
KPoly g4_d7() { return KPoly({q2(-2, -1), q2(-1, 0)}); }
QuadElem x0_d7() { return q2(-2, -2); }

FiducialVector d7(int sign = -1, long theta = 3) {
    auto roots = find_roots(p4_d7(), Embedding::j, P50).roots;
    return make_exact_fiducial(7, 1, theta, sign, x0_d7(), p4_d7(), g4_d7(), roots[0]);
}

std::vector<Complex> random_vector(long d, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> c(-50, 50);
    std::vector<Complex> v;
    for (long i = 0; i < d; ++i) v.emplace_back(Real(c(rng), P50) / 7L, Real(c(rng), P50) / 11L);
    return v;
}

Real dist(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Real m(P50);
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST(Weyl, IdentityAndShift) {
    auto v = random_vector(7, 1);
    EXPECT_LT(dist(displacement_apply(7, 0, 0, v), v), pow10(-45, P50));
    auto s = displacement_apply(7, 1, 0, v);
    for (long r = 0; r < 7; ++r) EXPECT_LT(abs(s[static_cast<size_t>((r + 1) % 7)] - v[static_cast<size_t>(r)]), pow10(-45, P50));
}

TEST(Weyl, CommutationZXEqualsOmegaXZ) {
    for (unsigned seed = 0; seed < 5; ++seed) {
        auto v = random_vector(7, seed);
        // X = D_{1,0}, Z = D_{0,1} (no phase for ab = 0)
        auto zx = displacement_apply(7, 0, 1, displacement_apply(7, 1, 0, v));
        auto xz = displacement_apply(7, 1, 0, displacement_apply(7, 0, 1, v));
        Complex w = root_of_unity(1, 7, P50);
        for (auto& c : xz) c = c * w;
        EXPECT_LT(dist(zx, xz), pow10(-45, P50));
    }
}

TEST(Weyl, PhaseConventionParity) {
    // D_{a,b} D_{-a,-b} = 1 and D_{a,b}^† = D_{-a,-b}
    auto v = random_vector(7, 9);
    for (long a = 0; a < 7; ++a) {
        for (long b = 0; b < 7; ++b) {
            auto w = displacement_apply(7, a, b, displacement_apply(7, -a, -b, v));
            EXPECT_LT(dist(w, v), pow10(-40, P50));
        }
    }
}

TEST(Fiducial, D7LabelsAndSymmetry) {
    auto f = d7();
    // (±x₀, z₀, z₀, z₁, z₀, z₁, z₁) for θ = 3
    EXPECT_EQ(f.exact->label, (std::vector<int>{-1, 0, 0, 1, 0, 1, 1}));
    SymmetryReport s = symmetry_check(f);
    EXPECT_EQ(s.alpha, 2);
    EXPECT_EQ(s.alpha_order, 3);
    EXPECT_EQ(s.distinct_values, 2);
    EXPECT_TRUE(s.passed);
    EXPECT_THROW(theta_labels(7, 2, 2), InvalidInput);
}

TEST(Fiducial, D7OverlapsAreOneOverEight) {
    auto f = d7();
    EXPECT_LT(abs(overlap(f, 0, 0) - Complex(Real(1L, P50))), pow10(-45, P50));
    for (long a = 0; a < 7; ++a) {
        for (long b = 0; b < 7; ++b) {
            if (a == 0 && b == 0) continue;
            EXPECT_LT(abs(overlap(f, a, b).norm_sq() - Real(1L, P50) / 8L), pow10(-45, P50));
        }
    }
    auto mods = overlap_moduli(f.normalized(), 2);
    for (size_t q = 1; q < mods.size(); ++q) EXPECT_LT(abs(mods[q] - Real(1L, P50) / 8L), pow10(-45, P50));
}

TEST(Fiducial, D7WrongSignIsNotSic) {
    auto f = d7(+1);
    EXPECT_FALSE(sic_verify(f).passed);
    VerifyOptions ex;
    ex.mode = FiducialMode::exact;
    OverlapReport r = sic_verify(f, ex);
    EXPECT_FALSE(r.passed);
    EXPECT_GT(r.nonzero, 0);
}

TEST(Gik, SicValues) {
    auto f = d7();
    auto a = f.normalized();
    EXPECT_LT(abs(gik_numeric(a, 0, 0) - Complex(Real(2L, P50) / 8L)), pow10(-45, P50));
    EXPECT_LT(abs(gik_numeric(a, 1, 2)), pow10(-45, P50));
    EXPECT_LT(abs(gik_numeric(a, 3, 0) - Complex(Real(1L, P50) / 8L)), pow10(-45, P50));
}

TEST(Gik, FlatVectorIsNotSic) {
    std::vector<Complex> a(5, Complex(Real(1L, P50) / sqrt(Real(5L, P50))));
    EXPECT_LT(abs(gik_numeric(a, 1, 1) - Complex(Real(1L, P50) / 5L)), pow10(-45, P50));
}

TEST(Gik, ExactMatchesNumeric) {
    auto f = d7();
    ExactGik g(*f.exact);
    auto roots = find_roots(p4_d7(), Embedding::j, P50).roots;
    for (long i = 0; i < 7; ++i) {
        for (long k = 0; k < 7; ++k) {
            Complex ex = g.G(i, k).embed(roots[0]);
            Complex nu = gik_numeric(f.components, i, k);
            EXPECT_LT(abs(ex - nu), pow10(-35, P50));
        }
    }
}

TEST(Verify, D7ExactFullAndSpot) {
    auto f = d7();
    VerifyOptions ex;
    ex.mode = FiducialMode::exact;
    OverlapReport r = sic_verify(f, ex);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.nonzero, 0);
    EXPECT_LT(r.checked, 49);  // symmetry-reduced
    ex.coverage = Coverage::spot;
    ex.spot = {{1, 2}, {3, 3}, {0, 4}, {0, 0}};
    r = sic_verify(f, ex);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.entries.size(), 4u);
}

TEST(Verify, D7NumericAndPerturbed) {
    auto f = d7();
    OverlapReport r = sic_verify(f);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.checked, 48);
    EXPECT_LT(r.max_deviation, pow10(-45, P50));
    f.components[3] = f.components[3] + Complex(pow10(-5, P50));
    r = sic_verify(f);
    EXPECT_FALSE(r.passed);
    EXPECT_GT(r.max_deviation, pow10(-7, P50));
    EXPECT_LT(r.max_deviation, pow10(-4, P50));
}

TEST(Structure, FlatnessAndNorm) {
    auto f = d7();
    FlatnessReport r = flatness_and_norm(f);
    EXPECT_TRUE(r.passed);
    ASSERT_TRUE(r.exact_moduli.has_value());
    EXPECT_TRUE(*r.exact_moduli);
    // closed forms at d = 7: |a_0|² = (√8+6)/(7√8)
    auto v = f.normalized();
    Real s8 = sqrt(Real(8L, P50));
    EXPECT_LT(abs(v[0].norm_sq() - (s8 + Real(6L, P50)) / (s8 * 7L)), pow10(-45, P50));
    // a flat vector violates almost-flatness
    FiducialVector g = f;
    g.exact.reset();
    for (auto& c : g.components) c = Complex(Real(1L, P50));
    EXPECT_FALSE(flatness_and_norm(g).passed);
}

TEST(Structure, FourierRealAndWienerKhinchin) {
    auto f = d7();
    FourierReport r = fourier_real(f);
    EXPECT_TRUE(r.passed) << r.max_imag << " " << r.max_autocorr_deviation << " " << r.max_wk_deviation;
    ASSERT_EQ(r.psi_real.size(), 7u);
    Real n(P50);
    for (const auto& x : r.psi_real) n += x * x;
    EXPECT_LT(abs(n - Real(1L, P50)), pow10(-45, P50));
}

TEST(Structure, OverlapPhases) {
    auto f = d7();
    auto roots = find_roots(p4_d7(), Embedding::j, P50).roots;
    std::vector<Complex> y;
    Complex x0(x0_d7().to_real(P50));
    for (const auto& it : f.exact->z) {
        Complex z = it.embed(roots[0]);
        y.push_back(z * z / x0);
    }
    PhaseReport r = overlap_phase_check(f, y);
    EXPECT_TRUE(r.passed) << r.multiset_deviation << " " << r.ratio_spread;
    EXPECT_LT(abs(r.ratio - Complex(Real(-1L, P50))), pow10(-40, P50));
}
