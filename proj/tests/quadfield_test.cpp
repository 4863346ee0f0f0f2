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

#include "sicfid/quadfield.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sicfid;

TEST(QuadElem, FieldOperations) {
    QuadElem x(mpq_class(3, 2), mpq_class(-1, 3), 5), y(2, 7, 5);
    EXPECT_EQ((x * y).tau(), x.tau() * y.tau());
    EXPECT_EQ(x.tau().tau(), x);
    EXPECT_EQ(x * x.inverse(), QuadElem::rational(1, 5));
    EXPECT_EQ(mpq_class((x * x.tau()).a()), x.norm());
    EXPECT_TRUE((x * x.tau()).is_rational());
    EXPECT_EQ(x.trace(), mpq_class(3));
    EXPECT_THROW(x + QuadElem(1, 1, 2), InvalidInput);
}

TEST(QuadElem, ExactSign) {
    EXPECT_EQ(QuadElem(1, -1, 2).sign(), -1);
    EXPECT_EQ(QuadElem(2, -1, 3).sign(), 1);
    EXPECT_EQ(QuadElem(2, -1, 3).sign(Embedding::j_tau), 1);
    EXPECT_EQ(QuadElem(-2, 1, 5).sign(), 1);
    EXPECT_EQ(QuadElem(-3, 1, 5).sign(), -1);
}

TEST(QuadElem, RandomTauIsRingAutomorphism) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dist(-50, 50);
    for (int i = 0; i < 200; ++i) {
        auto draw = [&] { return QuadElem(mpq_class(dist(rng), 1 + std::abs(dist(rng))), dist(rng), 13); };
        QuadElem x = draw(), y = draw();
        EXPECT_EQ((x * y).tau(), x.tau() * y.tau());
        EXPECT_EQ((x + y).tau(), x.tau() + y.tau());
        EXPECT_EQ(x.tau().tau(), x);
    }
}

TEST(Squarefree, Examples) {
    EXPECT_EQ(squarefree_part(200 * 196), 2);
    EXPECT_EQ(squarefree_part(1), 1);
    EXPECT_EQ(squarefree_part(8 * 4), 2);
    EXPECT_EQ(squarefree_part(20 * 16), 5);
}

TEST(FundamentalUnit, Examples) {
    EXPECT_EQ(fundamental_unit(5), QuadElem(mpq_class(1, 2), mpq_class(1, 2), 5));
    EXPECT_EQ(fundamental_unit(2), QuadElem(1, 1, 2));
    EXPECT_EQ(fundamental_unit(26), QuadElem(5, 1, 26));
    EXPECT_EQ(fundamental_unit(26).norm(), -1);
    EXPECT_EQ(fundamental_unit(3), QuadElem(2, 1, 3));
    EXPECT_EQ(fundamental_unit(13), QuadElem(mpq_class(3, 2), mpq_class(1, 2), 13));
    // Brute-force oracle: smallest y with x^2 - D y^2 = ±1 (or ±4 for half-integral units).
    for (long D : {6L, 7L, 10L, 11L, 14L, 17L, 19L, 21L, 22L, 29L, 31L, 37L, 41L, 46L, 53L, 61L}) {
        QuadElem u = fundamental_unit(D);
        EXPECT_TRUE(u.is_integral()) << D;
        EXPECT_EQ(abs(u.norm()), 1) << D;
        mpq_class best_b = 0;
        for (long y = 1; y < 100000 && best_b == 0; ++y) {
            for (long k : {1L, 4L}) {
                if (k == 4 && D % 4 != 1) continue;
                for (long s : {-1L, 1L}) {
                    long v = D * y * y + s * k;
                    long x = isqrt(v);
                    if (v > 0 && x * x == v && best_b == 0) best_b = mpq_class(y, k == 4 ? 2 : 1);
                }
            }
        }
        EXPECT_EQ(u.b(), best_b) << D;
    }
}

TEST(ClassNumber, Examples) {
    EXPECT_EQ(class_number(2), 1);
    EXPECT_EQ(class_number(26), 2);
    EXPECT_EQ(class_number(5), 1);
    EXPECT_EQ(class_number(10), 2);
    EXPECT_EQ(class_number(3), 1);
    EXPECT_EQ(narrow_class_number(12), 2);
    EXPECT_EQ(class_number(79), 3);
    EXPECT_EQ(class_number(223), 3);
    EXPECT_EQ(class_number(229), 3);
}

TEST(Classify, Examples) {
    DimensionInfo a = classify_dimension(19);
    EXPECT_EQ(a.n, 4);
    EXPECT_EQ(a.D, 5);
    EXPECT_EQ(a.ell, 3);
    EXPECT_EQ(a.h, 1);
    EXPECT_EQ(a.m, 2);
    DimensionInfo b = classify_dimension(7);
    EXPECT_EQ(b.n, 2);
    EXPECT_EQ(b.D, 2);
    EXPECT_EQ(b.ell, 1);
    EXPECT_EQ(b.h, 1);
    EXPECT_EQ(b.m, 2);
    DimensionInfo c = classify_dimension(199);
    EXPECT_EQ(c.n, 14);
    EXPECT_EQ(c.D, 2);
    EXPECT_EQ(c.ell, 3);
    EXPECT_EQ(c.m, 22);
    EXPECT_THROW(classify_dimension(20), InvalidInput);
}

TEST(Tower, Examples) {
    auto t = dimension_tower(5, 6);
    std::vector<mpz_class> want{4, 8, 19, 48, 124, 323};
    EXPECT_EQ(t, want);
    auto t2 = dimension_tower(2, 3);
    // d_2 = d_1(d_1 - 2) = 35.
    std::vector<mpz_class> want2{7, 35, 199};
    EXPECT_EQ(t2, want2);
}

TEST(Tower, DoublingProperty) {
    for (long D : {2L, 5L, 13L, 26L, 3L, 7L}) {
        auto t = dimension_tower(D, 10);
        for (int l = 1; l <= 5; ++l) EXPECT_EQ(t[2 * l - 1], t[l - 1] * (t[l - 1] - 2)) << D << " " << l;
    }
}

TEST(Chebyshev, Examples) {
    EXPECT_EQ(chebyshev_shifted(0), QPoly::constant(3));
    EXPECT_EQ(chebyshev_shifted(1), QPoly(std::vector<mpq_class>{0, 1}));
    EXPECT_EQ(chebyshev_shifted(2), QPoly(std::vector<mpq_class>{0, -2, 1}));
    EXPECT_EQ(chebyshev_shifted(3), QPoly(std::vector<mpq_class>{3, 0, -3, 1}));
    EXPECT_EQ(chebyshev_shifted(2).compose(chebyshev_shifted(3)), chebyshev_shifted(6));
    EXPECT_EQ(chebyshev_shifted(3).compose(chebyshev_shifted(2)), chebyshev_shifted(6));
    EXPECT_EQ(chebyshev_shifted(6).eval(mpq_class(4)), mpq_class(323));
    EXPECT_EQ(chebyshev_shifted(11).eval(mpq_class(4)), mpq_class(39604));
}

TEST(Splitting, Examples) {
    EXPECT_EQ(prime_splitting(7, 2), Splitting::split);
    EXPECT_EQ(prime_splitting(2, 5), Splitting::inert);
    EXPECT_EQ(prime_splitting(2, 2), Splitting::ramified);
    EXPECT_EQ(prime_splitting(2, 17), Splitting::split);
    EXPECT_EQ(prime_splitting(3, 2), Splitting::inert);
    EXPECT_EQ(prime_splitting(5, 5), Splitting::ramified);
    // Odd primes dividing d split.
    for (long d : {7L, 19L, 67L, 103L, 199L}) {
        auto info = classify_dimension(d);
        EXPECT_EQ(prime_splitting(d, info.D), Splitting::split);
    }
}

TEST(UnitOrder, Examples) {
    EXPECT_EQ(unit_order_mod(7), 6);
    EXPECT_EQ(unit_order_mod(19), 18);
    EXPECT_EQ(unit_order_mod(199), 18);
    for (long d : {7L, 19L, 67L, 103L, 199L}) {
        auto info = classify_dimension(d);
        EXPECT_EQ(unit_order_mod_dee(info), 3 * info.ell);
    }
}

TEST(PartialIdeal, Identities) {
    for (long d : {7L, 19L, 199L}) {
        auto info = classify_dimension(d);
        PartialIdeal p = partial_ideal(info);
        EXPECT_EQ(p.dee + p.dee_tau, QuadElem::rational(2, info.D));
        EXPECT_EQ(p.dee * p.dee_tau, QuadElem::rational(-d, info.D));
        EXPECT_EQ(p.reduce(p.dee), 0);
        EXPECT_NE(p.reduce(p.dee_tau), 0);
    }
}

TEST(Degree, TableRows) {
    struct Row {
        long d, h, ell, absdeg;
    };
    for (Row r : {Row{7, 1, 1, 4}, Row{19, 1, 3, 4}, Row{67, 1, 1, 44}, Row{103, 2, 1, 136}, Row{199, 1, 3, 44}}) {
        auto info = classify_dimension(r.d);
        EXPECT_EQ(info.h, r.h) << r.d;
        EXPECT_EQ(info.ell, r.ell) << r.d;
        EXPECT_EQ(2 * degree_small_rcf(info), r.absdeg) << r.d;
    }
    EXPECT_EQ(factor_string(44), "2^2x11");
    EXPECT_EQ(factor_string(136), "2^3x17");
}

TEST(XiAndUnitSquare, Exact) {
    for (long d : {7L, 19L, 67L, 103L, 199L}) EXPECT_TRUE(xi_minpoly_holds(classify_dimension(d)));
    for (long D : {2L, 5L, 13L, 17L, 26L}) EXPECT_TRUE(unit_square_residual(D).is_zero()) << D;
}
