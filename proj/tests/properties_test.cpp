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

#include "property_checks.hpp"

#include <gtest/gtest.h>

using namespace sicfid;

class Seeds : public ::testing::TestWithParam<unsigned> {};

TEST_P(Seeds, WeylCommutation) {
    for (long d : {3L, 5L, 7L, 8L, 19L}) EXPECT_TRUE(props::weyl_commutation(d, GetParam())) << d;
}

TEST_P(Seeds, Parity) {
    for (long d : {5L, 7L, 8L, 19L}) EXPECT_TRUE(props::parity(d, GetParam())) << d;
}

TEST_P(Seeds, GSymmetries) {
    for (long d : {7L, 19L, 23L}) EXPECT_TRUE(props::g_symmetries(d, GetParam())) << d;
}

TEST_P(Seeds, DisplacementCompleteness) {
    for (long d : {4L, 7L, 19L}) EXPECT_TRUE(props::completeness(d, GetParam())) << d;
}

TEST_P(Seeds, IntegerRelationScales) { EXPECT_TRUE(props::integer_relation_scales(GetParam())); }

TEST_P(Seeds, TauInvolution) { EXPECT_TRUE(props::tau_involution(GetParam())); }

TEST_P(Seeds, RootMinpolyRoundTrip) { EXPECT_TRUE(props::root_minpoly_roundtrip(GetParam())); }

INSTANTIATE_TEST_SUITE_P(Random, Seeds, ::testing::Range(1u, 9u));

// Sanity: the checks are able to fail.
TEST(PropertyChecks, DetectBrokenInputs) {
    std::mt19937 rng(3);
    auto v = props::random_vector(7, rng);
    // a wrong phase convention breaks D_{a,b}D_{−a,−b} = 1 unless ab ≡ 0
    auto w = displacement_apply(7, 2, 3, v);
    w = displacement_apply(7, -2, -3, w);
    w[0] = w[0] * 2L;
    EXPECT_FALSE(props::dist(w, v) < props::tol());
    // ExactGik on the d=7 fiducial shares the G symmetries exactly
    KPoly p4({QuadElem(2, 2, 2), QuadElem(2, 1, 2), QuadElem(1, 0, 2)});
    KPoly g4({QuadElem(-2, -1, 2), QuadElem(-1, 0, 2)});
    auto roots = find_roots(p4, Embedding::j, props::kP).roots;
    auto f = make_exact_fiducial(7, 1, 3, -1, QuadElem(-2, -2, 2), p4, g4, roots[0]);
    ExactGik G(*f.exact);
    for (long i = 0; i < 7; ++i) {
        for (long k = 0; k < 7; ++k) {
            EXPECT_TRUE(G.G(i, k) == G.G(k, i));
            EXPECT_TRUE(G.G(i, k) == G.G((7 - i) % 7, (7 - k) % 7));
        }
    }
}
