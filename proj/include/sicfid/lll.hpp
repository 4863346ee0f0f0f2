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

#include <utility>
#include <vector>

#include "sicfid/errors.hpp"

namespace sicfid {

using IntVec = std::vector<mpz_class>;

inline mpz_class dot(const IntVec& a, const IntVec& b) {
    mpz_class s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Integral LLL reduction of linearly independent rows, in place.
/// All Gram-Schmidt data is kept as exact integers (subdeterminants d_i and
/// λ_{k,j} = d_j μ_{k,j}), so there is no rounding anywhere.
inline void lll_reduce(std::vector<IntVec>& b, const mpq_class& delta = mpq_class(99, 100)) {
    const size_t n = b.size();
    if (n < 2) return;
    // 1-based indices below; d[0] = 1.
    std::vector<mpz_class> d(n + 1);
    std::vector<std::vector<mpz_class>> lam(n + 1, std::vector<mpz_class>(n + 1));
    const mpz_class dn = delta.get_num(), dd = delta.get_den();
    auto B = [&](size_t i) -> IntVec& { return b[i - 1]; };

    d[0] = 1;
    d[1] = dot(B(1), B(1));
    if (d[1] == 0) throw InvalidInput("lll_reduce: zero vector in basis");
    size_t k = 2, kmax = 1;

    auto red = [&](size_t kk, size_t l) {
        mpz_class two_l = 2 * lam[kk][l];
        if (abs(two_l) <= d[l]) return;
        // q = round(λ/d_l)
        mpz_class q;
        mpz_class num = 2 * lam[kk][l] + d[l], den = 2 * d[l];
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        for (size_t c = 0; c < B(kk).size(); ++c) B(kk)[c] -= q * B(l)[c];
        lam[kk][l] -= q * d[l];
        for (size_t i = 1; i < l; ++i) lam[kk][i] -= q * lam[l][i];
    };
    auto swap_k = [&](size_t kk) {
        std::swap(B(kk), B(kk - 1));
        for (size_t j = 1; j + 2 <= kk; ++j) std::swap(lam[kk][j], lam[kk - 1][j]);
        mpz_class l = lam[kk][kk - 1];
        mpz_class Bn = (d[kk - 2] * d[kk] + l * l) / d[kk - 1];
        for (size_t i = kk + 1; i <= kmax; ++i) {
            mpz_class t = lam[i][kk];
            lam[i][kk] = (d[kk] * lam[i][kk - 1] - l * t) / d[kk - 1];
            lam[i][kk - 1] = (Bn * t + l * lam[i][kk]) / d[kk];
        }
        d[kk - 1] = Bn;
    };

    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (size_t j = 1; j <= k; ++j) {
                mpz_class u = dot(B(k), B(j));
                for (size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
                if (j < k) lam[k][j] = u;
                else d[k] = u;
            }
            if (d[k] == 0) throw InvalidInput("lll_reduce: rows are linearly dependent");
        }
        red(k, k - 1);
        // Lovász: δ d_{k-1}^2 > d_k d_{k-2} + λ_{k,k-1}^2  → swap
        mpz_class lhs = dn * d[k - 1] * d[k - 1];
        mpz_class rhs = dd * (d[k] * d[k - 2] + lam[k][k - 1] * lam[k][k - 1]);
        if (lhs > rhs) {
            swap_k(k);
            if (k > 2) --k;
        } else {
            for (size_t l = k - 1; l-- > 1;) red(k, l);
            ++k;
        }
    }
}

}  // namespace sicfid
