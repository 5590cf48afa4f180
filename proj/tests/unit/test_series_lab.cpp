/* Copyright 2026 The branchlie Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */
#include <algorithm>
#include <cmath>

#include "branchlie/errors.hpp"
#include "branchlie/finite_quotient.hpp"
#include "branchlie/series_lab.hpp"
#include "doctest.h"

using namespace branchlie;

namespace {
Poly P(std::initializer_list<std::int64_t> c) { return Poly::from_ints(std::vector<std::int64_t>(c)); }

// Lyndon words by definition: strictly smaller than every proper rotation.
std::size_t brute_lyndon(int r, int n) {
    std::size_t count = 0;
    std::vector<int> w(static_cast<std::size_t>(n), 0);
    while (true) {
        bool ok = true;
        for (int s = 1; s < n && ok; ++s) {
            std::vector<int> rot(w.begin() + s, w.end());
            rot.insert(rot.end(), w.begin(), w.begin() + s);
            if (!(w < rot)) ok = false;
        }
        count += ok;
        int i = n - 1;
        while (i >= 0 && w[static_cast<std::size_t>(i)] == r - 1) w[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
        ++w[static_cast<std::size_t>(i)];
    }
    return count;
}
}  // namespace

TEST_CASE("Q polynomials") {
    CHECK(q_poly(GroupId::Grigorchuk, 3) == P({0, 1, 1, 1}));
    CHECK(q_poly(GroupId::GuptaSidki, 3) == P({0, 1, 1, 2, 1, 1}));
    CHECK(q_poly(GroupId::FabrykowskiGupta, 3) == P({1, 2, 1, 1, 1, 1, 1}));
    CHECK(hp_from_q(GroupId::GuptaSidki, 2) == P({0, 2, 1}));
    CHECK_THROWS_AS(hp_from_q(GroupId::Grigorchuk, 2), DomainError);
    CHECK_THROWS_AS(q_poly(GroupId::SylowP, 3), UnsupportedError);
}

TEST_CASE("R_n equals Q_n") {
    for (int n = 2; n <= 8; ++n) CHECK(gs_r_poly(n) == q_poly(GroupId::GuptaSidki, n));
}

TEST_CASE("HP sums to the quotient order") {
    // sum of ranks = log_p |G/stab(n)|
    for (int n = 3; n <= 5; ++n) {
        auto h = hp_from_q(GroupId::Grigorchuk, n);
        BigInt s = 0;
        for (auto& c : h.coefficients()) s += c;
        QuotientLimits lim;
        lim.build_store = false;
        CHECK(s == FiniteQuotient::build(GroupId::Grigorchuk, n, lim)->order_exp());
    }
}

TEST_CASE("truncated arithmetic") {
    Poly a = Poly::from_ints({1, 1, 1, 1, 1}, 3);
    Poly b = P({1, -1});
    Poly c = a * b;
    CHECK(c.trunc() == 3);
    CHECK(c.to_ints(3) == std::vector<std::int64_t>{1, 0, 0});
    CHECK(P({1, 1}).substitute(3) == P({1, 0, 0, 1}));
    CHECK(P({1, 1}).shifted(2) == P({0, 0, 1, 1}));
    CHECK((a + b).trunc() == 3);
    CHECK(P({1, 0, 2}).to_string() == "1+2h^2");
}

TEST_CASE("Jennings product") {
    CHECK(jennings_product({1}, 2, 10) == Poly::from_ints({1, 1}, 10));
    auto j = jennings_product({2, 1}, 3, 100);
    BigInt sum = 0;
    for (auto& c : j.coefficients()) sum += c;
    CHECK(sum == 27);
    auto v = j.to_ints(static_cast<std::size_t>(j.degree()) + 1);
    auto rv = v;
    std::reverse(rv.begin(), rv.end());
    CHECK(v == rv);
}

TEST_CASE("Witt and Lyndon") {
    CHECK(witt_dimension(2, 1) == 2);
    CHECK(witt_dimension(2, 3) == 2);
    CHECK(lyndon_words(2, 3) == std::vector<std::vector<int>>{{0, 0, 1}, {0, 1, 1}});
    for (int r = 1; r <= 3; ++r)
        for (int n = 1; n <= 8; ++n) CHECK(lyndon_words(r, n).size() == brute_lyndon(r, n));
}

TEST_CASE("GK estimate") {
    std::vector<std::int64_t> c(500, 3);
    CHECK(std::abs(gk_estimate(c).slope - 1.0) < 0.05);
    std::vector<std::int64_t> lin(500);
    for (std::size_t i = 0; i < lin.size(); ++i) lin[i] = static_cast<std::int64_t>(i + 1);
    CHECK(std::abs(gk_estimate(lin).slope - 2.0) < 0.1);
    CHECK_THROWS_AS(gk_estimate(std::vector<std::int64_t>(5, 1)), DomainError);
}

TEST_CASE("series comparison") {
    auto a = P({1, 2, 3});
    CHECK(series_leq(a, a).holds);
    auto r = series_leq(P({1, 1}), P({1, 2}));
    CHECK_FALSE(r.holds);
    CHECK(r.first_violation == 1);
}
