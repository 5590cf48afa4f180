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
#include <set>

#include "branchlie/errors.hpp"
#include "branchlie/finite_quotient.hpp"
#include "branchlie/lemma_checks.hpp"
#include "branchlie/parabolic.hpp"
#include "doctest.h"

using namespace branchlie;

TEST_CASE("orbit growth") {
    CHECK(parabolic_growth(GroupId::Grigorchuk, -1, 0) == Poly::from_ints({1}));
    CHECK(parabolic_growth(GroupId::Grigorchuk, -1, 1) == Poly::from_ints({1, 1}));
    for (int n = 1; n <= 6; ++n) {
        auto g = parabolic_growth(GroupId::Grigorchuk, -1, n);
        BigInt s = 0;
        for (auto& c : g.coefficients()) s += c;
        CHECK(s == BigInt(1) << n);
        auto h = parabolic_growth(GroupId::GuptaSidki, -1, std::min(n, 5));
        s = 0;
        for (auto& c : h.coefficients()) s += c;
        CHECK(s == boost::multiprecision::pow(BigInt(3), std::min(n, 5)));
    }
}

TEST_CASE("deeper levels dominate") {
    for (int n = 2; n <= 7; ++n) {
        auto a = parabolic_growth(GroupId::Grigorchuk, -1, n);
        auto b = parabolic_growth(GroupId::Grigorchuk, -1, n + 1);
        for (long r = 0; r <= a.degree(); ++r) CHECK(b[static_cast<std::size_t>(r)] >= a[static_cast<std::size_t>(r)]);
    }
}

TEST_CASE("word growth of Gg") {
    auto w = word_growth(GroupId::Grigorchuk, 3);
    CHECK(w[0] == 1);
    CHECK(w[1] == 4);
    // brute force on level-8 permutations
    auto q = FiniteQuotient::build(GroupId::Grigorchuk, 8, {std::uint64_t{1} << 20, 0, false, false});
    std::set<Perm> seen{q->identity()};
    for (auto& x : q->gens)
        for (auto& y : q->gens) seen.insert(perm_mul(x, y));
    for (auto& x : q->gens) seen.insert(x);
    CHECK(seen.size() == 1 + 4 + 6);
    CHECK(w[2] == 6);
}

TEST_CASE("polynomial growth estimate") {
    auto r = polygrowth_check(grigorchuk_spec(), {5, 6, 7, 8});
    CHECK(r.stable);
    CHECK(r.estimate >= 1.0 - 0.3);
    CHECK_THROWS_AS(polygrowth_check(grigorchuk_spec(), {5, 6}), DomainError);
}

TEST_CASE("growth inequalities") {
    auto r = growth_inequalities(GroupId::Grigorchuk, 64, 8);
    CHECK(r.C > 0);
    CHECK(r.gpgr_holds);
    CHECK(r.raw_first_violation >= 0);
    auto j = growth_report_json(r);
    CHECK(j.find("\"C\"") != std::string::npos);
}

TEST_CASE("Poisson bracket samples") {
    for (auto& c : check_poisson(2, 3, 30, 5)) CHECK(c.holds);
    for (auto& c : check_poisson(3, 2, 30, 5)) CHECK(c.holds);
}

TEST_CASE("commutation rows modulo [N,G,G]") {
    auto rows = check_comm_table(4);
    CHECK(!rows.empty());
    for (auto& r : rows) CHECK(r.weak);
}
