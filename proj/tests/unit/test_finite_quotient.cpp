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
#include <sstream>

#include "branchlie/errors.hpp"
#include "branchlie/finite_quotient.hpp"
#include "doctest.h"

using namespace branchlie;

TEST_CASE("quotient orders") {
    CHECK(FiniteQuotient::build(GroupId::Grigorchuk, 1)->order_exp() == 1);
    CHECK(FiniteQuotient::build(GroupId::GuptaSidki, 1)->order_exp() == 1);
    auto q = FiniteQuotient::build(GroupId::Grigorchuk, 3);
    CHECK(q->order_exp() == 7);
    // independent oracle: multiply out the generators
    CHECK(reference_closure(q->gens, 1 << 10).size() == 128);
    CHECK(q->size() == 128);
    // ranks of any central series multiply up to the order
    for (auto k : {SeriesKind::lower_central, SeriesKind::dimension_p, SeriesKind::frattini_p}) {
        auto s = series(q, k);
        int sum = 0;
        for (int r : s.ranks) sum += r;
        CHECK(sum == 7);
    }
    auto gs = FiniteQuotient::build(GroupId::GuptaSidki, 2);
    CHECK(reference_closure(gs->gens, 1 << 12).size() == static_cast<std::size_t>(gs->size()));
}

TEST_CASE("subgroup algebra") {
    auto q = FiniteQuotient::build(GroupId::Grigorchuk, 1);
    auto G = Subgroup::whole(q);
    CHECK(commutator(G, G).is_trivial());
    auto g3 = FiniteQuotient::build(GroupId::GuptaSidki, 1);
    CHECK(power_p(Subgroup::whole(g3)).is_trivial());

    auto q4 = FiniteQuotient::build(GroupId::Grigorchuk, 4);
    auto W = Subgroup::whole(q4);
    auto D = commutator(W, W);
    CHECK(D.is_normal());
    CHECK(q4->order_exp() - D.order_exp() == 3);  // Gg/[Gg,Gg] has order 8
    auto C = Subgroup::normal_closure(q4, {q4->gens[1]});
    CHECK(C.is_normal());
    auto I = intersection(C, D);
    CHECK(I.subset_of(C));
    CHECK(I.subset_of(D));
    CHECK(product(C, D).order_exp() == C.order_exp() + D.order_exp() - I.order_exp());
    auto P = power_p(W);
    CHECK(product(P, D) == product(D, P));
    // the generated subgroup agrees with brute-force closure
    auto H = Subgroup::generated(q4, {q4->gens[0], q4->gens[1]});
    auto ref = reference_closure({q4->gens[0], q4->gens[1]}, 1 << 14);
    CHECK((std::size_t{1} << H.order_exp()) == ref.size());
    for (auto& e : ref) CHECK(H.contains(e));
}

TEST_CASE("nilpotency classes") {
    CHECK(series(FiniteQuotient::build(GroupId::Grigorchuk, 3), SeriesKind::lower_central).length == 4);
    CHECK(series(FiniteQuotient::build(GroupId::GuptaSidki, 2), SeriesKind::lower_central).length == 2);
    CHECK(series(FiniteQuotient::build(GroupId::FabrykowskiGupta, 2), SeriesKind::lower_central).length == 3);
}

TEST_CASE("augmentation filtration of C2") {
    auto a = augmentation_filtration(FiniteQuotient::build(GroupId::Grigorchuk, 1));
    CHECK(a == std::vector<int>{1, 1});
}

TEST_CASE("derived against lower central") {
    auto rows2 = derived_vs_gamma_check(FiniteQuotient::build(GroupId::GuptaSidki, 2));
    REQUIRE(!rows2.empty());
    CHECK(rows2[0].contained);
    for (auto id : {GroupId::GuptaSidki, GroupId::FabrykowskiGupta})
        for (auto& r : derived_vs_gamma_check(FiniteQuotient::build(id, 3)))
            if (r.applies) CHECK(r.contained);
}

TEST_CASE("cache round trip") {
    auto q = FiniteQuotient::build(GroupId::GuptaSidki, 3);
    std::stringstream ss;
    q->save(ss);
    auto r = FiniteQuotient::load(ss);
    CHECK(r->order_exp() == q->order_exp());
    CHECK(r->gens == q->gens);
    CHECK(r->level == 3);
    std::stringstream junk("not a cache");
    CHECK_THROWS(FiniteQuotient::load(junk));
}

TEST_CASE("limits") {
    QuotientLimits lim;
    lim.max_points = 8;
    CHECK_THROWS_AS(FiniteQuotient::build(GroupId::Grigorchuk, 4, lim), ResourceError);
    CHECK_THROWS_AS(FiniteQuotient::build(GroupId::Grigorchuk, -1), DomainError);
}
