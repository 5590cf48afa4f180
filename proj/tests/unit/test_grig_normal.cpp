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
#include <map>
#include <set>

#include "branchlie/errors.hpp"
#include "branchlie/grig_normal.hpp"
#include "doctest.h"

using namespace branchlie;

namespace {
SymLieElt xs(const char* w) { return SymLieElt::x(parse_word(w, 2), 1 << 20); }
}  // namespace

TEST_CASE("commutation table") {
    CHECK(commutate(xs("0"), 'a') == xs("1"));
    CHECK(commutate(xs("01"), 'a') == xs("11"));
    auto w = xs("0");
    w += xs("1");
    CHECK(commutate(xs("1"), 'd') == [] {
        // [1X,d] = w[X,b] with X = lambda: [x,b] = x^2
        auto e = SymLieElt::x2(parse_word("0", 2), 1 << 20);
        e += SymLieElt::x2(parse_word("1", 2), 1 << 20);
        return e;
    }());
    CHECK(commutate(xs("λ"), 'd') == xs("0"));
}

TEST_CASE("descriptors") {
    auto w = parse_descriptor("W(01;λ,0;1)");
    REQUIRE(w.A);
    CHECK(to_string(*w.A) == "01");
    CHECK(w.B.size() == 2);
    CHECK(to_string(w.C) == "1");
    CHECK(parse_descriptor(w.to_string()) == w);
    CHECK_FALSE(parse_descriptor("W(inf;;0)").A.has_value());
    CHECK_THROWS_AS(parse_descriptor("W(01;λ)"), DomainError);
}

TEST_CASE("index exponents") {
    CHECK(index_of(parse_descriptor("W(λ;;λ)")) == 4);
    CHECK(index_of(parse_descriptor("W(0;;λ)")) == 5);
    CHECK(index_of(parse_descriptor("W(1;;λ)")) == 6);
    CHECK(index_of(parse_descriptor("W(0;λ;0)")) == 6);
    CHECK(index_of(parse_descriptor("W(01;;0)")) == 10);
}

TEST_CASE("table rows have the listed index") {
    auto rows = table_fixture();
    CHECK(rows.size() == 109);
    for (auto& r : rows)
        if (r.w.A) CHECK(index_of(r.w) == r.exponent);
}

TEST_CASE("realized descriptors") {
    auto q = FiniteQuotient::build(GroupId::Grigorchuk, 4);
    auto K = realize_descriptor(parse_descriptor("W(λ;;λ)"), q);
    CHECK(q->order_exp() - K.subgroup.order_exp() == 4);
    auto r5 = realize_descriptor(parse_descriptor("W(0;;λ)"), q);
    CHECK(q->order_exp() - r5.subgroup.order_exp() == 5);
    CHECK(r5.subgroup.subset_of(K.subgroup));
    // same-index rows realize to distinct subgroups at level 7
    QuotientLimits lim;
    lim.build_store = false;
    auto q7 = FiniteQuotient::build(GroupId::Grigorchuk, 7, lim);
    std::map<int, std::vector<Subgroup>> by;
    for (auto& r : table_fixture())
        if (r.exponent <= 8) {
            auto s = realize_descriptor(r.w, q7).subgroup;
            CHECK(q7->order_exp() - s.order_exp() == r.exponent);
            for (auto& o : by[r.exponent]) CHECK_FALSE(o == s);
            by[r.exponent].push_back(s);
        }
}

TEST_CASE("b_n values") {
    auto t = count_bn_table(11);
    std::vector<std::int64_t> got;
    for (auto& v : t) got.push_back(v.value);
    CHECK(got == std::vector<std::int64_t>{1, 7, 7, 7, 5, 3, 3, 3, 5, 5, 7, 5});
    CHECK(count_bn(26) == 37);
    CHECK(count_bn(34) == 55);
    CHECK(non_k_counts() == std::vector<int>{1, 7, 7, 7, 4, 2});
}

TEST_CASE("enumeration counts") {
    auto en = enumerate_normal(14);
    std::vector<int> kc(15, 0);
    int outside = 0;
    for (auto& e : en) {
        if (e.in_K) ++kc[static_cast<std::size_t>(e.exponent)];
        else ++outside;
    }
    CHECK(std::vector<int>(kc.begin() + 4, kc.end()) == std::vector<int>{1, 1, 3, 3, 5, 5, 7, 5, 7, 7, 13});
    CHECK(outside == 28);
}

TEST_CASE("lattice") {
    NormalLattice lat(5, 6);
    // K is the only subgroup of index 16 inside K; its single cover is W(0;;lambda)
    const auto& l4 = lat.layer(4);
    int k = -1;
    for (std::size_t i = 0; i < l4.size(); ++i)
        if (l4[i] == lat.K()) k = static_cast<int>(i);
    REQUIRE(k >= 0);
    auto ch = lat.children(4, k);
    REQUIRE(ch.size() == 1);
    auto w = realize_descriptor(parse_descriptor("W(0;;λ)"), lat.quotient()).subgroup;
    CHECK(lat.layer(5)[static_cast<std::size_t>(ch[0])] == w);
    for (int e = 1; e < 6; ++e)
        for (std::size_t i = 0; i < lat.layer(e).size(); ++i) {
            auto n = lat.children(e, static_cast<int>(i)).size();
            CHECK((n == 1 || n == 3));
        }
    auto dot = lattice_dot(lat, 6);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot == lattice_dot(lat, 6));
}

TEST_CASE("parity") {
    for (auto& v : count_bn_table(20)) CHECK(v.value % 2 == 1);
}
