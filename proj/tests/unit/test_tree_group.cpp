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
#include <random>

#include "branchlie/errors.hpp"
#include "branchlie/finite_quotient.hpp"
#include "branchlie/tree_group.hpp"
#include "doctest.h"

using namespace branchlie;

namespace {
bool same_action(const Element& a, const Element& b, int level) { return perm_at(a, level) == perm_at(b, level); }
}  // namespace

TEST_CASE("decompose generators") {
    auto g = grigorchuk_spec();
    auto b = Element::parse(g, "b");
    auto dec = decompose(b);
    REQUIRE(dec.sections.size() == 2);
    CHECK(same_action(dec.sections[0], Element::parse(g, "a"), 6));
    CHECK(same_action(dec.sections[1], Element::parse(g, "c"), 6));
    CHECK(dec.root == std::vector<int>{0, 1});

    auto gs = gupta_sidki_spec();
    auto t = decompose(Element::parse(gs, "t"));
    CHECK(same_action(t.sections[0], Element::parse(gs, "a"), 5));
    CHECK(same_action(t.sections[1], Element::parse(gs, "A"), 5));
    CHECK(same_action(t.sections[2], Element::parse(gs, "t"), 5));
    CHECK(t.root == std::vector<int>{0, 1, 2});

    auto id = decompose(Element::identity(g));
    CHECK(id.root == std::vector<int>{0, 1});
    for (auto& s : id.sections) CHECK(is_trivial(s) == Tri::True);
}

TEST_CASE("act on vertices") {
    auto g = grigorchuk_spec();
    CHECK(act(Element::parse(g, "a"), {0, 0}) == std::vector<int>{1, 0});
    // b = <a, c>: below the first child it acts as a
    auto bv = act(Element::parse(g, "b"), {0, 1, 1});
    CHECK(bv == std::vector<int>{0, 0, 1});
    auto gs = gupta_sidki_spec();
    auto t = Element::parse(gs, "t");
    auto v = act(t, {2, 0, 1});
    CHECK(v[0] == 2);
    auto tail = act(t, {0, 1});
    CHECK(v[1] == tail[0]);
    CHECK(v[2] == tail[1]);
    CHECK_THROWS_AS(act(t, {3}), DomainError);
}

TEST_CASE("relations") {
    auto g = grigorchuk_spec();
    CHECK(is_trivial(Element::parse(g, "aa")) == Tri::True);
    CHECK(is_trivial(Element::parse(g, "bcd")) == Tri::True);
    CHECK(is_trivial(power(Element::parse(g, "ad"), 4)) == Tri::True);
    CHECK(is_trivial(Element::parse(g, "ab")) == Tri::False);
    CHECK(same_action(invert(Element::parse(g, "a")), Element::parse(g, "a"), 5));
    auto gs = gupta_sidki_spec();
    auto t = Element::parse(gs, "t");
    CHECK(is_trivial(compose(t, compose(t, t))) == Tri::True);
    CHECK(is_trivial(compose(t, invert(t))) == Tri::True);
}

TEST_CASE("a long identity word in GS") {
    auto gs = gupta_sidki_spec();
    auto c = commutator(Element::parse(gs, "a"), Element::parse(gs, "t"));
    auto w = commutator(c, c);
    CHECK(is_trivial(w) == Tri::True);
    // [c, c^t] is nontrivial; the finite quotient acts as the oracle
    auto e = commutator(c, conjugate(c, Element::parse(gs, "t")));
    bool moves = !perm_is_identity(perm_at(e, 6));
    CHECK(is_trivial(e) == (moves ? Tri::False : Tri::True));
}

TEST_CASE("derived elements") {
    auto g = grigorchuk_spec();
    auto x = derived_element(g, Symbol::x, parse_word("λ", 2));
    CHECK(same_action(x, commutator(Element::parse(g, "a"), Element::parse(g, "b")), 7));
    auto gs = gupta_sidki_spec();
    auto u = derived_element(gs, Symbol::u, parse_word("λ", 3));
    auto a = Element::parse(gs, "a");
    CHECK(same_action(u, commutator(a, commutator(a, Element::parse(gs, "t"))), 5));
    // 0X puts X in the first child
    auto x0 = derived_element(g, Symbol::x, parse_word("0", 2));
    auto d = decompose(x0);
    CHECK(same_action(d.sections[0], x, 6));
    CHECK(is_trivial(d.sections[1]) == Tri::True);
}

TEST_CASE("portraits") {
    auto g = grigorchuk_spec();
    auto p = portrait(Element::identity(g), 3);
    for (int l : p.labels) CHECK(l == 0);
    // words with equal action on level 6 share the depth-6 portrait
    std::mt19937_64 rng(7);
    const char* letters = "abcd";
    for (int trial = 0; trial < 10; ++trial) {
        std::string s;
        for (int i = 0; i < 20; ++i) s.push_back(letters[rng() % 4]);
        auto e1 = Element::parse(g, s);
        auto e2 = compose(e1, Element::parse(g, "bcd"));
        REQUIRE(same_action(e1, e2, 10));
        CHECK(portrait(e1, 6) == portrait(e2, 6));
        auto e3 = compose(e1, Element::parse(g, "a"));
        CHECK_FALSE(portrait(e1, 6) == portrait(e3, 6));
    }
}

TEST_CASE("parse errors") {
    auto g = grigorchuk_spec();
    CHECK_THROWS_AS(Element::parse(g, "az"), DomainError);
    CHECK_THROWS_AS(parse_group("free"), DomainError);
}
