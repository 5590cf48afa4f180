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
#include "branchlie/errors.hpp"
#include "branchlie/finite_quotient.hpp"
#include "branchlie/lie_graph.hpp"
#include "doctest.h"

using namespace branchlie;

namespace {
std::int64_t deg_of(const LieGraph& g, const std::string& name) {
    int i = g.find(name);
    REQUIRE(i >= 0);
    return g.vertices[static_cast<std::size_t>(i)].degree;
}
}  // namespace

TEST_CASE("degrees of low symbols") {
    auto gg = generate(LieFamily::grigorchuk, 6);
    CHECK(deg_gg_x(parse_word("λ", 2)) == 2);
    CHECK(deg_gg_x2(parse_word("λ", 2), false) == 3);
    CHECK(deg_gg_x(parse_word("0", 2)) == 3);
    CHECK(deg_gs_c(parse_word("λ", 3)) == 2);
    CHECK(deg_gs_u(parse_word("λ", 3)) == 3);
    CHECK(deg_gs_c(parse_word("11", 3)) == 9);
    CHECK(deg_sylow(parse_word("λ", 2), 2) == 1);
    CHECK(hp_coefficients(gg, 1)[0] == 3);
}

TEST_CASE("rank rows") {
    CHECK(hp_coefficients(generate(LieFamily::gupta_sidki, 21), 21) ==
          std::vector<std::int64_t>{2, 1, 2, 1, 2, 2, 2, 2, 1, 2, 2, 2, 3, 2, 4, 2, 3, 2, 2, 2, 1});
    CHECK(hp_coefficients(generate(LieFamily::fabrykowski_gupta, 21), 21) ==
          std::vector<std::int64_t>{2, 1, 2, 1, 2, 2, 2, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1});
}

TEST_CASE("Gg graph ranks are periodic") {
    auto r = hp_coefficients(generate(LieFamily::grigorchuk, 64), 64);
    CHECK(r[0] == 3);
    for (std::size_t i = 1; i < r.size(); ++i) CHECK((r[i] == 1 || r[i] == 2));
}

TEST_CASE("census matches the quotient") {
    for (int n = 3; n <= 4; ++n) {
        auto c = quotient_census(LieFamily::grigorchuk, n);
        auto s = series(FiniteQuotient::build(GroupId::Grigorchuk, n), SeriesKind::lower_central).ranks;
        while (!c.empty() && c.back() == 0) c.pop_back();
        CHECK(c == std::vector<std::int64_t>(s.begin(), s.end()));
    }
}

TEST_CASE("Sylow graph edges from the empty word") {
    auto g = generate(LieFamily::sylow, 16, 2, 4);
    int lam = g.find("λ");
    REQUIRE(lam >= 0);
    int out = 0;
    for (auto& e : g.edges) out += e.src == lam;
    CHECK(out >= 4);
}

TEST_CASE("dot output") {
    LieGraph empty;
    auto d = to_dot(empty);
    CHECK(d.find("digraph") != std::string::npos);
    auto g = generate(LieFamily::grigorchuk, 4);
    auto dot = to_dot(g);
    CHECK(dot.find("a,b,c") != std::string::npos);
    CHECK(to_dot(g) == dot);
}

TEST_CASE("sigma substitution") {
    CHECK(sigma("b") == "d");
    CHECK(sigma("c") == "b");
    CHECK(sigma("d") == "c");
    CHECK(sigma_pow("b", 3) == "b");
}

TEST_CASE("unknown family") { CHECK_THROWS_AS(parse_family("lamplighter"), DomainError); }
