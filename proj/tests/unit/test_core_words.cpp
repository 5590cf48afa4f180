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

#include "branchlie/core_words.hpp"
#include "branchlie/errors.hpp"
#include "doctest.h"

using namespace branchlie;

TEST_CASE("alpha values") {
    CHECK(alpha(SeqKind::alphaGS, 5) == 29);
    CHECK(alpha(SeqKind::betaGS, 7) == 288);
    // running sum 1+2+5+12+29+70+169+408
    CHECK(alpha(SeqKind::betaGS, 8) == 696);
    CHECK(alpha(SeqKind::alphaFG, 2) == 3);
    CHECK(alpha(SeqKind::alphaFG, 3) == 8);
    CHECK_THROWS_AS(alpha(SeqKind::alphaGS, 0), DomainError);
    CHECK_THROWS_AS(alpha(SeqKind::alphaFG, 1), DomainError);
}

TEST_CASE("silver closed forms agree with the recurrences") {
    for (int n = 1; n <= 40; ++n) {
        CHECK(alpha_gs_closed_form(n) == alpha(SeqKind::alphaGS, n));
        CHECK(beta_gs_closed_form(n) == alpha(SeqKind::betaGS, n));
    }
}

TEST_CASE("beta is the running sum of alpha") {
    std::int64_t s = 0;
    for (int n = 1; n <= 30; ++n) {
        s += alpha(SeqKind::alphaGS, n);
        CHECK(alpha(SeqKind::betaGS, n) == s);
    }
}

TEST_CASE("rank of short words") {
    CHECK(rank_word(parse_word("λ", 2)) == 2);
    CHECK(rank_word(parse_word("0", 2)) == 3);
    CHECK(rank_word(parse_word("10", 2)) == 6);
    CHECK(rank_word(parse_word("00", 2)) == 5);
    CHECK_THROWS_AS(rank_word(parse_word("2", 3)), DomainError);
}

TEST_CASE("rank is a bijection from words of length <= 3 onto 2..16") {
    std::set<std::int64_t> seen;
    for (int len = 0; len <= 3; ++len)
        for (int bits = 0; bits < (1 << len); ++bits) {
            std::vector<std::uint8_t> d(len);
            for (int i = 0; i < len; ++i) d[i] = (bits >> i) & 1;
            DigitWord w(d, 2);
            // direct evaluation of 1 + sum X_i 2^{i-1} + 2^len
            std::int64_t r = 1 + (1 << len);
            for (int i = 0; i < len; ++i) r += d[i] << i;
            CHECK(rank_word(w) == r);
            CHECK(word_of_rank(r) == w);
            seen.insert(r);
        }
    CHECK(seen.size() == 15);
    CHECK(*seen.begin() == 2);
    CHECK(*seen.rbegin() == 16);
}

TEST_CASE("word_of_rank small values") {
    CHECK(to_string(word_of_rank(2)) == "λ");
    CHECK(to_string(word_of_rank(3)) == "0");
    CHECK(to_string(word_of_rank(16)) == "111");
    CHECK(to_string(word_of_rank(17)) == "0000");
    CHECK_THROWS_AS(word_of_rank(1), DomainError);
    auto ws = words_in_rank_range(2, 9);
    REQUIRE(ws.size() == 8);
    for (std::size_t i = 0; i < ws.size(); ++i) CHECK(rank_word(ws[i]) == static_cast<std::int64_t>(i) + 2);
}

TEST_CASE("digit words") {
    auto w = parse_word("012", 3);
    CHECK(w.size() == 3);
    CHECK(to_string(w.prefixed(2)) == "2012");
    CHECK(to_string(w.appended(1)) == "0121");
    CHECK(to_string(w.tail()) == "12");
    CHECK_THROWS_AS(parse_word("3", 3), DomainError);
    CHECK_THROWS_AS(DigitWord().tail(), DomainError);
}
