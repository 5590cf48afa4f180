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
#ifndef BRANCHLIE_CORE_WORDS_HPP
#define BRANCHLIE_CORE_WORDS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace branchlie {

// Digits stored X_1 first (least significant).
struct DigitWord {
    std::vector<std::uint8_t> digits;
    int base = 2;

    DigitWord() = default;
    DigitWord(std::vector<std::uint8_t> d, int b);

    std::size_t size() const { return digits.size(); }
    bool empty() const { return digits.empty(); }
    std::uint8_t operator[](std::size_t i) const { return digits[i]; }

    DigitWord prefixed(std::uint8_t d) const;  // dX
    DigitWord appended(std::uint8_t d) const;  // Xd
    DigitWord tail() const;                    // X_2..X_n

    static DigitWord repeat(std::uint8_t d, std::size_t n, int base);

    friend bool operator==(const DigitWord&, const DigitWord&) = default;
};

// Total order by (base, length, digits) used for containers only.
bool operator<(const DigitWord& a, const DigitWord& b);

// "λ" for the empty word, otherwise the digit characters X_1..X_n.
std::string to_string(const DigitWord& w);
// Accepts "λ", "-", "" for the empty word.
DigitWord parse_word(std::string_view s, int base);

enum class SeqKind { alphaGS, betaGS, alphaFG };

std::int64_t alpha(SeqKind kind, int n);

// alphaGS / betaGS through powers of 1+sqrt2 held as integer pairs.
std::int64_t alpha_gs_closed_form(int n);
std::int64_t beta_gs_closed_form(int n);

// #X = 1 + sum X_i 2^{i-1} + 2^n (binary words only).
std::int64_t rank_word(const DigitWord& x);
DigitWord word_of_rank(std::int64_t r);

// All binary words with rank in [lo, hi], in rank order.
std::vector<DigitWord> words_in_rank_range(std::int64_t lo, std::int64_t hi);

}  // namespace branchlie

#endif
