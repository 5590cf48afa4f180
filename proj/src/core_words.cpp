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
#include "branchlie/core_words.hpp"

#include <mutex>

#include "branchlie/errors.hpp"

namespace branchlie {

DigitWord::DigitWord(std::vector<std::uint8_t> d, int b) : digits(std::move(d)), base(b) {
    if (b < 2) throw DomainError("base must be >= 2");
    for (auto x : digits)
        if (x >= b) throw DomainError("digit out of range for base " + std::to_string(b));
}

DigitWord DigitWord::prefixed(std::uint8_t d) const {
    if (d >= base) throw DomainError("digit out of range");
    DigitWord r = *this;
    r.digits.insert(r.digits.begin(), d);
    return r;
}

DigitWord DigitWord::appended(std::uint8_t d) const {
    if (d >= base) throw DomainError("digit out of range");
    DigitWord r = *this;
    r.digits.push_back(d);
    return r;
}

DigitWord DigitWord::tail() const {
    if (digits.empty()) throw DomainError("tail of empty word");
    DigitWord r;
    r.base = base;
    r.digits.assign(digits.begin() + 1, digits.end());
    return r;
}

DigitWord DigitWord::repeat(std::uint8_t d, std::size_t n, int base) {
    return DigitWord(std::vector<std::uint8_t>(n, d), base);
}

bool operator<(const DigitWord& a, const DigitWord& b) {
    if (a.base != b.base) return a.base < b.base;
    if (a.digits.size() != b.digits.size()) return a.digits.size() < b.digits.size();
    return a.digits < b.digits;
}

std::string to_string(const DigitWord& w) {
    if (w.empty()) return "λ";
    std::string s;
    for (auto d : w.digits) s.push_back(static_cast<char>('0' + d));
    return s;
}

DigitWord parse_word(std::string_view s, int base) {
    if (s.empty() || s == "-" || s == "λ") return DigitWord({}, base);
    std::vector<std::uint8_t> d;
    for (char ch : s) {
        if (ch < '0' || ch > '9') throw DomainError("bad digit word: " + std::string(s));
        d.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return DigitWord(std::move(d), base);
}

namespace {

struct SeqTables {
    std::mutex mu;
    std::vector<std::int64_t> gs{0, 1, 2};   // index 0 unused
    std::vector<std::int64_t> beta{0, 1, 3};
};

SeqTables& tables() {
    static SeqTables t;
    return t;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw DomainError("sequence value overflows int64");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw DomainError("sequence value overflows int64");
    return r;
}

}  // namespace

std::int64_t alpha(SeqKind kind, int n) {
    if (kind == SeqKind::alphaFG) {
        if (n < 2) throw DomainError("alphaFG needs n >= 2");
        std::int64_t p = 1;
        for (int i = 0; i < n - 2; ++i) p = checked_mul(p, 3);
        return (checked_add(checked_mul(5, p), 1)) / 2;
    }
    if (n < 1) throw DomainError("alpha/beta need n >= 1");
    auto& t = tables();
    std::lock_guard<std::mutex> lock(t.mu);
    while (static_cast<int>(t.gs.size()) <= n) {
        auto k = t.gs.size();
        t.gs.push_back(checked_add(checked_mul(2, t.gs[k - 1]), t.gs[k - 2]));
        t.beta.push_back(checked_add(t.beta[k - 1], t.gs[k]));
    }
    return kind == SeqKind::alphaGS ? t.gs[n] : t.beta[n];
}

namespace {
// (1+sqrt2)^n = a + b sqrt2
std::pair<std::int64_t, std::int64_t> silver_power(int n) {
    std::int64_t a = 1, b = 0;
    for (int i = 0; i < n; ++i) {
        std::int64_t na = checked_add(a, checked_mul(2, b));
        std::int64_t nb = checked_add(a, b);
        a = na;
        b = nb;
    }
    return {a, b};
}
}  // namespace

// ((1+s)^n - (1-s)^n) / (2 s) = 2 b s / (2 s) = b
std::int64_t alpha_gs_closed_form(int n) {
    if (n < 1) throw DomainError("alpha needs n >= 1");
    return silver_power(n).second;
}

// ((1+s)^{n+1} + (1-s)^{n+1} - 2) / 4 = (2a - 2) / 4
std::int64_t beta_gs_closed_form(int n) {
    if (n < 1) throw DomainError("beta needs n >= 1");
    auto [a, b] = silver_power(n + 1);
    (void)b;
    std::int64_t num = checked_add(checked_mul(2, a), -2);
    if (num % 4 != 0) throw InternalError("beta closed form not integral");
    return num / 4;
}

std::int64_t rank_word(const DigitWord& x) {
    if (x.base != 2) throw DomainError("rank_word needs a binary word");
    if (x.size() > 61) throw DomainError("word too long for rank");
    std::int64_t r = 1 + (std::int64_t{1} << x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i]) r += std::int64_t{1} << i;
    return r;
}

DigitWord word_of_rank(std::int64_t r) {
    if (r < 2) throw DomainError("rank must be >= 2");
    std::int64_t v = r - 1;  // in [2^n, 2^{n+1})
    int n = 63 - __builtin_clzll(static_cast<unsigned long long>(v));
    std::int64_t rest = v - (std::int64_t{1} << n);
    std::vector<std::uint8_t> d(n);
    for (int i = 0; i < n; ++i) d[i] = (rest >> i) & 1;
    return DigitWord(std::move(d), 2);
}

std::vector<DigitWord> words_in_rank_range(std::int64_t lo, std::int64_t hi) {
    std::vector<DigitWord> out;
    if (lo < 2) lo = 2;
    for (std::int64_t r = lo; r <= hi; ++r) out.push_back(word_of_rank(r));
    return out;
}

}  // namespace branchlie
