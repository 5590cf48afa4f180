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
#ifndef BRANCHLIE_SERIES_LAB_HPP
#define BRANCHLIE_SERIES_LAB_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "branchlie/tree_group.hpp"

namespace branchlie {

using BigInt = boost::multiprecision::cpp_int;

// Integer power series in hbar. Coefficients of degree >= trunc are never
// stored; trunc == kExact means the value is a polynomial known exactly.
class Poly {
public:
    static constexpr std::size_t kExact = std::numeric_limits<std::size_t>::max();
    static constexpr std::size_t kDefaultTrunc = 4096;

    Poly() = default;
    explicit Poly(std::vector<BigInt> c, std::size_t trunc = kExact);
    static Poly monomial(std::size_t deg, BigInt c = 1, std::size_t trunc = kExact);
    static Poly from_ints(const std::vector<std::int64_t>& c, std::size_t trunc = kExact);

    std::size_t trunc() const { return trunc_; }
    // Highest nonzero degree; -1 for zero.
    long degree() const;
    BigInt operator[](std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
    const std::vector<BigInt>& coefficients() const { return c_; }
    std::vector<std::int64_t> to_ints(std::size_t n) const;  // first n coefficients

    Poly truncated(std::size_t t) const;
    Poly substitute(std::size_t k) const;  // hbar -> hbar^k
    Poly shifted(std::size_t s) const;     // times hbar^s
    bool nonnegative() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b);

    std::string to_string() const;  // "1+2h+h^3"

private:
    void trim();
    std::vector<BigInt> c_;
    std::size_t trunc_ = kExact;
};

// Gg: n >= 2 (n = 2 is the bare seed -1-h). GS: n >= 1. FG: n >= 2.
Poly q_poly(GroupId g, int n);
// Hilbert-Poincare series of the level-n lower central quotient.
// Gg needs n >= 3; throws InternalError on a negative coefficient.
Poly hp_from_q(GroupId g, int n);
// Sum over c-words of length <= n-2 and u-words of length <= n-3, plus h.
Poly gs_r_poly(int n);
// 3 + (2h + h^2)/(1 - h^2) with the constant read as degree 1.
Poly gg_restricted_hp(std::size_t trunc);

// prod_n (1 + h^n + ... + h^{(p-1)n})^{l_n}, truncated.
Poly jennings_product(const std::vector<std::int64_t>& ranks, int p, std::size_t trunc);

BigInt witt_dimension(int r, int n);
// Lyndon words of length exactly n over letters 0..r-1 (Duval order).
std::vector<std::vector<int>> lyndon_words(int r, int n);

enum class GkWindow {
    log_uniform,  // about 400 log-spaced degrees from 16 to m
    tail_half,    // every degree in [m/2, m]
};

struct GkEstimate {
    double slope = 0;
    double residual = 0;  // rms of the fit in log space
    std::size_t from = 0, to = 0;
};
// Least-squares slope of log partial sums against log degree.
// Needs at least 32 ranks.
GkEstimate gk_estimate(const std::vector<std::int64_t>& ranks, GkWindow w = GkWindow::log_uniform);

struct LeqResult {
    bool holds = true;
    long first_violation = -1;
};
// True when a_n >= b_n for every n below the common truncation.
LeqResult series_leq(const Poly& a, const Poly& b);

std::string poly_csv(const Poly& p, std::size_t n);
std::string poly_json(const Poly& p, std::size_t n);

}  // namespace branchlie

#endif
