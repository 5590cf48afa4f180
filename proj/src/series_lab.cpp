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
#include "branchlie/series_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "branchlie/core_words.hpp"
#include "branchlie/errors.hpp"
#include "json.hpp"

namespace branchlie {

Poly::Poly(std::vector<BigInt> c, std::size_t trunc) : c_(std::move(c)), trunc_(trunc) { trim(); }

Poly Poly::monomial(std::size_t deg, BigInt c, std::size_t trunc) {
    if (deg >= trunc) return Poly({}, trunc);
    std::vector<BigInt> v(deg + 1);
    v[deg] = std::move(c);
    return Poly(std::move(v), trunc);
}

Poly Poly::from_ints(const std::vector<std::int64_t>& c, std::size_t trunc) {
    std::vector<BigInt> v(c.begin(), c.end());
    return Poly(std::move(v), trunc);
}

void Poly::trim() {
    if (trunc_ != kExact && c_.size() > trunc_) c_.resize(trunc_);
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

long Poly::degree() const { return static_cast<long>(c_.size()) - 1; }

std::vector<std::int64_t> Poly::to_ints(std::size_t n) const {
    std::vector<std::int64_t> r(n, 0);
    for (std::size_t i = 0; i < n && i < c_.size(); ++i) {
        if (c_[i] > std::numeric_limits<std::int64_t>::max() || c_[i] < std::numeric_limits<std::int64_t>::min())
            throw DomainError("coefficient does not fit int64");
        r[i] = static_cast<std::int64_t>(c_[i]);
    }
    return r;
}

Poly Poly::truncated(std::size_t t) const { return Poly(c_, std::min(t, trunc_)); }

Poly Poly::substitute(std::size_t k) const {
    if (k == 0) throw DomainError("substitution exponent must be >= 1");
    std::size_t t = trunc_ == kExact ? kExact : trunc_ * k;
    std::vector<BigInt> v(c_.empty() ? 0 : (c_.size() - 1) * k + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * k] = c_[i];
    return Poly(std::move(v), t);
}

Poly Poly::shifted(std::size_t s) const {
    std::vector<BigInt> v(s, 0);
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(std::move(v), trunc_ == kExact ? kExact : trunc_ + s);
}

bool Poly::nonnegative() const {
    return std::all_of(c_.begin(), c_.end(), [](const BigInt& x) { return x >= 0; });
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return Poly(std::move(v), std::min(a.trunc_, b.trunc_));
}

Poly operator-(const Poly& a, const Poly& b) {
    std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
    return Poly(std::move(v), std::min(a.trunc_, b.trunc_));
}

Poly operator*(const Poly& a, const Poly& b) {
    std::size_t t = std::min(a.trunc_, b.trunc_);
    if (a.c_.empty() || b.c_.empty()) return Poly({}, t);
    std::size_t n = a.c_.size() + b.c_.size() - 1;
    if (t != Poly::kExact) n = std::min(n, t);
    std::vector<BigInt> v(n);
    for (std::size_t i = 0; i < a.c_.size() && i < n; ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size() && i + j < n; ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v), t);
}

bool operator==(const Poly& a, const Poly& b) {
    std::size_t t = std::min(a.trunc_, b.trunc_);
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    if (t != Poly::kExact) n = std::min(n, t);
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

std::string Poly::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const BigInt& c = c_[i];
        if (c == 0) continue;
        if (!first) os << (c < 0 ? "-" : "+");
        else if (c < 0) os << "-";
        first = false;
        BigInt m = c < 0 ? BigInt(-c) : c;
        if (m != 1 || i == 0) os << m;
        if (i >= 1) os << "h";
        if (i >= 2) os << "^" << i;
    }
    if (trunc_ != kExact) os << "+O(h^" << trunc_ << ")";
    return os.str();
}

// ---------------------------------------------------------------- Q_n

namespace {

Poly lit(std::initializer_list<int> c) {
    std::vector<BigInt> v(c.begin(), c.end());
    return Poly(std::move(v));
}

Poly q_gg(int n) {
    if (n < 2) throw DomainError("Gg Q_n needs n >= 2");
    if (n == 2) return lit({-1, -1});
    Poly q = lit({0, 1, 1, 1});
    for (int k = 4; k <= n; ++k) q = lit({1, 1}) * q.substitute(2) + lit({0, 1, 1});
    return q;
}

Poly q_gs(int n) {
    if (n < 1) throw DomainError("GS Q_n needs n >= 1");
    std::vector<Poly> q{Poly(), Poly(), lit({0, 1, 1}), lit({0, 1, 1, 2, 1, 1})};
    auto a = [](int k) { return static_cast<std::size_t>(alpha(SeqKind::alphaGS, k)); };
    for (int k = 4; k <= n; ++k) {
        Poly t1 = (Poly::monomial(0) + Poly::monomial(a(k) - a(k - 1))) * q[k - 1];
        std::size_t s = a(k - 1), r = a(k - 3);
        Poly t2 = (Poly::monomial(s - r) + Poly::monomial(s) + Poly::monomial(s + r)) * q[k - 2];
        q.push_back(t1 + t2);
    }
    return q[n];
}

Poly q_fg(int n) {
    if (n < 2) throw DomainError("FG Q_n needs n >= 2");
    Poly q = lit({1, 1});
    for (int k = 3; k <= n; ++k) {
        std::size_t ak = static_cast<std::size_t>(alpha(SeqKind::alphaFG, k));
        q = lit({1, 1, 1}) * q.substitute(3) + Poly::monomial(1) + Poly::monomial(ak - 2);
    }
    return q;
}

}  // namespace

Poly q_poly(GroupId g, int n) {
    switch (g) {
        case GroupId::Grigorchuk: return q_gg(n);
        case GroupId::GuptaSidki: return q_gs(n);
        case GroupId::FabrykowskiGupta: return q_fg(n);
        default: throw UnsupportedError("no Q_n recurrence for " + group_name(g));
    }
}

Poly hp_from_q(GroupId g, int n) {
    Poly r;
    switch (g) {
        case GroupId::Grigorchuk:
            if (n < 3) throw DomainError("Gg series combination holds for n >= 3");
            r = lit({0, 3, 1}) + q_gg(n).shifted(1);
            break;
        case GroupId::GuptaSidki:
            r = Poly::monomial(1) + q_gs(n);
            break;
        case GroupId::FabrykowskiGupta:
            r = Poly::monomial(1, 2) + q_fg(n).shifted(2);
            break;
        default: throw UnsupportedError("no Q_n recurrence for " + group_name(g));
    }
    if (!r.nonnegative()) throw InternalError("negative coefficient in a Hilbert-Poincare series");
    return r;
}

Poly gs_r_poly(int n) {
    if (n < 1) throw DomainError("gs_r_poly needs n >= 1");
    std::vector<BigInt> v;
    auto bump = [&](std::int64_t d) {
        if (static_cast<std::size_t>(d) >= v.size()) v.resize(static_cast<std::size_t>(d) + 1);
        v[static_cast<std::size_t>(d)] += 1;
    };
    bump(1);
    // Degrees 1 + sum X_i alpha_i + alpha_{L+1} (c) and + 2 alpha_{L+1} (u).
    for (int len = 0; len <= n - 2; ++len) {
        std::int64_t top = alpha(SeqKind::alphaGS, len + 1);
        std::vector<std::int64_t> partial{0};
        for (int i = 1; i <= len; ++i) {
            std::vector<std::int64_t> next;
            next.reserve(partial.size() * 3);
            std::int64_t ai = alpha(SeqKind::alphaGS, i);
            for (auto s : partial)
                for (int dgt = 0; dgt < 3; ++dgt) next.push_back(s + dgt * ai);
            partial.swap(next);
        }
        for (auto s : partial) {
            bump(1 + s + top);
            if (len <= n - 3) bump(1 + s + 2 * top);
        }
    }
    return Poly(std::move(v));
}

Poly gg_restricted_hp(std::size_t trunc) {
    std::vector<BigInt> v(trunc, 0);
    for (std::size_t i = 1; i < trunc; ++i) v[i] = i == 1 ? 3 : (i % 2 == 0 ? 2 : 1);
    return Poly(std::move(v), trunc);
}

Poly jennings_product(const std::vector<std::int64_t>& ranks, int p, std::size_t trunc) {
    if (p < 2) throw DomainError("p must be >= 2");
    if (trunc == Poly::kExact) throw DomainError("jennings_product needs a finite truncation");
    Poly r({1}, trunc);
    for (std::size_t n = 1; n <= ranks.size(); ++n) {
        if (ranks[n - 1] < 0) throw DomainError("ranks must be >= 0");
        if (n >= trunc) break;
        std::vector<BigInt> f(static_cast<std::size_t>(p - 1) * n + 1, 0);
        for (int k = 0; k < p; ++k) f[static_cast<std::size_t>(k) * n] = 1;
        Poly fac(std::move(f), trunc);
        for (std::int64_t j = 0; j < ranks[n - 1]; ++j) r = r * fac;
    }
    return r;
}

// ---------------------------------------------------------------- free Lie algebras

namespace {
int mobius(int n) {
    int m = 1;
    for (int q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        n /= q;
        if (n % q == 0) return 0;
        m = -m;
    }
    return n > 1 ? -m : m;
}
}  // namespace

BigInt witt_dimension(int r, int n) {
    if (r < 1 || n < 1) throw DomainError("witt_dimension needs r, n >= 1");
    BigInt s = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        s += mobius(n / d) * boost::multiprecision::pow(BigInt(r), static_cast<unsigned>(d));
    }
    return s / n;
}

std::vector<std::vector<int>> lyndon_words(int r, int n) {
    if (r < 1 || n < 1) throw DomainError("lyndon_words needs r, n >= 1");
    std::vector<std::vector<int>> out;
    // Duval's generation of all Lyndon words up to length n, keeping length n.
    std::vector<int> w{-1};
    while (!w.empty()) {
        ++w.back();
        if (static_cast<int>(w.size()) == n) out.push_back(w);
        std::size_t m = w.size();
        while (static_cast<int>(w.size()) < n) w.push_back(w[w.size() - m]);
        while (!w.empty() && w.back() == r - 1) w.pop_back();
    }
    return out;
}

GkEstimate gk_estimate(const std::vector<std::int64_t>& ranks, GkWindow w) {
    if (ranks.size() < 32) throw DomainError("gk_estimate needs at least 32 ranks");
    if (std::all_of(ranks.begin(), ranks.end(), [](std::int64_t x) { return x == 0; }))
        throw DomainError("all ranks are zero");
    std::vector<BigInt> partial(ranks.size());
    BigInt s = 0;
    for (std::size_t i = 0; i < ranks.size(); ++i) partial[i] = (s += ranks[i]);
    GkEstimate g;
    g.to = ranks.size();
    std::vector<std::size_t> pts;
    if (w == GkWindow::tail_half) {
        g.from = ranks.size() / 2;
        for (std::size_t n = g.from; n <= g.to; ++n) pts.push_back(n);
    } else {
        g.from = 16;
        const double lo = std::log(16.0), hi = std::log(static_cast<double>(g.to));
        for (int k = 0; k <= 400; ++k) {
            auto n = static_cast<std::size_t>(std::llround(std::exp(lo + k * (hi - lo) / 400)));
            if (pts.empty() || pts.back() != n) pts.push_back(std::min(n, g.to));
        }
    }
    std::vector<double> xs, ys;
    for (auto n : pts) {
        if (partial[n - 1] == 0) continue;
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(partial[n - 1].convert_to<double>()));
    }
    if (xs.size() < 2) throw DomainError("too few nonzero partial sums to fit");
    const double k = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
    mx /= k, my /= k;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
    g.slope = sxy / sxx;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double e = ys[i] - (my + g.slope * (xs[i] - mx));
        ss += e * e;
    }
    g.residual = std::sqrt(ss / k);
    return g;
}

LeqResult series_leq(const Poly& a, const Poly& b) {
    std::size_t t = std::min(a.trunc(), b.trunc());
    std::size_t n = std::max(a.coefficients().size(), b.coefficients().size());
    if (t != Poly::kExact) n = std::min(n, t);
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] < b[i]) return {false, static_cast<long>(i)};
    return {};
}

std::string poly_csv(const Poly& p, std::size_t n) {
    std::ostringstream os;
    os << "degree,coefficient\n";
    for (std::size_t i = 0; i < n; ++i) os << i << "," << p[i] << "\n";
    return os.str();
}

std::string poly_json(const Poly& p, std::size_t n) {
    nlohmann::ordered_json j;
    auto& c = j["coefficients"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) c.push_back(p[i].str());
    if (p.trunc() != Poly::kExact) j["truncation"] = p.trunc();
    return j.dump(2) + "\n";
}

}  // namespace branchlie
