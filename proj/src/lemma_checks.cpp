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
#include "branchlie/lemma_checks.hpp"

#include <functional>
#include <random>

#include "branchlie/errors.hpp"
#include "branchlie/finite_quotient.hpp"
#include "branchlie/tree_group.hpp"

namespace branchlie {

namespace {

DigitWord digit(std::uint8_t d, int base) { return DigitWord({d}, base); }

struct Row {
    const char* text;
    char gen;
    bool generic;  // depends on X
    // operand and right-hand side from X and the generators
    std::function<Element(const Element&)> lhs;
    std::function<Element(const Element&)> rhs;
};

}  // namespace

std::vector<CommRowCheck> check_comm_table(int level) {
    if (level < 3 || level > 6) throw DomainError("comm table checks run at levels 3..6");
    SpecPtr g = grigorchuk_spec();
    QuotientLimits lim;
    lim.build_store = false;
    auto q = FiniteQuotient::build(g, level, lim);
    Element a = Element::parse(g, "a"), b = Element::parse(g, "b"), c = Element::parse(g, "c"), d = Element::parse(g, "d");
    Element x = base_symbol(g, Symbol::x), x2 = base_symbol(g, Symbol::x2);
    auto Z = [](const Element& e) { return derived_of(e, digit(0, 2)); };
    auto O = [](const Element& e) { return derived_of(e, digit(1, 2)); };
    auto W = [](const Element& e) { return omega_of(e); };
    auto one = [&](const Element&) { return Element::identity(g); };
    auto mul = [](const Element& u, const Element& v) { return compose(u, v); };

    std::vector<Row> rows = {
        {"[0X,a] = 1X", 'a', true, Z, O},
        {"[1X,a] = 1(X^2)", 'a', true, O, [&](const Element& X) { return O(power(X, 2)); }},
        {"[0X,b] = 0[X,a]", 'b', true, Z, [&](const Element& X) { return Z(commutator(X, a)); }},
        {"[1X,b] = 0[X,a] w[X,c]", 'b', true, O, [&](const Element& X) { return mul(Z(commutator(X, a)), W(commutator(X, c))); }},
        {"[0X,c] = 0[X,a]", 'c', true, Z, [&](const Element& X) { return Z(commutator(X, a)); }},
        {"[1X,c] = 0[X,a] w[X,d]", 'c', true, O, [&](const Element& X) { return mul(Z(commutator(X, a)), W(commutator(X, d))); }},
        {"[0X,d] = 1", 'd', true, Z, one},
        {"[1X,d] = w[X,b]", 'd', true, O, [&](const Element& X) { return W(commutator(X, b)); }},
        {"[x,a] = x^2", 'a', false, [&](const Element&) { return x; }, [&](const Element&) { return x2; }},
        {"[x,b] = x^2", 'b', false, [&](const Element&) { return x; }, [&](const Element&) { return x2; }},
        {"[x,c] = 0(x) x^2", 'c', false, [&](const Element&) { return x; }, [&](const Element&) { return mul(Z(x), x2); }},
        {"[x,d] = 0(x)", 'd', false, [&](const Element&) { return x; }, [&](const Element&) { return Z(x); }},
        {"[x^2,a] = 1(x^2 1(x))", 'a', false, [&](const Element&) { return x2; }, [&](const Element&) { return O(mul(x2, O(x))); }},
        {"[x^2,b] = 1(x^2 1(x))", 'b', false, [&](const Element&) { return x2; }, [&](const Element&) { return O(mul(x2, O(x))); }},
        {"[x^2,c] = 0(x^2 0(x)) 1(x^2 1(x))", 'c', false, [&](const Element&) { return x2; },
         [&](const Element&) { return mul(Z(mul(x2, Z(x))), O(mul(x2, O(x)))); }},
        {"[x^2,d] = 0(x^2 0(x))", 'd', false, [&](const Element&) { return x2; }, [&](const Element&) { return Z(mul(x2, Z(x))); }},
    };
    std::vector<std::pair<std::string, Element>> instances = {
        {"x", x}, {"x^2", x2}, {"0(x)", Z(x)}, {"1(x)", O(x)}, {"0(x^2)", Z(x2)}, {"1(x^2)", O(x2)},
    };
    Subgroup whole = Subgroup::whole(q);
    std::vector<CommRowCheck> out;
    for (const auto& r : rows) {
        Element s = Element::parse(g, std::string(1, r.gen));
        std::size_t n_inst = r.generic ? instances.size() : 1;
        for (std::size_t i = 0; i < n_inst; ++i) {
            const Element& X = instances[i].second;
            Element u = r.lhs(X);
            Perm lhs = perm_at(commutator(u, s), level);
            Perm rhs = perm_at(r.rhs(X), level);
            Perm diff = perm_mul(lhs, perm_inv(rhs));
            Subgroup N = Subgroup::normal_closure(q, {perm_at(u, level)});
            Subgroup NG = commutator(N, whole);
            CommRowCheck c;
            c.row = r.text;
            c.instance = r.generic ? instances[i].first : "λ";
            c.trivial_lhs = perm_is_identity(lhs);
            c.strict = commutator(NG, NG).contains(diff);
            c.weak = commutator(NG, whole).contains(diff);
            auto hg = NG.generators();
            std::vector<Perm> fr;
            for (std::size_t k = 0; k < hg.size(); ++k) {
                fr.push_back(perm_mul(hg[k], hg[k]));
                for (std::size_t l = k + 1; l < hg.size(); ++l) fr.push_back(perm_comm(hg[k], hg[l]));
            }
            Subgroup phi(q);
            phi.add(fr, hg);
            c.frattini = phi.contains(diff);
            out.push_back(std::move(c));
        }
    }
    return out;
}

namespace {

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

std::vector<PoissonCheck> check_poisson(int p, int level, int trials, std::uint64_t seed) {
    if (level < 1 || level > 4) throw DomainError("poisson checks run at levels 1..4");
    if (trials < 1) throw DomainError("trials must be positive");
    SpecPtr g = sylow_spec(p, level);
    auto q = FiniteQuotient::build(g, level);
    std::mt19937_64 rng(seed);
    const int pp = p - 1;
    auto rand_word = [&](int maxlen) {
        std::uniform_int_distribution<int> len(1, maxlen), let(0, static_cast<int>(g->letters.size()) - 1);
        std::vector<int> w(static_cast<std::size_t>(len(rng)));
        for (auto& l : w) l = let(rng);
        return w;
    };
    auto rand_digits = [&](std::size_t n) {
        std::uniform_int_distribution<int> dig(0, pp);
        std::vector<std::uint8_t> d(n);
        for (auto& x : d) x = static_cast<std::uint8_t>(dig(rng));
        return DigitWord(d, p);
    };
    Subgroup whole = Subgroup::whole(q);
    std::vector<PoissonCheck> out;
    for (int t = 0; t < trials; ++t) {
        std::uniform_int_distribution<int> lenv(0, level - 1);
        auto n = static_cast<std::size_t>(lenv(rng));
        // (X+Y-p') must be a word: resample until X_i + Y_i >= p'
        DigitWord X, Y;
        for (;;) {
            X = rand_digits(n);
            Y = rand_digits(n);
            bool ok = true;
            for (std::size_t i = 0; i < n; ++i) ok = ok && X[i] + Y[i] >= pp;
            if (ok) break;
        }
        Element u = Element::word(g, rand_word(6)), v = Element::word(g, rand_word(6));
        long e = 1;
        std::vector<std::uint8_t> z(n);
        for (std::size_t i = 0; i < n; ++i) {
            int k = pp - Y[i];
            e *= ((k % 2) ? -1 : 1) * binom(X[i], k);
            z[i] = static_cast<std::uint8_t>(X[i] + Y[i] - pp);
        }
        Perm lhs = perm_at(commutator(derived_of(u, X), derived_of(v, Y)), level);
        Perm rhs = q->identity();
        if (e != 0) rhs = perm_at(derived_of(power(commutator(u, v), e), DigitWord(z, p)), level);
        Subgroup L = Subgroup::normal_closure(q, {lhs});
        PoissonCheck c;
        c.p = p;
        c.level = level;
        c.X = to_string(X);
        c.Y = to_string(Y);
        c.u = u.to_string();
        c.v = v.to_string();
        c.exponent = e;
        c.holds = commutator(L, whole).contains(perm_mul(lhs, perm_inv(rhs)));
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace branchlie
