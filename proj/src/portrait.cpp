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
#include <mutex>

#include "branchlie/errors.hpp"
#include "branchlie/finite_quotient.hpp"
#include "branchlie/tree_group.hpp"

namespace branchlie {

namespace {

// K contains stab(k0): Gg K = <x>^G has index 16, otherwise K = G'.
int k0_of(GroupId id) {
    switch (id) {
        case GroupId::Grigorchuk: return 3;
        case GroupId::GuptaSidki:
        case GroupId::FabrykowskiGupta: return 2;
        default: throw UnsupportedError("no portrait transversals for " + group_name(id));
    }
}

struct LevelData {
    QuotientPtr q;
    Subgroup k;  // K
    Subgroup h;  // psi^-1(K x ... x K)
    std::vector<Perm> t;
    std::vector<Perm> u;
};

struct Tables {
    std::vector<Element> t_words;
    std::vector<Element> u_elems;
    std::map<int, LevelData> levels;
};

std::vector<Element> k_generators(const SpecPtr& g) {
    if (g->id == GroupId::Grigorchuk) return {base_symbol(g, Symbol::x)};
    return {base_symbol(g, Symbol::c)};
}

std::vector<Element> h_generators(const SpecPtr& g) {
    std::vector<Element> out;
    std::vector<Element> seeds = k_generators(g);
    if (g->id != GroupId::Grigorchuk) seeds.push_back(base_symbol(g, Symbol::u));
    for (const auto& y : seeds) {
        std::vector<Element> secs(g->d, Element::identity(g));
        secs[0] = y;
        std::vector<int> root(g->d);
        for (int i = 0; i < g->d; ++i) root[i] = i;
        out.push_back(Element::recursive(g, root, secs));
    }
    return out;
}

std::vector<Perm> perms(const std::vector<Element>& es, int level) {
    std::vector<Perm> out;
    for (const auto& e : es) out.push_back(perm_at(e, level));
    return out;
}

LevelData make_level(const SpecPtr& g, Tables& tb, int level) {
    QuotientLimits lim;
    lim.build_store = false;
    LevelData ld{FiniteQuotient::build(g, level, lim), {}, {}, {}, {}};
    ld.k = Subgroup::normal_closure(ld.q, perms(k_generators(g), level));
    ld.h = Subgroup::normal_closure(ld.q, perms(h_generators(g), level));
    ld.t = perms(tb.t_words, level);
    ld.u = perms(tb.u_elems, level);
    return ld;
}

Tables build_tables(const SpecPtr& g) {
    Tables tb;
    const int k0 = k0_of(g->id);
    QuotientLimits lim;
    lim.build_store = false;
    auto q = FiniteQuotient::build(g, k0, lim);
    Subgroup k = Subgroup::normal_closure(q, perms(k_generators(g), k0));
    const int index_exp = q->order_exp() - k.order_exp();
    std::size_t index = 1;
    for (int i = 0; i < index_exp; ++i) index *= static_cast<std::size_t>(g->p);

    // T: shortlex-first words, one per coset of K.
    std::vector<Perm> reps;
    std::vector<std::vector<int>> layer{{}};
    auto try_word = [&](const std::vector<int>& w) {
        Element e = Element::word(g, w);
        Perm pe = perm_at(e, k0);
        for (const auto& r : reps)
            if (k.contains(perm_mul(pe, perm_inv(r)))) return;
        reps.push_back(pe);
        tb.t_words.push_back(e);
    };
    try_word({});
    while (tb.t_words.size() < index) {
        std::vector<std::vector<int>> next;
        for (const auto& w : layer)
            for (int l = 0; l < static_cast<int>(g->letters.size()); ++l) {
                auto w2 = w;
                w2.push_back(l);
                next.push_back(w2);
                if (tb.t_words.size() < index) try_word(w2);
            }
        layer.swap(next);
        if (layer.front().size() > 12) throw InternalError("transversal search did not terminate");
    }

    // U: powers of x (Gg) or c^i u^j.
    if (g->id == GroupId::Grigorchuk) {
        Element x = base_symbol(g, Symbol::x);
        for (int i = 0; i < 4; ++i) tb.u_elems.push_back(power(x, i));
    } else {
        Element c = base_symbol(g, Symbol::c);
        Element u = base_symbol(g, Symbol::u);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) tb.u_elems.push_back(compose(power(c, i), power(u, j)));
    }
    // Check U against the quotient where psi^-1(K^d) contains the level stabilizer.
    auto ld = make_level(g, tb, k0 + 1);
    std::size_t kh = 1;
    for (int i = 0; i < ld.k.order_exp() - ld.h.order_exp(); ++i) kh *= static_cast<std::size_t>(g->p);
    if (kh != tb.u_elems.size()) throw InternalError("U has the wrong size for K / psi^-1(K^d)");
    for (std::size_t i = 0; i < ld.u.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (ld.h.contains(perm_mul(ld.u[i], perm_inv(ld.u[j])))) throw InternalError("U is not a transversal");
    tb.levels.emplace(k0 + 1, std::move(ld));
    return tb;
}

std::mutex g_mu;
std::map<GroupId, Tables>& all_tables() {
    static std::map<GroupId, Tables> t;
    return t;
}

const LevelData& level_data(const SpecPtr& g, int level) {
    auto& all = all_tables();
    auto it = all.find(g->id);
    if (it == all.end()) it = all.emplace(g->id, build_tables(g)).first;
    auto& tb = it->second;
    auto jt = tb.levels.find(level);
    if (jt == tb.levels.end()) jt = tb.levels.emplace(level, make_level(g, tb, level)).first;
    return jt->second;
}

int coset_index(const std::vector<Perm>& reps, const Subgroup& sub, const Perm& g) {
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (sub.contains(perm_mul(g, perm_inv(reps[i])))) return static_cast<int>(i);
    throw InternalError("element outside every coset");
}

Perm section(const Perm& g, int d, int child) {
    std::size_t blk = g.size() / d;
    Perm s(blk);
    std::size_t off = blk * child;
    for (std::size_t j = 0; j < blk; ++j) {
        if (g[off + j] < off || g[off + j] >= off + blk) throw InternalError("section of a non-stabilizing element");
        s[j] = static_cast<std::uint32_t>(g[off + j] - off);
    }
    return s;
}

}  // namespace

Portrait portrait(const Element& e, int depth) {
    const auto& g = e.spec();
    if (depth < 1) throw DomainError("portrait depth must be >= 1");
    const int k0 = k0_of(g->id);
    const int top = depth + k0;
    std::lock_guard<std::mutex> lock(g_mu);

    Portrait pt;
    pt.depth = depth;
    const auto& root = level_data(g, top);
    Perm pe = perm_at(e, top);
    pt.root_t = coset_index(root.t, root.k, pe);
    Perm k = perm_mul(pe, perm_inv(root.t[pt.root_t]));

    std::vector<Perm> cur{k};
    for (int m = 0; m < depth; ++m) {
        const auto& ld = level_data(g, top - m);
        std::vector<Perm> next;
        for (const auto& kv : cur) {
            int ui = coset_index(ld.u, ld.h, kv);
            pt.labels.push_back(ui);
            if (m + 1 < depth) {
                Perm r = perm_mul(kv, perm_inv(ld.u[ui]));
                for (int c = 0; c < g->d; ++c) next.push_back(section(r, g->d, c));
            }
        }
        cur.swap(next);
    }
    return pt;
}

}  // namespace branchlie
