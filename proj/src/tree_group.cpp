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
#include "branchlie/tree_group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "branchlie/errors.hpp"

namespace branchlie {

struct ElementNode {
    enum class Kind { Word, Rec, Prod } kind = Kind::Word;
    std::vector<int> letters;
    std::vector<int> root;
    std::vector<Element> sections;
    std::vector<Element> factors;
};

std::string group_name(GroupId id) {
    switch (id) {
        case GroupId::Grigorchuk: return "grigorchuk";
        case GroupId::GuptaSidki: return "gupta_sidki";
        case GroupId::FabrykowskiGupta: return "fabrykowski_gupta";
        case GroupId::SylowP: return "sylow";
    }
    return "?";
}

GroupId parse_group(std::string_view s) {
    if (s == "gg" || s == "grigorchuk" || s == "Gg") return GroupId::Grigorchuk;
    if (s == "gs" || s == "gupta_sidki" || s == "GS") return GroupId::GuptaSidki;
    if (s == "fg" || s == "fabrykowski_gupta" || s == "FG") return GroupId::FabrykowskiGupta;
    if (s == "sylow") return GroupId::SylowP;
    throw DomainError("unknown group: " + std::string(s));
}

int GroupSpec::letter_index(std::string_view name) const {
    for (std::size_t i = 0; i < letters.size(); ++i)
        if (letters[i].name == name) return static_cast<int>(i);
    return -1;
}

namespace {

std::vector<int> identity_perm(int d) {
    std::vector<int> r(d);
    std::iota(r.begin(), r.end(), 0);
    return r;
}

std::vector<int> cycle_perm(int d, int shift) {
    std::vector<int> r(d);
    for (int i = 0; i < d; ++i) r[i] = ((i + shift) % d + d) % d;
    return r;
}

// Adds generator g (and its inverse letter when the order exceeds 2).
void add_generator(GroupSpec& s, const std::string& name, int order) {
    int g = static_cast<int>(s.generators.size());
    s.generators.push_back(name);
    s.orders.push_back(order);
    Letter l;
    l.name = name;
    l.generator = g;
    l.exponent = 1;
    l.inverse = static_cast<int>(s.letters.size());
    s.gen_letter.push_back(static_cast<int>(s.letters.size()));
    s.letters.push_back(l);
    if (order > 2) {
        Letter li;
        li.name = name;
        for (auto& ch : li.name) ch = static_cast<char>(std::toupper(ch));
        li.generator = g;
        li.exponent = -1;
        li.inverse = l.inverse;
        s.letters[l.inverse].inverse = static_cast<int>(s.letters.size());
        s.letters.push_back(li);
    }
}

void set_psi(GroupSpec& s, std::string_view name, std::vector<int> root,
             std::vector<std::string> sections) {
    int li = s.letter_index(name);
    Letter& l = s.letters[li];
    l.root = std::move(root);
    l.sections.clear();
    for (auto& w : sections) {
        std::vector<int> ws;
        for (char ch : w) ws.push_back(s.letter_index(std::string_view(&ch, 1)));
        l.sections.push_back(ws);
    }
}

}  // namespace

SpecPtr grigorchuk_spec() {
    static SpecPtr spec = [] {
        auto s = std::make_shared<GroupSpec>();
        s->id = GroupId::Grigorchuk;
        s->d = 2;
        s->p = 2;
        for (auto n : {"a", "b", "c", "d"}) add_generator(*s, n, 2);
        set_psi(*s, "a", {1, 0}, {"", ""});
        set_psi(*s, "b", {0, 1}, {"a", "c"});
        set_psi(*s, "c", {0, 1}, {"a", "d"});
        set_psi(*s, "d", {0, 1}, {"", "b"});
        return SpecPtr(s);
    }();
    return spec;
}

SpecPtr gupta_sidki_spec() {
    static SpecPtr spec = [] {
        auto s = std::make_shared<GroupSpec>();
        s->id = GroupId::GuptaSidki;
        s->d = 3;
        s->p = 3;
        add_generator(*s, "a", 3);
        add_generator(*s, "t", 3);
        set_psi(*s, "a", cycle_perm(3, 1), {"", "", ""});
        set_psi(*s, "A", cycle_perm(3, -1), {"", "", ""});
        set_psi(*s, "t", identity_perm(3), {"a", "A", "t"});
        set_psi(*s, "T", identity_perm(3), {"A", "a", "T"});
        return SpecPtr(s);
    }();
    return spec;
}

SpecPtr fabrykowski_gupta_spec() {
    static SpecPtr spec = [] {
        auto s = std::make_shared<GroupSpec>();
        s->id = GroupId::FabrykowskiGupta;
        s->d = 3;
        s->p = 3;
        add_generator(*s, "a", 3);
        add_generator(*s, "t", 3);
        set_psi(*s, "a", cycle_perm(3, 1), {"", "", ""});
        set_psi(*s, "A", cycle_perm(3, -1), {"", "", ""});
        set_psi(*s, "t", identity_perm(3), {"a", "", "t"});
        set_psi(*s, "T", identity_perm(3), {"A", "", "T"});
        return SpecPtr(s);
    }();
    return spec;
}

SpecPtr sylow_spec(int p, int n_gens) {
    if (p != 2 && p != 3 && p != 5 && p != 7) throw DomainError("sylow: p must be a small prime");
    if (n_gens < 1 || n_gens > 9) throw DomainError("sylow: 1..9 generators");
    static std::mutex mu;
    static std::map<std::pair<int, int>, SpecPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, n_gens);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    auto s = std::make_shared<GroupSpec>();
    s->id = GroupId::SylowP;
    s->d = p;
    s->p = p;
    for (int k = 0; k < n_gens; ++k) add_generator(*s, "x" + std::to_string(k), p);
    for (int k = 0; k < n_gens; ++k) {
        for (int inv = 0; inv < (p > 2 ? 2 : 1); ++inv) {
            Letter& l = s->letters[s->gen_letter[k] + inv];
            l.sections.assign(p, {});
            if (k == 0) {
                l.root = cycle_perm(p, inv ? -1 : 1);
            } else {
                l.root = identity_perm(p);
                l.sections[0] = {s->gen_letter[k - 1] + inv};
            }
        }
    }
    SpecPtr r = s;
    cache[key] = r;
    return r;
}

SpecPtr spec_for(GroupId id) {
    switch (id) {
        case GroupId::Grigorchuk: return grigorchuk_spec();
        case GroupId::GuptaSidki: return gupta_sidki_spec();
        case GroupId::FabrykowskiGupta: return fabrykowski_gupta_spec();
        case GroupId::SylowP: break;
    }
    throw DomainError("sylow groups need sylow_spec(p, n)");
}

namespace {

std::vector<int> reduce_word(const GroupSpec& g, const std::vector<int>& w) {
    std::vector<std::pair<int, int>> st;  // (generator, exponent)
    for (int li : w) {
        const Letter& l = g.letters.at(li);
        int gen = l.generator, e = l.exponent;
        int o = g.orders[gen];
        if (!st.empty() && st.back().first == gen) {
            int ne = ((st.back().second + e) % o + o) % o;
            if (ne == 0) {
                st.pop_back();
            } else {
                if (ne > o / 2) ne -= o;
                st.back().second = ne;
            }
        } else {
            st.push_back({gen, e});
        }
    }
    std::vector<int> out;
    for (auto [gen, e] : st) {
        int li = g.gen_letter[gen];
        if (e < 0) li = g.letters[li].inverse;
        for (int i = 0; i < std::abs(e); ++i) out.push_back(li);
    }
    return out;
}

std::shared_ptr<ElementNode> make_node(ElementNode::Kind k) {
    auto n = std::make_shared<ElementNode>();
    n->kind = k;
    return n;
}

}  // namespace

Element Element::identity(SpecPtr g) { return word(std::move(g), {}); }

Element Element::word(SpecPtr g, std::vector<int> letters) {
    for (int l : letters)
        if (l < 0 || l >= static_cast<int>(g->letters.size())) throw DomainError("bad letter index");
    Element e;
    auto n = make_node(ElementNode::Kind::Word);
    n->letters = reduce_word(*g, letters);
    e.spec_ = std::move(g);
    e.node_ = n;
    return e;
}

Element Element::recursive(SpecPtr g, std::vector<int> root, std::vector<Element> sections) {
    if (static_cast<int>(root.size()) != g->d || static_cast<int>(sections.size()) != g->d)
        throw DomainError("recursive element needs d sections");
    std::vector<int> seen(g->d, 0);
    for (int r : root) {
        if (r < 0 || r >= g->d || seen[r]) throw DomainError("root is not a permutation");
        seen[r] = 1;
    }
    bool trivial_root = true;
    for (int i = 0; i < g->d; ++i) trivial_root &= root[i] == i;
    bool trivial_secs = true;
    for (auto& s : sections) trivial_secs &= s.is_word() && s.letters().empty();
    if (trivial_root && trivial_secs) return identity(g);
    Element e;
    auto n = make_node(ElementNode::Kind::Rec);
    n->root = std::move(root);
    n->sections = std::move(sections);
    e.spec_ = std::move(g);
    e.node_ = n;
    return e;
}

namespace {

Symbol parse_symbol(std::string_view s) {
    if (s == "x") return Symbol::x;
    if (s == "x2" || s == "x^2" || s == "xx") return Symbol::x2;
    if (s == "c") return Symbol::c;
    if (s == "u") return Symbol::u;
    throw DomainError("unknown symbol: " + std::string(s));
}

}  // namespace

Element Element::parse(SpecPtr g, std::string_view text) {
    if (text.empty() || text == "1") return identity(g);
    auto lp = text.find('(');
    if (lp != std::string_view::npos) {
        if (text.back() != ')') throw DomainError("bad derived element syntax");
        auto digits = text.substr(0, lp);
        auto sym = text.substr(lp + 1, text.size() - lp - 2);
        return derived_element(g, parse_symbol(sym), parse_word(digits, g->d));
    }
    std::vector<int> letters;
    std::size_t i = 0;
    while (i < text.size()) {
        int best = -1;
        std::size_t best_len = 0;
        for (std::size_t li = 0; li < g->letters.size(); ++li) {
            const auto& nm = g->letters[li].name;
            if (nm.size() > best_len && text.substr(i, nm.size()) == nm) {
                best = static_cast<int>(li);
                best_len = nm.size();
            }
        }
        if (best < 0) throw DomainError("unknown letter in: " + std::string(text));
        letters.push_back(best);
        i += best_len;
    }
    return word(std::move(g), letters);
}

bool Element::is_word() const { return !node_ || node_->kind == ElementNode::Kind::Word; }

const std::vector<int>& Element::letters() const {
    static const std::vector<int> empty;
    if (!node_) return empty;
    if (node_->kind != ElementNode::Kind::Word) throw DomainError("element is not a word");
    return node_->letters;
}

std::string Element::to_string() const {
    if (!node_) return "1";
    std::ostringstream os;
    switch (node_->kind) {
        case ElementNode::Kind::Word:
            if (node_->letters.empty()) return "1";
            for (int l : node_->letters) os << spec_->letters[l].name;
            break;
        case ElementNode::Kind::Rec: {
            os << "<";
            for (std::size_t i = 0; i < node_->sections.size(); ++i)
                os << (i ? "," : "") << node_->sections[i].to_string();
            os << ">";
            bool id = true;
            for (int i = 0; i < spec_->d; ++i) id &= node_->root[i] == i;
            if (!id) {
                os << "[";
                for (int i = 0; i < spec_->d; ++i) os << (i ? " " : "") << node_->root[i];
                os << "]";
            }
            break;
        }
        case ElementNode::Kind::Prod:
            for (auto& f : node_->factors) os << "(" << f.to_string() << ")";
            break;
    }
    return os.str();
}

std::size_t Element::complexity() const {
    if (!node_) return 0;
    switch (node_->kind) {
        case ElementNode::Kind::Word: return node_->letters.size();
        case ElementNode::Kind::Rec: {
            std::size_t m = 0;
            for (auto& s : node_->sections) m = std::max(m, s.complexity());
            return m + 1;
        }
        case ElementNode::Kind::Prod: {
            std::size_t m = 0;
            for (auto& f : node_->factors) m += f.complexity();
            return m;
        }
    }
    return 0;
}

Element compose(const Element& e1, const Element& e2) {
    const SpecPtr& g = e1.spec() ? e1.spec() : e2.spec();
    if (e1.spec() && e2.spec() && e1.spec() != e2.spec()) throw DomainError("compose: different groups");
    if (e1.is_word() && e2.is_word()) {
        std::vector<int> w = e1.letters();
        w.insert(w.end(), e2.letters().begin(), e2.letters().end());
        return Element::word(g, w);
    }
    if (e1.is_word() && e1.letters().empty()) return e2;
    if (e2.is_word() && e2.letters().empty()) return e1;
    auto n = make_node(ElementNode::Kind::Prod);
    for (const Element* e : {&e1, &e2}) {
        if (e->node()->kind == ElementNode::Kind::Prod)
            n->factors.insert(n->factors.end(), e->node()->factors.begin(), e->node()->factors.end());
        else
            n->factors.push_back(*e);
    }
    Element r;
    r.spec_ = g;
    r.node_ = n;
    return r;
}

Element invert(const Element& e) {
    if (!e.node()) return e;
    const auto& g = e.spec();
    switch (e.node()->kind) {
        case ElementNode::Kind::Word: {
            std::vector<int> w;
            for (auto it = e.letters().rbegin(); it != e.letters().rend(); ++it)
                w.push_back(g->letters[*it].inverse);
            return Element::word(g, w);
        }
        case ElementNode::Kind::Rec: {
            int d = g->d;
            std::vector<int> inv(d);
            for (int i = 0; i < d; ++i) inv[e.node()->root[i]] = i;
            std::vector<Element> secs(d);
            // (g^-1)_s = (g_{s^{pi^-1}})^-1
            for (int s = 0; s < d; ++s) secs[s] = invert(e.node()->sections[inv[s]]);
            return Element::recursive(g, inv, secs);
        }
        case ElementNode::Kind::Prod: {
            Element r = Element::identity(g);
            for (auto it = e.node()->factors.rbegin(); it != e.node()->factors.rend(); ++it)
                r = compose(r, invert(*it));
            return r;
        }
    }
    return e;
}

Element power(const Element& e, long k) {
    Element base = k < 0 ? invert(e) : e;
    Element r = Element::identity(e.spec());
    for (long i = 0; i < std::labs(k); ++i) r = compose(r, base);
    return r;
}

Element commutator(const Element& g, const Element& h) {
    return compose(compose(invert(g), invert(h)), compose(g, h));
}

Element conjugate(const Element& g, const Element& h) { return compose(compose(invert(h), g), h); }

Decomposition decompose(const Element& e) {
    const auto& g = e.spec();
    int d = g->d;
    Decomposition out;
    switch (e.node() ? e.node()->kind : ElementNode::Kind::Word) {
        case ElementNode::Kind::Word: {
            std::vector<int> cur(d);
            std::iota(cur.begin(), cur.end(), 0);
            std::vector<std::vector<int>> secs(d);
            for (int li : e.letters()) {
                const Letter& l = g->letters[li];
                for (int s = 0; s < d; ++s) {
                    const auto& part = l.sections[cur[s]];
                    secs[s].insert(secs[s].end(), part.begin(), part.end());
                    cur[s] = l.root[cur[s]];
                }
            }
            out.root = cur;
            for (int s = 0; s < d; ++s) out.sections.push_back(Element::word(g, secs[s]));
            return out;
        }
        case ElementNode::Kind::Rec:
            out.root = e.node()->root;
            out.sections = e.node()->sections;
            return out;
        case ElementNode::Kind::Prod: {
            out.root.resize(d);
            std::iota(out.root.begin(), out.root.end(), 0);
            out.sections.assign(d, Element::identity(g));
            for (auto& f : e.node()->factors) {
                auto fd = decompose(f);
                for (int s = 0; s < d; ++s) {
                    out.sections[s] = compose(out.sections[s], fd.sections[out.root[s]]);
                    out.root[s] = fd.root[out.root[s]];
                }
            }
            return out;
        }
    }
    return out;
}

std::vector<int> act(const Element& e, const std::vector<int>& vertex) {
    std::vector<int> out;
    out.reserve(vertex.size());
    Element cur = e;
    for (int v : vertex) {
        if (v < 0 || v >= e.spec()->d) throw DomainError("letter out of alphabet");
        if (cur.is_word() && cur.letters().empty()) {
            out.push_back(v);
            continue;
        }
        auto dcp = decompose(cur);
        out.push_back(dcp.root[v]);
        cur = dcp.sections[v];
    }
    return out;
}

namespace {

struct TrivialSearch {
    std::map<std::vector<int>, Tri> memo;
    std::set<std::vector<int>> in_progress;
    std::size_t budget = 200000;
    std::size_t visited = 0;

    Tri run(const Element& e, int depth) {
        if (e.is_word()) {
            const auto& w = e.letters();
            if (w.empty()) return Tri::True;
            if (auto it = memo.find(w); it != memo.end()) return it->second;
            // Revisiting a word on the current path: the set of words seen is
            // closed under sections, so assuming triviality here is sound.
            if (in_progress.count(w)) return Tri::True;
            if (++visited > budget) return Tri::Undecided;
            if (depth <= 0) return Tri::Undecided;
            in_progress.insert(w);
            Tri r = expand(e, depth);
            in_progress.erase(w);
            if (r != Tri::Undecided) memo[w] = r;
            return r;
        }
        if (depth <= 0) return Tri::Undecided;
        return expand(e, depth);
    }

    Tri expand(const Element& e, int depth) {
        auto dcp = decompose(e);
        for (int i = 0; i < e.spec()->d; ++i)
            if (dcp.root[i] != i) return Tri::False;
        bool undecided = false;
        for (auto& s : dcp.sections) {
            Tri r = run(s, depth - 1);
            if (r == Tri::False) return Tri::False;
            if (r == Tri::Undecided) undecided = true;
        }
        return undecided ? Tri::Undecided : Tri::True;
    }
};

// Collapses a product whose factors are all words into one word.
Element flatten(const Element& e) {
    if (!e.node() || e.node()->kind != ElementNode::Kind::Prod) return e;
    std::vector<int> w;
    for (auto& f : e.node()->factors) {
        if (!f.is_word()) return e;
        w.insert(w.end(), f.letters().begin(), f.letters().end());
    }
    return Element::word(e.spec(), w);
}

}  // namespace

Tri is_trivial(const Element& e, int depth_bound) {
    if (depth_bound < 0) depth_bound = static_cast<int>(e.complexity()) + 10;
    if (depth_bound < 1) depth_bound = 1;
    TrivialSearch ts;
    return ts.run(flatten(e), depth_bound);
}

Element base_symbol(SpecPtr g, Symbol s) {
    if (g->id == GroupId::Grigorchuk) {
        Element x = Element::parse(g, "abab");
        if (s == Symbol::x) return x;
        if (s == Symbol::x2) return compose(x, x);
        throw DomainError("Gg symbols are x and x2");
    }
    if (g->id == GroupId::GuptaSidki || g->id == GroupId::FabrykowskiGupta) {
        Element a = Element::parse(g, "a");
        Element t = Element::parse(g, "t");
        Element c = commutator(a, t);
        if (s == Symbol::c) return c;
        if (s == Symbol::u) return commutator(a, c);
        throw DomainError("symbols for this group are c and u");
    }
    throw DomainError("no derived symbols for sylow groups");
}

namespace {
long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}
}  // namespace

Element derived_of(const Element& g, const DigitWord& x) {
    const auto& spec = g.spec();
    if (x.base != spec->d) throw DomainError("digit word base does not match the group's arity");
    Element cur = g;
    for (std::size_t i = x.size(); i-- > 0;) {
        int e = x[i];
        if (e >= spec->d) throw DomainError("digit out of range");
        std::vector<Element> secs(spec->d, Element::identity(spec));
        for (int k = 0; k <= e; ++k) {
            long c = binom(e, k) * ((k % 2) ? -1 : 1);
            secs[k] = power(cur, c);
        }
        std::vector<int> root(spec->d);
        std::iota(root.begin(), root.end(), 0);
        cur = Element::recursive(spec, root, secs);
    }
    return cur;
}

Element derived_element(SpecPtr g, Symbol s, const DigitWord& x) {
    return derived_of(base_symbol(g, s), x);
}

Element omega_of(const Element& g) {
    const auto& spec = g.spec();
    std::vector<Element> secs(spec->d, Element::identity(spec));
    secs.back() = g;
    std::vector<int> root(spec->d);
    std::iota(root.begin(), root.end(), 0);
    return Element::recursive(spec, root, secs);
}

namespace {

std::uint64_t ipow(int d, int n) {
    std::uint64_t r = 1;
    for (int i = 0; i < n; ++i) r *= static_cast<std::uint64_t>(d);
    return r;
}

Perm compose_perm(const Perm& p1, const Perm& p2) {
    Perm r(p1.size());
    for (std::size_t i = 0; i < p1.size(); ++i) r[i] = p2[p1[i]];
    return r;
}

const std::vector<Perm>& letter_perms(const GroupSpec& g, int level) {
    static std::mutex mu;
    static std::map<std::pair<const GroupSpec*, int>, std::vector<Perm>> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find({&g, level}); it != cache.end()) return it->second;
    int have = level;
    while (have > 0 && !cache.count({&g, have})) --have;
    if (!cache.count({&g, 0})) cache[{&g, 0}] = std::vector<Perm>(g.letters.size(), Perm{0});
    for (int lv = have + 1; lv <= level; ++lv) {
        const std::vector<Perm>& low = cache[{&g, lv - 1}];
        std::uint64_t blk = ipow(g.d, lv - 1);
        Perm idl(blk);
        std::iota(idl.begin(), idl.end(), 0);
        std::vector<Perm> out;
        for (const Letter& l : g.letters) {
            Perm r(blk * g.d);
            for (int s = 0; s < g.d; ++s) {
                Perm sec = idl;
                for (int li : l.sections[s]) sec = compose_perm(sec, low[li]);
                for (std::uint64_t w = 0; w < blk; ++w)
                    r[s * blk + w] = static_cast<std::uint32_t>(l.root[s] * blk + sec[w]);
            }
            out.push_back(std::move(r));
        }
        cache[{&g, lv}] = std::move(out);
    }
    return cache[{&g, level}];
}

}  // namespace

std::vector<Perm> generator_perms(const GroupSpec& g, int level) {
    const auto& lp = letter_perms(g, level);
    std::vector<Perm> out;
    for (int li : g.gen_letter) out.push_back(lp[li]);
    return out;
}

Perm perm_at(const Element& e, int level) {
    const auto& g = *e.spec();
    std::uint64_t n = ipow(g.d, level);
    if (n > (std::uint64_t{1} << 26)) throw ResourceError("level too deep for a permutation");
    Perm r(n);
    std::iota(r.begin(), r.end(), 0);
    if (!e.node()) return r;
    switch (e.node()->kind) {
        case ElementNode::Kind::Word: {
            const auto& lp = letter_perms(g, level);
            for (int li : e.letters()) r = compose_perm(r, lp[li]);
            return r;
        }
        case ElementNode::Kind::Rec: {
            if (level == 0) return r;
            std::uint64_t blk = n / g.d;
            for (int s = 0; s < g.d; ++s) {
                Perm sec = perm_at(e.node()->sections[s], level - 1);
                for (std::uint64_t w = 0; w < blk; ++w)
                    r[s * blk + w] = static_cast<std::uint32_t>(e.node()->root[s] * blk + sec[w]);
            }
            return r;
        }
        case ElementNode::Kind::Prod:
            for (auto& f : e.node()->factors) r = compose_perm(r, perm_at(f, level));
            return r;
    }
    return r;
}

}  // namespace branchlie
