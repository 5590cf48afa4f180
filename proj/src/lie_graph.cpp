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
#include "branchlie/lie_graph.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "branchlie/errors.hpp"
#include "json.hpp"

namespace branchlie {

std::string family_name(LieFamily f) {
    switch (f) {
        case LieFamily::sylow: return "sylow";
        case LieFamily::grigorchuk: return "grigorchuk";
        case LieFamily::grigorchuk_restricted: return "grigorchuk_restricted";
        case LieFamily::gupta_sidki: return "gupta_sidki";
        case LieFamily::fabrykowski_gupta: return "fabrykowski_gupta";
        case LieFamily::fabrykowski_gupta_restricted: return "fabrykowski_gupta_restricted";
    }
    return "?";
}

LieFamily parse_family(const std::string& s) {
    for (auto f : {LieFamily::sylow, LieFamily::grigorchuk, LieFamily::grigorchuk_restricted, LieFamily::gupta_sidki,
                   LieFamily::fabrykowski_gupta, LieFamily::fabrykowski_gupta_restricted})
        if (family_name(f) == s) return f;
    if (s == "gg") return LieFamily::grigorchuk;
    if (s == "gs") return LieFamily::gupta_sidki;
    if (s == "fg") return LieFamily::fabrykowski_gupta;
    throw DomainError("unknown Lie graph family: " + s);
}

std::string LieVertex::name() const {
    switch (kind) {
        case VertexKind::special: return special;
        case VertexKind::plain: return to_string(word);
        default: break;
    }
    std::string sym = kind == VertexKind::x ? "x" : kind == VertexKind::x2 ? "x2" : kind == VertexKind::c ? "c" : "u";
    if (word.empty()) return sym;
    return to_string(word) + "(" + sym + ")";
}

int LieGraph::find(const std::string& name) const {
    auto it = index.find(name);
    return it == index.end() ? -1 : it->second;
}

// ---------------------------------------------------------------- degrees

namespace {

std::int64_t ipow(std::int64_t b, std::size_t e) {
    std::int64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
}

std::int64_t digit_sum_weighted(const DigitWord& x, std::int64_t base) {
    std::int64_t s = 0, w = 1;
    for (std::size_t i = 0; i < x.size(); ++i, w *= base) s += x[i] * w;
    return s;
}

}  // namespace

std::int64_t deg_gg_x(const DigitWord& x) { return rank_word(x); }

std::int64_t deg_gg_x2(const DigitWord& x, bool restricted) {
    return restricted ? 2 * rank_word(x) : rank_word(x) + ipow(2, x.size());
}

std::int64_t deg_gs_c(const DigitWord& x) {
    std::int64_t s = 1;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * alpha(SeqKind::alphaGS, static_cast<int>(i) + 1);
    return s + alpha(SeqKind::alphaGS, static_cast<int>(x.size()) + 1);
}

std::int64_t deg_gs_u(const DigitWord& x) {
    return deg_gs_c(x) + alpha(SeqKind::alphaGS, static_cast<int>(x.size()) + 1);
}

std::int64_t deg_fg_c(const DigitWord& x) { return 1 + digit_sum_weighted(x, 3) + (ipow(3, x.size()) + 1) / 2; }

std::int64_t deg_fg_u(const DigitWord& x, bool restricted) {
    std::int64_t s = digit_sum_weighted(x, 3);
    std::int64_t plain = 1 + s + ipow(3, x.size()) + 1;
    if (!restricted) return plain;
    bool all2 = std::all_of(x.digits.begin(), x.digits.end(), [](std::uint8_t d) { return d == 2; });
    if (all2) return ipow(3, x.size() + 1);
    // (9 - 3^n)/2 + 3 s; odd numerator halves exactly since 9 - 3^n is even.
    std::int64_t other = (9 - ipow(3, x.size())) / 2 + 3 * s;
    return std::max(plain, other);
}

std::int64_t deg_sylow(const DigitWord& x, int p) { return 1 + digit_sum_weighted(x, p); }

// ---------------------------------------------------------------- sigma

namespace {

std::string sigma_letter(char ch) {
    switch (ch) {
        case 'a': return "a{bc}a";
        case 'b': return "d";
        case 'c': return "b";
        case 'd': return "c";
        default: throw DomainError(std::string("sigma undefined on letter ") + ch);
    }
}

}  // namespace

std::string sigma(const std::string& label) {
    std::string out;
    for (char ch : label) {
        if (ch == ',' || ch == '{' || ch == '}') {
            out.push_back(ch);
            continue;
        }
        out += sigma_letter(ch);
    }
    return out;
}

std::string sigma_pow(const std::string& label, int n) {
    std::string s = label;
    for (int i = 0; i < n; ++i) s = sigma(s);
    return s;
}

// ---------------------------------------------------------------- generation

namespace {

struct Target {
    VertexKind kind;
    DigitWord word;
    std::string label;
    int coeff;
};

DigitWord dw(std::vector<std::uint8_t> d, int base) { return DigitWord(std::move(d), base); }

DigitWord cat(std::vector<std::uint8_t> head, const DigitWord& rest) {
    head.insert(head.end(), rest.digits.begin(), rest.digits.end());
    return DigitWord(std::move(head), rest.base);
}

std::size_t leading(const DigitWord& w, std::uint8_t d) {
    std::size_t n = 0;
    while (n < w.size() && w[n] == d) ++n;
    return n;
}

DigitWord drop(const DigitWord& w, std::size_t k) {
    return DigitWord(std::vector<std::uint8_t>(w.digits.begin() + static_cast<long>(k), w.digits.end()), w.base);
}

class Builder {
public:
    explicit Builder(LieGraph& g) : g_(g) {}

    int add_vertex(LieVertex v) {
        if (v.degree > g_.max_degree) return -1;
        std::string nm = v.name();
        auto it = g_.index.find(nm);
        if (it != g_.index.end()) return it->second;
        int id = static_cast<int>(g_.vertices.size());
        g_.index.emplace(nm, id);
        g_.vertices.push_back(std::move(v));
        return id;
    }

    int lookup(VertexKind k, const DigitWord& w) const {
        LieVertex v;
        v.kind = k;
        v.word = w;
        return g_.find(v.name());
    }

    void edge(int src, int dst, const std::string& label, int coeff) {
        if (src < 0 || dst < 0) return;
        int p = g_.p;
        g_.edges.push_back({src, dst, label, ((coeff % p) + p) % p});
    }

    void pedge(int src, int dst, int coeff = 1) {
        if (src < 0 || dst < 0) return;
        g_.p_edges.push_back({src, dst, coeff});
    }

private:
    LieGraph& g_;
};

LieVertex special(const std::string& name, std::int64_t deg) {
    LieVertex v;
    v.kind = VertexKind::special;
    v.special = name;
    v.degree = deg;
    return v;
}

LieVertex word_vertex(VertexKind k, DigitWord w, std::int64_t deg) {
    LieVertex v;
    v.kind = k;
    v.word = std::move(w);
    v.degree = deg;
    return v;
}

// Every word of length len over base.
void for_words(std::size_t len, int base, const std::function<void(const DigitWord&)>& f) {
    std::vector<std::uint8_t> d(len, 0);
    for (;;) {
        f(DigitWord(d, base));
        std::size_t i = 0;
        while (i < len && d[i] == base - 1) d[i++] = 0;
        if (i == len) return;
        ++d[i];
    }
}

// ---- Grigorchuk

std::vector<Target> gg_targets(VertexKind k, const DigitWord& w, bool restricted) {
    std::vector<Target> out;
    if (k == VertexKind::x2 && restricted) {
        std::size_t n = leading(w, 1);
        if (n == w.size()) out.push_back({VertexKind::x, DigitWord::repeat(0, n + 2, 2), sigma_pow("c,d", static_cast<int>(n)), 1});
        return out;
    }
    if (w.empty()) {
        if (k == VertexKind::x) {
            if (!restricted) out.push_back({VertexKind::x2, w, "a,b,c", 1});
            out.push_back({VertexKind::x, dw({0}, 2), "c,d", 1});
        }
        return out;
    }
    if (w[0] == 0) {
        out.push_back({k, cat({1}, drop(w, 1)), "a", 1});
        return out;
    }
    std::size_t n = leading(w, 1);
    std::string cd = sigma_pow("c,d", static_cast<int>(n));
    if (n == w.size()) {
        if (k == VertexKind::x) {
            out.push_back({VertexKind::x, DigitWord::repeat(0, n + 1, 2), cd, 1});
            if (!restricted) out.push_back({VertexKind::x2, DigitWord::repeat(0, n, 2), sigma_pow("b,d", static_cast<int>(n)), 1});
        }
        return out;
    }
    // w = 1^n 0 rest
    std::vector<std::uint8_t> head(n, 0);
    head.push_back(1);
    out.push_back({k, cat(head, drop(w, n + 1)), cd, 1});
    return out;
}

void gen_gg(LieGraph& g, Builder& b, bool restricted) {
    b.add_vertex(special("a", 1));
    b.add_vertex(special("b", 1));
    b.add_vertex(special("d", 1));
    b.add_vertex(special("[a,d]", 2));
    for (std::size_t len = 0;; ++len) {
        std::int64_t lo = ipow(2, len) + 1;
        if (lo > g.max_degree) break;
        if (len > 60) throw ResourceError("degree bound too large");
        for_words(len, 2, [&](const DigitWord& w) {
            b.add_vertex(word_vertex(VertexKind::x, w, deg_gg_x(w)));
            b.add_vertex(word_vertex(VertexKind::x2, w, deg_gg_x2(w, restricted)));
        });
    }
    auto id = [&](const char* n) { return g.find(n); };
    int x = b.lookup(VertexKind::x, dw({}, 2));
    b.edge(id("a"), x, "b,c", 1);
    b.edge(id("b"), x, "a", 1);
    b.edge(id("a"), id("[a,d]"), "c,d", 1);
    b.edge(id("d"), id("[a,d]"), "a", 1);
    b.edge(id("[a,d]"), b.lookup(VertexKind::x, dw({0}, 2)), "b,c", 1);
    const std::size_t nv = g.vertices.size();
    for (std::size_t i = 0; i < nv; ++i) {
        const auto v = g.vertices[i];
        if (v.kind != VertexKind::x && v.kind != VertexKind::x2) continue;
        for (const auto& t : gg_targets(v.kind, v.word, restricted))
            b.edge(static_cast<int>(i), b.lookup(t.kind, t.word), t.label, t.coeff);
        if (restricted) {
            if (v.kind == VertexKind::x) b.pedge(static_cast<int>(i), b.lookup(VertexKind::x2, v.word));
            if (v.kind == VertexKind::x2 && leading(v.word, 1) == v.word.size())
                b.pedge(static_cast<int>(i), b.lookup(VertexKind::x2, v.word.appended(1)));
        }
    }
}

// ---- Gupta-Sidki

std::vector<Target> gs_a_targets(VertexKind k, const DigitWord& w) {
    if (w.empty()) {
        if (k == VertexKind::c) return {{VertexKind::u, w, "a", 1}};
        return {};
    }
    if (w[0] == 2) return {};
    return {{k, cat({static_cast<std::uint8_t>(w[0] + 1)}, drop(w, 1)), "a", 1}};
}

std::vector<Target> gs_t_targets(VertexKind k, const DigitWord& w) {
    std::vector<Target> out;
    if (w.empty()) {
        out.push_back({VertexKind::c, dw({static_cast<std::uint8_t>(k == VertexKind::c ? 0 : 1)}, 3), "t", 1});
        return out;
    }
    DigitWord rest = drop(w, 1);
    if (w[0] == 1) {
        for (const auto& t : gs_a_targets(k, rest)) out.push_back({t.kind, cat({0}, t.word), "t", -1});
    } else if (w[0] == 2) {
        for (const auto& t : gs_t_targets(k, rest)) out.push_back({t.kind, cat({0}, t.word), "t", t.coeff});
        for (const auto& t : gs_a_targets(k, rest)) out.push_back({t.kind, cat({1}, t.word), "t", 1});
    }
    return out;
}

void gen_gs(LieGraph& g, Builder& b) {
    b.add_vertex(special("a", 1));
    b.add_vertex(special("t", 1));
    for (std::size_t len = 0;; ++len) {
        std::int64_t lo = 1 + alpha(SeqKind::alphaGS, static_cast<int>(len) + 1);
        if (lo > g.max_degree) break;
        for_words(len, 3, [&](const DigitWord& w) {
            b.add_vertex(word_vertex(VertexKind::c, w, deg_gs_c(w)));
            b.add_vertex(word_vertex(VertexKind::u, w, deg_gs_u(w)));
        });
    }
    int c = b.lookup(VertexKind::c, dw({}, 3));
    b.edge(g.find("a"), c, "t", -1);
    b.edge(g.find("t"), c, "a", 1);
    const std::size_t nv = g.vertices.size();
    for (std::size_t i = 0; i < nv; ++i) {
        const auto v = g.vertices[i];
        if (v.kind == VertexKind::special) continue;
        for (const auto& t : gs_a_targets(v.kind, v.word))
            b.edge(static_cast<int>(i), b.lookup(t.kind, t.word), t.label, t.coeff);
        for (const auto& t : gs_t_targets(v.kind, v.word))
            b.edge(static_cast<int>(i), b.lookup(t.kind, t.word), t.label, t.coeff);
        if (v.kind == VertexKind::c && leading(v.word, 2) == v.word.size()) {
            b.pedge(static_cast<int>(i), b.lookup(VertexKind::c, v.word.appended(0).appended(0)));
            b.pedge(static_cast<int>(i), b.lookup(VertexKind::u, v.word.appended(1)));
        }
    }
}

// ---- Fabrykowski-Gupta

std::vector<Target> fg_t_targets(VertexKind k, const DigitWord& w) {
    std::vector<Target> out;
    if (w.empty()) {
        out.push_back({VertexKind::c, dw({static_cast<std::uint8_t>(k == VertexKind::c ? 0 : 1)}, 3), "t", -1});
        return out;
    }
    std::size_t n = leading(w, 2);
    if (n == w.size()) {
        if (k == VertexKind::c) out.push_back({VertexKind::c, DigitWord::repeat(0, n + 1, 3), "t", -1});
    } else if (n >= 1) {
        std::vector<std::uint8_t> head(n, 0);
        head.push_back(static_cast<std::uint8_t>(w[n] + 1));
        out.push_back({k, cat(head, drop(w, n + 1)), "t", 1});
    }
    if (k == VertexKind::c && std::all_of(w.digits.begin(), w.digits.end(), [](std::uint8_t d) { return d >= 1; })) {
        std::vector<std::uint8_t> m;
        int s = 0;
        for (auto d : w.digits) {
            m.push_back(static_cast<std::uint8_t>(d - 1));
            s += d;
        }
        out.push_back({VertexKind::u, DigitWord(m, 3), "t", (s % 2) ? 1 : -1});
    }
    return out;
}

std::string fg_c_definition(const DigitWord& w) {
    // i0(c)/i(u) and i(bar(2^{m+1}1^n)(c) . 0 1^m 0^n(u)^{(-1)^n}); otherwise i bar(X)(c).
    if (w.size() == 2 && w[1] == 0) {
        std::string i = to_string(drop(w, 1).empty() ? DigitWord({w[0]}, 3) : DigitWord({w[0]}, 3));
        return to_string(w) + "(c) / " + i + "(u)";
    }
    if (w.size() >= 2) {
        DigitWord rest = drop(w, 1);
        std::size_t m1 = leading(rest, 2);
        std::size_t n1 = m1 < rest.size() ? leading(drop(rest, m1), 1) : 0;
        if (m1 >= 1 && m1 + n1 == rest.size()) {
            std::size_t m = m1 - 1;
            std::vector<std::uint8_t> uw{0};
            uw.insert(uw.end(), m, 1);
            uw.insert(uw.end(), n1, 0);
            return std::to_string(w[0]) + "(bar(" + to_string(rest) + ")(c) * " + to_string(DigitWord(uw, 3)) + "(u)^" +
                   (n1 % 2 ? "-1" : "1") + ")";
        }
        return std::to_string(w[0]) + " bar(" + to_string(rest) + ")(c)";
    }
    return to_string(w) + "(c)";
}

void gen_fg(LieGraph& g, Builder& b, bool restricted) {
    b.add_vertex(special("a", 1));
    b.add_vertex(special("t", 1));
    for (std::size_t len = 0;; ++len) {
        std::int64_t lo = 1 + (ipow(3, len) + 1) / 2;
        if (lo > g.max_degree) break;
        for_words(len, 3, [&](const DigitWord& w) {
            auto vc = word_vertex(VertexKind::c, w, deg_fg_c(w));
            vc.overline = true;
            vc.definition = fg_c_definition(w);
            b.add_vertex(vc);
            auto vu = word_vertex(VertexKind::u, w, deg_fg_u(w, restricted));
            if (restricted && !w.empty() && leading(w, 2) == w.size()) {
                vu.overline = true;
                std::string def = to_string(w) + "(u)";
                for (std::size_t j = 1; j < w.size(); ++j) {
                    std::vector<std::uint8_t> d(w.size() - j, 2);
                    d.push_back(0);
                    d.insert(d.end(), j - 1, 1);
                    def += " * " + to_string(DigitWord(d, 3)) + "(c)";
                }
                vu.definition = def;
            }
            b.add_vertex(vu);
        });
    }
    int c = b.lookup(VertexKind::c, dw({}, 3));
    b.edge(g.find("a"), c, "t", -1);
    b.edge(g.find("t"), c, "a", 1);
    const std::size_t nv = g.vertices.size();
    for (std::size_t i = 0; i < nv; ++i) {
        const auto v = g.vertices[i];
        if (v.kind == VertexKind::special) continue;
        auto add = [&](const Target& t) {
            int dst = b.lookup(t.kind, t.word);
            if (dst < 0) return;
            if (restricted && g.vertices[dst].degree != v.degree + 1) return;
            b.edge(static_cast<int>(i), dst, t.label, t.coeff);
        };
        for (const auto& t : gs_a_targets(v.kind, v.word)) add(t);
        for (const auto& t : fg_t_targets(v.kind, v.word)) add(t);
        if (!restricted) continue;
        if (v.kind == VertexKind::c && v.word.empty()) b.pedge(static_cast<int>(i), b.lookup(VertexKind::c, dw({0, 0}, 3)));
        if (v.kind == VertexKind::u && leading(v.word, 2) == v.word.size())
            b.pedge(static_cast<int>(i), b.lookup(VertexKind::u, v.word.appended(2)));
        if (v.kind == VertexKind::c && !v.word.empty() && v.word.digits.back() == 0) {
            DigitWord w2 = v.word;
            w2.digits.back() = 2;
            int dst = b.lookup(VertexKind::u, w2);
            if (dst >= 0 && g.vertices[dst].degree == 3 * v.degree) b.pedge(static_cast<int>(i), dst);
        }
    }
}

// ---- Sylow

void gen_sylow(LieGraph& g, Builder& b, int p, int max_len) {
    for (int len = 0; len <= max_len; ++len)
        for_words(static_cast<std::size_t>(len), p, [&](const DigitWord& w) {
            b.add_vertex(word_vertex(VertexKind::plain, w, deg_sylow(w, p)));
        });
    const std::uint8_t top = static_cast<std::uint8_t>(p - 1);
    const std::size_t nv = g.vertices.size();
    for (std::size_t i = 0; i < nv; ++i) {
        const auto v = g.vertices[i];
        std::size_t n = leading(v.word, top);
        if (n < v.word.size()) {
            std::vector<std::uint8_t> head(n, 0);
            head.push_back(static_cast<std::uint8_t>(v.word[n] + 1));
            b.edge(static_cast<int>(i), b.lookup(VertexKind::plain, cat(head, drop(v.word, n + 1))), "x" + std::to_string(n), 1);
        } else {
            for (int m = static_cast<int>(n) + 1; m <= max_len; ++m) {
                std::vector<std::uint8_t> d(n, 0);
                d.push_back(1);
                d.insert(d.end(), static_cast<std::size_t>(m) - n - 1, 0);
                b.edge(static_cast<int>(i), b.lookup(VertexKind::plain, DigitWord(d, p)), "x" + std::to_string(m), 1);
            }
        }
    }
}

void check_steps(const LieGraph& g) {
    for (const auto& e : g.edges)
        if (g.vertices[e.dst].degree != g.vertices[e.src].degree + 1)
            throw InternalError("edge " + g.vertices[e.src].name() + " -> " + g.vertices[e.dst].name() + " is not a degree step");
    for (const auto& e : g.p_edges)
        if (g.vertices[e.dst].degree != g.p * g.vertices[e.src].degree)
            throw InternalError("p-edge " + g.vertices[e.src].name() + " -> " + g.vertices[e.dst].name() + " does not multiply the degree by p");
}

}  // namespace

LieGraph generate(LieFamily f, std::int64_t max_degree, int sylow_p, int sylow_max_len) {
    if (max_degree < 1) throw DomainError("max_degree must be >= 1");
    LieGraph g;
    g.family = f;
    g.max_degree = max_degree;
    Builder b(g);
    switch (f) {
        case LieFamily::grigorchuk:
        case LieFamily::grigorchuk_restricted:
            g.p = 2;
            gen_gg(g, b, f == LieFamily::grigorchuk_restricted);
            break;
        case LieFamily::gupta_sidki:
            g.p = 3;
            gen_gs(g, b);
            break;
        case LieFamily::fabrykowski_gupta:
        case LieFamily::fabrykowski_gupta_restricted:
            g.p = 3;
            gen_fg(g, b, f == LieFamily::fabrykowski_gupta_restricted);
            break;
        case LieFamily::sylow:
            if (sylow_p < 2) throw DomainError("p must be prime");
            if (sylow_max_len < 0) throw DomainError("word length bound must be >= 0");
            g.p = sylow_p;
            g.max_word_length = sylow_max_len;
            gen_sylow(g, b, sylow_p, sylow_max_len);
            break;
    }
    check_steps(g);
    return g;
}

std::vector<std::int64_t> hp_coefficients(const LieGraph& g, std::int64_t max_degree) {
    std::vector<std::int64_t> r(static_cast<std::size_t>(std::max<std::int64_t>(max_degree, 0)), 0);
    for (const auto& v : g.vertices)
        if (v.degree >= 1 && v.degree <= max_degree) ++r[static_cast<std::size_t>(v.degree - 1)];
    return r;
}

namespace {

std::int64_t max_digit_degree(LieFamily f, VertexKind k, int len, int p) {
    if (len < 0) return 0;
    std::vector<std::uint8_t> d(static_cast<std::size_t>(len), static_cast<std::uint8_t>(f == LieFamily::grigorchuk ? 1 : p - 1));
    DigitWord w(d, f == LieFamily::grigorchuk || f == LieFamily::grigorchuk_restricted ? 2 : p);
    switch (f) {
        case LieFamily::grigorchuk:
        case LieFamily::grigorchuk_restricted:
            return k == VertexKind::x ? deg_gg_x(w) : deg_gg_x2(w, f == LieFamily::grigorchuk_restricted);
        case LieFamily::gupta_sidki: return k == VertexKind::c ? deg_gs_c(w) : deg_gs_u(w);
        case LieFamily::fabrykowski_gupta: return k == VertexKind::c ? deg_fg_c(w) : deg_fg_u(w, false);
        default: return deg_sylow(w, p);
    }
}

}  // namespace

LieGraph quotient_subgraph(LieFamily f, int n, int sylow_p) {
    LieGraph full;
    int cmax = 0, umax = 0;
    VertexKind ck = VertexKind::c, uk = VertexKind::u;
    switch (f) {
        case LieFamily::grigorchuk:
        case LieFamily::grigorchuk_restricted:
            if (n < 3) throw DomainError("the Grigorchuk truncation describes levels n >= 3");
            cmax = n - 2, umax = n - 4, ck = VertexKind::x, uk = VertexKind::x2;
            break;
        case LieFamily::gupta_sidki:
        case LieFamily::fabrykowski_gupta:
            if (n < 2) throw DomainError("the truncation describes levels n >= 2");
            cmax = n - 2, umax = n - 3;
            break;
        case LieFamily::sylow:
            if (n < 1) throw DomainError("level must be >= 1");
            return generate(f, deg_sylow(DigitWord(std::vector<std::uint8_t>(n - 1, static_cast<std::uint8_t>(sylow_p - 1)), sylow_p), sylow_p),
                            sylow_p, n - 1);
        default:
            throw UnsupportedError("no quotient truncation for " + family_name(f));
    }
    std::int64_t top = std::max<std::int64_t>({2, max_digit_degree(f, ck, cmax, 3), max_digit_degree(f, uk, umax, 3)});
    full = generate(f, top, sylow_p);
    LieGraph g;
    g.family = f;
    g.p = full.p;
    g.max_degree = top;
    std::vector<int> remap(full.vertices.size(), -1);
    for (std::size_t i = 0; i < full.vertices.size(); ++i) {
        const auto& v = full.vertices[i];
        bool keep = v.kind == VertexKind::special || (v.kind == ck && static_cast<int>(v.word.size()) <= cmax) ||
                    (v.kind == uk && static_cast<int>(v.word.size()) <= umax);
        if (!keep) continue;
        remap[i] = static_cast<int>(g.vertices.size());
        g.index.emplace(v.name(), remap[i]);
        g.vertices.push_back(v);
    }
    for (const auto& e : full.edges)
        if (remap[e.src] >= 0 && remap[e.dst] >= 0) g.edges.push_back({remap[e.src], remap[e.dst], e.label, e.coeff});
    for (const auto& e : full.p_edges)
        if (remap[e.src] >= 0 && remap[e.dst] >= 0) g.p_edges.push_back({remap[e.src], remap[e.dst], e.coeff});
    return g;
}

std::vector<std::int64_t> quotient_census(LieFamily f, int n, int sylow_p) {
    LieGraph g = quotient_subgraph(f, n, sylow_p);
    auto r = hp_coefficients(g, g.max_degree);
    while (!r.empty() && r.back() == 0) r.pop_back();
    if (f == LieFamily::fabrykowski_gupta) {
        // Observed on the quotients: 3^{n-2} further rank-one layers follow the literal subgraph.
        std::int64_t tail = ipow(3, static_cast<std::size_t>(n - 2));
        for (std::int64_t i = 0; i < tail; ++i) r.push_back(1);
    }
    return r;
}

// ---------------------------------------------------------------- output

namespace {

std::string quote(const std::string& s) {
    std::string r = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') r.push_back('\\');
        r.push_back(ch);
    }
    return r + "\"";
}

std::string coeff_label(const LieGraph& g, const LieEdge& e) {
    if (e.coeff == 1) return e.label;
    if (e.coeff == g.p - 1) return "-" + e.label;
    return std::to_string(e.coeff) + e.label;
}

}  // namespace

std::string to_dot(const LieGraph& g) {
    std::ostringstream os;
    os << "digraph lie {\n  rankdir=LR;\n";
    std::map<std::int64_t, std::vector<int>> by_deg;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) by_deg[g.vertices[i].degree].push_back(static_cast<int>(i));
    for (const auto& [deg, ids] : by_deg) {
        os << "  { rank=same; ";
        for (int i : ids) os << quote(g.vertices[i].name()) << "; ";
        os << "}  // degree " << deg << "\n";
    }
    for (const auto& e : g.edges)
        os << "  " << quote(g.vertices[e.src].name()) << " -> " << quote(g.vertices[e.dst].name())
           << " [label=" << quote(coeff_label(g, e)) << "];\n";
    for (const auto& e : g.p_edges)
        os << "  " << quote(g.vertices[e.src].name()) << " -> " << quote(g.vertices[e.dst].name())
           << " [label=" << quote("*" + std::to_string(g.p)) << ", style=dashed];\n";
    os << "}\n";
    return os.str();
}

std::string to_json(const LieGraph& g) {
    nlohmann::ordered_json j;
    j["family"] = family_name(g.family);
    j["p"] = g.p;
    j["max_degree"] = g.max_degree;
    auto& vs = j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& v : g.vertices) {
        nlohmann::ordered_json o{{"symbol", v.name()}, {"degree", v.degree}};
        if (v.overline) o["overline"] = true;
        if (!v.definition.empty()) o["definition"] = v.definition;
        vs.push_back(o);
    }
    auto& es = j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : g.edges)
        es.push_back({{"src", g.vertices[e.src].name()}, {"dst", g.vertices[e.dst].name()}, {"label", e.label}, {"coeff", e.coeff}});
    auto& ps = j["p_edges"] = nlohmann::ordered_json::array();
    for (const auto& e : g.p_edges)
        ps.push_back({{"src", g.vertices[e.src].name()}, {"dst", g.vertices[e.dst].name()}, {"coeff", e.coeff}});
    return j.dump(2) + "\n";
}

std::string to_csv_ranks(const std::vector<std::int64_t>& ranks) {
    std::ostringstream os;
    os << "degree,rank\n";
    for (std::size_t i = 0; i < ranks.size(); ++i) os << i + 1 << "," << ranks[i] << "\n";
    return os.str();
}

}  // namespace branchlie
