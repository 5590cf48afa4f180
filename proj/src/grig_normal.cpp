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
#include "branchlie/grig_normal.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <mutex>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "branchlie/errors.hpp"
#include "branchlie/tree_group.hpp"

namespace branchlie {

// ---------------------------------------------------------------- symbols

std::int64_t LieSym::degree() const {
    std::int64_t r = rank_word(word);
    return square ? 2 * r : r;
}

std::string LieSym::to_string() const {
    const char* base = square ? "x2" : "x";
    if (word.empty()) return base;
    return branchlie::to_string(word) + "(" + base + ")";
}

bool operator<(const LieSym& a, const LieSym& b) {
    auto da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    if (a.square != b.square) return !a.square;
    return a.word < b.word;
}

SymLieElt SymLieElt::x(const DigitWord& w, std::int64_t bound) {
    SymLieElt e;
    e.bound = bound;
    e.toggle(LieSym{false, w});
    return e;
}

SymLieElt SymLieElt::x2(const DigitWord& w, std::int64_t bound) {
    SymLieElt e;
    e.bound = bound;
    e.toggle(LieSym{true, w});
    return e;
}

void SymLieElt::toggle(const LieSym& s) {
    if (s.word.base != 2) throw DomainError("symbol words are binary");
    if (s.degree() >= bound) return;
    auto it = terms.find(s);
    if (it != terms.end())
        terms.erase(it);
    else
        terms.insert(s);
}

SymLieElt& SymLieElt::operator+=(const SymLieElt& o) {
    for (const auto& s : o.terms) toggle(s);
    return *this;
}

std::string SymLieElt::to_string() const {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& t : terms) {
        if (!s.empty()) s += "+";
        s += t.to_string();
    }
    return s;
}

namespace {

using SymList = std::vector<LieSym>;

struct SymHash {
    std::size_t operator()(const LieSym& s) const {
        std::size_t h = s.square ? 0x9e3779b97f4a7c15ULL : 0;
        for (auto d : s.word.digits) h = h * 3 + d + 1;
        return h ^ (s.word.size() << 48);
    }
};

// GF(2) sum kept as a sorted vector.
void xor_into(SymList& acc, const SymList& add) {
    for (const auto& s : add) {
        auto it = std::lower_bound(acc.begin(), acc.end(), s);
        if (it != acc.end() && *it == s)
            acc.erase(it);
        else
            acc.insert(it, s);
    }
}

LieSym sym(bool sq, std::vector<std::uint8_t> d) { return LieSym{sq, DigitWord(std::move(d), 2)}; }

SymList prefixed(std::uint8_t d, const SymList& s) {
    SymList r;
    for (const auto& x : s) r.push_back(LieSym{x.square, x.word.prefixed(d)});
    std::sort(r.begin(), r.end());
    return r;
}

SymList omega(const SymList& s) {
    SymList r = prefixed(0, s);
    xor_into(r, prefixed(1, s));
    return r;
}

SymList square_sym(const LieSym& s) {
    if (!s.square) return {LieSym{true, s.word}};
    SymList r{LieSym{true, s.word.appended(1)}, LieSym{false, s.word.appended(1).appended(1)}};
    std::sort(r.begin(), r.end());
    return r;
}

SymList square_list(const SymList& s) {
    SymList r;
    for (const auto& x : s) xor_into(r, square_sym(x));
    return r;
}

int gen_index(char g) {
    if (g < 'a' || g > 'd') throw DomainError(std::string("generator must be a, b, c or d, got ") + g);
    return g - 'a';
}

SymList ad_list(const SymList& s, int g);

SymList ad_sym(const LieSym& s, int g) {
    thread_local std::unordered_map<LieSym, std::array<std::optional<SymList>, 4>, SymHash> memo;
    auto& slot = memo[s][static_cast<std::size_t>(g)];
    if (slot) return *slot;
    SymList r;
    if (s.word.empty()) {
        if (!s.square) {
            // x
            if (g <= 1)
                r = {sym(true, {})};
            else if (g == 2)
                r = {sym(false, {0}), sym(true, {})};
            else
                r = {sym(false, {0})};
        } else {
            SymList x4{sym(true, {1}), sym(false, {1, 1})};
            SymList z{sym(true, {0}), sym(false, {0, 0})};
            if (g <= 1)
                r = x4;
            else if (g == 2) {
                r = x4;
                xor_into(r, z);
            } else
                r = z;
        }
    } else {
        SymList y{LieSym{s.square, s.word.tail()}};
        if (s.word[0] == 0) {
            if (g == 0)
                r = {LieSym{s.square, s.word.tail().prefixed(1)}};
            else if (g <= 2)
                r = prefixed(0, ad_list(y, 0));
        } else {
            if (g == 0)
                r = prefixed(1, square_list(y));
            else if (g == 3)
                r = omega(ad_list(y, 1));
            else {
                r = prefixed(0, ad_list(y, 0));
                xor_into(r, omega(ad_list(y, g == 1 ? 2 : 3)));
            }
        }
    }
    std::sort(r.begin(), r.end());
    auto& slot2 = memo[s][static_cast<std::size_t>(g)];
    slot2 = r;
    return r;
}

SymList ad_list(const SymList& s, int g) {
    SymList r;
    for (const auto& x : s) xor_into(r, ad_sym(x, g));
    return r;
}

SymLieElt from_list(const SymList& l, std::int64_t bound) {
    SymLieElt e;
    e.bound = bound;
    for (const auto& s : l) e.toggle(s);
    return e;
}

}  // namespace

SymLieElt commutate(const SymLieElt& e, char g) {
    int gi = gen_index(g);
    SymList r;
    for (const auto& s : e.terms) xor_into(r, ad_sym(s, gi));
    return from_list(r, e.bound);
}

SymLieElt square(const SymLieElt& e) {
    SymList r;
    for (const auto& s : e.terms) xor_into(r, square_sym(s));
    return from_list(r, e.bound);
}

// ---------------------------------------------------------------- GF(2) model

namespace {

using Vec = std::vector<std::uint64_t>;

// Symbols of degree < D, sorted by degree; ops are ad a..d and squaring.
class LinearModel {
public:
    explicit LinearModel(std::int64_t D) : D_(D) {
        for (std::size_t n = 0;; ++n) {
            if ((std::int64_t{1} << n) + 1 >= D) break;
            for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
                std::vector<std::uint8_t> d(n);
                for (std::size_t i = 0; i < n; ++i) d[i] = (m >> i) & 1;
                for (bool sq : {false, true}) {
                    LieSym s{sq, DigitWord(d, 2)};
                    if (s.degree() < D) syms_.push_back(s);
                }
            }
        }
        std::sort(syms_.begin(), syms_.end());
        nb_ = static_cast<int>(syms_.size());
        nw_ = (nb_ + 63) / 64;
        for (int i = 0; i < nb_; ++i) id_[syms_[static_cast<std::size_t>(i)]] = i;
        ops_.resize(static_cast<std::size_t>(nb_));
        for (int i = 0; i < nb_; ++i) {
            SymList one{syms_[static_cast<std::size_t>(i)]};
            for (int g = 0; g < 4; ++g) ops_[static_cast<std::size_t>(i)][static_cast<std::size_t>(g)] = vec(ad_list(one, g));
            ops_[static_cast<std::size_t>(i)][4] = vec(square_list(one));
        }
    }

    int nb() const { return nb_; }
    int nw() const { return nw_; }
    std::int64_t bound() const { return D_; }
    const LieSym& symbol(int i) const { return syms_[static_cast<std::size_t>(i)]; }
    int index(const LieSym& s) const {
        auto it = id_.find(s);
        return it == id_.end() ? -1 : it->second;
    }

    Vec zero() const { return Vec(static_cast<std::size_t>(nw_), 0); }
    Vec vec(const SymList& l) const {
        Vec v = zero();
        for (const auto& s : l) {
            int i = index(s);
            if (i >= 0) v[static_cast<std::size_t>(i >> 6)] ^= std::uint64_t{1} << (i & 63);
        }
        return v;
    }
    Vec op(const Vec& v, int k) const {
        Vec r = zero();
        for (int w = 0; w < nw_; ++w) {
            std::uint64_t m = v[static_cast<std::size_t>(w)];
            while (m) {
                int b = w * 64 + __builtin_ctzll(m);
                const Vec& o = ops_[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)];
                for (int j = 0; j < nw_; ++j) r[static_cast<std::size_t>(j)] ^= o[static_cast<std::size_t>(j)];
                m &= m - 1;
            }
        }
        return r;
    }

private:
    std::int64_t D_;
    std::vector<LieSym> syms_;
    int nb_ = 0, nw_ = 0;
    std::unordered_map<LieSym, int, SymHash> id_;
    std::vector<std::array<Vec, 5>> ops_;
};

bool is_zero(const Vec& v) {
    for (auto x : v)
        if (x) return false;
    return true;
}

// Reduced row echelon form; the pivot of a row is its lowest set bit.
class Echelon {
public:
    Echelon() = default;
    Echelon(int nb, int nw) : nb_(nb), nw_(nw), row_of_(static_cast<std::size_t>(nb), -1), mask_(static_cast<std::size_t>(nw), 0) {}

    static Echelon full(int nb, int nw) {
        Echelon e(nb, nw);
        for (int i = 0; i < nb; ++i) {
            Vec v(static_cast<std::size_t>(nw), 0);
            v[static_cast<std::size_t>(i >> 6)] = std::uint64_t{1} << (i & 63);
            e.insert(i, std::move(v));
        }
        return e;
    }

    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<Vec>& rows() const { return rows_; }

    void reduce(Vec& v) const {
        for (int w = 0; w < nw_; ++w) {
            std::uint64_t m = v[static_cast<std::size_t>(w)] & mask_[static_cast<std::size_t>(w)];
            while (m) {
                int b = w * 64 + __builtin_ctzll(m);
                const Vec& r = rows_[static_cast<std::size_t>(row_of_[static_cast<std::size_t>(b)])];
                for (int j = w; j < nw_; ++j) v[static_cast<std::size_t>(j)] ^= r[static_cast<std::size_t>(j)];
                m &= m - 1;
            }
        }
    }
    bool contains(Vec v) const {
        reduce(v);
        return is_zero(v);
    }
    bool add(Vec v) {
        reduce(v);
        int p = -1;
        for (int w = 0; w < nw_ && p < 0; ++w)
            if (v[static_cast<std::size_t>(w)]) p = w * 64 + __builtin_ctzll(v[static_cast<std::size_t>(w)]);
        if (p < 0) return false;
        std::uint64_t bit = std::uint64_t{1} << (p & 63);
        auto pw = static_cast<std::size_t>(p >> 6);
        for (auto& r : rows_)
            if (r[pw] & bit)
                for (int j = 0; j < nw_; ++j) r[static_cast<std::size_t>(j)] ^= v[static_cast<std::size_t>(j)];
        insert(p, std::move(v));
        return true;
    }
    // Rows by increasing pivot, concatenated.
    std::string key() const {
        std::string k;
        k.reserve(rows_.size() * static_cast<std::size_t>(nw_) * 8);
        for (int p = 0; p < nb_; ++p) {
            int r = row_of_[static_cast<std::size_t>(p)];
            if (r < 0) continue;
            k.append(reinterpret_cast<const char*>(rows_[static_cast<std::size_t>(r)].data()), static_cast<std::size_t>(nw_) * 8);
        }
        return k;
    }

private:
    void insert(int p, Vec v) {
        row_of_[static_cast<std::size_t>(p)] = static_cast<int>(rows_.size());
        mask_[static_cast<std::size_t>(p >> 6)] |= std::uint64_t{1} << (p & 63);
        rows_.push_back(std::move(v));
    }

    int nb_ = 0, nw_ = 0;
    std::vector<int> row_of_;
    Vec mask_;
    std::vector<Vec> rows_;
};

// Smallest ideal containing the seeds, closed under ad and squaring.
Echelon ideal_closure(const LinearModel& m, const std::vector<Vec>& seeds) {
    Echelon e(m.nb(), m.nw());
    std::vector<Vec> todo;
    for (const auto& s : seeds) {
        Vec v = s;
        e.reduce(v);
        if (!is_zero(v) && e.add(v)) todo.push_back(v);
    }
    while (!todo.empty()) {
        Vec v = std::move(todo.back());
        todo.pop_back();
        for (int k = 0; k < 5; ++k) {
            Vec w = m.op(v, k);
            e.reduce(w);
            if (!is_zero(w) && e.add(w)) todo.push_back(w);
        }
    }
    return e;
}

}  // namespace

std::vector<std::int64_t> symbolic_counts(int max_exponent) {
    if (max_exponent < 4) throw DomainError("symbolic counts start at exponent 4");
    std::int64_t E = max_exponent;
    // Truncation D >= E + 4 was enough in every comparison with exact counts.
    LinearModel model(E + E / 8 + 16);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(E + 1), 0);
    std::vector<Echelon> layer{Echelon::full(model.nb(), model.nw())};
    for (std::int64_t e = 4; e <= E; ++e) {
        counts[static_cast<std::size_t>(e)] = static_cast<std::int64_t>(layer.size());
        if (e == E) break;
        std::vector<Echelon> next;
        std::unordered_set<std::string> seen;
        for (const auto& M : layer) {
            Echelon R(model.nb(), model.nw());
            for (const auto& b : M.rows())
                for (int k = 0; k < 5; ++k) R.add(model.op(b, k));
            Echelon Rc = R;
            std::vector<Vec> qb;
            for (const auto& b : M.rows())
                if (Rc.add(b)) qb.push_back(b);
            int dim = static_cast<int>(qb.size());
            if (dim > 20) throw ResourceError("linear model: quotient layer too wide");
            for (std::uint32_t f = 1; f < (1u << dim); ++f) {
                int first = __builtin_ctz(f);
                Echelon N = R;
                for (int i = 0; i < dim; ++i) {
                    if (i == first) continue;
                    Vec v = qb[static_cast<std::size_t>(i)];
                    if (f >> i & 1)
                        for (std::size_t j = 0; j < v.size(); ++j) v[j] ^= qb[static_cast<std::size_t>(first)][j];
                    N.add(std::move(v));
                }
                if (seen.insert(N.key()).second) next.push_back(std::move(N));
            }
        }
        layer.swap(next);
    }
    return counts;
}

// ---------------------------------------------------------------- descriptors

namespace {

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
    for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) s.replace(pos, from.size(), to);
    return s;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

DigitWord zeros(std::size_t n) { return DigitWord::repeat(0, n, 2); }

}  // namespace

std::string WDescriptor::to_string() const {
    std::string s = "W(" + (A ? branchlie::to_string(*A) : std::string("∞")) + ";";
    for (std::size_t i = 0; i < B.size(); ++i) s += (i ? "," : "") + branchlie::to_string(B[i]);
    s += ";" + branchlie::to_string(C) + ")";
    if (type == WType::II) s += "II";
    if (type == WType::III) s += "III";
    return s;
}

WDescriptor parse_descriptor(const std::string& text) {
    std::string s = replace_all(replace_all(text, "𝟘", "0"), "𝟙", "1");
    s = trim(s);
    auto open = s.find('(');
    auto close = s.rfind(')');
    if (s.empty() || s[0] != 'W' || open != 1 || close == std::string::npos || close < open)
        throw DomainError("descriptor must look like W(A;B,...;C): " + text);
    auto parts = split(s.substr(open + 1, close - open - 1), ';');
    if (parts.size() != 3) throw DomainError("descriptor needs three ';'-separated fields: " + text);
    WDescriptor w;
    std::string a = trim(parts[0]);
    if (a == "∞" || a == "inf")
        w.A.reset();
    else
        w.A = parse_word(a, 2);
    std::string b = trim(parts[1]);
    if (!b.empty())
        for (const auto& t : split(b, ',')) w.B.push_back(parse_word(trim(t), 2));
    w.C = parse_word(trim(parts[2]), 2);
    for (std::size_t i = 1; i < w.B.size(); ++i)
        if (rank_word(w.B[i - 1]) >= rank_word(w.B[i])) throw DomainError("B must be strictly rank-increasing: " + text);
    if (!w.B.empty() && rank_word(w.B.back()) >= rank_word(w.C)) throw DomainError("B terms must rank below C: " + text);
    std::string suffix = trim(s.substr(close + 1));
    if (suffix == "III")
        w.type = WType::III;
    else if (suffix == "II")
        w.type = WType::II;
    else if (suffix.empty() || suffix == "I")
        w.type = classify(w);
    else
        throw DomainError("unknown descriptor type suffix: " + suffix);
    if (!w.A && w.type != WType::III) throw DomainError("a suppressed A needs type III: " + text);
    return w;
}

WType classify(const WDescriptor& w) {
    if (!w.A) return WType::III;
    const DigitWord& A = *w.A;
    auto rc = rank_word(w.C), ra = rank_word(A);
    if (rc <= rank_word(zeros(A.size())) && ra <= rank_word(zeros(w.C.size()).appended(1).appended(0))) return WType::I;
    if (!w.B.empty() && rc > rank_word(zeros(A.size())) && rc <= rank_word(zeros(A.size() + 1)) && A == w.B.front().appended(1))
        return WType::II;
    if (!A.empty() && std::all_of(A.digits.begin(), A.digits.end(), [](auto d) { return d == 0; }))
        for (const auto& b : w.B)
            if (b == zeros(A.size() - 1)) return WType::III;
    return WType::I;
}

MsResult ms_functions(const std::optional<DigitWord>& A, const std::vector<DigitWord>& B, const DigitWord& C, std::size_t budget) {
    // x^2 terms of rank >= #C are dropped. x terms are never truncated; an
    // element whose x part reaches rank x_cap is abandoned instead, since
    // dropping those terms would fake a pure square sum.
    const std::int64_t rc = rank_word(C);
    const std::int64_t x_cap = 4 * rc + 16;
    auto keep = [&](const SymList& l, SymList& out) {
        out.clear();
        for (const auto& s : l) {
            auto r = rank_word(s.word);
            if (s.square) {
                if (r < rc) out.push_back(s);
            } else {
                if (r >= x_cap) return false;
                out.push_back(s);
            }
        }
        return true;
    };
    SymList seed;
    if (A) seed.push_back(LieSym{false, *A});
    for (const auto& b : B) seed.push_back(LieSym{true, b});
    std::sort(seed.begin(), seed.end());
    SymList first;
    if (!keep(seed, first)) throw DomainError("ms_functions: A is too long for C");
    std::set<SymList> seen{first};
    std::vector<SymList> todo{first};
    SymList kept;
    while (!todo.empty()) {
        SymList e = std::move(todo.back());
        todo.pop_back();
        for (int g = 0; g < 4; ++g) {
            if (!keep(ad_list(e, g), kept) || kept.empty()) continue;
            if (!seen.insert(kept).second) continue;
            if (seen.size() > budget) throw ResourceError("ms_functions: orbit exceeds symbol budget");
            todo.push_back(kept);
        }
    }
    MsResult r;
    r.M = C;
    r.S = C;
    r.orbit_size = seen.size();
    for (const auto& t : seen) {
        if (t.empty()) continue;
        bool pure = std::all_of(t.begin(), t.end(), [](const LieSym& s) { return s.square; });
        if (!pure) continue;
        // sorted by degree, so the last term has the top rank
        const DigitWord& top = t.back().word;
        if (t.size() == 1 && rank_word(top) < rank_word(r.M)) {
            r.M = top;
            r.m_found = true;
        }
        if (rank_word(top) < rank_word(r.S)) {
            r.S = top;
            r.s_found = true;
        }
    }
    return r;
}

int index_formula(const WDescriptor& w) {
    if (!w.A) throw DomainError("index formula needs A");
    auto ms = ms_functions(w.A, w.B, w.C);
    return static_cast<int>(rank_word(*w.A) + rank_word(ms.S));
}

namespace {

int linear_codim(const WDescriptor& w, std::int64_t D) {
    LinearModel m(D);
    SymList g1;
    if (w.A) g1.push_back(LieSym{false, *w.A});
    for (const auto& b : w.B) g1.push_back(LieSym{true, b});
    std::sort(g1.begin(), g1.end());
    SymList g2{LieSym{true, w.C}};
    auto e = ideal_closure(m, {m.vec(g1), m.vec(g2)});
    return m.nb() - e.dim();
}

}  // namespace

int index_of(const WDescriptor& w) {
    if (w.A) return index_formula(w);
    // Suppressed A: complement of the ideal in the leading-term model.
    std::int64_t D = 4 * rank_word(w.C) + 32;
    int c1 = linear_codim(w, D);
    int c2 = linear_codim(w, 2 * D);
    if (c1 != c2) throw InternalError("index_of: truncation not stable for " + w.to_string());
    return 4 + c1;
}

int linear_index(const WDescriptor& w) {
    std::int64_t D = 2 * ((w.A ? rank_word(*w.A) : 0) + 2 * rank_word(w.C)) + 32;
    return 4 + linear_codim(w, D);
}

namespace {

struct RawRow {
    int exponent;
    const char* text;
};

// Count-column rows; a trailing '?' marks an optional B term.
const RawRow kTable[] = {
    {4, "W(λ;;λ)"},
    {5, "W(0;;λ)"},
    {6, "W(1;;λ)"},           {6, "W(0;λ?;0)"},
    {7, "W(00;;λ)"},          {7, "W(1;λ?;0)"},
    {8, "W(10;;λ)"},          {8, "W(00;;0)"},          {8, "W(1;λ,0?;1)II"},     {8, "W(∞;λ,0;1)III"},
    {9, "W(10;;0)"},          {9, "W(00;0?;1)"},        {9, "W(1;λ,1?;00)II"},
    {10, "W(01;;0)"},         {10, "W(10;0?;1)"},       {10, "W(00;0?,1?;00)"},
    {11, "W(11;;0)"},         {11, "W(01;0?;1)"},       {11, "W(10;1?;00)"},
    {12, "W(000;;0)"},        {12, "W(11;0?;1)"},       {12, "W(01;0?,1?;00)"},
    {13, "W(100;;0)"},        {13, "W(000;0?;1)"},      {13, "W(11;1?;00)"},      {13, "W(01;0,00?;10)II"},
    {14, "W(010;;0)"},        {14, "W(100;0?;1)"},      {14, "W(000;;00)"},       {14, "W(11;1,00?;10)II"},
    {14, "W(01;0,00?,10?;01)II"}, {14, "W(∞;1,00;10)III"}, {14, "W(∞;0,1?,00;01)III"},
    {15, "W(010;;1)"},        {15, "W(100;;00)"},       {15, "W(000;00?;10)"},    {15, "W(11;1,10?;01)II"},
    {15, "W(01;0,01?;11)II"}, {15, "W(∞;1,10;01)III"},
    {16, "W(010;;00)"},       {16, "W(100;00?;10)"},    {16, "W(000;00?,10?;01)"}, {16, "W(11;1,01?;11)II"},
    {16, "W(01;0,01?,11?;000)II"},
    {17, "W(110;;00)"},       {17, "W(010;00?;10)"},    {17, "W(100;10?;01)"},    {17, "W(000;00?,01?;11)"},
    {17, "W(11;1,11?;000)II"},
    {18, "W(001;;00)"},       {18, "W(110;00?;10)"},    {18, "W(010;00?,10?;01)"}, {18, "W(100;10?,01?;11)"},
    {18, "W(000;00?,01?,11?;000)"},
};

}  // namespace

std::vector<TableRow> table_fixture() {
    std::vector<TableRow> out;
    for (const auto& r : kTable) {
        std::string s = r.text;
        auto open = s.find(';');
        auto close = s.rfind(';');
        auto terms = split(s.substr(open + 1, close - open - 1), ',');
        std::vector<int> optional;
        for (std::size_t i = 0; i < terms.size(); ++i)
            if (!terms[i].empty() && terms[i].back() == '?') optional.push_back(static_cast<int>(i));
        for (std::uint32_t mask = 0; mask < (1u << optional.size()); ++mask) {
            std::string b;
            for (std::size_t i = 0; i < terms.size(); ++i) {
                std::string t = terms[i];
                if (!t.empty() && t.back() == '?') {
                    auto k = std::find(optional.begin(), optional.end(), static_cast<int>(i)) - optional.begin();
                    if (!(mask >> k & 1)) continue;
                    t.pop_back();
                }
                if (t.empty()) continue;
                b += (b.empty() ? "" : ",") + t;
            }
            WDescriptor w = parse_descriptor(s.substr(0, open + 1) + b + s.substr(close));
            w.exponent = r.exponent;
            out.push_back(TableRow{r.exponent, w});
        }
    }
    return out;
}

std::vector<int> table_counts() { return {1, 1, 3, 3, 5, 5, 7, 5, 7, 7, 13, 9, 13, 11, 19}; }

// ---------------------------------------------------------------- exact engine

namespace {

QuotientPtr gg_quotient(int level) {
    static std::mutex mu;
    static std::map<int, QuotientPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(level);
    if (it != cache.end()) return it->second;
    QuotientLimits lim;
    lim.build_store = level <= 4;
    auto q = FiniteQuotient::build(GroupId::Grigorchuk, level, lim);
    cache[level] = q;
    return q;
}

Perm symbol_perm(const QuotientPtr& q, bool sq, const DigitWord& w) {
    static std::mutex mu;
    static std::map<std::tuple<int, bool, DigitWord>, Perm> cache;
    auto key = std::make_tuple(q->level, sq, w);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Perm p = perm_at(derived_element(q->spec, sq ? Symbol::x2 : Symbol::x, w), q->level);
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = p;
    return p;
}

std::string membership_key(const Subgroup& s) {
    auto m = s.membership();
    return std::string(reinterpret_cast<const char*>(m.data()), m.size() * 8);
}

void require_gg(const QuotientPtr& q) {
    if (!q || q->spec->id != GroupId::Grigorchuk) throw DomainError("expected a quotient of the Grigorchuk group");
}

}  // namespace

NormalLattice::NormalLattice(int level, int max_exponent) : level_(level) {
    if (level < 1) throw DomainError("level must be >= 1");
    if (max_exponent < 0) throw DomainError("max_exponent must be >= 0");
    q_ = gg_quotient(level);
    k_ = Subgroup::normal_closure(q_, {symbol_perm(q_, false, DigitWord({}, 2))});
    layers_.push_back({Subgroup::whole(q_)});
    for (int e = 1; e <= max_exponent; ++e) {
        std::vector<Subgroup> next;
        std::vector<std::vector<int>> links;
        for (const auto& M : layers_.back()) {
            auto mg = M.generators();
            std::vector<Perm> gens;
            for (const auto& m : mg) {
                for (const auto& g : q_->gens) gens.push_back(perm_comm(m, g));
                gens.push_back(perm_mul(m, m));
            }
            Subgroup R = Subgroup::normal_closure(q_, gens);
            std::vector<Perm> basis;
            Subgroup Rc = R;
            for (const auto& m : mg) {
                if (Rc.contains(m)) continue;
                Rc.add({m});
                basis.push_back(m);
            }
            int dim = static_cast<int>(basis.size());
            if (dim > 20) throw ResourceError("normal lattice: layer too wide");
            std::vector<int> kids;
            for (std::uint32_t f = 1; f < (1u << dim); ++f) {
                int first = __builtin_ctz(f);
                std::vector<Perm> kers;
                for (int i = 0; i < dim; ++i)
                    if (i != first)
                        kers.push_back((f >> i & 1) ? perm_mul(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(first)])
                                                    : basis[static_cast<std::size_t>(i)]);
                Subgroup N = R;
                N.add(kers);
                int found = -1;
                for (std::size_t j = 0; j < next.size(); ++j)
                    if (next[j] == N) {
                        found = static_cast<int>(j);
                        break;
                    }
                if (found < 0) {
                    found = static_cast<int>(next.size());
                    next.push_back(std::move(N));
                }
                kids.push_back(found);
            }
            links.push_back(std::move(kids));
        }
        children_.push_back(std::move(links));
        if (next.empty()) break;
        layers_.push_back(std::move(next));
    }
    children_.resize(layers_.size());
}

int faithful_exponent(int level) {
    if (level < 4 || level > 40) throw DomainError("faithful_exponent is tabulated for levels 4..40");
    return (1 << (level - 2)) + 2;
}

int exact_level_for(int n) {
    if (n < 0) throw DomainError("exponent must be >= 0");
    int L = 4;
    while (faithful_exponent(L) < n) ++L;
    return L;
}

namespace {

std::shared_ptr<const NormalLattice> cached_lattice(int level, int max_exponent) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const NormalLattice>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[level];
    if (!slot || slot->max_exponent() < max_exponent) slot = std::make_shared<const NormalLattice>(level, max_exponent);
    return slot;
}

std::vector<std::int64_t> cached_symbolic(int max_exponent) {
    static std::mutex mu;
    static std::vector<std::int64_t> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (static_cast<int>(cache.size()) <= max_exponent) cache = symbolic_counts(max_exponent);
    return cache;
}

}  // namespace

std::vector<BnValue> count_bn_table(int max_n, const CountOptions& opt) {
    if (max_n < 0) throw DomainError("max_n must be >= 0");
    int fe = faithful_exponent(std::max(4, opt.max_exact_level));
    int top = std::min(max_n, fe);
    int L = exact_level_for(top);
    auto lat = cached_lattice(L, top);
    std::vector<BnValue> out;
    for (int n = 0; n <= top; ++n) {
        std::int64_t v = n <= lat->max_exponent() ? static_cast<std::int64_t>(lat->layer(n).size()) : 0;
        out.push_back(BnValue{v, CountSource::exact, L});
    }
    if (max_n > top) {
        auto sym = cached_symbolic(max_n);
        auto nk = non_k_counts();
        for (int n = top + 1; n <= max_n; ++n) {
            std::int64_t v = sym[static_cast<std::size_t>(n)];
            if (n < static_cast<int>(nk.size())) v += nk[static_cast<std::size_t>(n)];
            out.push_back(BnValue{v, CountSource::symbolic, 0});
        }
    }
    return out;
}

std::int64_t count_bn(int n, const CountOptions& opt) { return count_bn_table(n, opt).at(static_cast<std::size_t>(n)).value; }

// ---------------------------------------------------------------- outside K

std::vector<int> non_k_counts() { return {1, 7, 7, 7, 4, 2}; }

std::vector<NamedSubgroup> non_k_listed() {
    return {
        {"<[a,c], d^a b>", 3, {"[a,c]", "d^a b"}},
        {"<c>", 3, {"c"}},
        {"<x, c^a d>", 3, {"x", "c^a d"}},
        {"<b>", 3, {"b"}},
        {"<[a,d], b^a c>", 3, {"[a,d]", "b^a c"}},
        {"<d, x^2>", 3, {"d", "x^2"}},
        {"<[a,c]>", 4, {"[a,c]"}},
        {"<[a,d], x^2>", 4, {"[a,d]", "x^2"}},
        {"<d>", 4, {"d"}},
        {"<[a,d], x^2 d>", 4, {"[a,d]", "x^2 d"}},
        {"<[a,d]x^2>", 5, {"[a,d]x^2"}},
        {"<[a,d]>", 5, {"[a,d]"}},
    };
}

namespace {

// expr := term*, term := atom ('^' (letter | digits))*, atom := letter | [expr,expr] | (expr)
class WordParser {
public:
    WordParser(const QuotientPtr& q, std::string s) : q_(q), s_(replace_all(std::move(s), "²", "^2")) {}

    Perm parse() {
        Perm p = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return p;
    }

private:
    void skip() {
        while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
    }
    [[noreturn]] void fail(const std::string& why) { throw DomainError("bad group word '" + s_ + "': " + why); }

    Perm letter(char ch) {
        if (ch == 'x') return perm_comm(letter('a'), letter('b'));
        for (std::size_t i = 0; i < q_->gen_names.size(); ++i)
            if (q_->gen_names[i] == std::string(1, ch)) return q_->gens[i];
        fail(std::string("unknown letter ") + ch);
    }

    Perm expr() {
        Perm p = q_->identity();
        for (;;) {
            skip();
            if (pos_ >= s_.size() || s_[pos_] == ',' || s_[pos_] == ']' || s_[pos_] == ')') return p;
            p = perm_mul(p, term());
        }
    }

    Perm term() {
        Perm p = atom();
        for (;;) {
            skip();
            if (pos_ >= s_.size() || s_[pos_] != '^') return p;
            ++pos_;
            skip();
            if (pos_ >= s_.size()) fail("dangling ^");
            if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                long k = 0;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) k = k * 10 + (s_[pos_++] - '0');
                p = perm_pow(p, k);
            } else {
                p = perm_conj(p, atom());
            }
        }
    }

    Perm atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char ch = s_[pos_++];
        if (ch == '[') {
            Perm u = expr();
            if (pos_ >= s_.size() || s_[pos_] != ',') fail("expected ,");
            ++pos_;
            Perm v = expr();
            if (pos_ >= s_.size() || s_[pos_] != ']') fail("expected ]");
            ++pos_;
            return perm_comm(u, v);
        }
        if (ch == '(') {
            Perm u = expr();
            if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected )");
            ++pos_;
            return u;
        }
        return letter(ch);
    }

    QuotientPtr q_;
    std::string s_;
    std::size_t pos_ = 0;
};

struct Lift {
    std::string name;
    Subgroup s;
};

std::vector<Lift> lifts_named(const QuotientPtr& q) {
    require_gg(q);
    std::vector<Perm> comms;
    for (std::size_t i = 0; i < q->gens.size(); ++i)
        for (std::size_t j = i + 1; j < q->gens.size(); ++j) comms.push_back(perm_comm(q->gens[i], q->gens[j]));
    Subgroup derived = Subgroup::normal_closure(q, comms);
    const char* names[] = {"a", "b", "c", "d", "ab", "ac", "ad"};
    std::vector<Perm> elts;
    for (auto n : names) elts.push_back(gg_word_perm(q, n));
    std::vector<Lift> out;
    for (std::uint32_t mask = 0; mask < (1u << 7); ++mask) {
        if (__builtin_popcount(mask) > 3) continue;
        Subgroup s = derived;
        std::vector<Perm> add;
        std::string name;
        for (int i = 0; i < 7; ++i)
            if (mask >> i & 1) {
                add.push_back(elts[static_cast<std::size_t>(i)]);
                name += (name.empty() ? "" : ",") + std::string(names[i]);
            }
        s.add(add);
        bool dup = false;
        for (const auto& l : out)
            if (l.s == s) dup = true;
        if (dup) continue;
        if (s.order_exp() == q->order_exp())
            name = "Gg";
        else
            name = name.empty() ? "[Gg,Gg]" : "<" + name + ">[Gg,Gg]";
        out.push_back(Lift{name, std::move(s)});
    }
    if (out.size() != 16) throw InternalError("expected 16 lifts from the abelianization");
    return out;
}

}  // namespace

Perm gg_word_perm(const QuotientPtr& q, const std::string& word) {
    require_gg(q);
    return WordParser(q, word).parse();
}

std::vector<Subgroup> abelianization_lifts(const QuotientPtr& q) {
    std::vector<Subgroup> out;
    for (auto& l : lifts_named(q)) out.push_back(std::move(l.s));
    return out;
}

// ---------------------------------------------------------------- descriptors in quotients

RealizedDescriptor realize_descriptor(const WDescriptor& w, const QuotientPtr& q) {
    require_gg(q);
    Perm g = q->identity();
    if (w.A) g = symbol_perm(q, false, *w.A);
    for (const auto& b : w.B) g = perm_mul(g, symbol_perm(q, true, b));
    std::vector<Perm> gens{symbol_perm(q, true, w.C)};
    if (!perm_is_identity(g)) gens.push_back(g);
    RealizedDescriptor r;
    r.subgroup = Subgroup::normal_closure(q, gens);
    int e = q->order_exp() - r.subgroup.order_exp();
    r.faithful = q->level >= 4 && e <= faithful_exponent(q->level);
    return r;
}

std::optional<WDescriptor> read_descriptor(const Subgroup& n, int max_terms) {
    const QuotientPtr& q = n.quotient();
    require_gg(q);
    std::vector<DigitWord> words;
    for (int len = 0; len <= std::max(0, q->level - 2); ++len)
        for (std::uint32_t m = 0; m < (1u << len); ++m) {
            std::vector<std::uint8_t> d(static_cast<std::size_t>(len));
            for (int i = 0; i < len; ++i) d[static_cast<std::size_t>(i)] = (m >> i) & 1;
            words.emplace_back(d, 2);
        }
    std::sort(words.begin(), words.end(), [](const DigitWord& a, const DigitWord& b) { return rank_word(a) < rank_word(b); });
    auto X = [&](const DigitWord& w) { return symbol_perm(q, false, w); };
    auto Q = [&](const DigitWord& w) { return symbol_perm(q, true, w); };

    std::optional<DigitWord> C;
    for (const auto& w : words)
        if (n.contains(Q(w))) {
            C = w;
            break;
        }
    if (!C) return std::nullopt;
    std::vector<DigitWord> low;
    for (const auto& w : words)
        if (rank_word(w) < rank_word(*C)) low.push_back(w);

    // First subset (by size, then index order) whose product with head lies in n.
    auto find_subset = [&](const Perm& head, std::size_t limit) -> std::optional<std::vector<DigitWord>> {
        std::vector<int> idx;
        std::function<std::optional<std::vector<DigitWord>>(std::size_t, int)> rec =
            [&](std::size_t start, int left) -> std::optional<std::vector<DigitWord>> {
            if (left == 0) {
                Perm g = head;
                std::vector<DigitWord> sub;
                for (int i : idx) {
                    g = perm_mul(g, Q(low[static_cast<std::size_t>(i)]));
                    sub.push_back(low[static_cast<std::size_t>(i)]);
                }
                if (n.contains(g)) return sub;
                return std::nullopt;
            }
            for (std::size_t i = start; i < limit; ++i) {
                idx.push_back(static_cast<int>(i));
                auto r = rec(i + 1, left - 1);
                idx.pop_back();
                if (r) return r;
            }
            return std::nullopt;
        };
        for (int k = 0; k <= max_terms && k <= static_cast<int>(limit); ++k)
            if (auto r = rec(0, k)) return r;
        return std::nullopt;
    };

    for (const auto& a : words) {
        auto sub = find_subset(X(a), low.size());
        if (!sub) continue;
        WDescriptor w;
        w.A = a;
        w.B = *sub;
        w.C = *C;
        w.type = classify(w);
        auto r = realize_descriptor(w, q);
        if (r.subgroup == n) {
            w.exponent = q->order_exp() - n.order_exp();
            return w;
        }
        break;
    }
    // Suppressed-A form: a pure square sum with top t.
    for (std::size_t t = 0; t < low.size(); ++t) {
        auto sub = find_subset(Q(low[t]), t);
        if (!sub) continue;
        WDescriptor w;
        w.B = *sub;
        w.B.push_back(low[t]);
        w.C = *C;
        w.type = WType::III;
        auto r = realize_descriptor(w, q);
        if (r.subgroup == n) {
            w.exponent = q->order_exp() - n.order_exp();
            return w;
        }
        break;
    }
    return std::nullopt;
}

std::vector<EnumeratedNormal> enumerate_normal(int max_exponent, bool read_descriptors) {
    int L = exact_level_for(max_exponent);
    if (L > 8) throw ResourceError("enumerate_normal: exponent beyond the exact engine");
    auto lat = cached_lattice(L, max_exponent);
    const auto& q = lat->quotient();
    auto lifts = lifts_named(q);
    std::vector<std::pair<std::string, Subgroup>> listed;
    for (const auto& ns : non_k_listed()) {
        std::vector<Perm> g;
        for (const auto& w : ns.generators) g.push_back(gg_word_perm(q, w));
        listed.emplace_back(ns.name, Subgroup::normal_closure(q, g));
    }
    std::vector<EnumeratedNormal> out;
    for (int e = 0; e <= std::min(max_exponent, lat->max_exponent()); ++e)
        for (const auto& N : lat->layer(e)) {
            EnumeratedNormal en;
            en.exponent = e;
            en.in_K = lat->in_K(N);
            if (en.in_K) {
                if (read_descriptors) {
                    en.descriptor = read_descriptor(N);
                    en.realized_matches = en.descriptor.has_value();
                }
            } else {
                for (const auto& l : lifts)
                    if (l.s == N) en.name = l.name;
                for (const auto& [name, s] : listed)
                    if (s == N) en.name = name;
                en.realized_matches = !en.name.empty();
            }
            out.push_back(std::move(en));
        }
    return out;
}

// ---------------------------------------------------------------- reports

bool ExtremesReport::ok() const {
    for (const auto& r : big)
        if (r.expected != r.got) return false;
    for (const auto& r : small)
        if (r.expected != r.got) return false;
    return true;
}

ExtremesReport extremes_check(int k_max_big, int k_max_small, const CountOptions& opt) {
    if (k_max_big < 2 || k_max_small < 0 || k_max_big > 20 || k_max_small > 20) throw DomainError("extremes_check: k out of range");
    int top = std::max((1 << k_max_big) + 2, 5 * (1 << k_max_small) + 1);
    auto table = count_bn_table(top, opt);
    ExtremesReport rep;
    std::int64_t p3 = 9;
    for (int k = 2; k <= k_max_big; ++k, p3 *= 3) {
        int n = (1 << k) + 2;
        const auto& v = table[static_cast<std::size_t>(n)];
        rep.big.push_back(ExtremeRow{k, n, 2 * p3 / 9 + 1, v.value, v.source});
    }
    p3 = 1;
    for (int k = 0; k <= k_max_small; ++k, p3 *= 3) {
        int n = 5 * (1 << k) + 1;
        const auto& v = table[static_cast<std::size_t>(n)];
        rep.small.push_back(ExtremeRow{k, n, p3 + 2, v.value, v.source});
    }
    return rep;
}

std::string lattice_dot(const NormalLattice& lat, int max_exponent) {
    const auto& q = lat.quotient();
    auto lifts = lifts_named(q);
    std::vector<std::pair<std::string, Subgroup>> listed;
    for (const auto& ns : non_k_listed()) {
        std::vector<Perm> g;
        for (const auto& w : ns.generators) g.push_back(gg_word_perm(q, w));
        listed.emplace_back(ns.name, Subgroup::normal_closure(q, g));
    }
    int E = std::min(max_exponent, lat.max_exponent());
    std::ostringstream os;
    os << "digraph normal_subgroups {\n  rankdir=TB;\n  node [shape=box, fontsize=10];\n";
    for (int e = 0; e <= E; ++e) {
        os << "  { rank=same;";
        for (std::size_t i = 0; i < lat.layer(e).size(); ++i) os << " n" << e << "_" << i << ";";
        os << " }\n";
        for (std::size_t i = 0; i < lat.layer(e).size(); ++i) {
            const auto& N = lat.layer(e)[i];
            std::string label;
            if (lat.in_K(N)) {
                auto w = read_descriptor(N);
                label = w ? w->to_string() : "?";
            } else {
                for (const auto& l : lifts)
                    if (l.s == N) label = l.name;
                for (const auto& [name, s] : listed)
                    if (s == N) label = name;
            }
            os << "  n" << e << "_" << i << " [label=\"2^" << e << "\\n" << label << "\"];\n";
        }
    }
    for (int e = 0; e < E; ++e)
        for (std::size_t i = 0; i < lat.layer(e).size(); ++i)
            for (int c : lat.children(e, static_cast<int>(i))) {
                os << "  n" << e << "_" << i << " -> n" << (e + 1) << "_" << c << ";\n";
            }
    os << "}\n";
    return os.str();
}

std::vector<Subgroup> all_normal_subgroups(const QuotientPtr& q, std::size_t limit) {
    if (!q->has_store()) throw ResourceError("all_normal_subgroups needs an element store");
    std::vector<Subgroup> atoms;
    std::unordered_set<std::string> atom_keys;
    std::vector<char> covered(q->size(), 0);
    for (std::size_t i = 0; i < q->size(); ++i) {
        if (covered[i]) continue;
        Perm g = q->element(i);
        Subgroup c = Subgroup::normal_closure(q, {g});
        // conjugates of g generate the same closure
        for (const auto& h : q->gens) {
            auto j = q->find(perm_conj(g, h));
            if (j >= 0) covered[static_cast<std::size_t>(j)] = 1;
        }
        if (atom_keys.insert(membership_key(c)).second) atoms.push_back(std::move(c));
    }
    std::vector<Subgroup> out{Subgroup::trivial(q)};
    std::unordered_set<std::string> seen{membership_key(out[0])};
    for (std::size_t k = 0; k < out.size(); ++k) {
        for (const auto& a : atoms) {
            if (a.subset_of(out[k])) continue;
            Subgroup m = out[k];
            m.add(a.generators());
            if (seen.insert(membership_key(m)).second) {
                out.push_back(std::move(m));
                if (out.size() > limit) throw ResourceError("all_normal_subgroups: limit exceeded");
            }
        }
    }
    return out;
}

}  // namespace branchlie
