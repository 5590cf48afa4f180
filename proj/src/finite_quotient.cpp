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
#include "branchlie/finite_quotient.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "branchlie/core_words.hpp"
#include "branchlie/errors.hpp"

namespace branchlie {

Perm perm_identity(std::size_t n) {
    Perm r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<std::uint32_t>(i);
    return r;
}

Perm perm_mul(const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
    return r;
}

Perm perm_inv(const Perm& a) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<std::uint32_t>(i);
    return r;
}

Perm perm_pow(const Perm& a, long e) {
    Perm base = e < 0 ? perm_inv(a) : a;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Perm r = perm_identity(a.size());
    while (k) {
        if (k & 1) r = perm_mul(r, base);
        k >>= 1;
        if (k) base = perm_mul(base, base);
    }
    return r;
}

Perm perm_comm(const Perm& a, const Perm& b) {
    return perm_mul(perm_mul(perm_inv(a), perm_inv(b)), perm_mul(a, b));
}

Perm perm_conj(const Perm& a, const Perm& b) { return perm_mul(perm_mul(perm_inv(b), a), b); }

bool perm_is_identity(const Perm& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != i) return false;
    return true;
}

namespace {

std::uint64_t upow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (std::uint64_t{1} << 40)) throw ResourceError("point count overflow");
        r *= b;
    }
    return r;
}

int inv_mod(int l, int p) {
    for (int e = 1; e < p; ++e)
        if ((l * e) % p == 1) return e;
    throw InternalError("label not invertible");
}

constexpr char kMagic[4] = {'B', 'L', 'Q', 'C'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

QuotientPtr FiniteQuotient::build(GroupId id, int level, const QuotientLimits& lim) {
    if (id == GroupId::SylowP) return build(sylow_spec(2, std::max(level, 1)), level, lim);
    return build(spec_for(id), level, lim);
}

QuotientPtr FiniteQuotient::build(SpecPtr spec, int level, const QuotientLimits& lim) {
    if (level < 0) throw DomainError("level must be >= 0");
    auto q = std::make_shared<FiniteQuotient>();
    q->spec = spec;
    q->level = level;
    q->d = spec->d;
    q->p = spec->p;
    std::uint64_t n = upow(spec->d, level);
    if (n > lim.max_points)
        throw ResourceError("level " + std::to_string(level) + " needs " + std::to_string(n) +
                            " points, limit " + std::to_string(lim.max_points));
    q->npoints = static_cast<std::uint32_t>(n);
    if (spec->id == GroupId::SylowP && static_cast<int>(spec->generators.size()) < level)
        spec = sylow_spec(spec->p, level), q->spec = spec;
    auto gp = generator_perms(*spec, level);
    std::size_t ng = spec->generators.size();
    if (spec->id == GroupId::SylowP) ng = std::min<std::size_t>(ng, std::max(level, 1));
    for (std::size_t i = 0; i < ng; ++i) {
        q->gen_names.push_back(spec->generators[i]);
        q->gens.push_back(gp[i]);
        q->gen_letter.push_back(static_cast<int>(q->letters.size()));
        q->letter_names.push_back(spec->generators[i]);
        q->letters.push_back(gp[i]);
        if (spec->orders[i] > 2) {
            const auto& l = spec->letters[spec->letters[spec->gen_letter[i]].inverse];
            q->letter_names.push_back(l.name);
            q->letters.push_back(perm_inv(gp[i]));
        }
    }
    q->init_vertices();
    q->compute_order();
    if (lim.build_store) q->build_store(lim);
    return q;
}

void FiniteQuotient::init_vertices() {
    src_.clear();
    div_.clear();
    for (int j = 0; j < level; ++j) {
        std::uint64_t blk = upow(d, level - j);
        std::uint64_t nv = upow(d, j);
        for (std::uint64_t v = 0; v < nv; ++v) {
            src_.push_back(static_cast<std::uint32_t>(v * blk));
            div_.push_back(static_cast<std::uint32_t>(blk / d));
        }
    }
}

int FiniteQuotient::lead(const Perm& g, int* label) const {
    for (std::size_t k = 0; k < src_.size(); ++k) {
        int l = label_at(g, static_cast<int>(k));
        if (l) {
            if (label) *label = l;
            return static_cast<int>(k);
        }
    }
    if (label) *label = 0;
    return -1;
}

void FiniteQuotient::compute_order() {
    // Temporary non-owning handle; the subgroup does not outlive this call.
    QuotientPtr self(std::shared_ptr<const FiniteQuotient>{}, this);
    Subgroup g(self);
    g.add(gens, gens);
    order_exp_ = g.order_exp();
}

std::uint64_t FiniteQuotient::hash(const std::uint32_t* g) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint32_t i = 0; i < npoints; ++i) {
        h ^= g[i];
        h *= 1099511628211ull;
    }
    return h ^ (h >> 29);
}

void FiniteQuotient::build_store(const QuotientLimits& lim) {
    if (order_exp_ > 40) throw ResourceError("store limit exceeded: order " + std::to_string(p) + "^" + std::to_string(order_exp_));
    std::uint64_t order = upow(p, order_exp_);
    if (order > lim.max_store)
        throw ResourceError("store limit exceeded: order " + std::to_string(order) + " > " +
                            std::to_string(lim.max_store) + " (pcgs order exponent " + std::to_string(order_exp_) + ")");
    if (order > (std::uint64_t{1} << 20) && !lim.allow_large_store)
        throw ResourceError("element store of " + std::to_string(order) + " elements needs the large-store flag");
    std::size_t cap = 16;
    while (cap < 2 * order) cap <<= 1;
    table_.assign(cap, 0);
    store_.reserve(order * npoints);
    wordlen_.reserve(order);
    const std::size_t nl = letters.size();
    rmul_.reserve(order * nl);

    auto insert = [&](const std::uint32_t* g, int len) -> std::uint32_t {
        std::uint64_t h = hash(g) & (cap - 1);
        while (table_[h]) {
            std::uint32_t idx = table_[h] - 1;
            if (std::memcmp(&store_[std::size_t{idx} * npoints], g, npoints * sizeof(std::uint32_t)) == 0) return idx;
            h = (h + 1) & (cap - 1);
        }
        std::uint32_t idx = static_cast<std::uint32_t>(wordlen_.size());
        if (idx >= order) throw InternalError("store overflow: pcgs order disagrees with BFS");
        store_.insert(store_.end(), g, g + npoints);
        wordlen_.push_back(static_cast<std::uint8_t>(std::min(len, 255)));
        table_[h] = idx + 1;
        return idx;
    };

    Perm id = identity();
    insert(id.data(), 0);
    std::vector<std::uint32_t> buf(npoints);
    for (std::size_t i = 0; i < wordlen_.size(); ++i) {
        for (std::size_t l = 0; l < nl; ++l) {
            const std::uint32_t* g = &store_[i * npoints];
            const auto& s = letters[l];
            for (std::uint32_t x = 0; x < npoints; ++x) buf[x] = s[g[x]];
            rmul_.push_back(insert(buf.data(), wordlen_[i] + 1));
        }
    }
    if (wordlen_.size() != order) throw InternalError("BFS size disagrees with pcgs order");
}

Perm FiniteQuotient::element(std::size_t i) const {
    if (i >= size()) throw DomainError("element index out of range");
    return Perm(store_.begin() + i * npoints, store_.begin() + (i + 1) * npoints);
}

std::int64_t FiniteQuotient::find(const Perm& g) const {
    if (!has_store()) throw ResourceError("quotient has no element store");
    std::size_t cap = table_.size();
    std::uint64_t h = hash(g.data()) & (cap - 1);
    while (table_[h]) {
        std::uint32_t idx = table_[h] - 1;
        if (std::memcmp(&store_[std::size_t{idx} * npoints], g.data(), npoints * sizeof(std::uint32_t)) == 0)
            return idx;
        h = (h + 1) & (cap - 1);
    }
    return -1;
}

void FiniteQuotient::save(std::ostream& os) const {
    auto put = [&](std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), sizeof v); };
    os.write(kMagic, 4);
    put(kVersion);
    put(static_cast<std::uint32_t>(spec->id));
    put(static_cast<std::uint32_t>(p));
    put(static_cast<std::uint32_t>(level));
    put(static_cast<std::uint32_t>(order_exp_));
    put(static_cast<std::uint32_t>(gens.size()));
    put(npoints);
    for (const auto& g : gens) os.write(reinterpret_cast<const char*>(g.data()), npoints * sizeof(std::uint32_t));
    if (!os) throw ResourceError("cache write failed");
}

QuotientPtr FiniteQuotient::load(std::istream& is, const QuotientLimits& lim) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0) throw DomainError("not a quotient cache file");
    auto get = [&]() {
        std::uint32_t v = 0;
        is.read(reinterpret_cast<char*>(&v), sizeof v);
        if (!is) throw DomainError("truncated quotient cache");
        return v;
    };
    if (get() != kVersion) throw DomainError("unsupported quotient cache version");
    auto id = static_cast<GroupId>(get());
    int p = static_cast<int>(get());
    int level = static_cast<int>(get());
    int oe = static_cast<int>(get());
    std::uint32_t ng = get();
    std::uint32_t np = get();
    SpecPtr spec = id == GroupId::SylowP ? sylow_spec(p, std::max(level, 1)) : spec_for(id);
    auto q = build(spec, level, lim);
    if (q->order_exp() != oe || q->gens.size() != ng || q->npoints != np)
        throw DomainError("quotient cache header disagrees with the group");
    for (std::uint32_t i = 0; i < ng; ++i) {
        Perm g(np);
        is.read(reinterpret_cast<char*>(g.data()), np * sizeof(std::uint32_t));
        if (!is) throw DomainError("truncated quotient cache");
        if (g != q->gens[i]) throw DomainError("quotient cache generator mismatch");
    }
    return q;
}

// ---------------------------------------------------------------- Subgroup

Subgroup::Subgroup(QuotientPtr q) : q_(std::move(q)) {
    slot_.resize(q_->vertex_count());
    inv_pow_.resize(q_->vertex_count());
}

Subgroup Subgroup::whole(QuotientPtr q) {
    Subgroup s(q);
    s.add(q->gens, q->gens);
    return s;
}

Subgroup Subgroup::generated(QuotientPtr q, const std::vector<Perm>& elts) {
    Subgroup s(std::move(q));
    s.add(elts);
    return s;
}

Subgroup Subgroup::normal_closure(QuotientPtr q, const std::vector<Perm>& elts) {
    Subgroup s(q);
    s.add(elts, q->gens);
    return s;
}

bool Subgroup::sift(Perm& g, int* pos, int* label) const {
    Perm tmp(g.size());
    for (;;) {
        int l = 0;
        int k = q_->lead(g, &l);
        if (k < 0) return false;
        if (slot_[k].empty()) {
            *pos = k;
            *label = l;
            return true;
        }
        const Perm& h = inv_pow_[k][l - 1];
        for (std::size_t i = 0; i < g.size(); ++i) tmp[i] = h[g[i]];
        g.swap(tmp);
    }
}

void Subgroup::insert(int pos, Perm g) {
    int p = q_->p;
    std::vector<Perm> pw;
    Perm hi = perm_inv(g);
    Perm cur = hi;
    for (int l = 1; l < p; ++l) {
        pw.push_back(cur);
        cur = perm_mul(cur, hi);
    }
    slot_[pos] = std::move(g);
    inv_pow_[pos] = std::move(pw);
    ++count_;
}

namespace {
constexpr std::uint64_t kClosureBytes = std::uint64_t{2} << 30;
}  // namespace

void Subgroup::add(const std::vector<Perm>& elts, const std::vector<Perm>& normal_by) {
    std::vector<Perm> queue(elts.rbegin(), elts.rend());
    const int p = q_->p;
    while (!queue.empty()) {
        Perm g = std::move(queue.back());
        queue.pop_back();
        int pos = 0, l = 0;
        if (!sift(g, &pos, &l)) continue;
        int e = inv_mod(l, p);
        if (e != 1) g = perm_pow(g, e);
        queue.push_back(perm_pow(g, p));
        for (const auto& h : slot_)
            if (!h.empty()) queue.push_back(perm_comm(g, h));
        for (const auto& x : normal_by) queue.push_back(perm_conj(g, x));
        insert(pos, std::move(g));
        // slots hold p permutations each
        std::uint64_t perms = queue.size() + static_cast<std::uint64_t>(count_) * static_cast<std::uint64_t>(p);
        if (perms * q_->npoints * 4 > kClosureBytes)
            throw ResourceError("closure working set exceeds " + std::to_string(kClosureBytes >> 30) + " GiB");
    }
}

bool Subgroup::contains(const Perm& g) const {
    Perm h = g;
    int pos = 0, l = 0;
    return !sift(h, &pos, &l);
}

std::vector<Perm> Subgroup::generators() const {
    std::vector<Perm> out;
    for (const auto& h : slot_)
        if (!h.empty()) out.push_back(h);
    return out;
}

std::vector<int> Subgroup::positions() const {
    std::vector<int> out;
    for (std::size_t k = 0; k < slot_.size(); ++k)
        if (!slot_[k].empty()) out.push_back(static_cast<int>(k));
    return out;
}

std::vector<Perm> Subgroup::elements(std::uint64_t limit) const {
    std::uint64_t n = 1;
    for (int i = 0; i < count_; ++i) {
        n *= q_->p;
        if (n > limit) throw ResourceError("subgroup too large to enumerate");
    }
    std::vector<Perm> els{q_->identity()};
    for (auto it = slot_.rbegin(); it != slot_.rend(); ++it) {
        if (it->empty()) continue;
        std::vector<Perm> hp{q_->identity()};
        for (int e = 1; e < q_->p; ++e) hp.push_back(perm_mul(hp.back(), *it));
        std::vector<Perm> next;
        next.reserve(els.size() * hp.size());
        for (const auto& x : hp)
            for (const auto& y : els) next.push_back(perm_mul(x, y));
        els.swap(next);
    }
    return els;
}

bool Subgroup::is_normal() const {
    for (const auto& h : slot_) {
        if (h.empty()) continue;
        for (const auto& x : q_->gens)
            if (!contains(perm_conj(h, x))) return false;
    }
    return true;
}

bool Subgroup::subset_of(const Subgroup& o) const {
    for (const auto& h : slot_)
        if (!h.empty() && !o.contains(h)) return false;
    return true;
}

bool Subgroup::operator==(const Subgroup& o) const { return count_ == o.count_ && subset_of(o); }

std::vector<std::uint64_t> Subgroup::membership() const {
    std::vector<std::uint64_t> bits((q_->size() + 63) / 64, 0);
    for (const auto& g : elements()) {
        auto i = q_->find(g);
        if (i < 0) throw InternalError("subgroup element missing from store");
        bits[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64);
    }
    return bits;
}

Subgroup commutator(const Subgroup& a, const Subgroup& b) {
    auto ga = a.generators();
    auto gb = b.generators();
    std::vector<Perm> cs;
    for (const auto& x : ga)
        for (const auto& y : gb) cs.push_back(perm_comm(x, y));
    std::vector<Perm> by = ga;
    by.insert(by.end(), gb.begin(), gb.end());
    Subgroup r(a.quotient());
    r.add(cs, by);
    return r;
}

Subgroup product(const Subgroup& a, const Subgroup& b) {
    Subgroup r = a;
    r.add(b.generators());
    return r;
}

Subgroup power_p(const Subgroup& h, int p_power_exp) {
    long e = 1;
    for (int i = 0; i < p_power_exp; ++i) e *= h.quotient()->p;
    std::set<Perm> pw;
    for (const auto& g : h.elements()) {
        Perm x = perm_pow(g, e);
        if (!perm_is_identity(x)) pw.insert(std::move(x));
    }
    Subgroup r(h.quotient());
    r.add(std::vector<Perm>(pw.begin(), pw.end()));
    return r;
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
    const Subgroup& small = a.order_exp() <= b.order_exp() ? a : b;
    const Subgroup& big = a.order_exp() <= b.order_exp() ? b : a;
    Subgroup r(a.quotient());
    for (const auto& g : small.elements())
        if (big.contains(g) && !r.contains(g)) r.add({g});
    return r;
}

std::vector<Perm> reference_closure(const std::vector<Perm>& gens, std::size_t limit) {
    if (gens.empty()) return {};
    std::set<Perm> seen{perm_identity(gens[0].size())};
    std::vector<Perm> order(seen.begin(), seen.end());
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (const auto& s : gens) {
            Perm x = perm_mul(order[i], s);
            if (seen.insert(x).second) {
                if (seen.size() > limit) throw ResourceError("reference closure limit exceeded");
                order.push_back(std::move(x));
            }
        }
    }
    return order;
}

// ---------------------------------------------------------------- series

std::string series_name(SeriesKind k) {
    switch (k) {
        case SeriesKind::lower_central: return "lower_central";
        case SeriesKind::frattini_p: return "frattini_p";
        case SeriesKind::dimension_p: return "dimension_p";
        case SeriesKind::dimension_lazard: return "dimension_lazard";
        case SeriesKind::lie_dimension_p: return "lie_dimension_p";
        case SeriesKind::derived: return "derived";
    }
    return "?";
}

SeriesKind parse_series(const std::string& s) {
    for (auto k : {SeriesKind::lower_central, SeriesKind::frattini_p, SeriesKind::dimension_p,
                   SeriesKind::dimension_lazard, SeriesKind::lie_dimension_p, SeriesKind::derived})
        if (series_name(k) == s) return k;
    throw DomainError("unknown series kind: " + s);
}

namespace {

// [H, G] for H normal, with G's generators on the right.
Subgroup comm_with_group(const Subgroup& h) {
    const auto& q = h.quotient();
    std::vector<Perm> cs;
    for (const auto& x : h.generators())
        for (const auto& s : q->gens) cs.push_back(perm_comm(x, s));
    Subgroup r(q);
    r.add(cs, q->gens);
    return r;
}

std::vector<Perm> gen_powers(const Subgroup& h) {
    std::vector<Perm> out;
    for (const auto& x : h.generators()) out.push_back(perm_pow(x, h.quotient()->p));
    return out;
}

std::vector<Subgroup> lower_central_terms(const QuotientPtr& q) {
    std::vector<Subgroup> t{Subgroup::whole(q)};
    while (!t.back().is_trivial()) t.push_back(comm_with_group(t.back()));
    return t;
}

// Product of powers of lower central terms selected by want(i, j).
template <class F>
std::vector<Subgroup> power_product_series(const QuotientPtr& q, int first, F min_j) {
    auto gam = lower_central_terms(q);
    int cls = static_cast<int>(gam.size()) - 1;
    std::map<std::pair<int, int>, Subgroup> cache;
    auto pw = [&](int i, int j) -> const Subgroup& {
        auto key = std::make_pair(i, j);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, j == 0 ? gam[i - 1] : power_p(gam[i - 1], j)).first;
        return it->second;
    };
    std::vector<Subgroup> t{Subgroup::whole(q)};
    for (int n = first;; ++n) {
        Subgroup s(q);
        for (int i = 1; i <= cls; ++i) {
            int j = min_j(i, n);
            if (j < 0) continue;
            if (j > q->order_exp()) continue;
            const auto& h = pw(i, j);
            if (!h.is_trivial()) s.add(h.generators());
        }
        t.push_back(s);
        if (s.is_trivial()) break;
    }
    return t;
}

int smallest_j(long base, int n, int p) {
    if (base <= 0) return -1;
    int j = 0;
    long v = base;
    while (v < n) {
        v *= p;
        ++j;
    }
    return j;
}

}  // namespace

SeriesResult series(const QuotientPtr& q, SeriesKind kind) {
    SeriesResult r;
    r.kind = kind;
    const int p = q->p;
    switch (kind) {
        case SeriesKind::lower_central:
            r.terms = lower_central_terms(q);
            break;
        case SeriesKind::frattini_p: {
            r.terms.push_back(Subgroup::whole(q));
            while (!r.terms.back().is_trivial()) {
                Subgroup s = comm_with_group(r.terms.back());
                s.add(gen_powers(r.terms.back()), q->gens);
                r.terms.push_back(s);
            }
            break;
        }
        case SeriesKind::dimension_p: {
            r.terms.push_back(Subgroup::whole(q));
            for (int n = 2; !r.terms.back().is_trivial(); ++n) {
                Subgroup s = comm_with_group(r.terms.back());
                int m = (n + p - 1) / p;
                s.add(gen_powers(r.terms[m - 1]), q->gens);
                r.terms.push_back(s);
            }
            break;
        }
        case SeriesKind::dimension_lazard:
            r.terms = power_product_series(q, 2, [p](int i, int n) { return smallest_j(i, n, p); });
            break;
        case SeriesKind::lie_dimension_p:
            r.terms = power_product_series(q, 2, [p](int i, int n) { return smallest_j(i - 1, n, p); });
            break;
        case SeriesKind::derived: {
            r.terms.push_back(Subgroup::whole(q));
            while (!r.terms.back().is_trivial()) {
                auto nx = commutator(r.terms.back(), r.terms.back());
                if (nx.order_exp() == r.terms.back().order_exp()) break;  // perfect: cannot happen in p-groups
                r.terms.push_back(nx);
            }
            break;
        }
    }
    r.length = static_cast<int>(r.terms.size()) - 1;
    for (int i = 0; i < r.length; ++i) {
        int diff = r.terms[i].order_exp() - r.terms[i + 1].order_exp();
        if (kind == SeriesKind::lower_central) {
            Subgroup t = r.terms[i + 1];
            t.add(gen_powers(r.terms[i]));
            int rk = r.terms[i].order_exp() - t.order_exp();
            if (rk != diff) {
                r.elementary = false;
                if (q->spec->id != GroupId::SylowP)
                    throw InternalError("lower central section " + std::to_string(i + 1) + " is not elementary abelian");
            }
            r.ranks.push_back(rk);
        } else {
            r.ranks.push_back(diff);
        }
    }
    return r;
}

std::vector<int> augmentation_filtration(const QuotientPtr& q, std::uint64_t max_order) {
    if (!q->has_store()) throw ResourceError("augmentation filtration needs an element store");
    const std::size_t n = q->size();
    if (n > max_order) throw ResourceError("group algebra of dimension " + std::to_string(n) + " exceeds budget");
    const int p = q->p;
    using Vec = std::vector<std::uint8_t>;
    std::vector<int> inv(p, 0);
    for (int x = 1; x < p; ++x) inv[x] = inv_mod(x, p);

    struct Span {
        std::vector<Vec> rows;
        std::vector<int> pivot_row;
    };
    auto reduce_into = [&](Span& s, Vec v) {
        for (std::size_t c = 0; c < n; ++c) {
            if (!v[c]) continue;
            int r = s.pivot_row[c];
            if (r < 0) {
                int f = inv[v[c]];
                for (std::size_t k = c; k < n; ++k) v[k] = static_cast<std::uint8_t>((v[k] * f) % p);
                s.pivot_row[c] = static_cast<int>(s.rows.size());
                s.rows.push_back(std::move(v));
                return;
            }
            const Vec& row = s.rows[r];
            int f = v[c];
            for (std::size_t k = c; k < n; ++k)
                if (row[k]) v[k] = static_cast<std::uint8_t>((v[k] + (p - f) * row[k]) % p);
        }
    };

    std::vector<int> dims{1};
    Span cur{{}, std::vector<int>(n, -1)};
    for (std::size_t i = 1; i < n; ++i) {
        Vec v(n, 0);
        v[i] = 1;
        v[0] = static_cast<std::uint8_t>(p - 1);
        reduce_into(cur, std::move(v));
    }
    while (!cur.rows.empty()) {
        Span nx{{}, std::vector<int>(n, -1)};
        for (const auto& b : cur.rows) {
            for (int gl : q->gen_letter) {
                Vec v(n, 0);
                for (std::size_t i = 0; i < n; ++i) {
                    if (!b[i]) continue;
                    std::size_t j = q->right_mul(i, gl);
                    v[j] = static_cast<std::uint8_t>((v[j] + b[i]) % p);
                    v[i] = static_cast<std::uint8_t>((v[i] + p - b[i]) % p);
                }
                reduce_into(nx, std::move(v));
            }
        }
        dims.push_back(static_cast<int>(cur.rows.size() - nx.rows.size()));
        cur = std::move(nx);
    }
    return dims;
}

std::vector<DerivedGammaRow> derived_vs_gamma_check(const QuotientPtr& q) {
    auto gam = lower_central_terms(q);
    auto der = series(q, SeriesKind::derived).terms;
    auto gamma_at = [&](int m) -> const Subgroup& {
        return m - 1 < static_cast<int>(gam.size()) ? gam[m - 1] : gam.back();
    };
    std::vector<DerivedGammaRow> rows;
    for (int k = 1; k < static_cast<int>(der.size()); ++k) {
        DerivedGammaRow row;
        row.k = k;
        switch (q->spec->id) {
            case GroupId::GuptaSidki:
                row.m = static_cast<int>(alpha(SeqKind::alphaGS, k + 1));
                break;
            case GroupId::FabrykowskiGupta: {
                long t = 1;
                for (int i = 0; i < k - 1; ++i) t *= 3;
                row.m = static_cast<int>(2 + t);
                row.applies = k >= 2;
                break;
            }
            default:
                row.m = 1 << k;
                break;
        }
        const Subgroup& g = gamma_at(row.m);
        row.derived_trivial = der[k].is_trivial();
        row.gamma_trivial = g.is_trivial();
        row.contained = der[k].subset_of(g);
        row.equal = row.contained && der[k].order_exp() == g.order_exp();
        rows.push_back(row);
    }
    return rows;
}

}  // namespace branchlie
