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
#ifndef BRANCHLIE_FINITE_QUOTIENT_HPP
#define BRANCHLIE_FINITE_QUOTIENT_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "branchlie/tree_group.hpp"

namespace branchlie {

// Permutation helpers; mul(a, b) applies a then b.
Perm perm_identity(std::size_t n);
Perm perm_mul(const Perm& a, const Perm& b);
Perm perm_inv(const Perm& a);
Perm perm_pow(const Perm& a, long e);
Perm perm_comm(const Perm& a, const Perm& b);  // a^-1 b^-1 a b
Perm perm_conj(const Perm& a, const Perm& b);  // b^-1 a b
bool perm_is_identity(const Perm& a);

struct QuotientLimits {
    std::uint64_t max_points = std::uint64_t{1} << 20;  // 4^10
    std::uint64_t max_store = std::uint64_t{1} << 22;
    bool build_store = true;
    // Gg level 5 has 2^22 elements; storing it needs explicit consent.
    bool allow_large_store = false;
};

class FiniteQuotient;
using QuotientPtr = std::shared_ptr<const FiniteQuotient>;

class FiniteQuotient {
public:
    static QuotientPtr build(SpecPtr spec, int level, const QuotientLimits& lim = {});
    static QuotientPtr build(GroupId id, int level, const QuotientLimits& lim = {});

    SpecPtr spec;
    int level = 0;
    int d = 2;
    int p = 2;
    std::uint32_t npoints = 1;
    // Spec generators (Sylow: x_0 .. x_{level-1}).
    std::vector<std::string> gen_names;
    std::vector<Perm> gens;
    // Letters driving the BFS (generators, then inverses where distinct).
    std::vector<std::string> letter_names;
    std::vector<Perm> letters;
    std::vector<int> gen_letter;  // generator index -> letter index

    Perm identity() const { return perm_identity(npoints); }

    // Sifting positions: vertices of levels 0..level-1 in BFS order.
    std::size_t vertex_count() const { return src_.size(); }
    // First position with a nonzero label; -1 for the identity.
    int lead(const Perm& g, int* label) const;
    int label_at(const Perm& g, int k) const {
        return static_cast<int>((g[src_[k]] / div_[k]) % static_cast<std::uint32_t>(d));
    }

    // log_p of the group order.
    int order_exp() const { return order_exp_; }

    bool has_store() const { return !store_.empty(); }
    std::size_t size() const { return store_.size() / npoints; }
    Perm element(std::size_t i) const;
    int word_length(std::size_t i) const { return wordlen_[i]; }
    // Index of g in the store or -1.
    std::int64_t find(const Perm& g) const;
    // Index of element(i) * letters[l].
    std::uint32_t right_mul(std::size_t i, int l) const { return rmul_[i * letters.size() + l]; }

    // Versioned binary cache: magic, version, group, p, level, order, generators.
    void save(std::ostream& os) const;
    static QuotientPtr load(std::istream& is, const QuotientLimits& lim = {});

private:
    void init_vertices();
    void compute_order();
    void build_store(const QuotientLimits& lim);
    std::uint64_t hash(const std::uint32_t* g) const;

    std::vector<std::uint32_t> src_, div_;
    int order_exp_ = 0;
    std::vector<std::uint32_t> store_;
    std::vector<std::uint8_t> wordlen_;
    std::vector<std::uint32_t> rmul_;
    std::vector<std::uint32_t> table_;  // open addressing, index + 1
};

// Subgroup held as a polycyclic sifting chain: slot k has lead k with label 1.
class Subgroup {
public:
    Subgroup() = default;
    explicit Subgroup(QuotientPtr q);
    static Subgroup whole(QuotientPtr q);
    static Subgroup trivial(QuotientPtr q) { return Subgroup(std::move(q)); }
    static Subgroup generated(QuotientPtr q, const std::vector<Perm>& elts);
    static Subgroup normal_closure(QuotientPtr q, const std::vector<Perm>& elts);

    // Adds elements and closes up; conjugates by normal_by are added too.
    void add(const std::vector<Perm>& elts, const std::vector<Perm>& normal_by = {});

    const QuotientPtr& quotient() const { return q_; }
    bool contains(const Perm& g) const;
    int order_exp() const { return count_; }
    bool is_trivial() const { return count_ == 0; }
    std::vector<Perm> generators() const;
    std::vector<int> positions() const;
    // All p^order_exp elements; throws ResourceError past limit.
    std::vector<Perm> elements(std::uint64_t limit = std::uint64_t{1} << 22) const;
    bool is_normal() const;
    bool subset_of(const Subgroup& o) const;
    bool operator==(const Subgroup& o) const;
    // Bitset over store indices.
    std::vector<std::uint64_t> membership() const;

private:
    // Residual of g after division by slots; empty when g sifts through.
    bool sift(Perm& g, int* pos, int* label) const;
    void insert(int pos, Perm g);

    QuotientPtr q_;
    std::vector<Perm> slot_;                  // empty = unused
    std::vector<std::vector<Perm>> inv_pow_;  // slot^-l, l = 1..p-1
    int count_ = 0;
};

enum class SubgroupOp { normal_closure, commutator, product, power_p, intersection };
Subgroup commutator(const Subgroup& a, const Subgroup& b);
Subgroup product(const Subgroup& a, const Subgroup& b);
// <h^p : h in H>, by element enumeration.
Subgroup power_p(const Subgroup& h, int p_power_exp = 1);
Subgroup intersection(const Subgroup& a, const Subgroup& b);

// Plain closure by multiplying out; for differential tests only.
std::vector<Perm> reference_closure(const std::vector<Perm>& gens, std::size_t limit);

enum class SeriesKind { lower_central, frattini_p, dimension_p, dimension_lazard, lie_dimension_p, derived };
std::string series_name(SeriesKind k);
SeriesKind parse_series(const std::string& s);

struct SeriesResult {
    SeriesKind kind = SeriesKind::lower_central;
    std::vector<Subgroup> terms;  // terms[0] is the whole group, last is trivial
    std::vector<int> ranks;       // ranks[i] belongs to degree i+1
    int length = 0;               // class / last nontrivial index
    bool elementary = true;       // every section has exponent p
};

SeriesResult series(const QuotientPtr& q, SeriesKind kind);

// dim of w^n / w^{n+1}, n = 0, 1, ... until w^n = 0.
std::vector<int> augmentation_filtration(const QuotientPtr& q, std::uint64_t max_order = std::uint64_t{1} << 13);

struct DerivedGammaRow {
    int k = 0;
    int m = 0;
    bool derived_trivial = false;
    bool gamma_trivial = false;
    bool contained = false;
    bool equal = false;
    bool applies = true;  // k inside the range the bound is claimed for
};
std::vector<DerivedGammaRow> derived_vs_gamma_check(const QuotientPtr& q);

}  // namespace branchlie

#endif
