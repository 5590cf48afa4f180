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
#ifndef BRANCHLIE_GRIG_NORMAL_HPP
#define BRANCHLIE_GRIG_NORMAL_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "branchlie/core_words.hpp"
#include "branchlie/finite_quotient.hpp"

namespace branchlie {

// ---------------------------------------------------------------- symbolic model

// X(x) or X(x^2). Degree is #X for X(x) and 2#X for X(x^2).
struct LieSym {
    bool square = false;
    DigitWord word{{}, 2};

    std::int64_t degree() const;
    std::string to_string() const;  // "01(x)", "x2", ...
    friend bool operator<(const LieSym& a, const LieSym& b);
    friend bool operator==(const LieSym& a, const LieSym& b) = default;
};

// GF(2) formal sum of symbols; symbols of degree >= bound are dropped.
struct SymLieElt {
    std::set<LieSym> terms;
    std::int64_t bound = std::numeric_limits<std::int64_t>::max();

    static SymLieElt x(const DigitWord& w, std::int64_t bound);
    static SymLieElt x2(const DigitWord& w, std::int64_t bound);
    void toggle(const LieSym& s);
    SymLieElt& operator+=(const SymLieElt& o);
    bool empty() const { return terms.empty(); }
    std::string to_string() const;
    friend bool operator==(const SymLieElt& a, const SymLieElt& b) { return a.terms == b.terms; }
};

// Linear extension of the commutation table; g in {a, b, c, d}.
SymLieElt commutate(const SymLieElt& e, char g);
// Squaring map: X(x) -> X(x^2), X(x^2) -> X1(x^2) + X11(x).
SymLieElt square(const SymLieElt& e);

// ---------------------------------------------------------------- descriptors

enum class WType { I, II, III };

struct WDescriptor {
    std::optional<DigitWord> A;  // empty optional: suppressed (type III)
    std::vector<DigitWord> B;    // strictly increasing rank
    DigitWord C{{}, 2};
    WType type = WType::I;
    int exponent = -1;  // index 2^exponent, -1 when not yet known

    std::string to_string() const;  // W(01;λ,0;1), II/III appended
    friend bool operator==(const WDescriptor& a, const WDescriptor& b) {
        return a.A == b.A && a.B == b.B && a.C == b.C;
    }
};

// Accepts "W(01;λ,0;1)" with "∞" or "inf" for a suppressed A.
WDescriptor parse_descriptor(const std::string& s);
WType classify(const WDescriptor& w);

struct MsResult {
    DigitWord M{{}, 2};
    DigitWord S{{}, 2};
    bool m_found = false;  // false: M defaulted to C
    bool s_found = false;  // false: S defaulted to C
    std::size_t orbit_size = 0;
};
// Orbit of A(x)+sum B_i(x^2) under commutation; x^2 terms of rank >= #C
// are dropped. Missing M or S default to C.
MsResult ms_functions(const std::optional<DigitWord>& A, const std::vector<DigitWord>& B, const DigitWord& C,
                      std::size_t budget = 200000);
// #A + #S; requires A.
int index_formula(const WDescriptor& w);
// index_formula when A is present, else linear_index.
int index_of(const WDescriptor& w);
// 4 + codimension of the ideal the generators span in the leading-term
// model. Differs from the true index for some descriptors with A present.
int linear_index(const WDescriptor& w);

// Table of small-index subgroups inside K, optional terms expanded.
struct TableRow {
    int exponent;
    WDescriptor w;
};
std::vector<TableRow> table_fixture();
// Count column of the same table, exponents 4..18.
std::vector<int> table_counts();

// ---------------------------------------------------------------- exact engine

// Normal subgroups of Gg/stab(level) layer by layer.
class NormalLattice {
public:
    NormalLattice(int level, int max_exponent);

    int level() const { return level_; }
    int max_exponent() const { return static_cast<int>(layers_.size()) - 1; }
    const QuotientPtr& quotient() const { return q_; }
    const std::vector<Subgroup>& layer(int e) const { return layers_.at(static_cast<std::size_t>(e)); }
    // Index in layer e+1 of each maximal normal subgroup of layer(e)[i].
    const std::vector<int>& children(int e, int i) const { return children_.at(static_cast<std::size_t>(e)).at(static_cast<std::size_t>(i)); }
    const Subgroup& K() const { return k_; }
    bool in_K(const Subgroup& n) const { return n.subset_of(k_); }

private:
    int level_;
    QuotientPtr q_;
    Subgroup k_;
    std::vector<std::vector<Subgroup>> layers_;
    std::vector<std::vector<std::vector<int>>> children_;
};

// Largest n for which every normal subgroup of index 2^n contains stab(level).
int faithful_exponent(int level);
int exact_level_for(int n);

// Symbolic top-down enumeration of ideals inside K; counts[e] for e = 4..E.
std::vector<std::int64_t> symbolic_counts(int max_exponent);

enum class CountSource { exact, symbolic };
struct BnValue {
    std::int64_t value = 0;
    CountSource source = CountSource::exact;
    int level = 0;  // quotient level when exact
};

struct CountOptions {
    int max_exact_level = 7;
};
std::vector<BnValue> count_bn_table(int max_n, const CountOptions& opt = {});
std::int64_t count_bn(int n, const CountOptions& opt = {});

// Subgroups outside K: index exponent -> count (1,7,7,7,4,2 at 0..5).
std::vector<int> non_k_counts();

struct NamedSubgroup {
    std::string name;
    int exponent;
    std::vector<std::string> generators;  // words in a,b,c,d,x with [.,.] and ^
};
// Twelve listed subgroups outside K that are not abelianization lifts.
std::vector<NamedSubgroup> non_k_listed();
// Perm of a word like "[a,d]x^2" or "d^ab" at a level.
Perm gg_word_perm(const QuotientPtr& q, const std::string& word);
// The 16 lifts of subgroups of Gg/[Gg,Gg].
std::vector<Subgroup> abelianization_lifts(const QuotientPtr& q);

struct EnumeratedNormal {
    int exponent;
    bool in_K;
    std::optional<WDescriptor> descriptor;  // when in K and readable
    std::string name;                       // listed name when outside K
    bool realized_matches = false;          // realize(descriptor) == subgroup
};
// Subgroups of index <= 2^E, from the exact engine (E within its range).
std::vector<EnumeratedNormal> enumerate_normal(int max_exponent, bool read_descriptors = true);

// Descriptor read back from a subgroup inside K.
std::optional<WDescriptor> read_descriptor(const Subgroup& n, int max_terms = 4);

struct RealizedDescriptor {
    Subgroup subgroup;
    bool faithful = true;  // index within faithful_exponent(level)
};
RealizedDescriptor realize_descriptor(const WDescriptor& w, const QuotientPtr& q);

struct ExtremeRow {
    int k;
    int n;
    std::int64_t expected;
    std::int64_t got;
    CountSource source;
};
struct ExtremesReport {
    std::vector<ExtremeRow> big;    // n = 2^k + 2
    std::vector<ExtremeRow> small;  // n = 5 2^k + 1
    bool ok() const;
};
ExtremesReport extremes_check(int k_max_big, int k_max_small, const CountOptions& opt = {});

// Hasse diagram of the normal subgroups of index <= 2^E as DOT.
std::string lattice_dot(const NormalLattice& lat, int max_exponent);

// Every normal subgroup of a quotient with a store, by class closure.
std::vector<Subgroup> all_normal_subgroups(const QuotientPtr& q, std::size_t limit = 100000);

}  // namespace branchlie

#endif
