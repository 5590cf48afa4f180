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
#ifndef BRANCHLIE_TREE_GROUP_HPP
#define BRANCHLIE_TREE_GROUP_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "branchlie/core_words.hpp"

namespace branchlie {

enum class GroupId { Grigorchuk, GuptaSidki, FabrykowskiGupta, SylowP };

std::string group_name(GroupId id);
// Accepts gg/grigorchuk, gs/gupta_sidki, fg/fabrykowski_gupta.
GroupId parse_group(std::string_view s);

using Perm = std::vector<std::uint32_t>;

// One letter of the generating alphabet; inverses are letters too
// (involutions are their own inverse letter).
struct Letter {
    std::string name;
    int generator = 0;   // index into GroupSpec::generators
    int exponent = 1;    // +1 or -1
    int inverse = 0;     // letter index of the inverse
    std::vector<int> root;                   // image of child i
    std::vector<std::vector<int>> sections;  // letter words
};

struct GroupSpec {
    GroupId id = GroupId::Grigorchuk;
    int d = 2;
    int p = 2;
    std::vector<std::string> generators;
    std::vector<int> orders;
    std::vector<Letter> letters;
    // generator index -> letter index of the generator itself
    std::vector<int> gen_letter;

    int letter_index(std::string_view name) const;  // -1 if absent
};

using SpecPtr = std::shared_ptr<const GroupSpec>;

SpecPtr grigorchuk_spec();
SpecPtr gupta_sidki_spec();
SpecPtr fabrykowski_gupta_spec();
// x_0 .. x_{n_gens-1}, x_{k+1} = <x_k, 1, ..., 1>
SpecPtr sylow_spec(int p, int n_gens);
SpecPtr spec_for(GroupId id);

class Element;

// The node kinds an Element can be: a letter word, a recursive
// definition (root permutation plus sections), or a product of factors.
struct ElementNode;

class Element {
public:
    Element() = default;
    static Element identity(SpecPtr g);
    static Element word(SpecPtr g, std::vector<int> letters);
    static Element recursive(SpecPtr g, std::vector<int> root, std::vector<Element> sections);
    // Parses letters like "abab" / "aTat"; capitals are inverses.
    static Element parse(SpecPtr g, std::string_view text);

    const SpecPtr& spec() const { return spec_; }
    bool is_word() const;
    // Reduced letter word; only for word elements.
    const std::vector<int>& letters() const;
    std::string to_string() const;

    // Word length when known; recursive elements report their nesting.
    std::size_t complexity() const;

    const ElementNode* node() const { return node_.get(); }

private:
    SpecPtr spec_;
    std::shared_ptr<const ElementNode> node_;
    friend struct ElementNode;
    friend Element compose(const Element&, const Element&);
    friend Element invert(const Element&);
};

struct Decomposition {
    std::vector<Element> sections;
    std::vector<int> root;
};

Decomposition decompose(const Element& e);
std::vector<int> act(const Element& e, const std::vector<int>& vertex);

// Apply e1 then e2.
Element compose(const Element& e1, const Element& e2);
Element invert(const Element& e);
Element power(const Element& e, long k);
Element commutator(const Element& g, const Element& h);  // g^-1 h^-1 g h
Element conjugate(const Element& g, const Element& h);   // h^-1 g h

enum class Tri { False, True, Undecided };

// Default depth bound is complexity + 10.
Tri is_trivial(const Element& e, int depth_bound = -1);

enum class Symbol { x, x2, c, u };

// Base symbol element: x=[a,b], x^2 for Gg; c=[a,t], u=[a,c] otherwise.
Element base_symbol(SpecPtr g, Symbol s);
// X(sym): digit e puts g^{(-1)^k binom(e,k)} in child k for k <= e.
Element derived_element(SpecPtr g, Symbol s, const DigitWord& x);
// X(g) for an arbitrary element.
Element derived_of(const Element& g, const DigitWord& x);
// Element acting as g below the last child only.
Element omega_of(const Element& g);

// Permutation of the d^n leaves (first letter most significant).
Perm perm_at(const Element& e, int level);
// Generator permutations at a level, in spec generator order.
std::vector<Perm> generator_perms(const GroupSpec& g, int level);

// Depth-truncated branch portrait. Vertices of Sigma^{<depth} in BFS
// order; label 0 is the root label t*u, the others index into U.
struct Portrait {
    int depth = 0;
    int root_t = 0;                  // index into transversal T of K
    std::vector<int> labels;         // U-indices, BFS order over Sigma^{<depth}
    friend bool operator==(const Portrait&, const Portrait&) = default;
};

Portrait portrait(const Element& e, int depth);

}  // namespace branchlie

#endif
