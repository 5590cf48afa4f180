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
#ifndef BRANCHLIE_LIE_GRAPH_HPP
#define BRANCHLIE_LIE_GRAPH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "branchlie/core_words.hpp"

namespace branchlie {

enum class LieFamily {
    sylow,
    grigorchuk,
    grigorchuk_restricted,
    gupta_sidki,
    fabrykowski_gupta,
    fabrykowski_gupta_restricted
};

std::string family_name(LieFamily f);
LieFamily parse_family(const std::string& s);

// plain: Sylow words; special: a, b, d, t, [a,d].
enum class VertexKind { plain, special, x, x2, c, u };

struct LieVertex {
    VertexKind kind = VertexKind::plain;
    DigitWord word;
    std::string special;     // name for special vertices
    std::int64_t degree = 0;
    bool overline = false;   // corrected basis element (FG)
    std::string definition;  // defining product, for overline symbols

    std::string name() const;
};

struct LieEdge {
    int src = 0;
    int dst = 0;
    std::string label;  // generator or comma separated generator set
    int coeff = 1;      // in GF(p); -1 stored as p-1
};

struct LiePEdge {
    int src = 0;
    int dst = 0;
    int coeff = 1;
};

struct LieGraph {
    LieFamily family = LieFamily::grigorchuk;
    int p = 2;
    std::int64_t max_degree = 0;
    int max_word_length = -1;  // Sylow only
    std::vector<LieVertex> vertices;
    std::vector<LieEdge> edges;
    std::vector<LiePEdge> p_edges;

    int find(const std::string& name) const;  // -1 if absent
    std::map<std::string, int> index;
};

// Sylow graphs need a word length bound; p defaults to 2.
LieGraph generate(LieFamily f, std::int64_t max_degree, int sylow_p = 2, int sylow_max_len = 6);

std::vector<std::int64_t> hp_coefficients(const LieGraph& g, std::int64_t max_degree);

// Subgraph the theorems attach to the level-n quotient, plus its rank census.
LieGraph quotient_subgraph(LieFamily f, int n, int sylow_p = 2);
std::vector<std::int64_t> quotient_census(LieFamily f, int n, int sylow_p = 2);

std::string to_dot(const LieGraph& g);
std::string to_json(const LieGraph& g);
std::string to_csv_ranks(const std::vector<std::int64_t>& ranks);

// sigma on {a,b,c,d} and comma separated sets: b->d, c->b, d->c, a->a{bc}a.
std::string sigma(const std::string& label);
std::string sigma_pow(const std::string& label, int n);

// Degree formulas.
std::int64_t deg_gg_x(const DigitWord& x);
std::int64_t deg_gg_x2(const DigitWord& x, bool restricted);
std::int64_t deg_gs_c(const DigitWord& x);
std::int64_t deg_gs_u(const DigitWord& x);
std::int64_t deg_fg_c(const DigitWord& x);
std::int64_t deg_fg_u(const DigitWord& x, bool restricted);
std::int64_t deg_sylow(const DigitWord& x, int p);

}  // namespace branchlie

#endif
