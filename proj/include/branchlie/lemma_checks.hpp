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
#ifndef BRANCHLIE_LEMMA_CHECKS_HPP
#define BRANCHLIE_LEMMA_CHECKS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace branchlie {

// One instance of a commutation-table row in Gg/stab(level).
// N is the normal closure of the left operand.
struct CommRowCheck {
    std::string row;       // "[0X,b] = 0[X,a]"
    std::string instance;  // the X used, "λ" for the fixed rows
    bool strict = false;   // lhs * rhs^-1 in [N,G]'
    bool frattini = false; // lhs * rhs^-1 in [N,G]'[N,G]^2
    bool weak = false;     // lhs * rhs^-1 in [N,G,G]
    bool trivial_lhs = false;
};
std::vector<CommRowCheck> check_comm_table(int level = 5);

// [X(u),Y(v)] against (X+Y-p')([u,v])^e modulo [[X(u),Y(v)],G] in the
// Sylow quotient.
struct PoissonCheck {
    int p = 2;
    int level = 3;
    std::string X, Y;
    std::string u, v;  // letter words
    long exponent = 0;
    bool holds = false;
};
std::vector<PoissonCheck> check_poisson(int p, int level, int trials, std::uint64_t seed = 1);

}  // namespace branchlie

#endif
