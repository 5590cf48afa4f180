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
#ifndef BRANCHLIE_PARABOLIC_HPP
#define BRANCHLIE_PARABOLIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "branchlie/series_lab.hpp"
#include "branchlie/tree_group.hpp"

namespace branchlie {

// Generating sets: {a,b,c,d} for Gg, {a,A,t,T} for the ternary groups,
// x_k and inverses for Sylow groups.
std::vector<Perm> growth_generators(const SpecPtr& g, int level);

struct OrbitGrowth {
    GroupId group = GroupId::Grigorchuk;
    int ray_letter = 0;
    int level = 0;
    // distance[v] for every leaf v (first letter most significant)
    std::vector<std::int32_t> distance;

    std::int32_t eccentricity() const;
    // sphere sizes by radius
    std::vector<std::int64_t> spheres() const;
    Poly growth() const;
};

// ray_letter < 0 picks d-1, the last letter.
OrbitGrowth orbit_growth(const SpecPtr& g, int level, int ray_letter = -1, std::uint64_t max_points = std::uint64_t{1} << 22);
Poly parabolic_growth(GroupId g, int ray_letter, int level);

struct PolyGrowthRow {
    int level = 0;
    std::int32_t eccentricity = 0;
    double global = 0;  // log(#points) / log(eccentricity)
    double step = 0;    // log d / log(ecc_n / ecc_{n-1}); 0 on the first row
};
struct PolyGrowthReport {
    std::vector<PolyGrowthRow> rows;
    double estimate = 0;  // last step estimate
    bool stable = false;  // last two step estimates within 0.3
    double bound = 0;     // log_{1/lambda}(d) from the contraction constant, 0 if unknown
};
PolyGrowthReport polygrowth_check(const SpecPtr& g, const std::vector<int>& levels);

// Sphere sizes f_0..f_R of the Cayley graph. Elements are compared by
// their action on a level that is deepened until two consecutive levels
// agree.
Poly word_growth(GroupId g, int radius, int max_level = 14);

struct GrowthReport {
    GroupId group = GroupId::Grigorchuk;
    int truncation = 0;
    int parabolic_level = 0;
    std::int64_t C = -1;  // minimal witness, -1 if none <= 2^16
    long first_violation = -1;
    // first degree where C gr(G/P) >= gr Lie(G) fails without partial sums
    long raw_first_violation = -1;
    int word_radius = 0;
    bool gpgr_holds = false;
    long gpgr_first_violation = -1;
    std::vector<std::int64_t> lie_ranks;   // degrees 1..T
    std::vector<std::int64_t> orbit;       // sphere sizes 0..T
    std::vector<std::int64_t> word;        // f_0..f_R
    std::vector<std::int64_t> group_ring;  // graded group ring dims 0..R
};
GrowthReport growth_inequalities(GroupId g, int truncation, int word_radius);

std::string growth_report_json(const GrowthReport& r);

}  // namespace branchlie

#endif
