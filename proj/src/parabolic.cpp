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
#include "branchlie/parabolic.hpp"

#include <cmath>
#include <deque>
#include <unordered_set>

#include "json.hpp"

#include "branchlie/errors.hpp"
#include "branchlie/finite_quotient.hpp"
#include "branchlie/lie_graph.hpp"

namespace branchlie {

std::vector<Perm> growth_generators(const SpecPtr& g, int level) {
    auto gens = generator_perms(*g, level);
    std::vector<Perm> out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        out.push_back(gens[i]);
        if (g->orders[i] > 2) out.push_back(perm_inv(gens[i]));
    }
    return out;
}

std::int32_t OrbitGrowth::eccentricity() const {
    std::int32_t m = 0;
    for (auto d : distance) m = std::max(m, d);
    return m;
}

std::vector<std::int64_t> OrbitGrowth::spheres() const {
    std::vector<std::int64_t> s(static_cast<std::size_t>(eccentricity()) + 1, 0);
    for (auto d : distance) ++s[static_cast<std::size_t>(d)];
    return s;
}

Poly OrbitGrowth::growth() const { return Poly::from_ints(spheres()); }

OrbitGrowth orbit_growth(const SpecPtr& g, int level, int ray_letter, std::uint64_t max_points) {
    if (level < 0) throw DomainError("level must be >= 0");
    if (ray_letter < 0) ray_letter = g->d - 1;
    if (ray_letter >= g->d) throw DomainError("ray letter out of range");
    double pts = std::pow(static_cast<double>(g->d), level);
    if (pts > static_cast<double>(max_points)) throw ResourceError("orbit_growth: level exceeds point budget");
    OrbitGrowth r;
    r.group = g->id;
    r.ray_letter = ray_letter;
    r.level = level;
    std::size_t n = static_cast<std::size_t>(pts + 0.5);
    r.distance.assign(n, -1);
    std::uint32_t base = 0;
    for (int i = 0; i < level; ++i) base = base * static_cast<std::uint32_t>(g->d) + static_cast<std::uint32_t>(ray_letter);
    auto gens = level > 0 ? growth_generators(g, level) : std::vector<Perm>{};
    std::deque<std::uint32_t> todo{base};
    r.distance[base] = 0;
    while (!todo.empty()) {
        auto v = todo.front();
        todo.pop_front();
        for (const auto& s : gens) {
            auto w = s[v];
            if (r.distance[w] < 0) {
                r.distance[w] = r.distance[v] + 1;
                todo.push_back(w);
            }
        }
    }
    for (auto d : r.distance)
        if (d < 0) throw InternalError("orbit_growth: level not transitive");
    return r;
}

Poly parabolic_growth(GroupId g, int ray_letter, int level) { return orbit_growth(spec_for(g), level, ray_letter).growth(); }

namespace {

double contraction(GroupId g) {
    switch (g) {
        case GroupId::Grigorchuk:
        case GroupId::GuptaSidki:
        case GroupId::FabrykowskiGupta: return 0.5;
        case GroupId::SylowP: break;
    }
    return 0;
}

}  // namespace

PolyGrowthReport polygrowth_check(const SpecPtr& g, const std::vector<int>& levels) {
    if (levels.size() < 3) throw DomainError("polygrowth_check needs at least 3 levels");
    PolyGrowthReport rep;
    std::int32_t prev = 0;
    for (int L : levels) {
        SpecPtr s = g->id == GroupId::SylowP ? sylow_spec(g->p, L) : g;
        auto o = orbit_growth(s, L);
        PolyGrowthRow row;
        row.level = L;
        row.eccentricity = o.eccentricity();
        double logn = L * std::log(static_cast<double>(g->d));
        row.global = row.eccentricity > 1 ? logn / std::log(static_cast<double>(row.eccentricity)) : 0;
        if (prev > 0 && row.eccentricity > prev)
            row.step = std::log(static_cast<double>(g->d)) / std::log(static_cast<double>(row.eccentricity) / prev);
        prev = row.eccentricity;
        rep.rows.push_back(row);
    }
    auto n = rep.rows.size();
    rep.estimate = rep.rows[n - 1].step;
    rep.stable = rep.rows[n - 2].step > 0 && std::abs(rep.rows[n - 1].step - rep.rows[n - 2].step) <= 0.3;
    double lam = contraction(g->id);
    if (lam > 0) rep.bound = std::log(static_cast<double>(g->d)) / std::log(1 / lam);
    return rep;
}

namespace {

struct PermHash {
    std::size_t operator()(const Perm& p) const {
        std::size_t h = 1469598103934665603ULL;
        for (auto x : p) h = (h ^ x) * 1099511628211ULL;
        return h;
    }
};

std::vector<std::int64_t> spheres_at(const SpecPtr& g, int level, int radius) {
    auto gens = growth_generators(g, level);
    std::unordered_set<Perm, PermHash> seen;
    std::vector<Perm> layer{perm_identity(gens.at(0).size())};
    seen.insert(layer[0]);
    std::vector<std::int64_t> f{1};
    for (int r = 1; r <= radius; ++r) {
        std::vector<Perm> next;
        for (const auto& x : layer)
            for (const auto& s : gens) {
                Perm y = perm_mul(x, s);
                if (seen.insert(y).second) next.push_back(std::move(y));
            }
        if (seen.size() > (std::size_t{1} << 24)) throw ResourceError("word_growth: ball too large");
        f.push_back(static_cast<std::int64_t>(next.size()));
        layer.swap(next);
    }
    return f;
}

}  // namespace

Poly word_growth(GroupId gid, int radius, int max_level) {
    if (radius < 0) throw DomainError("radius must be >= 0");
    if (gid == GroupId::SylowP) throw UnsupportedError("word_growth needs a finitely generated group");
    SpecPtr g = spec_for(gid);
    // elements of length <= 2R are separated well before this level
    int L = 2;
    while ((1 << (L - 2)) < 2 * radius + 2) ++L;
    if (g->d > 2) L = std::max(2, (L + 1) / 2 + 1);
    auto prev = spheres_at(g, L, radius);
    for (int level = L + 1; level <= max_level; ++level) {
        auto cur = spheres_at(g, level, radius);
        if (cur == prev) return Poly::from_ints(cur);
        prev = std::move(cur);
    }
    throw ResourceError("word_growth: sphere sizes still changing at level " + std::to_string(max_level));
}

namespace {

LieFamily lie_family(GroupId g, bool restricted) {
    switch (g) {
        case GroupId::Grigorchuk: return restricted ? LieFamily::grigorchuk_restricted : LieFamily::grigorchuk;
        case GroupId::GuptaSidki: return LieFamily::gupta_sidki;
        case GroupId::FabrykowskiGupta:
            return restricted ? LieFamily::fabrykowski_gupta_restricted : LieFamily::fabrykowski_gupta;
        case GroupId::SylowP: break;
    }
    throw UnsupportedError("growth inequalities need a finitely generated branch group");
}

}  // namespace

GrowthReport growth_inequalities(GroupId gid, int T, int R) {
    if (T < 1 || R < 0) throw DomainError("truncation must be >= 1 and radius >= 0");
    SpecPtr g = spec_for(gid);
    GrowthReport rep;
    rep.group = gid;
    rep.truncation = T;
    rep.word_radius = R;
    rep.lie_ranks = hp_coefficients(generate(lie_family(gid, false), T), T);

    // deepest level within 2^20 points
    int L = 0;
    for (double pts = g->d; pts <= static_cast<double>(std::uint64_t{1} << 20); pts *= g->d) ++L;
    rep.parabolic_level = L;
    auto sph = orbit_growth(g, L).spheres();
    rep.orbit.assign(static_cast<std::size_t>(T) + 1, 0);
    for (std::size_t i = 0; i < rep.orbit.size() && i < sph.size(); ++i) rep.orbit[i] = sph[i];

    // cumulative form: C sum_{k<=n} o_k >= sum_{k<=n} l_k
    std::int64_t po = 0, pl = 0, need = 1;
    for (int n = 0; n <= T; ++n) {
        po += rep.orbit[static_cast<std::size_t>(n)];
        if (n >= 1) pl += rep.lie_ranks[static_cast<std::size_t>(n - 1)];
        if (po == 0) continue;
        need = std::max(need, (pl + po - 1) / po);
    }
    if (need <= (std::int64_t{1} << 16)) rep.C = need;
    if (rep.C < 0) {
        po = pl = 0;
        for (int n = 0; n <= T; ++n) {
            po += rep.orbit[static_cast<std::size_t>(n)];
            if (n >= 1) pl += rep.lie_ranks[static_cast<std::size_t>(n - 1)];
            if ((std::int64_t{1} << 16) * po < pl) {
                rep.first_violation = n;
                break;
            }
        }
    } else {
        for (int n = 1; n <= T; ++n)
            if (rep.C * rep.orbit[static_cast<std::size_t>(n)] < rep.lie_ranks[static_cast<std::size_t>(n - 1)]) {
                rep.raw_first_violation = n;
                break;
            }
    }

    // gr(G)/(1-h) >= gr of the graded group ring, to radius R
    rep.word = word_growth(gid, R).to_ints(static_cast<std::size_t>(R) + 1);
    auto restricted = hp_coefficients(generate(lie_family(gid, true), R + 1), R + 1);
    rep.group_ring = jennings_product(restricted, g->p, static_cast<std::size_t>(R) + 1).to_ints(static_cast<std::size_t>(R) + 1);
    rep.gpgr_holds = true;
    std::int64_t ball = 0;
    for (int n = 0; n <= R; ++n) {
        ball += rep.word[static_cast<std::size_t>(n)];
        if (ball < rep.group_ring[static_cast<std::size_t>(n)]) {
            rep.gpgr_holds = false;
            rep.gpgr_first_violation = n;
            break;
        }
    }
    return rep;
}

std::string growth_report_json(const GrowthReport& r) {
    nlohmann::ordered_json j;
    j["group"] = group_name(r.group);
    j["truncation"] = r.truncation;
    j["parabolic_level"] = r.parabolic_level;
    j["C"] = r.C;
    j["first_violation"] = r.first_violation;
    j["raw_first_violation"] = r.raw_first_violation;
    j["word_radius"] = r.word_radius;
    j["gpgr_holds"] = r.gpgr_holds;
    j["gpgr_first_violation"] = r.gpgr_first_violation;
    j["lie_ranks"] = r.lie_ranks;
    j["orbit_spheres"] = r.orbit;
    j["word_spheres"] = r.word;
    j["group_ring"] = r.group_ring;
    return j.dump(2);
}

}  // namespace branchlie
