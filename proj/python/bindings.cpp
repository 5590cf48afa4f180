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
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "branchlie/core_words.hpp"
#include "branchlie/errors.hpp"
#include "branchlie/finite_quotient.hpp"
#include "branchlie/grig_normal.hpp"
#include "branchlie/lie_graph.hpp"
#include "branchlie/parabolic.hpp"
#include "branchlie/series_lab.hpp"

namespace py = pybind11;
using namespace branchlie;

namespace {

py::int_ to_py(const BigInt& v) { return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(v.str().c_str(), nullptr, 10))); }

py::list coeffs(const Poly& p, long n) {
    if (n < 0) n = std::max<long>(p.degree() + 1, 0);
    py::list out;
    for (long i = 0; i < n; ++i) out.append(to_py(p[static_cast<std::size_t>(i)]));
    return out;
}

SeqKind seq_kind(const std::string& s) {
    if (s == "alphaGS") return SeqKind::alphaGS;
    if (s == "betaGS") return SeqKind::betaGS;
    if (s == "alphaFG") return SeqKind::alphaFG;
    throw DomainError("unknown sequence: " + s);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "branchlie bindings";
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);

    m.def("alpha", [](const std::string& kind, int n) { return alpha(seq_kind(kind), n); }, py::arg("kind"),
          py::arg("n"));
    m.def("rank_word", [](const std::string& w) { return rank_word(parse_word(w, 2)); });
    m.def("word_of_rank", [](std::int64_t r) { return to_string(word_of_rank(r)); });

    m.def("q_poly", [](const std::string& g, int n) { return coeffs(q_poly(parse_group(g), n), -1); });
    m.def("hp_from_q", [](const std::string& g, int n) { return coeffs(hp_from_q(parse_group(g), n), -1); });
    m.def("gs_r_poly", [](int n) { return coeffs(gs_r_poly(n), -1); });
    m.def("witt_dimension", [](int r, int n) { return to_py(witt_dimension(r, n)); });
    m.def("lyndon_words", &lyndon_words);
    m.def("gk_slope", [](const std::vector<std::int64_t>& ranks) { return gk_estimate(ranks).slope; },
          "Least-squares slope of log partial sums against log degree.");

    m.def("lie_ranks", [](const std::string& family, std::int64_t max_degree) {
        return hp_coefficients(generate(parse_family(family), max_degree), max_degree);
    }, py::arg("family"), py::arg("max_degree"));
    m.def("lie_dot", [](const std::string& family, std::int64_t max_degree) {
        return to_dot(generate(parse_family(family), max_degree));
    });

    m.def("quotient_order_exp", [](const std::string& g, int level) {
        QuotientLimits lim;
        lim.build_store = false;
        return FiniteQuotient::build(parse_group(g), level, lim)->order_exp();
    });
    m.def("series_ranks", [](const std::string& g, int level, const std::string& kind) {
        QuotientLimits lim;
        lim.build_store = false;
        auto q = FiniteQuotient::build(parse_group(g), level, lim);
        return series(q, parse_series(kind)).ranks;
    }, py::arg("group"), py::arg("level"), py::arg("kind") = "lower_central");

    m.def("count_bn", [](int n) { return count_bn(n); });
    m.def("count_bn_table", [](int max_n) {
        std::vector<std::int64_t> v;
        for (auto& b : count_bn_table(max_n)) v.push_back(b.value);
        return v;
    });
    m.def("index_of", [](const std::string& w) { return index_of(parse_descriptor(w)); });
    m.def("table_fixture", [] {
        std::vector<std::pair<int, std::string>> out;
        for (auto& r : table_fixture()) out.emplace_back(r.exponent, r.w.to_string());
        return out;
    });

    m.def("parabolic_growth", [](const std::string& g, int level) {
        return coeffs(parabolic_growth(parse_group(g), -1, level), -1);
    });
    m.def("word_growth", [](const std::string& g, int radius) {
        return coeffs(word_growth(parse_group(g), radius), radius + 1);
    });
}
