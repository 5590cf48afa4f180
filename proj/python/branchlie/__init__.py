# Copyright 2026 The branchlie Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Lie algebras, series and normal subgroups of branch groups."""

from ._core import (
    alpha,
    count_bn,
    count_bn_table,
    gk_slope,
    gs_r_poly,
    hp_from_q,
    index_of,
    lie_dot,
    lie_ranks,
    lyndon_words,
    parabolic_growth,
    q_poly,
    quotient_order_exp,
    rank_word,
    series_ranks,
    table_fixture,
    witt_dimension,
    word_growth,
    word_of_rank,
    DomainError,
    ResourceError,
)

__all__ = [
    "alpha",
    "count_bn",
    "count_bn_table",
    "gk_slope",
    "gs_r_poly",
    "hp_from_q",
    "index_of",
    "lie_dot",
    "lie_ranks",
    "lyndon_words",
    "parabolic_growth",
    "q_poly",
    "quotient_order_exp",
    "rank_word",
    "series_ranks",
    "table_fixture",
    "witt_dimension",
    "word_growth",
    "word_of_rank",
    "DomainError",
    "ResourceError",
]
