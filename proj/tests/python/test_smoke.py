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

import pytest

import branchlie as bl


def test_sequences():
    assert bl.alpha("alphaGS", 5) == 29
    assert bl.rank_word("10") == 6
    assert bl.word_of_rank(3) == "0"
    with pytest.raises(ValueError):
        bl.alpha("nope", 3)


def test_series():
    assert bl.q_poly("gs", 3) == [0, 1, 1, 2, 1, 1]
    assert bl.hp_from_q("gs", 2) == [0, 2, 1]
    assert bl.gs_r_poly(6) == bl.q_poly("gs", 6)
    assert [bl.witt_dimension(2, n) for n in range(1, 6)] == [2, 1, 2, 3, 6]
    assert len(bl.lyndon_words(3, 4)) == bl.witt_dimension(3, 4)


def test_lie_graph():
    row = bl.lie_ranks("gupta_sidki", 21)
    assert row == [2, 1, 2, 1, 2, 2, 2, 2, 1, 2, 2, 2, 3, 2, 4, 2, 3, 2, 2, 2, 1]
    assert "digraph" in bl.lie_dot("grigorchuk", 4)
    # constant-width ranks give slope 1
    assert abs(bl.gk_slope([2] * 400) - 1.0) < 0.05


def test_quotients():
    assert bl.quotient_order_exp("gg", 3) == 7
    assert sum(bl.series_ranks("gg", 4)) == bl.quotient_order_exp("gg", 4)
    assert len(bl.series_ranks("fg", 3)) == 8


def test_normal_subgroups():
    assert bl.count_bn_table(11) == [1, 7, 7, 7, 5, 3, 3, 3, 5, 5, 7, 5]
    assert bl.index_of("W(01;;0)") == 10
    rows = bl.table_fixture()
    assert len(rows) == 109
    assert all(r[0] >= 4 for r in rows)


def test_growth():
    g = bl.parabolic_growth("gg", 4)
    assert sum(g) == 16
    assert bl.word_growth("gg", 3)[:3] == [1, 4, 6]
