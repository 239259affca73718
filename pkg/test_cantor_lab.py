#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Cantor 型和集与盒计数测试
Cantor Lab Tests
"""

import sys
import os
import math
from fractions import Fraction

import pytest

# 添加src目录到Python路径
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from cantor.box_counting import box_count, dimension_estimate
from cantor.cantor_lab import (Stage, StageSpec, cantor_experiment, cover_box_comparison, stage_exponent,
                               stage_radius, stage_ratios, stage_unit, truncated_sum, vertex_stages)
from utils.errors import BudgetExceededError

SCALES = [Fraction(1, 4), Fraction(1, 36), Fraction(1, 576)]


def test_stage_exponent():
    assert stage_exponent(1, 1) == 2
    assert stage_exponent(1, Fraction(2, 3)) == 3
    assert stage_exponent(2, Fraction(1, 2)) == 16
    with pytest.raises(ValueError):
        stage_exponent(1, Fraction(3, 4))
    with pytest.raises(ValueError):
        stage_exponent(1, Fraction(3, 2))


def test_stage_units():
    assert [stage_unit(1, 1, i) for i in (2, 3, 4)] == SCALES


def test_stage_metadata():
    stage = Stage.from_points(2, [Fraction(3, 4), Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)])
    assert stage.size == 3
    assert stage.diameter == Fraction(1, 2)
    assert stage.gap == Fraction(1, 4)
    assert stage.declared_consistent() is None
    with pytest.raises(ValueError):
        Stage.from_points(2, [])


def test_single_point_stage_has_no_gap():
    stage = Stage.from_points(1, [Fraction(1, 3)])
    assert stage.gap is None
    assert stage.diameter == 0


def test_stage_spec_flags_from_sets():
    spec = StageSpec.from_sets([[0, Fraction(1, 2)], [0, Fraction(1, 8)]])
    assert [stage.index for stage in spec.stages] == [1, 2]
    assert spec.geometric_decay
    # d_2 + δ_2 = 1/4 <= δ_1 = 1/2
    assert spec.nested
    assert spec.declared_consistent is None

    spec = StageSpec.from_sets([[0, Fraction(1, 2)], [0, Fraction(1, 2)]])
    assert not spec.geometric_decay
    assert not spec.nested


def test_vertex_stage_flags():
    a_spec, t_spec = vertex_stages(1, 1, 3)
    assert [stage.index for stage in t_spec.stages] == [2, 3, 4]
    assert [stage.size for stage in t_spec.stages] == [3, 8, 15]
    assert [stage.size for stage in a_spec.stages] == [7, 15, 23]
    assert t_spec.geometric_decay and t_spec.nested and t_spec.declared_consistent
    # A_3 的直径 2/3 远大于 A_2 的间距 1/4
    assert not a_spec.nested
    assert a_spec.declared_consistent is False
    assert [stage.declared_consistent() for stage in a_spec.stages] == [True, True, False]


def test_vertex_stages_validation():
    with pytest.raises(ValueError):
        vertex_stages(1, 1, 1)
    with pytest.raises(ValueError):
        vertex_stages(0, 1, 3)
    with pytest.raises(ValueError):
        vertex_stages(1, Fraction(3, 4), 3)


def test_truncated_sums():
    a_spec, t_spec = vertex_stages(1, 1, 3)
    assert len(truncated_sum(t_spec)) == 360
    assert len(truncated_sum(a_spec)) == 1147
    assert len(truncated_sum(t_spec, depth=1)) == 3
    with pytest.raises(ValueError):
        truncated_sum(t_spec, depth=4)
    with pytest.raises(BudgetExceededError):
        truncated_sum(a_spec, point_cap=100)


def test_box_counts_of_truncated_sums():
    a_spec, t_spec = vertex_stages(1, 1, 3)
    t_points = truncated_sum(t_spec).points
    a_points = truncated_sum(a_spec).points
    assert [box_count(t_points, s) for s in SCALES] == [3, 24, 360]
    assert [box_count(a_points, s) for s in SCALES] == [12, 100, 1147]


def test_box_count_never_grows_on_coarser_nested_grids():
    _, t_spec = vertex_stages(1, 1, 3)
    points = truncated_sum(t_spec).points
    divisors = [d for d in range(1, 577) if 576 % d == 0]
    counts = {d: box_count(points, Fraction(1, d)) for d in divisors}
    for fine in divisors:
        for coarse in divisors:
            if fine % coarse == 0:
                assert counts[coarse] <= counts[fine]


def test_cover_box_comparison_on_digit_set():
    rows = cover_box_comparison(2, 1)
    assert rows == [
        {'R': 1, 'cover': 5, 'boxes': 7, 'within_factor_two': True},
        {'R': 4, 'cover': 2, 'boxes': 3, 'within_factor_two': True},
    ]


@pytest.mark.parametrize('p, n', [(3, 1), (4, 1), (2, 2), (3, 2)])
def test_cover_and_box_counts_within_factor_two(p, n):
    rows = cover_box_comparison(p, n)
    assert len(rows) == p
    for row in rows:
        assert row['cover'] <= row['boxes'] <= 2 * row['cover']
        assert row['within_factor_two']


def test_stage_radius():
    a_spec, t_spec = vertex_stages(1, 1, 3)
    for t_stage, a_stage in zip(t_spec.stages, a_spec.stages):
        members = set(a_stage.points)
        for x in t_stage.points:
            rho = stage_radius(1, 1, t_stage.index, [x])
            assert rho > 0
            assert x + rho in members and x - rho in members


def test_stage_radius_rejects_foreign_points():
    with pytest.raises(ValueError):
        stage_radius(1, 1, 3, [Fraction(1, 7)])
    with pytest.raises(ValueError):
        stage_radius(1, 1, 3, [Fraction(1, 36), Fraction(2, 36)])


def test_box_count():
    assert box_count([Fraction(0), Fraction(1, 2), Fraction(1)], 1) == 2
    assert box_count([Fraction(-1, 3), Fraction(1, 3)], Fraction(1, 2)) == 2
    with pytest.raises(ValueError):
        box_count([Fraction(0)], 0)
    with pytest.raises(ValueError):
        box_count([], Fraction(1, 2))


def test_dimension_estimate_of_interval():
    """[0,1) 上的均匀网格维数为 1"""
    points = [Fraction(m, 64) for m in range(64)]
    estimate = dimension_estimate(points, [Fraction(1, 4), Fraction(1, 16), Fraction(1, 64)])
    assert estimate.slope == pytest.approx(1.0)
    assert estimate.csv_rows() == [[1, 4, 4], [1, 16, 16], [1, 64, 64]]
    assert estimate.to_dict()['scales'][0] == {'scale': '1/4', 'count': 4, 'ratio': pytest.approx(1.0)}


def test_dimension_estimate_validation():
    with pytest.raises(ValueError):
        dimension_estimate([Fraction(0)], [Fraction(1, 2)])
    with pytest.raises(ValueError):
        dimension_estimate([Fraction(0)], [Fraction(1, 4), Fraction(1, 2)])
    estimate = dimension_estimate([Fraction(0), Fraction(3)], [2, 1])
    assert estimate.rows[0]['ratio'] is None


def test_stage_ratios():
    _, t_spec = vertex_stages(1, 1, 3)
    rows = stage_ratios(t_spec)
    assert [row['i'] for row in rows] == [2, 3, 4]
    assert rows[0]['box'] == pytest.approx(math.log(3) / math.log(2))
    assert rows[1]['box'] == pytest.approx(math.log(24) / math.log(Fraction(36, 7)))
    assert rows[-1]['hausdorff'] is None


def test_cantor_experiment():
    result = cantor_experiment(1, 1, 3)
    assert result['scales'] == ['1/4', '1/36', '1/576']
    assert result['T']['size'] == 360
    assert result['A']['size'] == 1147
    assert result['T']['target'] == '1/1'
    assert result['A']['target'] == '1/2'
    assert result['T']['estimate'] == pytest.approx(0.9639, abs=1e-3)
    assert result['A']['estimate'] == pytest.approx(0.9159, abs=1e-3)
    assert result['T']['nested'] and not result['A']['nested']


if __name__ == "__main__":
    pytest.main([__file__, '-v'])
