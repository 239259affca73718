#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
指数代数与斜率拟合测试
Exponent Tests
"""

import sys
import os
import math
from fractions import Fraction

import pytest

# 添加src目录到Python路径
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from exponents.exponent_algebra import (EXPONENT_TABLE_HEADER, beta, box_exponent, exponent_table, f_alpha,
                                        iterate_f, nl_exponent, orthoplex_exponent, packing_exponent, r_alpha,
                                        vertex_lower_bound)
from exponents.slope_fit import exact_log, fit_exponent, linear_slope, loglog_slope


def test_beta_values():
    assert beta(1, 0) == Fraction(1, 2)
    assert beta(2, 0) == Fraction(3, 4)
    assert beta(2, 1) == Fraction(7, 8)
    assert beta(3, 2) == Fraction(17, 18)
    with pytest.raises(ValueError):
        beta(2, 2)


def test_beta_is_fixed_point():
    for n in range(1, 7):
        for k in range(n):
            assert f_alpha(n, k, beta(n, k)) == beta(n, k)


def test_one_is_fixed_point_for_positive_order():
    for n in range(2, 7):
        for k in range(1, n):
            assert f_alpha(n, k, 1) == 1


def test_f_is_monotone_on_rational_grid():
    for n in range(1, 7):
        for k in range(n):
            grid = [beta(n, k) * Fraction(j, 24) for j in range(25)]
            values = [f_alpha(n, k, alpha) for alpha in grid]
            assert all(a <= b for a, b in zip(values, values[1:]))


def test_beta_matches_projection_identity():
    for n in range(1, 9):
        for k in range(n):
            assert beta(n, k) == Fraction(k, n) + Fraction((n - k) * (2 * n - 1), 2 * n * n)


def test_k_zero_map_is_constant():
    assert f_alpha(2, 0, 0) == f_alpha(2, 0, Fraction(1, 3)) == Fraction(3, 4)


def test_r_alpha_rejects_singular_point():
    with pytest.raises(ValueError):
        r_alpha(2, 0, 1)
    with pytest.raises(ValueError):
        r_alpha(2, 1, Fraction(3, 2))
    assert r_alpha(2, 1, 1) == Fraction(5, 8)


def test_side_exponents():
    assert nl_exponent(2, 2) == orthoplex_exponent(2) == Fraction(3, 4)
    assert nl_exponent(2, 1) == Fraction(3, 8)
    assert packing_exponent(2, 0, 1) == Fraction(3, 4)
    assert box_exponent(2, 1, Fraction(1, 2)) == 1
    assert box_exponent(2, 0, 1) == Fraction(3, 4)
    with pytest.raises(ValueError):
        nl_exponent(2, 0)


def test_vertex_lower_bound():
    assert vertex_lower_bound(1, 4) == pytest.approx(2.0)
    assert vertex_lower_bound(2, 16) == pytest.approx(4.0)


def test_iterate_k_zero_converges_immediately():
    report = iterate_f(2, 0)
    assert report.converged
    assert report.converged_at == 1
    assert report.trace == [Fraction(0), Fraction(3, 4)]


def test_iterate_increases_to_beta():
    report = iterate_f(2, 1, tolerance=1e-9)
    assert report.converged
    assert len(report.trace) == report.converged_at + 1
    assert all(a < b for a, b in zip(report.trace, report.trace[1:]))
    assert abs(report.trace[-1] - Fraction(7, 8)) < Fraction(1e-9)
    assert abs(report.trace[-2] - Fraction(7, 8)) >= Fraction(1e-9)


def test_iterate_converges_for_every_order():
    for n in range(1, 7):
        for k in range(n):
            report = iterate_f(n, k, tolerance=1e-9, max_steps=10000)
            assert report.converged, (n, k)
            assert abs(report.trace[-1] - beta(n, k)) < Fraction(1e-9)
            if k == 0:
                assert report.converged_at == 1


def test_iterate_reports_non_convergence():
    report = iterate_f(2, 1, tolerance=1e-9, max_steps=3)
    assert not report.converged
    assert report.converged_at is None
    assert len(report.trace) == 4
    payload = report.to_dict()
    assert payload['converged'] is False
    assert payload['beta'] == '7/8'
    assert payload['trace'][0] == '0/1'


def test_iterate_rejects_bad_tolerance():
    with pytest.raises(ValueError):
        iterate_f(2, 1, tolerance=0)


def test_exponent_table():
    rows = exponent_table(3)
    assert EXPONENT_TABLE_HEADER == ['n', 'k', 'beta_num', 'beta_den', 'converged_at']
    assert len(rows) == 6
    assert rows[0] == [1, 0, 1, 2, 1]
    assert [row[:4] for row in rows if row[0] == 2] == [[2, 0, 3, 4], [2, 1, 7, 8]]


def test_exact_log_handles_tiny_values():
    assert exact_log(Fraction(1, 10 ** 400)) == pytest.approx(-400 * math.log(10))
    assert exact_log(8) == pytest.approx(math.log(8))
    with pytest.raises(ValueError):
        exact_log(0)


def test_linear_slope():
    assert linear_slope([0, 1, 2], [1, 3, 5]) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        linear_slope([1, 1], [2, 3])
    with pytest.raises(ValueError):
        linear_slope([1, 2], [2])


def test_loglog_slope():
    assert loglog_slope([1, 10, 100], [3, 30, 300]) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        loglog_slope([0, 1], [1, 2])


def test_fit_exponent_on_power_law():
    pairs = [(16, 8), (256, 64), (4096, 512)]
    assert fit_exponent(pairs) == pytest.approx(0.75)
    pairs = [(s, s ** 0.75) for s in (10, 100, 1000)]
    assert fit_exponent(pairs) == pytest.approx(0.75, abs=0.02)
    with pytest.raises(ValueError):
        fit_exponent([(10, 5)])


if __name__ == "__main__":
    pytest.main([__file__, '-v'])
