#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
双对数斜率拟合
Log-Log Slope Fitting
"""

import math
from fractions import Fraction
from typing import Sequence, Tuple, Union

import numpy as np


def exact_log(value: Union[int, Fraction]) -> float:
    """有理数的自然对数；分子分母分别取对数，极小的值也不会下溢"""
    value = Fraction(value)
    if value <= 0:
        raise ValueError(f"对数的参数必须为正数: {value}")
    return math.log(value.numerator) - math.log(value.denominator)


def linear_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """ys 对 xs 的最小二乘斜率"""
    if len(xs) != len(ys):
        raise ValueError(f"横纵坐标个数不一致: {len(xs)} != {len(ys)}")
    if len(set(xs)) < 2:
        raise ValueError("至少需要两个不同的横坐标")
    slope, _ = np.polyfit(np.asarray(xs, dtype=float), np.asarray(ys, dtype=float), 1)
    return float(slope)


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """
    log(ys) 对 log(xs) 的最小二乘斜率

    Args:
        xs: 正数横坐标
        ys: 正数纵坐标

    Returns:
        斜率
    """
    if any(v <= 0 for v in xs) or any(v <= 0 for v in ys):
        raise ValueError("双对数拟合要求所有数据为正数")
    if len(set(xs)) < 2:
        raise ValueError("至少需要两个不同的横坐标")
    return linear_slope([math.log(v) for v in xs], [math.log(v) for v in ys])


def fit_exponent(pairs: Sequence[Tuple[int, int]]) -> float:
    """(|S|, |B|) 数据的经验指数：log|B| 对 log|S| 的斜率"""
    if len(pairs) < 2:
        raise ValueError("至少需要两组数据")
    return loglog_slope([s for s, _ in pairs], [b for _, b in pairs])
