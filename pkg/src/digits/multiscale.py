#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
多尺度数位集合与区间覆盖计数
Multiscale Digit Sets and Interval Covers

A_N = (p!)^{2n} * sum_{i=1}^{p} D_{i,n} / (i!)^{2n}，其中 N = (p!)^{2n}。
"""

import logging
from dataclasses import dataclass
from math import factorial, prod
from typing import Callable, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from digits.digit_set import DigitSet, stage_digit_set, signed_radius
from utils.config import config
from utils.errors import BudgetExceededError

logger = logging.getLogger(__name__)

# 超过此值时 int64 的和集可能溢出
_INT64_SAFE = 2 ** 60


@dataclass(frozen=True)
class MultiScaleSet:
    """多尺度集合 A_N"""
    p: int
    n: int
    N: int
    members: FrozenSet[int]
    stage_sets: Tuple[DigitSet, ...]
    scales: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, value) -> bool:
        return value in self.members

    def sorted_members(self) -> List[int]:
        return sorted(self.members)


def stage_scales(p: int, n: int) -> List[int]:
    """各层的缩放因子 (p!/i!)^{2n}，i = 1..p"""
    return [(factorial(p) // factorial(i)) ** (2 * n) for i in range(1, p + 1)]


def build_multiscale_set(p: int, n: int, point_cap: Optional[int] = None) -> MultiScaleSet:
    """
    构造 A_N

    Args:
        p: 层数，p >= 1
        n: 维数参数，n >= 1
        point_cap: 和集规模上限，默认取配置 point_cap

    Returns:
        MultiScaleSet
    """
    if p < 1 or n < 1:
        raise ValueError(f"参数必须为正整数: p={p}, n={n}")
    if point_cap is None:
        point_cap = config.get('point_cap')

    N = factorial(p) ** (2 * n)
    scales = stage_scales(p, n)
    stages = tuple(stage_digit_set(i, n) for i in range(1, p + 1))
    estimate = prod(len(stage) for stage in stages)
    if estimate > point_cap or 4 * N > _INT64_SAFE:
        raise BudgetExceededError(f"A_N 规模估计 {estimate} 超出上限 {point_cap} (N={N})")

    values = np.zeros(1, dtype=np.int64)
    for stage, scale in zip(stages, scales):
        scaled = np.array(stage.sorted_members(), dtype=np.int64) * scale
        values = np.unique(np.add.outer(values, scaled).ravel())

    members = frozenset(values.tolist())
    logger.debug(f"A_N (p={p}, n={n}, N={N}) 共 {len(members)} 个成员")
    return MultiScaleSet(p, n, N, members, stages, tuple(scales))


def find_radius_multiscale(xs: Sequence[int], p: int, n: int) -> int:
    """
    为 x_1..x_n 找到公共半径 r >= 1，使每个 x_j ± r ∈ A_N

    按缩放因子诱导的混合进制逐层分解：第 i 层数位 c_i = (x // s_i) mod i^{2n}，
    每层求带符号的交错数位半径 r_i，合成 r = |sum r_i s_i|。

    Args:
        xs: n 个整数，每个位于 [1, N-1]
        p: 层数
        n: 维数参数（必须等于 len(xs)）

    Returns:
        正整数半径
    """
    if len(xs) != n:
        raise ValueError(f"输入个数 {len(xs)} 与 n={n} 不一致")
    if p < 1 or n < 1:
        raise ValueError(f"参数必须为正整数: p={p}, n={n}")
    N = factorial(p) ** (2 * n)
    for x in xs:
        if not 1 <= x <= N - 1:
            raise ValueError(f"输入 {x} 超出范围 [1, {N - 1}]")

    r = 0
    for i, scale in zip(range(2, p + 1), stage_scales(p, n)[1:]):
        modulus = i ** (2 * n)
        stage_digits = [(x // scale) % modulus for x in xs]
        r += signed_radius(stage_digits, i) * scale
    return abs(r)


def interval_cover_count(xs: Iterable[int], R: int) -> int:
    """
    用长度为 R 的闭区间 [a, a+R] 覆盖 xs 所需的最少区间数（一维贪心最优）

    Args:
        xs: 非空整数集合
        R: 区间长度，R >= 1

    Returns:
        区间数
    """
    values = sorted(set(xs))
    if not values:
        raise ValueError("区间覆盖的输入不能为空")
    if R < 1:
        raise ValueError(f"区间长度必须为正整数: R={R}")
    count = 1
    start = values[0]
    for v in values:
        if v > start + R:
            count += 1
            start = v
    return count


def cover_profile(p: int, n: int, point_cap: Optional[int] = None,
                  progress_callback: Optional[Callable] = None) -> List[dict]:
    """
    在尺度 R_j = 3^{2n+1} (p!)^{2n} / (j!)^{2n} 上统计 A_N 的区间覆盖数，
    并与包络 C (N/R_j)^{(2n-1)/(2n)} N^{slack} 比较

    Returns:
        每个 j 一行：j, R, count, envelope, in_domain（1 <= R_j <= N）
    """
    constant = config.get('envelope_constant')
    slack = config.get('fit_slack')
    multiscale = build_multiscale_set(p, n, point_cap)
    N = multiscale.N
    exponent = (2 * n - 1) / (2 * n)
    rows = []
    for j, scale in enumerate(multiscale.scales, 1):
        R = 3 ** (2 * n + 1) * scale
        count = interval_cover_count(multiscale.members, R)
        envelope = constant * (N / R) ** exponent * N ** slack
        rows.append({
            'j': j,
            'R': R,
            'count': count,
            'envelope': envelope,
            'in_domain': 1 <= R <= N,
        })
        if progress_callback:
            progress_callback(int(j * 100 / p), f"尺度 R_{j} = {R}: {count} 个区间")
    return rows
