#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
数位展开集合 D_{i,n}
Digit Expansion Sets

D_{i,n} = { sum_{j<2n} a_j i^j : a_j ∈ [2(1-i), 2(i-1)]，且至少一个 a_j = 0 }

对任意 x_1..x_n ∈ [1, i^{2n}-1]，存在同一个 r > 0 使所有 x_j ± r ∈ D_{i,n}。
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DigitSet:
    """数位集合 D_{i,n}（按数值去重）"""
    base: int
    n: int
    members: FrozenSet[int]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, value) -> bool:
        return value in self.members

    def sorted_members(self) -> List[int]:
        return sorted(self.members)

    @property
    def hull(self) -> Tuple[int, int]:
        """成员的 (最小值, 最大值)"""
        return min(self.members), max(self.members)

    @property
    def top(self) -> int:
        """输入区间上端 i^{2n} - 1"""
        return self.base ** (2 * self.n) - 1


def digit_string_count(i: int, n: int) -> int:
    """至少含一个零数位的数位串个数 (4i-3)^{2n} - (4i-4)^{2n}"""
    return (4 * i - 3) ** (2 * n) - (4 * i - 4) ** (2 * n)


def _shift_or(mask: np.ndarray, step: int, limit: int) -> np.ndarray:
    """返回 mask 与其平移 a*step (|a| <= limit) 的和集掩码"""
    out = np.zeros_like(mask)
    size = len(mask)
    for a in range(-limit, limit + 1):
        s = a * step
        if s >= size or -s >= size:
            continue
        if s >= 0:
            out[s:] |= mask[:size - s]
        else:
            out[:s] |= mask[-s:]
    return out


def build_digit_set(i: int, n: int) -> DigitSet:
    """
    构造 D_{i,n}

    用布尔掩码计算和集：对每个强制为零的数位位置，把其余数位的取值逐位平移叠加，
    再对所有位置取并。

    Args:
        i: 底数，i >= 2
        n: 维数参数，n >= 1

    Returns:
        DigitSet
    """
    if i < 2:
        raise ValueError(f"底数必须 >= 2: i={i}")
    if n < 1:
        raise ValueError(f"维数参数必须 >= 1: n={n}")
    return stage_digit_set(i, n)


def stage_digit_set(i: int, n: int) -> DigitSet:
    # i = 1 只在多尺度集合的第一层使用：D_{1,n} = {0}
    if i == 1:
        return DigitSet(1, n, frozenset({0}))

    limit = 2 * (i - 1)
    length = 2 * n
    offset = 2 * (i ** length - 1)
    union = np.zeros(2 * offset + 1, dtype=bool)
    for zero in range(length):
        mask = np.zeros_like(union)
        mask[offset] = True
        for j in range(length):
            if j != zero:
                mask = _shift_or(mask, i ** j, limit)
        union |= mask

    members = frozenset((np.flatnonzero(union) - offset).tolist())
    logger.debug(f"D_{{{i},{n}}} 共 {len(members)} 个成员")
    return DigitSet(i, n, members)


def base_digits(x: int, i: int, length: int) -> List[int]:
    """x 的 i 进制数位（低位在前），补零到 length 位"""
    digits = []
    for _ in range(length):
        x, d = divmod(x, i)
        digits.append(d)
    return digits


def _alternating(digit_rows: Sequence[Sequence[int]], order: Sequence[int], i: int) -> int:
    # 槽位 m 取输入 order[m] 的第 2m 位（正）与第 2m+1 位（负）
    r = 0
    for m, j in enumerate(order):
        r += digit_rows[j][2 * m] * i ** (2 * m) - digit_rows[j][2 * m + 1] * i ** (2 * m + 1)
    return r


def signed_radius(xs: Sequence[int], i: int) -> int:
    """
    带符号的交错数位半径，允许为 0（仅当所有输入为 0 时）

    先按恒等排列计算；若结果为 0，按 (槽位 m, 输入 j) 的字典序找到第一个在第
    2m 或 2m+1 位有非零数位的输入，与槽位 m 上的输入交换。
    """
    n = len(xs)
    rows = [base_digits(x, i, 2 * n) for x in xs]
    order = list(range(n))
    r = _alternating(rows, order, i)
    if r != 0:
        return r
    for m in range(n):
        for j in range(n):
            if rows[j][2 * m] or rows[j][2 * m + 1]:
                order[m], order[j] = order[j], order[m]
                return _alternating(rows, order, i)
    return 0


def find_radius(xs: Sequence[int], i: int) -> int:
    """
    为 x_1..x_n 找到公共半径 r >= 1，使每个 x_j ± r ∈ D_{i,n}

    Args:
        xs: n 个整数，每个位于 [1, i^{2n}-1]
        i: 底数

    Returns:
        正整数半径
    """
    n = len(xs)
    if n < 1:
        raise ValueError("至少需要一个输入")
    if i < 2:
        raise ValueError(f"底数必须 >= 2: i={i}")
    top = i ** (2 * n) - 1
    for x in xs:
        if not 1 <= x <= top:
            raise ValueError(f"输入 {x} 超出范围 [1, {top}]")
    return abs(signed_radius(xs, i))
