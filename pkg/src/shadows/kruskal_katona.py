#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Kruskal-Katona 影子界
Kruskal-Katona Shadow Bounds

b 元集族 F 的 c 阶影子：F 中成员的所有 (b-c) 元子集。
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from utils.config import config
from utils.errors import FormatError
from utils.formats import PathLike, format_rows, parse_integer_rows, read_lines, write_lines

logger = logging.getLogger(__name__)

Member = Tuple[int, ...]


@dataclass(frozen=True)
class SetFamily:
    """[1..ground] 上的 arity 元子集族"""
    ground: int
    arity: int
    members: FrozenSet[Member]

    def __post_init__(self):
        if self.ground < 1 or self.arity < 0:
            raise ValueError(f"无效的集族参数: ground={self.ground}, arity={self.arity}")
        for member in self.members:
            if len(member) != self.arity or len(set(member)) != self.arity:
                raise ValueError(f"成员 {member} 不是 {self.arity} 元集")
            if member and not (1 <= min(member) and max(member) <= self.ground):
                raise ValueError(f"成员 {member} 超出 [1, {self.ground}]")

    @classmethod
    def of(cls, ground: int, arity: int, members: Iterable[Iterable[int]]) -> "SetFamily":
        return cls(ground, arity, frozenset(tuple(sorted(m)) for m in members))

    def __len__(self) -> int:
        return len(self.members)

    def sorted_members(self) -> List[Member]:
        return sorted(self.members)


@dataclass(frozen=True)
class Cascade:
    """m = sum_t C(n_t, b-t+1)，n_1 > n_2 > ... 严格递减"""
    b: int
    indices: Tuple[int, ...]

    def value(self) -> int:
        return sum(comb(n_t, self.b - t) for t, n_t in enumerate(self.indices))


def _binom(a: int, beta: int) -> int:
    # 约定：β < 0 或 a < β 时为 0
    if beta < 0 or a < beta:
        return 0
    return comb(a, beta)


def cascade_representation(m: int, b: int) -> Cascade:
    """
    贪心求 m 的 b 阶级联表示

    Args:
        m: 正整数
        b: 阶数

    Returns:
        Cascade
    """
    if m < 1 or b < 1:
        raise ValueError(f"参数必须为正整数: m={m}, b={b}")
    indices = []
    rest = m
    for arity in range(b, 0, -1):
        if rest == 0:
            break
        # 最大的 x 使 C(x, arity) <= rest：倍增找上界后二分
        lo, hi = arity, 2 * arity
        while comb(hi, arity) <= rest:
            lo, hi = hi, 2 * hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if comb(mid, arity) <= rest:
                lo = mid
            else:
                hi = mid
        x = lo
        indices.append(x)
        rest -= comb(x, arity)
    return Cascade(b, tuple(indices))


def kk_shadow_bound(m: int, b: int, c: int) -> int:
    """Kruskal-Katona 下界：sum_t C(n_t, b-c-t+1)"""
    if not 0 < c < b:
        raise ValueError(f"影子阶数必须满足 0 < c < b: c={c}, b={b}")
    cascade = cascade_representation(m, b)
    return sum(_binom(n_t, b - c - t) for t, n_t in enumerate(cascade.indices))


def generalized_binomial(x: float, b: int) -> float:
    """实数二项式系数 x(x-1)...(x-b+1)/b!"""
    value = 1.0
    for j in range(b):
        value *= x - j
    return value / factorial(b)


def lovasz_root(m: int, b: int, rel_tol: float = 1e-12) -> float:
    """
    在 [b-1, b-1+m] 上二分求解 C(x, b) = m

    Returns:
        实根 x
    """
    if m < 1 or b < 1:
        raise ValueError(f"参数必须为正整数: m={m}, b={b}")
    lo, hi = float(b - 1), float(b - 1 + m)
    for _ in range(400):
        mid = (lo + hi) / 2
        if generalized_binomial(mid, b) < m:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rel_tol * hi:
            break
    return (lo + hi) / 2


def lovasz_shadow_bound(m: int, b: int, c: int) -> float:
    """Lovász 实数形式下界 C(x, b-c)，其中 C(x, b) = m"""
    if not 0 <= c <= b:
        raise ValueError(f"影子阶数必须满足 0 <= c <= b: c={c}, b={b}")
    return generalized_binomial(lovasz_root(m, b), b - c)


def exact_shadow(family: SetFamily, c: int) -> SetFamily:
    """穷举 c 阶影子"""
    if not 0 <= c < family.arity:
        raise ValueError(f"影子阶数必须满足 0 <= c < arity: c={c}, arity={family.arity}")
    size = family.arity - c
    shadow = {sub for member in family.members for sub in combinations(member, size)}
    return SetFamily(family.ground, size, frozenset(shadow))


def colex_unrank(rank: int, b: int) -> Member:
    """colex 序中第 rank 个（从 0 开始）b 元子集，元素取自 1, 2, ..."""
    subset = []
    for arity in range(b, 0, -1):
        x = arity - 1
        while comb(x + 1, arity) <= rank:
            x += 1
        rank -= comb(x, arity)
        subset.append(x + 1)
    return tuple(sorted(subset))


def colex_segment(m: int, b: int) -> SetFamily:
    """colex 序中的前 m 个 b 元子集"""
    if m < 1 or b < 1:
        raise ValueError(f"参数必须为正整数: m={m}, b={b}")
    ground = b
    while comb(ground, b) < m:
        ground += 1
    return SetFamily(ground, b, frozenset(colex_unrank(r, b) for r in range(m)))


def all_families(ground: int, arity: int, include_empty: bool = False) -> Iterator[SetFamily]:
    """按位掩码穷举 [1..ground] 上所有 arity 元集族"""
    universe = list(combinations(range(1, ground + 1), arity))
    for mask in range(0 if include_empty else 1, 1 << len(universe)):
        yield SetFamily(ground, arity, frozenset(m for bit, m in enumerate(universe) if mask >> bit & 1))


def domination_sweep(ground: int, arity: int, c: int = 1,
                     max_workers: Optional[int] = None) -> Dict[str, int]:
    """
    对所有非空集族检查 |影子| >= KK 界 >= Lovász 界

    按掩码区间分块并行；计数与调度无关。

    Returns:
        {'families', 'violations', 'tight'}：集族数、违反次数、影子恰等于 KK 界的次数
    """
    if max_workers is None:
        max_workers = config.threads()
    universe = list(combinations(range(1, ground + 1), arity))
    total = (1 << len(universe)) - 1
    kk = {m: kk_shadow_bound(m, arity, c) for m in range(1, len(universe) + 1)}
    lovasz = {m: lovasz_shadow_bound(m, arity, c) for m in kk}
    totals = {'families': 0, 'violations': 0, 'tight': 0}
    lock = threading.Lock()

    def check(start: int, stop: int):
        counts = {'families': 0, 'violations': 0, 'tight': 0}
        for mask in range(start, stop):
            family = SetFamily(ground, arity, frozenset(m for bit, m in enumerate(universe) if mask >> bit & 1))
            shadow = len(exact_shadow(family, c))
            m = len(family)
            counts['families'] += 1
            if not shadow >= kk[m] >= lovasz[m] - 1e-9:
                counts['violations'] += 1
            if shadow == kk[m]:
                counts['tight'] += 1
        with lock:
            for key, value in counts.items():
                totals[key] += value

    chunk = max(1, total // (4 * max(1, max_workers)))
    ranges = [(s, min(s + chunk, total + 1)) for s in range(1, total + 1, chunk)]
    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as executor:
        futures = [executor.submit(check, start, stop) for start, stop in ranges]
        for future in as_completed(futures):
            future.result()
    if totals['violations']:
        logger.warning(f"影子界检查发现 {totals['violations']} 个违反")
    return totals


def read_family(path: PathLike, ground: Optional[int] = None) -> SetFamily:
    """
    读取集族文件（每行一个成员，空格分隔的递增整数）

    Args:
        path: 文件路径
        ground: 全集大小，默认取最大元素
    """
    rows, width = parse_integer_rows(read_lines(path))
    for row in rows:
        if any(a >= b for a, b in zip(row, row[1:])):
            raise FormatError(f"成员必须严格递增: {row}")
    if width is None:
        raise FormatError(f"集族文件为空: {path}")
    if ground is None:
        ground = max((max(row) for row in rows if row), default=1)
    return SetFamily(ground, width, frozenset(rows))


def write_family(family: SetFamily, path: Optional[PathLike] = None, header: Optional[str] = None):
    """按字典序写出集族"""
    write_lines(format_rows(family.sorted_members()), path, header)