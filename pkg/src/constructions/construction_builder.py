#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
尖锐构造
Sharp Constructions

对任意目标规模 |S| = p 构造 (B, S)：
- skeleton：B 在 S 的每个点周围含立方体 k-骨架
- nl：B = (D_{i,n})^ℓ 满足 (n,ℓ) 投影条件
- orthoplex：B 在 S 的每个点周围含正轴体顶点
"""

import logging
from dataclasses import dataclass
from itertools import combinations, islice, product
from math import comb
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from constructions.sign_basis import sign_basis
from digits.digit_set import DigitSet, build_digit_set
from exponents.slope_fit import fit_exponent
from lattice.point_set import LatticePoint, PointSet
from utils.config import config
from utils.errors import BudgetExceededError

logger = logging.getLogger(__name__)

SHAPES = ('skeleton', 'nl', 'orthoplex')


@dataclass
class ConstructionResult:
    """构造结果；nl 构造中 k 字段存放 ℓ，正轴体构造中为 None"""
    shape: str
    B: PointSet
    S: PointSet
    n: int
    k: Optional[int]
    p: int
    i: int
    scale: int = 1

    def summary(self) -> Dict[str, Any]:
        return {
            'shape': self.shape,
            'n': self.n,
            'k': self.k,
            'p': self.p,
            'i': self.i,
            'sizeB': len(self.B),
            'sizeS': len(self.S),
            'scale': self.scale,
        }


def choose_base(n: int, p: int) -> int:
    """最小的 i >= 2，使 p <= (i^{2n}-1)^n"""
    if n < 1 or p < 1:
        raise ValueError(f"参数必须为正整数: n={n}, p={p}")
    i = 2
    while (i ** (2 * n) - 1) ** n < p:
        i += 1
    return i


def first_points(n: int, top: int, p: int) -> Iterable[LatticePoint]:
    """[1, top]^n 中按字典序的前 p 个点"""
    return islice(product(range(1, top + 1), repeat=n), p)


def _skeleton_counts(digits: DigitSet) -> Tuple[int, int]:
    lo, hi = digits.hull
    d = len(digits)
    return d, (hi - lo + 1) - d


def construction_size(shape: str, n: int, k: Optional[int], i: int) -> Tuple[int, int]:
    """
    不展开 B 的闭式规模

    Args:
        shape: skeleton / nl / orthoplex
        n: 维数
        k: 骨架阶数（skeleton）或 ℓ（nl）
        i: 底数

    Returns:
        (完整 S 的规模 (i^{2n}-1)^n, |B|)
    """
    digits = build_digit_set(i, n)
    size_s = digits.top ** n
    d, h = _skeleton_counts(digits)
    if shape == 'skeleton':
        _check_skeleton(n, k)
        size_b = sum(comb(n, u) * h ** u * d ** (n - u) for u in range(k + 1))
    elif shape == 'nl':
        _check_nl(n, k)
        size_b = d ** k
    elif shape == 'orthoplex':
        size_b = d ** n
    else:
        raise ValueError(f"未知的构造类型: {shape}")
    return size_s, size_b


def _check_skeleton(n: int, k: Optional[int]):
    if k is None or not 0 <= k < n:
        raise ValueError(f"骨架阶数必须满足 0 <= k < n: n={n}, k={k}")


def _check_nl(n: int, ell: Optional[int]):
    if ell is None or not 0 < ell <= n:
        raise ValueError(f"ℓ 必须满足 0 < ℓ <= n: n={n}, ℓ={ell}")


class ConstructionBuilder:
    """构造器"""

    def __init__(self, point_cap: Optional[int] = None):
        """
        初始化构造器

        Args:
            point_cap: |B| 上限，默认取配置 point_cap
        """
        self.point_cap = point_cap if point_cap is not None else config.get('point_cap')

    def _guard(self, shape: str, size_b: int):
        if size_b > self.point_cap:
            raise BudgetExceededError(f"{shape} 构造的 |B| = {size_b} 超出上限 {self.point_cap}")

    def skeleton(self, n: int, k: int, p: int) -> ConstructionResult:
        """
        骨架构造

        B = { y : 坐标位于 D 的包围区间 [min D, max D]，且至多 k 个坐标不在 D 中 }，
        即 J ∈ C(n,k) 上取包围区间、其余坐标取 D 的乘积之并。
        """
        _check_skeleton(n, k)
        i = choose_base(n, p)
        digits = build_digit_set(i, n)
        _, size_b = construction_size('skeleton', n, k, i)
        self._guard('skeleton', size_b)

        lo, hi = digits.hull
        members = digits.sorted_members()
        gaps = [v for v in range(lo, hi + 1) if v not in digits]
        points: List[LatticePoint] = []
        for u in range(k + 1):
            for free in combinations(range(n), u):
                axes = [gaps if j in free else members for j in range(n)]
                points.extend(product(*axes))

        S = PointSet(first_points(n, digits.top, p), n)
        logger.info(f"骨架构造完成: n={n}, k={k}, p={p}, i={i}, |B|={len(points)}")
        return ConstructionResult('skeleton', PointSet(points, n), S, n, k, p, i)

    def nl(self, n: int, ell: int, p: int) -> ConstructionResult:
        """投影构造 B = (D_{i,n})^ℓ ⊂ Z^ℓ"""
        _check_nl(n, ell)
        i = choose_base(n, p)
        digits = build_digit_set(i, n)
        self._guard('nl', len(digits) ** ell)
        B = PointSet(product(digits.sorted_members(), repeat=ell), ell)
        S = PointSet(first_points(n, digits.top, p), n)
        logger.info(f"投影构造完成: n={n}, ℓ={ell}, p={p}, i={i}, |B|={len(B)}")
        return ConstructionResult('nl', B, S, n, ell, p, i)

    def orthoplex(self, n: int, p: int) -> ConstructionResult:
        """
        正轴体构造：S = g(T^n)，B = g(D^n)，g = scale · M⁻¹

        g(x + rσ⁽ⁱ⁾) = g(x) + r·scale·e_i，故 S 的每个点都有见证半径 scale·r。
        """
        i = choose_base(n, p)
        digits = build_digit_set(i, n)
        self._guard('orthoplex', len(digits) ** n)
        basis = sign_basis(n)
        B = PointSet((basis.apply(x) for x in product(digits.sorted_members(), repeat=n)), n)
        S = PointSet((basis.apply(x) for x in first_points(n, digits.top, p)), n)
        logger.info(f"正轴体构造完成: n={n}, p={p}, i={i}, scale={basis.scale}, |B|={len(B)}")
        return ConstructionResult('orthoplex', B, S, n, None, p, i, basis.scale)

    def build(self, shape: str, n: int, k: Optional[int], p: int) -> ConstructionResult:
        """按类型分派；nl 构造的 k 即 ℓ"""
        if shape == 'skeleton':
            return self.skeleton(n, k, p)
        if shape == 'nl':
            return self.nl(n, k, p)
        if shape == 'orthoplex':
            return self.orthoplex(n, p)
        raise ValueError(f"未知的构造类型: {shape}")


def skeleton_construction(n: int, k: int, p: int, point_cap: Optional[int] = None) -> ConstructionResult:
    return ConstructionBuilder(point_cap).skeleton(n, k, p)


def nl_construction(n: int, ell: int, p: int, point_cap: Optional[int] = None) -> ConstructionResult:
    return ConstructionBuilder(point_cap).nl(n, ell, p)


def orthoplex_construction(n: int, p: int, point_cap: Optional[int] = None) -> ConstructionResult:
    return ConstructionBuilder(point_cap).orthoplex(n, p)


def scaling_study(shape: str, n: int, k: Optional[int], bases: Sequence[int],
                  progress_callback: Optional[Callable] = None) -> Tuple[List[Tuple[int, int, int]], float]:
    """
    规模律研究：对每个底数 i 计算完整构造的 (|S|, |B|)，拟合 log|B| 对 log|S| 的斜率

    Args:
        shape: skeleton / nl / orthoplex
        n: 维数
        k: 骨架阶数或 ℓ
        bases: 底数序列
        progress_callback: 进度回调函数

    Returns:
        (行 (i, size_s, size_b) 列表, 拟合斜率)
    """
    rows = []
    for index, i in enumerate(bases, 1):
        size_s, size_b = construction_size(shape, n, k, i)
        rows.append((i, size_s, size_b))
        if progress_callback:
            progress_callback(int(index * 100 / len(bases)), f"i={i}: |S|={size_s}, |B|={size_b}")
    slope = fit_exponent([(s, b) for _, s, b in rows])
    return rows, slope
