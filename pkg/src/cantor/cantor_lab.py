#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Cantor 型和集实验
Cantor Sum Lab

P = sum_i Q_i 的有限截断。顶点构造的各层为
    β_i = ((i-1)!)^{-2n²/t}，c_i = β_i / i^{2n}
    T_i = c_i · [1, i^{2n}-1]，A_i = c_i · D_{i,n}
对任意 x_1..x_n ∈ T_i 存在 ρ 使 x_j ± ρ ∈ A_i。
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, lcm, prod
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from cantor.box_counting import box_count, dimension_estimate
from digits.digit_set import build_digit_set, find_radius
from digits.multiscale import build_multiscale_set, interval_cover_count
from exponents.slope_fit import exact_log
from utils.config import config
from utils.errors import BudgetExceededError
from utils.formats import rational_str

logger = logging.getLogger(__name__)


@dataclass
class Stage:
    """
    单层 Q_i 及其元数据

    diameter、gap、size 由点集直接计算；declared_* 为构造给出的声明值
    """
    index: int
    points: Tuple[Fraction, ...]
    diameter: Fraction
    gap: Optional[Fraction]
    size: int
    declared_diameter: Optional[Fraction] = None
    declared_gap: Optional[Fraction] = None
    declared_size: Optional[int] = None

    @classmethod
    def from_points(cls, index: int, points: Iterable[Fraction], declared=None) -> "Stage":
        ordered = tuple(sorted(set(Fraction(p) for p in points)))
        if not ordered:
            raise ValueError(f"第 {index} 层为空")
        gaps = [b - a for a, b in zip(ordered, ordered[1:])]
        stage = cls(index, ordered, ordered[-1] - ordered[0], min(gaps) if gaps else None, len(ordered))
        if declared:
            stage.declared_diameter, stage.declared_gap, stage.declared_size = declared
        return stage

    def declared_consistent(self) -> Optional[bool]:
        """声明值是否与实际相符：diam <= d_i，最小间距 >= δ_i"""
        if self.declared_diameter is None:
            return None
        ok = self.diameter <= self.declared_diameter
        if self.declared_gap is not None and self.gap is not None:
            ok = ok and self.gap >= self.declared_gap
        return ok

    def to_dict(self) -> Dict[str, Any]:
        return {
            'i': self.index,
            'size': self.size,
            'diameter': rational_str(self.diameter),
            'gap': None if self.gap is None else rational_str(self.gap),
            'declared_diameter': None if self.declared_diameter is None else rational_str(self.declared_diameter),
            'declared_gap': None if self.declared_gap is None else rational_str(self.declared_gap),
            'declared_size': self.declared_size,
            'declared_consistent': self.declared_consistent(),
        }


@dataclass
class StageSpec:
    """各层集合与由元数据推出的有效性标志"""
    stages: List[Stage] = field(default_factory=list)

    @classmethod
    def from_sets(cls, sets: Sequence[Iterable[Fraction]], indices: Optional[Sequence[int]] = None,
                  declared: Optional[Sequence[Tuple[Fraction, Fraction, int]]] = None) -> "StageSpec":
        """
        由点集构造，元数据全部实际计算

        Args:
            sets: 各层点集
            indices: 各层编号，默认 1, 2, ...
            declared: 各层的声明值 (d_i, δ_i, ℓ_i)
        """
        if indices is None:
            indices = list(range(1, len(sets) + 1))
        stages = []
        for pos, (index, points) in enumerate(zip(indices, sets)):
            stages.append(Stage.from_points(index, points, declared[pos] if declared else None))
        return cls(stages)

    def __len__(self) -> int:
        return len(self.stages)

    @property
    def geometric_decay(self) -> bool:
        """存在 c < 1 使 d_i <= c·d_{i-1}（有限层时等价于每个比值 < 1）"""
        return all(prev.diameter > 0 and cur.diameter < prev.diameter
                   for prev, cur in zip(self.stages, self.stages[1:]))

    @property
    def nested(self) -> bool:
        """d_i + δ_i <= δ_{i-1}"""
        for prev, cur in zip(self.stages, self.stages[1:]):
            if prev.gap is None:
                return False
            if cur.diameter + (cur.gap or 0) > prev.gap:
                return False
        return True

    @property
    def declared_consistent(self) -> Optional[bool]:
        flags = [stage.declared_consistent() for stage in self.stages]
        if any(flag is None for flag in flags):
            return None
        return all(flags)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'stages': [stage.to_dict() for stage in self.stages],
            'geometric_decay': self.geometric_decay,
            'nested': self.nested,
            'declared_consistent': self.declared_consistent,
        }


@dataclass
class TruncatedSum:
    """前 depth 层的和集"""
    depth: int
    points: Tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.points)


def stage_exponent(n: int, t: Fraction) -> int:
    """2n²/t，必须为正整数，β_i 才是精确有理数"""
    t = Fraction(t)
    if not 0 < t <= 1:
        raise ValueError(f"t 必须位于 (0, 1]: {t}")
    e = Fraction(2 * n * n) / t
    if e.denominator != 1:
        raise ValueError(f"2n²/t 必须为整数: n={n}, t={t}")
    return int(e)


def stage_unit(n: int, t: Fraction, i: int) -> Fraction:
    """c_i = β_i / i^{2n}"""
    beta_i = Fraction(1, factorial(i - 1) ** stage_exponent(n, t))
    return beta_i / i ** (2 * n)


def vertex_stages(n: int, t: Fraction, depth: Optional[int] = None) -> Tuple[StageSpec, StageSpec]:
    """
    顶点构造的 A 层与 T 层，i = 2..depth+1

    Args:
        n: 维数
        t: 目标维数，2n²/t 为整数
        depth: 层数，默认取配置 cantor_depth

    Returns:
        (A 层, T 层)
    """
    if depth is None:
        depth = config.get('cantor_depth')
    if n < 1:
        raise ValueError(f"维数必须为正整数: n={n}")
    if depth < 2:
        raise ValueError(f"层数至少为 2: {depth}")
    stage_exponent(n, t)

    a_sets, t_sets, a_declared, t_declared = [], [], [], []
    indices = list(range(2, depth + 2))
    for i in indices:
        unit = stage_unit(n, t, i)
        top = i ** (2 * n) - 1
        digits = build_digit_set(i, n)
        t_sets.append([unit * m for m in range(1, top + 1)])
        a_sets.append([unit * a for a in digits.sorted_members()])
        t_declared.append((unit * top, unit, top + 1))
        a_declared.append((3 * unit * top, unit, len(digits)))
    return (StageSpec.from_sets(a_sets, indices, a_declared),
            StageSpec.from_sets(t_sets, indices, t_declared))


def truncated_sum(spec: StageSpec, depth: Optional[int] = None, point_cap: Optional[int] = None) -> TruncatedSum:
    """
    前 depth 层的精确有理和集

    在公分母下做整数加法，最后还原为有理数。
    """
    if depth is None:
        depth = len(spec)
    if not 1 <= depth <= len(spec):
        raise ValueError(f"截断层数必须位于 [1, {len(spec)}]: {depth}")
    if point_cap is None:
        point_cap = config.get('point_cap')
    stages = spec.stages[:depth]
    estimate = prod(stage.size for stage in stages)
    if estimate > point_cap:
        raise BudgetExceededError(f"和集规模估计 {estimate} 超出上限 {point_cap}")

    denominator = lcm(*(p.denominator for stage in stages for p in stage.points))
    sums = {0}
    for stage in stages:
        values = [int(p * denominator) for p in stage.points]
        sums = {a + b for a in sums for b in values}
    points = tuple(sorted(Fraction(v, denominator) for v in sums))
    return TruncatedSum(depth, points)


def stage_radius(n: int, t: Fraction, i: int, xs: Sequence[Fraction]) -> Fraction:
    """
    对 x_1..x_n ∈ T_i 求 ρ，使 x_j ± ρ ∈ A_i

    Returns:
        ρ = c_i · find_radius(x / c_i)
    """
    if len(xs) != n:
        raise ValueError(f"输入个数 {len(xs)} 与 n={n} 不一致")
    unit = stage_unit(n, t, i)
    multiples = []
    for x in xs:
        m = Fraction(x) / unit
        if m.denominator != 1:
            raise ValueError(f"{x} 不属于 T_{i}")
        multiples.append(int(m))
    return unit * find_radius(multiples, i)


def stage_ratios(spec: StageSpec) -> List[Dict[str, Any]]:
    """
    逐层比值：
        box:       log(ℓ_1⋯ℓ_j) / -log d_j
        hausdorff: log(ℓ_1⋯ℓ_j) / -log(d_{j+1} ℓ_{j+1})（仅报告）
    """
    rows = []
    log_size = 0.0
    stages = spec.stages
    for j, stage in enumerate(stages):
        log_size += exact_log(stage.size)
        box = None
        if 0 < stage.diameter < 1:
            box = log_size / -exact_log(stage.diameter)
        hausdorff = None
        if j + 1 < len(stages):
            nxt = stages[j + 1]
            spread = nxt.diameter * nxt.size
            if 0 < spread < 1:
                hausdorff = log_size / -exact_log(spread)
        rows.append({'j': j + 1, 'i': stage.index, 'box': box, 'hausdorff': hausdorff})
    return rows


def cantor_experiment(n: int, t: Fraction, depth: Optional[int] = None,
                      point_cap: Optional[int] = None) -> Dict[str, Any]:
    """
    截断和集的维数实验：T 和集的目标为 t，A 和集的目标为 (2n-1)t/(2n)

    盒计数尺度取各层的 δ_i = c_i。
    """
    t = Fraction(t)
    a_spec, t_spec = vertex_stages(n, t, depth)
    scales = [stage_unit(n, t, stage.index) for stage in t_spec.stages]
    result: Dict[str, Any] = {'n': n, 't': rational_str(t), 'depth': len(t_spec),
                              'scales': [rational_str(s) for s in scales]}
    for name, spec, target in (('T', t_spec, t), ('A', a_spec, t * (2 * n - 1) / (2 * n))):
        total = truncated_sum(spec, point_cap=point_cap)
        estimate = dimension_estimate(total.points, scales)
        result[name] = {
            'size': len(total),
            'target': rational_str(target),
            'estimate': estimate.slope,
            'boxes': estimate.to_dict()['scales'],
            'ratios': stage_ratios(spec),
            'geometric_decay': spec.geometric_decay,
            'nested': spec.nested,
            'declared_consistent': spec.declared_consistent,
        }
        logger.info(f"{name} 和集: {len(total)} 个点，估计维数 {estimate.slope:.4f}，目标 {float(target):.4f}")
    return result


def cover_box_comparison(p: int, n: int, point_cap: Optional[int] = None) -> List[Dict[str, Any]]:
    """
    在 A_N 的各层尺度 R = (p!/i!)^{2n} 上比较闭区间覆盖数与盒计数

    点集缩放到 x/N，盒子尺度为 R/N。长度 R 的闭区间至多跨两个半开盒子，
    所以 cover <= boxes <= 2·cover。

    Args:
        p: 层数
        n: 维数参数
        point_cap: A_N 规模上限

    Returns:
        每个尺度一行：R, cover, boxes, within_factor_two
    """
    multiscale = build_multiscale_set(p, n, point_cap)
    N = multiscale.N
    points = [Fraction(x, N) for x in multiscale.sorted_members()]
    rows = []
    for R in sorted(set(multiscale.scales)):
        cover = interval_cover_count(multiscale.members, R)
        boxes = box_count(points, Fraction(R, N))
        rows.append({'R': R, 'cover': cover, 'boxes': boxes, 'within_factor_two': cover <= boxes <= 2 * cover})
    broken = [row['R'] for row in rows if not row['within_factor_two']]
    if broken:
        logger.warning(f"区间覆盖与盒计数相差超过 2 倍的尺度: {broken}")
    return rows
