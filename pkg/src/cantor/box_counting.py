#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
盒计数与维数估计
Box Counting

网格锚定在 0，盒子为半开区间 [mε, (m+1)ε)。
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence

from exponents.slope_fit import exact_log, linear_slope
from utils.formats import rational_str


def box_count(points: Iterable[Fraction], scale: Fraction) -> int:
    """
    被点集占据的尺度为 scale 的盒子数

    Args:
        points: 非空有理数点集
        scale: 正有理数尺度

    Returns:
        不同的 ⌊p/scale⌋ 个数
    """
    scale = Fraction(scale)
    if scale <= 0:
        raise ValueError(f"尺度必须为正数: {scale}")
    boxes = {math.floor(Fraction(p) / scale) for p in points}
    if not boxes:
        raise ValueError("盒计数的输入不能为空")
    return len(boxes)


@dataclass
class DimensionEstimate:
    """维数估计：拟合斜率与逐尺度的比值表"""
    slope: float
    rows: List[Dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'slope': self.slope,
            'scales': [
                {
                    'scale': rational_str(row['scale']),
                    'count': row['count'],
                    'ratio': row['ratio'],
                }
                for row in self.rows
            ],
        }

    def csv_rows(self) -> List[List[int]]:
        """(scale_num, scale_den, count)"""
        return [[row['scale'].numerator, row['scale'].denominator, row['count']] for row in self.rows]


def dimension_estimate(points: Sequence[Fraction], scales: Sequence[Fraction]) -> DimensionEstimate:
    """
    log(盒子数) 对 -log(尺度) 的最小二乘斜率

    Args:
        points: 非空点集
        scales: 严格递减的正尺度，至少两个

    Returns:
        DimensionEstimate；比值 log N(ε) / -log ε 在 ε >= 1 时为 None
    """
    scales = [Fraction(s) for s in scales]
    if len(scales) < 2:
        raise ValueError("至少需要两个尺度")
    if any(a <= b for a, b in zip(scales, scales[1:])) or scales[-1] <= 0:
        raise ValueError("尺度必须为严格递减的正数")

    points = list(points)
    rows = []
    for scale in scales:
        count = box_count(points, scale)
        ratio: Optional[float] = None
        if scale < 1:
            ratio = math.log(count) / -exact_log(scale)
        rows.append({'scale': scale, 'count': count, 'ratio': ratio})

    slope = linear_slope([-exact_log(s) for s in scales], [math.log(row['count']) for row in rows])
    return DimensionEstimate(slope, rows)
