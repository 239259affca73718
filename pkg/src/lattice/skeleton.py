#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
立方体骨架与正轴体顶点
Cube Skeletons and Orthoplex Vertices

以 x 为中心、半边长为 r 的离散立方体 [x-r, x+r]^n；其 k-骨架由至少
n-k 个坐标恰好取 x_j ± r 的格点组成。
"""

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Iterator, Sequence

from lattice.point_set import LatticePoint, PointSet, as_point


@dataclass(frozen=True)
class SkeletonSpec:
    """骨架参数：中心、半边长、骨架阶数 k"""
    center: LatticePoint
    radius: int
    order: int

    def __post_init__(self):
        object.__setattr__(self, 'center', as_point(self.center))
        if self.radius < 1:
            raise ValueError(f"半边长必须为正整数: {self.radius}")
        if not 0 <= self.order < len(self.center):
            raise ValueError(f"骨架阶数必须满足 0 <= k < n: k={self.order}, n={len(self.center)}")

    @property
    def dim(self) -> int:
        return len(self.center)


def iter_skeleton(center: Sequence[int], radius: int, order: int) -> Iterator[LatticePoint]:
    """
    逐个生成骨架上的格点，每个点恰好一次

    边界坐标越多的点越先生成（先顶点），包含性检查可以尽早失败。

    Args:
        center: 中心
        radius: 半边长
        order: 骨架阶数 k

    Returns:
        格点迭代器
    """
    center = as_point(center)
    n = len(center)
    interior = range(-radius + 1, radius)
    for boundary_count in range(n, n - order - 1, -1):
        for boundary in combinations(range(n), boundary_count):
            free = [j for j in range(n) if j not in boundary]
            for signs in product((-radius, radius), repeat=boundary_count):
                for offsets in product(interior, repeat=n - boundary_count):
                    point = list(center)
                    for j, s in zip(boundary, signs):
                        point[j] += s
                    for j, o in zip(free, offsets):
                        point[j] += o
                    yield tuple(point)


def skeleton_points(spec: SkeletonSpec) -> PointSet:
    """骨架格点集合"""
    return PointSet(iter_skeleton(spec.center, spec.radius, spec.order), spec.dim)


def skeleton_size(n: int, radius: int, order: int) -> int:
    """骨架点数的闭式：sum_{j=n-k}^{n} C(n,j) 2^j (2r-1)^(n-j)"""
    return sum(comb(n, j) * 2 ** j * (2 * radius - 1) ** (n - j) for j in range(n - order, n + 1))


def iter_orthoplex(center: Sequence[int], radius: int) -> Iterator[LatticePoint]:
    """生成 x ± r e_i"""
    center = as_point(center)
    for j in range(len(center)):
        for s in (-radius, radius):
            point = list(center)
            point[j] += s
            yield tuple(point)


def orthoplex_points(center: Sequence[int], radius: int) -> PointSet:
    """正轴体顶点集合（2n 个点）"""
    if radius < 1:
        raise ValueError(f"半径必须为正整数: {radius}")
    center = as_point(center)
    return PointSet(iter_orthoplex(center, radius), len(center))
