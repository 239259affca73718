#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
格点集合
Lattice Point Sets
"""

from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from utils.errors import DimensionMismatchError
from utils.formats import PathLike, format_rows, parse_integer_rows, read_lines, write_lines

LatticePoint = Tuple[int, ...]


def as_point(coords: Sequence[int]) -> LatticePoint:
    """把坐标序列规范化为整数元组"""
    point = tuple(int(c) for c in coords)
    if not point:
        raise ValueError("格点维数至少为 1")
    return point


class PointSet:
    """有限、去重、维数一致的格点集合；迭代顺序为字典序"""

    def __init__(self, points: Iterable[Sequence[int]] = (), dim: Optional[int] = None):
        """
        初始化点集

        Args:
            points: 格点（整数序列）
            dim: 维数；为 None 时由第一个点推断，空集则保持未知
        """
        members = set()
        for coords in points:
            point = as_point(coords)
            if dim is None:
                dim = len(point)
            elif len(point) != dim:
                raise DimensionMismatchError(f"点 {point} 的维数为 {len(point)}，应为 {dim}")
            members.add(point)
        if dim is not None and dim < 1:
            raise ValueError(f"维数必须为正整数: {dim}")
        self.dim = dim
        self._points: FrozenSet[LatticePoint] = frozenset(members)
        self._sorted: Optional[List[LatticePoint]] = None
        self._bounds: Optional[List[Tuple[int, int]]] = None

    @property
    def points(self) -> FrozenSet[LatticePoint]:
        return self._points

    def sorted_points(self) -> List[LatticePoint]:
        """字典序排列的点列表（缓存）"""
        if self._sorted is None:
            self._sorted = sorted(self._points)
        return self._sorted

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self) -> Iterator[LatticePoint]:
        return iter(self.sorted_points())

    def __contains__(self, point) -> bool:
        return tuple(point) in self._points

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self._points == other._points and (not self._points or self.dim == other.dim)

    def __repr__(self) -> str:
        return f"PointSet(dim={self.dim}, size={len(self)})"

    def check_dim(self, dim: Optional[int], what: str = "点"):
        """维数不一致时抛出 DimensionMismatchError（未知维数不检查）"""
        if self.dim is not None and dim is not None and self.dim != dim:
            raise DimensionMismatchError(f"{what}维数为 {dim}，点集维数为 {self.dim}")

    def union(self, other: "PointSet") -> "PointSet":
        self.check_dim(other.dim, "合并点集")
        return PointSet(self._points | other._points, self.dim if self.dim is not None else other.dim)

    def bounds(self) -> List[Tuple[int, int]]:
        """
        每个坐标的 (最小值, 最大值)，首次计算后缓存

        Returns:
            长度为 dim 的列表；空集返回空列表
        """
        if self._bounds is None:
            self._bounds = [(min(column), max(column)) for column in zip(*self._points)]
        return list(self._bounds)

    def spread(self) -> int:
        """坐标跨度：各坐标 (最大值 - 最小值) 中的最大者"""
        return max((hi - lo for lo, hi in self.bounds()), default=0)


def parse_point_lines(lines: Iterable[str], dim: Optional[int] = None) -> PointSet:
    """从文本行解析点集（维数由第一行推断，之后强制一致）"""
    rows, width = parse_integer_rows(lines)
    if dim is not None and width is not None and width != dim:
        raise DimensionMismatchError(f"文件维数为 {width}，应为 {dim}")
    return PointSet(rows, dim if dim is not None else width)


def read_point_set(path: PathLike, dim: Optional[int] = None) -> PointSet:
    """读取点集文件"""
    return parse_point_lines(read_lines(path), dim)


def write_point_set(points: PointSet, path: Optional[PathLike] = None, header: Optional[str] = None):
    """按字典序写出点集"""
    write_lines(format_rows(points), path, header)
