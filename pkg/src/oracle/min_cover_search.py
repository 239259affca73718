#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
最小覆盖精确搜索
Exact Minimal Cover Search

在所有半径分配 r: S -> [1, r_max] 上最小化 |∪_x shape(x, r(x))|。
任何可行的 B 都包含这样一个并集，而每个这样的并集都可行，所以只在并集中搜索不损失最优性。
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Sequence

from exponents.exponent_algebra import vertex_lower_bound
from lattice.point_set import LatticePoint, PointSet
from lattice.skeleton import iter_orthoplex, iter_skeleton
from utils.config import config
from utils.errors import BudgetExceededError

logger = logging.getLogger(__name__)

SHAPES = ('vertex', 'skeleton', 'orthoplex')


def shape_points(shape: str, x: Sequence[int], r: int, k: int = 0) -> FrozenSet[LatticePoint]:
    """
    形状点集

    Args:
        shape: vertex（即 0-骨架）/ skeleton / orthoplex
        x: 中心
        r: 半径
        k: 骨架阶数（仅 skeleton）
    """
    if shape == 'vertex':
        return frozenset(iter_skeleton(x, r, 0))
    if shape == 'skeleton':
        return frozenset(iter_skeleton(x, r, k))
    if shape == 'orthoplex':
        return frozenset(iter_orthoplex(x, r))
    raise ValueError(f"未知的形状: {shape}")


@dataclass
class CoverInstance:
    """最小覆盖实例"""
    S: PointSet
    shape: str = 'vertex'
    r_max: int = 3
    k: int = 0

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"未知的形状: {self.shape}")
        if self.r_max < 1:
            raise ValueError(f"半径上限必须为正整数: {self.r_max}")
        if self.shape == 'skeleton' and self.S.dim is not None and not 0 <= self.k < self.S.dim:
            raise ValueError(f"骨架阶数必须满足 0 <= k < n: k={self.k}, n={self.S.dim}")

    def shapes(self) -> List[List[FrozenSet[LatticePoint]]]:
        """shapes()[j][r-1] 为第 j 个点（字典序）在半径 r 下的形状"""
        return [[shape_points(self.shape, x, r, self.k) for r in range(1, self.r_max + 1)]
                for x in self.S.sorted_points()]

    def lower_bound(self) -> Optional[float]:
        """顶点/正轴体形状的显式下界 |S|^{(2n-1)/(2n)} / 2^{n-1}"""
        if self.shape == 'skeleton' or not len(self.S):
            return None
        return vertex_lower_bound(self.S.dim, len(self.S))


@dataclass
class OracleResult:
    """搜索结果；optimal=False 表示预算耗尽时的部分结果"""
    min_size: Optional[int]
    assignment: Dict[LatticePoint, int] = field(default_factory=dict)
    nodes_explored: int = 0
    r_max: int = 0
    optimal: bool = True

    def build_cover(self, instance: CoverInstance) -> PointSet:
        """按分配重建 B"""
        points = set()
        for x, r in self.assignment.items():
            points |= shape_points(instance.shape, x, r, instance.k)
        return PointSet(points, instance.S.dim)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'min_size': self.min_size,
            'r_max': self.r_max,
            'nodes_explored': self.nodes_explored,
            'optimal': self.optimal,
            'assignment': [
                {'point': list(x), 'radius': self.assignment[x]} for x in sorted(self.assignment)
            ],
        }


class MinCoverSearch:
    """分支定界最小覆盖搜索"""

    def __init__(self, node_budget: Optional[int] = None):
        """
        Args:
            node_budget: 节点预算，默认取配置 node_budget
        """
        self.node_budget = node_budget if node_budget is not None else config.get('node_budget')

    def run(self, instance: CoverInstance) -> OracleResult:
        """
        深度优先搜索，当前并集大小 >= 已知最优时剪枝；只接受严格改进，
        因此返回字典序最小的最优分配

        Returns:
            OracleResult
        """
        points = instance.S.sorted_points()
        if not points:
            return OracleResult(0, {}, 0, instance.r_max)
        shapes = instance.shapes()
        count: Dict[LatticePoint, int] = {}
        state = {'size': 0, 'nodes': 0, 'best': None, 'best_radii': None}
        radii: List[int] = []

        def add(shape):
            for p in shape:
                c = count.get(p, 0)
                if c == 0:
                    state['size'] += 1
                count[p] = c + 1

        def remove(shape):
            for p in shape:
                c = count[p] - 1
                if c == 0:
                    del count[p]
                    state['size'] -= 1
                else:
                    count[p] = c

        def branch(depth: int):
            if depth == len(points):
                state['best'] = state['size']
                state['best_radii'] = list(radii)
                return
            for r in range(1, instance.r_max + 1):
                if state['nodes'] >= self.node_budget:
                    raise _Exhausted()
                state['nodes'] += 1
                shape = shapes[depth][r - 1]
                add(shape)
                if state['best'] is None or state['size'] < state['best']:
                    radii.append(r)
                    branch(depth + 1)
                    radii.pop()
                remove(shape)

        try:
            branch(0)
        except _Exhausted:
            partial = self._result(points, state, instance.r_max, optimal=False)
            raise BudgetExceededError(
                f"最小覆盖搜索超出节点预算 {self.node_budget}", partial=partial)
        return self._result(points, state, instance.r_max, optimal=True)

    @staticmethod
    def _result(points, state, r_max: int, optimal: bool) -> OracleResult:
        assignment = {}
        if state['best_radii'] is not None:
            assignment = dict(zip(points, state['best_radii']))
        return OracleResult(state['best'], assignment, state['nodes'], r_max, optimal)


class _Exhausted(Exception):
    pass


def min_cover(instance: CoverInstance, node_budget: Optional[int] = None) -> OracleResult:
    return MinCoverSearch(node_budget).run(instance)


def brute_force_min_cover(instance: CoverInstance) -> OracleResult:
    """不剪枝的穷举，用于交叉检查分支定界"""
    points = instance.S.sorted_points()
    if not points:
        return OracleResult(0, {}, 0, instance.r_max)
    shapes = instance.shapes()
    best = None
    best_radii = None
    leaves = 0
    for radii in product(range(1, instance.r_max + 1), repeat=len(points)):
        leaves += 1
        union = set()
        for j, r in enumerate(radii):
            union |= shapes[j][r - 1]
        if best is None or len(union) < best:
            best = len(union)
            best_radii = radii
    return OracleResult(best, dict(zip(points, best_radii)), leaves, instance.r_max)


def min_cover_sweep(instances: Sequence[CoverInstance], node_budget: Optional[int] = None,
                    max_workers: Optional[int] = None,
                    progress_callback: Optional[Callable] = None) -> List[Dict[str, Any]]:
    """
    批量求解，按 |S| 排序输出（同规模保持输入顺序）

    实例之间并行；单个实例的搜索是顺序的，节点数与线程数无关。

    Returns:
        行：size_s, min_size, r_max, nodes_explored
    """
    if max_workers is None:
        max_workers = config.threads()
    search = MinCoverSearch(node_budget)
    results: Dict[int, OracleResult] = {}
    lock = threading.Lock()
    total = len(instances)

    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as executor:
        future_to_index = {executor.submit(search.run, inst): idx for idx, inst in enumerate(instances)}
        for future in as_completed(future_to_index):
            result = future.result()
            with lock:
                results[future_to_index[future]] = result
                done = len(results)
            if progress_callback:
                progress_callback(int(done * 100 / total), f"已求解 {done}/{total} 个实例")

    order = sorted(range(total), key=lambda idx: (len(instances[idx].S), idx))
    return [
        {
            'size_s': len(instances[idx].S),
            'min_size': results[idx].min_size,
            'r_max': results[idx].r_max,
            'nodes_explored': results[idx].nodes_explored,
        }
        for idx in order
    ]


def grid_prefix_instances(length: int, r_max: int = 3, shape: str = 'vertex') -> List[CoverInstance]:
    """Z¹ 上网格线的前缀 {0}, {0,1}, ..., {0..length-1}"""
    return [CoverInstance(PointSet(((x,) for x in range(m)), 1), shape, r_max) for m in range(1, length + 1)]