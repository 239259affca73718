#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
覆盖条件验证器
Covering Condition Verifier

对点集 S 中的每个点寻找最小半径 r，使对应形状（立方体 k-骨架、
正轴体顶点、或 (n,ℓ) 投影条件）完全落在 B 中。
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from lattice.point_set import LatticePoint, PointSet, as_point
from lattice.skeleton import iter_orthoplex, iter_skeleton
from utils.config import config

logger = logging.getLogger(__name__)


@dataclass
class CoverReport:
    """验证报告"""
    satisfied: bool
    witnesses: Dict[LatticePoint, int] = field(default_factory=dict)
    failures: List[LatticePoint] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        """JSON 结构，点按字典序排列"""
        return {
            'satisfied': self.satisfied,
            'witnesses': [
                {'point': list(point), 'radius': self.witnesses[point]}
                for point in sorted(self.witnesses)
            ],
            'failures': [list(point) for point in self.failures],
        }


class CoverVerifier:
    """覆盖验证器"""

    def __init__(self, max_workers: int = 1):
        """
        初始化验证器

        Args:
            max_workers: 逐点见证搜索的线程数；结果与顺序执行完全一致
        """
        self.max_workers = max(1, max_workers)
        self._lock = threading.Lock()

    # ------------------------------------------------------------------
    # 单点见证
    # ------------------------------------------------------------------

    @staticmethod
    def _radius_limit(bounds, pairs) -> int:
        """
        半径上界：形状在每个 (位置 t, 坐标值 v) 上都需要 v ± r 落在 B 的包围盒内

        Args:
            bounds: B 每个坐标的 (最小值, 最大值)
            pairs: (位置, 坐标值) 序列
        """
        if not bounds:
            return 0
        return min(min(bounds[t][1] - v, v - bounds[t][0]) for t, v in pairs)

    @staticmethod
    def _smallest(limit: int, fits: Callable[[int], bool]) -> Optional[int]:
        for r in range(1, limit + 1):
            if fits(r):
                return r
        return None

    def covering_radius(self, B: PointSet, x: Sequence[int], k: int,
                        bounds: Optional[List[Tuple[int, int]]] = None) -> Optional[int]:
        """
        最小的 r >= 1，使以 x 为中心、半边长 r 的 k-骨架含于 B

        Args:
            B: 点集
            x: 中心
            k: 骨架阶数
            bounds: 预先算好的 B.bounds()，整体验证时只算一次

        Returns:
            最小半径；不存在时返回 None
        """
        x = as_point(x)
        B.check_dim(len(x), "中心")
        if not 0 <= k < len(x):
            raise ValueError(f"骨架阶数必须满足 0 <= k < n: k={k}, n={len(x)}")
        members = B.points
        limit = self._radius_limit(bounds if bounds is not None else B.bounds(), enumerate(x))
        return self._smallest(limit, lambda r: all(p in members for p in iter_skeleton(x, r, k)))

    def orthoplex_radius(self, B: PointSet, x: Sequence[int],
                         bounds: Optional[List[Tuple[int, int]]] = None) -> Optional[int]:
        """最小的 r >= 1，使 x ± r e_i 全部属于 B"""
        x = as_point(x)
        B.check_dim(len(x), "中心")
        members = B.points
        limit = self._radius_limit(bounds if bounds is not None else B.bounds(), enumerate(x))
        return self._smallest(limit, lambda r: all(p in members for p in iter_orthoplex(x, r)))

    def nl_radius(self, A: PointSet, x: Sequence[int], ell: int,
                  bounds: Optional[List[Tuple[int, int]]] = None) -> Optional[int]:
        """
        最小的 r >= 1，使对所有 I ∈ C(n,ℓ)、σ ∈ {-1,1}^ℓ 都有 x_I + rσ ∈ A
        """
        x = as_point(x)
        projections = [tuple(x[j] for j in index) for index in combinations(range(len(x)), ell)]
        members = A.points
        pairs = [(t, v) for proj in projections for t, v in enumerate(proj)]
        limit = self._radius_limit(bounds if bounds is not None else A.bounds(), pairs)

        def fits(r: int) -> bool:
            for proj in projections:
                for signs in product((-r, r), repeat=ell):
                    if tuple(v + s for v, s in zip(proj, signs)) not in members:
                        return False
            return True

        return self._smallest(limit, fits)

    # ------------------------------------------------------------------
    # 整体验证
    # ------------------------------------------------------------------

    def _verify(self, S: PointSet, witness: Callable[[LatticePoint], Optional[int]],
                progress_callback: Optional[Callable] = None) -> CoverReport:
        points = S.sorted_points()
        found: Dict[LatticePoint, Optional[int]] = {}
        total = len(points)

        def record(point, radius):
            with self._lock:
                found[point] = radius
                done = len(found)
            if progress_callback and (done == total or done % 64 == 0):
                progress_callback(int(done * 100 / total), f"已验证 {done}/{total} 个点")

        if self.max_workers == 1 or total < 2:
            for point in points:
                record(point, witness(point))
        else:
            with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
                future_to_point = {executor.submit(witness, point): point for point in points}
                for future in as_completed(future_to_point):
                    record(future_to_point[future], future.result())

        witnesses = {p: found[p] for p in points if found[p] is not None}
        failures = [p for p in points if found[p] is None]
        if failures:
            logger.info(f"覆盖验证失败: {len(failures)}/{total} 个点没有见证半径")
        return CoverReport(not failures, witnesses, failures)

    def verify_cover(self, B: PointSet, S: PointSet, k: int,
                     progress_callback: Optional[Callable] = None) -> CoverReport:
        """
        验证 B 在 S 的每个点周围都含有立方体 k-骨架

        Args:
            B: 覆盖集
            S: 中心点集
            k: 骨架阶数
            progress_callback: 进度回调函数

        Returns:
            验证报告（见证半径为最小半径）
        """
        S.check_dim(B.dim, "覆盖集")
        bounds = B.bounds()
        return self._verify(S, lambda x: self.covering_radius(B, x, k, bounds), progress_callback)

    def verify_nl_condition(self, A: PointSet, S: PointSet, ell: Optional[int] = None,
                            progress_callback: Optional[Callable] = None) -> CoverReport:
        """
        验证 (n,ℓ) 投影条件：对每个 x ∈ S 存在同一个 r，
        对所有 I ∈ C(n,ℓ) 与 σ ∈ {-1,1}^ℓ 有 x_I + rσ ∈ A

        Args:
            A: ℓ 维点集
            S: n 维点集
            ell: ℓ，默认取 A 的维数
        """
        if ell is None:
            ell = A.dim
        if ell is None:
            # A 为空：任何 ℓ 下都没有见证
            failures = list(S.sorted_points())
            if failures:
                logger.info(f"投影集为空: {len(failures)} 个点没有见证半径")
            return CoverReport(not failures, {}, failures)
        n = S.dim if S.dim is not None else ell
        if not 0 < ell <= n:
            raise ValueError(f"ℓ 必须满足 0 < ℓ <= n: ℓ={ell}, n={n}")
        A.check_dim(ell, "投影")
        bounds = A.bounds()
        return self._verify(S, lambda x: self.nl_radius(A, x, ell, bounds), progress_callback)

    def verify_orthoplex_cover(self, B: PointSet, S: PointSet,
                               progress_callback: Optional[Callable] = None) -> CoverReport:
        """验证 B 在 S 的每个点周围都含有正轴体顶点 x ± r e_i"""
        S.check_dim(B.dim, "覆盖集")
        bounds = B.bounds()
        return self._verify(S, lambda x: self.orthoplex_radius(B, x, bounds), progress_callback)


def default_verifier() -> CoverVerifier:
    """按配置（含 SKELETAL_THREADS）创建验证器"""
    return CoverVerifier(max_workers=config.threads())


def covering_radius(B: PointSet, x: Sequence[int], k: int) -> Optional[int]:
    return CoverVerifier().covering_radius(B, x, k)


def verify_cover(B: PointSet, S: PointSet, k: int,
                 progress_callback: Optional[Callable] = None) -> CoverReport:
    return default_verifier().verify_cover(B, S, k, progress_callback)


def verify_nl_condition(A: PointSet, S: PointSet, ell: Optional[int] = None,
                        progress_callback: Optional[Callable] = None) -> CoverReport:
    return default_verifier().verify_nl_condition(A, S, ell, progress_callback)


def verify_orthoplex_cover(B: PointSet, S: PointSet,
                           progress_callback: Optional[Callable] = None) -> CoverReport:
    return default_verifier().verify_orthoplex_cover(B, S, progress_callback)
