#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
指数代数（精确有理数）
Exponent Algebra

β(n,k) = 1 - (n-k)/(2n²) 是立方体 k-骨架覆盖的尖锐基数指数，也是自举映射
f(α) = R(α)k + (2n-1)(n-k)/(2n²) 的不动点。
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from utils.config import config
from utils.formats import rational_str

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


def _check_order(n: int, k: int):
    if n < 1 or not 0 <= k < n:
        raise ValueError(f"参数必须满足 0 <= k < n: n={n}, k={k}")


def beta(n: int, k: int) -> Fraction:
    """β(n,k) = 1 - (n-k)/(2n²)"""
    _check_order(n, k)
    return 1 - Fraction(n - k, 2 * n * n)


def nl_exponent(n: int, ell: int) -> Fraction:
    """(n,ℓ) 投影条件下的指数 ℓ(2n-1)/(2n²)"""
    if n < 1 or not 0 < ell <= n:
        raise ValueError(f"参数必须满足 0 < ℓ <= n: n={n}, ℓ={ell}")
    return Fraction(ell * (2 * n - 1), 2 * n * n)


def orthoplex_exponent(n: int) -> Fraction:
    """正轴体顶点覆盖的指数 (2n-1)/(2n)"""
    if n < 1:
        raise ValueError(f"维数必须为正整数: n={n}")
    return Fraction(2 * n - 1, 2 * n)


def packing_exponent(n: int, k: int, s: Rational) -> Fraction:
    """packing 维数下界 k + (n-k)(2n-1)s/(2n²)，s 为 S 的 packing 维数"""
    _check_order(n, k)
    return k + Fraction(n - k) * (2 * n - 1) * Fraction(s) / (2 * n * n)


def box_exponent(n: int, k: int, s: Rational) -> Fraction:
    """上盒维数下界 max{k, β(n,k)s}"""
    return max(Fraction(k), beta(n, k) * Fraction(s))


def vertex_lower_bound(n: int, size: int) -> float:
    """n 维顶点覆盖的显式下界 |S|^{(2n-1)/(2n)} / 2^{n-1}"""
    if n < 1:
        raise ValueError(f"维数必须为正整数: n={n}")
    return size ** ((2 * n - 1) / (2 * n)) / 2 ** (n - 1)


def r_alpha(n: int, k: int, alpha: Rational) -> Fraction:
    """
    R(α) = (2n² - (2n-1)(n-k)) / (2n² (k + n(1-α)))

    Args:
        n: 维数
        k: 骨架阶数
        alpha: 当前好指数 α ∈ [0,1]

    Returns:
        精确有理数
    """
    _check_order(n, k)
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError(f"α 必须位于 [0,1]: {alpha}")
    denominator = k + n * (1 - alpha)
    if denominator == 0:
        raise ValueError(f"k={k} 时 α=1 使 R(α) 的分母为零")
    return Fraction(2 * n * n - (2 * n - 1) * (n - k)) / (2 * n * n * denominator)


def f_alpha(n: int, k: int, alpha: Rational) -> Fraction:
    """
    自举映射 f(α) = R(α)k + (2n-1)(n-k)/(2n²)

    同时检查恒等式 f(α) = 1 - R(α)n(1-α) 精确成立。
    """
    alpha = Fraction(alpha)
    R = r_alpha(n, k, alpha)
    value = R * k + Fraction((2 * n - 1) * (n - k), 2 * n * n)
    if value != 1 - R * n * (1 - alpha):
        raise ArithmeticError(f"f(α) 的两种形式不一致: n={n}, k={k}, α={alpha}")
    return value


@dataclass
class ExponentReport:
    """迭代报告：trace[m] = f^m(0)"""
    n: int
    k: int
    beta: Fraction
    trace: List[Fraction] = field(default_factory=list)
    converged_at: Optional[int] = None
    tolerance: float = 1e-9

    @property
    def converged(self) -> bool:
        return self.converged_at is not None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n,
            'k': self.k,
            'beta': rational_str(self.beta),
            'converged': self.converged,
            'converged_at': self.converged_at,
            'tolerance': self.tolerance,
            'trace': [rational_str(value) for value in self.trace],
        }


def iterate_f(n: int, k: int, tolerance: Optional[float] = None,
              max_steps: Optional[int] = None) -> ExponentReport:
    """
    从 α_0 = 0 迭代 f，直到 |α_m - β| < tolerance 或达到 max_steps

    未收敛时不抛异常，报告 converged=False 并记录警告。

    Args:
        n: 维数
        k: 骨架阶数
        tolerance: 收敛阈值，默认取配置 iterate_tolerance
        max_steps: 最大步数，默认取配置 iterate_max_steps

    Returns:
        ExponentReport
    """
    if tolerance is None:
        tolerance = config.get('iterate_tolerance')
    if max_steps is None:
        max_steps = config.get('iterate_max_steps')
    if tolerance <= 0:
        raise ValueError(f"收敛阈值必须为正数: {tolerance}")

    target = beta(n, k)
    threshold = Fraction(tolerance)
    report = ExponentReport(n, k, target, [Fraction(0)], tolerance=tolerance)
    alpha = Fraction(0)
    for step in range(1, max_steps + 1):
        alpha = f_alpha(n, k, alpha)
        report.trace.append(alpha)
        if abs(alpha - target) < threshold:
            report.converged_at = step
            break
    else:
        logger.warning(f"f 迭代在 {max_steps} 步内未收敛: n={n}, k={k}")
    return report


def exponent_table(max_n: int, tolerance: Optional[float] = None,
                   max_steps: Optional[int] = None) -> List[List[Any]]:
    """
    所有 1 <= n <= max_n、0 <= k < n 的 β 与收敛步数

    Returns:
        行：n, k, beta_num, beta_den, converged_at（未收敛为空串）
    """
    rows = []
    for n in range(1, max_n + 1):
        for k in range(n):
            report = iterate_f(n, k, tolerance, max_steps)
            rows.append([n, k, report.beta.numerator, report.beta.denominator,
                         '' if report.converged_at is None else report.converged_at])
    return rows


EXPONENT_TABLE_HEADER = ['n', 'k', 'beta_num', 'beta_den', 'converged_at']
