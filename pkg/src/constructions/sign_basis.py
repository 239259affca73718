#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
符号向量基与整数化逆矩阵
Sign Vector Basis
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple

Matrix = List[List[int]]


@dataclass(frozen=True)
class SignBasis:
    """
    σ⁽¹⁾ = (1,…,1)，σ⁽ⁱ⁾ = (1,…,1) 且第 i 位为 -1（i >= 2）

    inverse_scaled = scale · M⁻¹，M 的第 i 列为 σ⁽ⁱ⁾，因此
    inverse_scaled · σ⁽ⁱ⁾ = scale · e_i。
    """
    vectors: Tuple[Tuple[int, ...], ...]
    inverse_scaled: Tuple[Tuple[int, ...], ...]
    scale: int

    @property
    def matrix(self) -> Matrix:
        """以 σ⁽ⁱ⁾ 为列的矩阵 M"""
        n = len(self.vectors)
        return [[self.vectors[c][r] for c in range(n)] for r in range(n)]

    def apply(self, point: Sequence[int]) -> Tuple[int, ...]:
        """g(x) = inverse_scaled · x"""
        return tuple(sum(a * b for a, b in zip(row, point)) for row in self.inverse_scaled)


def invert_exact(matrix: Sequence[Sequence[int]]) -> List[List[Fraction]]:
    """有理数 Gauss-Jordan 消元求逆"""
    n = len(matrix)
    work = [[Fraction(v) for v in row] + [Fraction(int(r == c)) for c in range(n)]
            for r, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise ValueError("矩阵奇异，无法求逆")
        work[col], work[pivot] = work[pivot], work[col]
        head = work[col][col]
        work[col] = [v / head for v in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    return [row[n:] for row in work]


def sign_vectors(n: int) -> List[Tuple[int, ...]]:
    vectors = [tuple([1] * n)]
    for i in range(1, n):
        vectors.append(tuple(-1 if j == i else 1 for j in range(n)))
    return vectors


def sign_basis(n: int) -> SignBasis:
    """
    构造符号向量基及其整数化逆矩阵

    Args:
        n: 维数

    Returns:
        SignBasis，scale 为使 scale·M⁻¹ 全为整数的最小正整数
    """
    if n < 1:
        raise ValueError(f"维数必须为正整数: n={n}")
    vectors = sign_vectors(n)
    matrix = [[vectors[c][r] for c in range(n)] for r in range(n)]
    inverse = invert_exact(matrix)
    scale = lcm(*(v.denominator for row in inverse for v in row))
    inverse_scaled = tuple(tuple(int(v * scale) for v in row) for row in inverse)
    return SignBasis(tuple(vectors), inverse_scaled, scale)
