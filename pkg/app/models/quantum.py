"""
양자 곱셈 행렬, 순환 벡터, 기본해 모델

행렬은 Fraction을 담은 numpy object 배열이며, 열 j 는 p * Δ_j 의 좌표입니다.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from app.models.series import LogSeries, PowerSeries


def zeros(rows: int, cols: int | None = None) -> np.ndarray:
    shape = (rows,) if cols is None else (rows, cols)
    return np.full(shape, Fraction(0), dtype=object)


def identity(size: int) -> np.ndarray:
    matrix = zeros(size, size)
    for i in range(size):
        matrix[i, i] = Fraction(1)
    return matrix


def is_zero_array(array: np.ndarray) -> bool:
    return not any(value for value in array.flat)


@dataclass(frozen=True, eq=False)
class QuantumMatrix:
    """M(q) = Σ_e M_e q^e (p 에 의한 small quantum 곱셈)"""

    slices: tuple[np.ndarray, ...]

    @property
    def dimension(self) -> int:
        return self.slices[0].shape[0]

    @property
    def q_degree(self) -> int:
        return len(self.slices) - 1

    def slice(self, e: int) -> np.ndarray:
        if 0 <= e < len(self.slices):
            return self.slices[e]
        return zeros(self.dimension, self.dimension)

    def nonzero_entries(self, e: int) -> list[tuple[int, int, Fraction]]:
        matrix = self.slice(e)
        size = self.dimension
        return [(r, c, matrix[r, c]) for r in range(size) for c in range(size) if matrix[r, c]]


@dataclass(frozen=True, eq=False)
class CyclicVectors:
    """
    v_0 = 1, v_{k+1} = D v_k + M v_k

    vectors[k][e] 는 v_k 의 q^e 계수 벡터입니다 (deg_q v_k ≤ 2k).
    """

    vectors: tuple[tuple[np.ndarray, ...], ...]

    def __len__(self) -> int:
        return len(self.vectors)

    def degree(self, k: int) -> int:
        return len(self.vectors[k]) - 1

    def component(self, k: int, e: int) -> np.ndarray:
        polys = self.vectors[k]
        if 0 <= e < len(polys):
            return polys[e]
        return zeros(polys[0].shape[0])


@dataclass(frozen=True, eq=False)
class FundamentalSolution:
    """
    S = Φ(q) q^{M_0}, Φ = Σ_d Φ_d q^d

    log_blocks[j][d] = Φ_d · M_0^j 이며 S 의 (ln q)^j / j! 부분입니다.
    """

    log_blocks: tuple[tuple[np.ndarray, ...], ...]
    trunc_order: int

    @property
    def dimension(self) -> int:
        return self.log_blocks[0][0].shape[0]

    def entry(self, row: int, col: int) -> LogSeries:
        parts = [
            PowerSeries((block[d][row, col] for d in range(self.trunc_order + 1)), self.trunc_order)
            for block in self.log_blocks
        ]
        return LogSeries(parts)

    def column(self, col: int) -> list[LogSeries]:
        return [self.entry(row, col) for row in range(self.dimension)]


def nilpotent_powers(matrix: np.ndarray) -> list[np.ndarray]:
    """nilpotent 행렬 N 의 거듭제곱 I, N, N^2, ... (0 이 되기 직전까지)"""
    powers = [identity(matrix.shape[0])]
    while True:
        following = powers[-1].dot(matrix)
        if is_zero_array(following):
            return powers
        powers.append(following)
