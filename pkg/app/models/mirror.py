"""Frobenius 해 기저, 거울 사상, Yukawa 급수, 인스턴톤 테이블 모델."""

from dataclasses import dataclass

from app.models.series import LogSeries, PowerSeries


@dataclass(frozen=True)
class FrobeniusBasis:
    """
    I_k = Σ_{j≤k} (ln q)^j / j! · S_{k-j}(q), S_i(0) = δ_{i0}

    holomorphic 는 S_0, ..., S_3 입니다.
    """

    holomorphic: tuple[PowerSeries, ...]
    solutions: tuple[LogSeries, ...]

    @property
    def trunc_order(self) -> int:
        return self.holomorphic[0].trunc_order

    def solution(self, k: int) -> LogSeries:
        return self.solutions[k]


@dataclass(frozen=True)
class MirrorMapData:
    """t = I_1/I_0 - ln q, Q(q) = q·exp(t), q(Q) 는 그 역"""

    t_series: PowerSeries
    Q_of_q: PowerSeries
    q_of_Q: PowerSeries


@dataclass(frozen=True)
class YukawaSeries:
    """K(Q) = constant + Σ n_d d^3 Q^d / (1 - Q^d)"""

    K: PowerSeries
    numerator: PowerSeries

    @property
    def trunc_order(self) -> int:
        return self.K.trunc_order


@dataclass(frozen=True)
class InstantonTable:
    numbers: tuple[int, ...]

    def n(self, degree: int) -> int:
        return self.numbers[degree - 1]


@dataclass(frozen=True)
class SolutionResidual:
    """D^2 (1/K) D^2 y 의 잔차"""

    name: str
    annihilated: bool
    verified_order: int
    first_nonzero: tuple[int, int] | None = None  # (ln Q 차수, Q 차수)
