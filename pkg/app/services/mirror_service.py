"""Frobenius 해, 거울 사상, Yukawa 결합, 인스턴톤 수 추출 서비스."""

import logging
from fractions import Fraction

from app.core.exceptions import (
    FrobeniusRecursionException,
    NonIntegralInstantonException,
    ResidualLogarithmException,
    SeriesPreconditionException,
)
from app.models.mirror import (
    FrobeniusBasis,
    InstantonTable,
    MirrorMapData,
    SolutionResidual,
    YukawaSeries,
)
from app.models.operator import DiffOp, DPolynomial
from app.models.series import LogSeries, PowerSeries
from app.services.series_service import SeriesService

logger = logging.getLogger(__name__)

# 최대 단일 모노드로미 (MUM): 지표 근 0 의 중복도
MUM_MULTIPLICITY = 4


def _epsilon_series(poly: DPolynomial, n: int) -> PowerSeries:
    """P(n + ε) 를 ε^MUM_MULTIPLICITY 에서 자른 급수로"""
    shifted = poly.shift(n)
    return PowerSeries(shifted.coeffs[:MUM_MULTIPLICITY], MUM_MULTIPLICITY - 1)


class MirrorService:
    """MUM 연산자의 해로부터 거울 사상과 인스턴톤 수를 계산합니다."""

    @staticmethod
    def frobenius_solve(op: DiffOp, trunc_order: int) -> FrobeniusBasis:
        """
        Frobenius 방법으로 I_0..I_3 을 구합니다.

        ansatz Σ_n a_n(ε) q^{n+ε} 를 Q[ε]/ε^4 에서 풀면
        a_0 = 1, a_n = -Σ_{d≥1} P_d(n-d+ε) a_{n-d} / P_0(n+ε).
        a_n(ε) = Σ_i S_i[n] ε^i 일 때 I_k = Σ_j (ln q)^j / j! · S_{k-j}.

        Args:
            op: q^0 슬라이스가 D^4 로 나누어지는 연산자
            trunc_order: q^N 까지 계산

        Raises:
            FrobeniusRecursionException: 지표 근 0 의 중복도 < 4, 또는 n ≥ 1 에서 P_0(n) = 0
        """
        lead = op.slice(0)
        if lead.is_zero() or any(lead.coefficient(k) for k in range(MUM_MULTIPLICITY)):
            raise FrobeniusRecursionException(
                f"q^0 slice {lead.render()} is not divisible by D^{MUM_MULTIPLICITY}"
            )

        coefficients = [PowerSeries.constant(1, MUM_MULTIPLICITY - 1)]
        for n in range(1, trunc_order + 1):
            denominator = _epsilon_series(lead, n)
            if not denominator[0]:
                raise FrobeniusRecursionException(f"indicial polynomial vanishes at {n}")
            total = PowerSeries.zero(MUM_MULTIPLICITY - 1)
            for d in range(1, min(n, op.q_degree) + 1):
                if not op.slice(d).is_zero():
                    total = total + _epsilon_series(op.slice(d), n - d) * coefficients[n - d]
            coefficients.append(-total * SeriesService.invert_unit(denominator))

        holomorphic = tuple(
            PowerSeries((a[i] for a in coefficients), trunc_order) for i in range(MUM_MULTIPLICITY)
        )
        solutions = tuple(
            LogSeries([holomorphic[k - j] for j in range(k + 1)]) for k in range(MUM_MULTIPLICITY)
        )
        logger.info("Frobenius basis computed to q^%d", trunc_order)
        return FrobeniusBasis(holomorphic=holomorphic, solutions=solutions)

    @staticmethod
    def mirror_map(basis: FrobeniusBasis) -> MirrorMapData:
        """
        Q(q) = q·exp((I_1 - ln q·I_0)/I_0) 와 그 역 q(Q).

        Q(q) 는 q^{N+1} 까지 알려집니다.
        """
        s0, s1 = basis.holomorphic[0], basis.holomorphic[1]
        t_series = SeriesService.divide(s1, s0)
        Q_of_q = SeriesService.exp(t_series).shift(1)
        q_of_Q = SeriesService.revert(Q_of_q)
        return MirrorMapData(t_series=t_series, Q_of_q=Q_of_q, q_of_Q=q_of_Q)

    @staticmethod
    def transported_ratio(basis: FrobeniusBasis, mirror: MirrorMapData, k: int) -> LogSeries:
        """y_k = I_k / I_0 를 Q 좌표로"""
        ratio = basis.solution(k) * SeriesService.invert_unit(basis.holomorphic[0])
        return SeriesService.substitute_log(ratio, mirror.q_of_Q)

    @staticmethod
    def yukawa(basis: FrobeniusBasis, mirror: MirrorMapData, constant: Fraction = Fraction(14)) -> YukawaSeries:
        """
        R = (Q d/dQ)^2 (I_2/I_0), K = constant · R / R(0).

        Raises:
            ResidualLogarithmException: R 에 ln Q 항이 남는 경우
            SeriesPreconditionException: R(0) = 0
        """
        y2 = MirrorService.transported_ratio(basis, mirror, 2)
        residue = y2.theta().theta()
        if not residue.is_log_free():
            raise ResidualLogarithmException(residue.log_degree)
        numerator = residue.part(0)
        if not numerator[0]:
            raise SeriesPreconditionException("yukawa", "numerator has zero constant term")
        K = numerator * (Fraction(constant) / numerator[0])
        return YukawaSeries(K=K, numerator=numerator)

    @staticmethod
    def instanton_extract(
        yukawa: YukawaSeries, max_degree: int, constant: Fraction = Fraction(14)
    ) -> InstantonTable:
        """
        K = constant + Σ n_d d^3 Q^d/(1-Q^d) 에서 n_d 를 재귀적으로 구합니다.

        n_N = (c_N - Σ_{d|N, d<N} d^3 n_d) / N^3, c_N 은 K 의 Q^N 계수.

        Raises:
            SeriesPreconditionException: K(0) != constant
            NonIntegralInstantonException: n_N 이 정수가 아닌 경우
        """
        K = yukawa.K
        if K[0] != constant:
            raise SeriesPreconditionException("instanton_extract", f"K(0) = {K[0]} != {constant}")
        numbers: list[int] = []
        for N in range(1, max_degree + 1):
            lower = sum((d**3 * numbers[d - 1] for d in range(1, N) if N % d == 0), 0)
            value = (K[N] - lower) / Fraction(N**3)
            if value.denominator != 1:
                raise NonIntegralInstantonException(N, value)
            numbers.append(int(value))
        return InstantonTable(numbers=tuple(numbers))

    @staticmethod
    def three_point_numbers(table: InstantonTable) -> list[int]:
        """<p,p,p>_d = Σ_{k|d} k^3 n_k"""
        size = len(table.numbers)
        return [
            sum(k**3 * table.n(k) for k in range(1, d + 1) if d % k == 0) for d in range(1, size + 1)
        ]

    @staticmethod
    def _residual(name: str, y: LogSeries, inverse_K: PowerSeries) -> SolutionResidual:
        value = (y.theta().theta() * inverse_K).theta().theta()
        first = None
        for j, part in enumerate(value.parts):
            valuation = part.valuation()
            if valuation is not None:
                first = (j, valuation)
                break
        return SolutionResidual(
            name=name, annihilated=first is None, verified_order=value.trunc_order, first_nonzero=first
        )

    @staticmethod
    def verify_theorem1(basis: FrobeniusBasis, mirror: MirrorMapData, yukawa: YukawaSeries) -> list[SolutionResidual]:
        """
        D^2 (1/K) D^2 y = 0 (D = Q d/dQ) 을 y ∈ {1, ln Q, y_2, y_3} 에 대해 확인합니다.

        실패는 예외가 아니라 잔차로 보고합니다.
        """
        order = yukawa.trunc_order
        inverse_K = SeriesService.invert_unit(yukawa.K)
        candidates = [
            ("1", LogSeries.from_series(PowerSeries.constant(1, order))),
            ("ln Q", LogSeries.log_q(order)),
            ("y2", MirrorService.transported_ratio(basis, mirror, 2)),
            ("y3", MirrorService.transported_ratio(basis, mirror, 3)),
        ]
        residuals = [MirrorService._residual(name, y, inverse_K) for name, y in candidates]
        for residual in residuals:
            logger.info(
                "%s: annihilated=%s through Q^%d", residual.name, residual.annihilated, residual.verified_order
            )
        return residuals
