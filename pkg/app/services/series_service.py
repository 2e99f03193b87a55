"""멱급수 역원, exp/log, 합성, 역함수(reversion) 서비스."""

import logging
from fractions import Fraction
from math import factorial

from app.core.exceptions import SeriesPreconditionException
from app.models.series import LogSeries, PowerSeries

logger = logging.getLogger(__name__)


class SeriesService:
    """절단 멱급수에 대한 해석적 연산 모음."""

    @staticmethod
    def invert_unit(f: PowerSeries) -> PowerSeries:
        """
        상수항이 0이 아닌 급수의 곱셈 역원을 구합니다.

        b_0 = 1/a_0, b_n = -(1/a_0) Σ_{k=1}^{n} a_k b_{n-k}

        Args:
            f: 상수항이 0이 아닌 급수

        Returns:
            f · g = 1 (절단 차수까지) 인 g

        Raises:
            SeriesPreconditionException: f(0) = 0
        """
        a = f.coeffs
        if not a[0]:
            raise SeriesPreconditionException("invert_unit", "zero constant term")
        inverse_lead = 1 / a[0]
        b = [inverse_lead]
        for n in range(1, f.trunc_order + 1):
            total = sum((a[k] * b[n - k] for k in range(1, n + 1) if a[k]), Fraction(0))
            b.append(-inverse_lead * total)
        return PowerSeries(b, f.trunc_order)

    @staticmethod
    def divide(f: PowerSeries, g: PowerSeries) -> PowerSeries:
        return f * SeriesService.invert_unit(g)

    @staticmethod
    def exp(f: PowerSeries) -> PowerSeries:
        """
        상수항이 0인 급수의 exp.

        g = exp(f) 는 Dg = (Df) g 를 만족하므로 n g_n = Σ_{k=1}^{n} k f_k g_{n-k}.

        Raises:
            SeriesPreconditionException: f(0) != 0
        """
        a = f.coeffs
        if a[0]:
            raise SeriesPreconditionException("exp", "constant term must be zero")
        g = [Fraction(1)]
        for n in range(1, f.trunc_order + 1):
            total = sum((k * a[k] * g[n - k] for k in range(1, n + 1) if a[k]), Fraction(0))
            g.append(total / n)
        return PowerSeries(g, f.trunc_order)

    @staticmethod
    def log(f: PowerSeries) -> PowerSeries:
        """
        상수항이 1인 급수의 log.

        h = log(f) 는 f·Dh = Df 를 만족하므로
        n h_n = n f_n - Σ_{k=1}^{n-1} k h_k f_{n-k}.

        Raises:
            SeriesPreconditionException: f(0) != 1
        """
        a = f.coeffs
        if a[0] != 1:
            raise SeriesPreconditionException("log", "constant term must be 1")
        h = [Fraction(0)]
        for n in range(1, f.trunc_order + 1):
            total = n * a[n] - sum((k * h[k] * a[n - k] for k in range(1, n) if h[k]), Fraction(0))
            h.append(total / n)
        return PowerSeries(h, f.trunc_order)

    @staticmethod
    def compose(f: PowerSeries, g: PowerSeries) -> PowerSeries:
        """
        f(g(q)) 를 Horner 방식으로 계산합니다.

        g 의 valuation 이 v 이면 f 의 O(q^{N+1}) 오차는 O(q^{(N+1)v}) 가 되므로
        결과 절단 차수는 min(g.trunc_order, (f.trunc_order + 1)·v - 1) 입니다.

        Args:
            f: 바깥 급수
            g: 상수항이 0인 안쪽 급수

        Raises:
            SeriesPreconditionException: g(0) != 0
        """
        if g[0]:
            raise SeriesPreconditionException("compose", "inner series has a nonzero constant term")
        valuation = g.valuation()
        if valuation is None:
            valuation = g.trunc_order + 1
        order = min(g.trunc_order, (f.trunc_order + 1) * valuation - 1)
        inner = g.truncate(order)

        result = PowerSeries.zero(order)
        for k in range(min(f.trunc_order, order), -1, -1):
            result = result * inner + f[k]
        return result

    @staticmethod
    def revert(g: PowerSeries) -> PowerSeries:
        """
        compose(g, h) = q 인 역급수 h 를 Lagrange 반전으로 구합니다.

        h_n = (1/n) [w^{n-1}] (w / g(w))^n

        Args:
            g: g(0) = 0, g'(0) != 0 인 급수

        Returns:
            g 와 같은 절단 차수의 역급수

        Raises:
            SeriesPreconditionException: 조건 위반
        """
        if g[0]:
            raise SeriesPreconditionException("revert", "nonzero constant term")
        if g.trunc_order < 1 or not g[1]:
            raise SeriesPreconditionException("revert", "linear coefficient must be nonzero")

        phi = SeriesService.invert_unit(g.divide_by_q())  # w / g(w)
        h = [Fraction(0)]
        power = PowerSeries.constant(1, phi.trunc_order)
        for n in range(1, g.trunc_order + 1):
            power = power * phi
            h.append(power[n - 1] / n)
        return PowerSeries(h, g.trunc_order)

    @staticmethod
    def substitute_log(f: LogSeries, q_of_Q: PowerSeries) -> LogSeries:
        """
        q 에 대한 로그 급수를 Q 좌표로 옮깁니다.

        ln q = ln Q + λ(Q), λ = log(q(Q)/Q) 이므로
        새 part_i = Σ_{j≥i} part_j(q(Q)) · λ^{j-i} / (j-i)!

        Args:
            f: Σ_j part_j(q) (ln q)^j / j!
            q_of_Q: Q + O(Q^2) 인 좌표 변환

        Raises:
            SeriesPreconditionException: q_of_Q 가 Q + O(Q^2) 꼴이 아닌 경우
        """
        if q_of_Q[0] or q_of_Q[1] != 1:
            raise SeriesPreconditionException("substitute_log", "coordinate change must be Q + O(Q^2)")
        shift = SeriesService.log(q_of_Q.divide_by_q())
        composed = [SeriesService.compose(part, q_of_Q) for part in f.parts]
        order = min(min(c.trunc_order for c in composed), shift.trunc_order)

        powers = [PowerSeries.constant(1, order)]
        for _ in range(len(composed)):
            powers.append(powers[-1] * shift)

        parts = []
        for i in range(len(composed)):
            total = PowerSeries.zero(order)
            for j in range(i, len(composed)):
                total = total + composed[j] * powers[j - i] * Fraction(1, factorial(j - i))
            parts.append(total)
        logger.debug("substitute_log: %d parts transported to order %d", len(parts), order)
        return LogSeries(parts)
