"""Ore 대수 Q[q]<D> 연산 서비스: 합성, 급수 적용, hyperplane twist, 슬라이스 나눗셈."""

import logging
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from app.core.exceptions import InsufficientOrderException, ZeroOperatorException
from app.models.operator import DiffOp, DPolynomial
from app.models.series import LogSeries, PowerSeries

logger = logging.getLogger(__name__)


class OreService:
    """미분 연산자 정규형 위의 연산 모음."""

    @staticmethod
    def multiply(a: DiffOp, b: DiffOp) -> DiffOp:
        """
        합성 a∘b 의 정규형을 반환합니다.

        D^k q^d = q^d (D+d)^k 를 사용합니다.

        Example:
            >>> OreService.multiply(DiffOp.theta(), DiffOp.q())  # qD + q
        """
        return a @ b

    @staticmethod
    def apply(a: DiffOp, f: LogSeries) -> LogSeries:
        """
        연산자를 로그 급수에 적용합니다.

        각 슬라이스 P_d(D) 는 Horner 방식으로 D 를 반복 적용하고 q^d 만큼 이동합니다.
        q^d 곱은 알려진 차수를 올리기만 하므로 결과는 f 의 절단 차수까지 정확합니다.

        Args:
            a: 연산자
            f: 입력 로그 급수

        Returns:
            a(f)

        Raises:
            InsufficientOrderException: f 의 절단 차수 < a 의 q 차수
        """
        if f.trunc_order < a.q_degree:
            raise InsufficientOrderException(f.trunc_order, a.q_degree)
        result = LogSeries.from_series(PowerSeries.zero(f.trunc_order))
        for d, poly in enumerate(a.slices):
            if poly.is_zero():
                continue
            term = f * poly.coeffs[-1]
            for c in reversed(poly.coeffs[:-1]):
                term = term.theta() + f * c
            result = result + term.shift(d)
        return result

    @staticmethod
    def hyperplane_twist(a: DiffOp, multiplicity: int = 3) -> DiffOp:
        """
        Σ_d q^d P_d(D) -> Σ_d q^d P_d(D) ∏_{m=1}^{d} (D+m)^multiplicity

        q 차수는 그대로이고 q^d 슬라이스의 차수는 multiplicity·d 만큼 올라갑니다.
        """
        slices = []
        for d, poly in enumerate(a.slices):
            factor = DPolynomial.constant(1)
            for m in range(1, d + 1):
                factor = factor * DPolynomial.linear(m) ** multiplicity
            slices.append(poly * factor)
        return DiffOp(slices)

    @staticmethod
    def left_divide_exact(a: DiffOp, left: DPolynomial) -> DiffOp:
        """
        left∘R = a 인 R 을 슬라이스별로 구합니다.

        left∘q^d = q^d·left(D+d) 이므로 R_d = A_d / left(D+d) (가환 나눗셈).

        Raises:
            OperatorDivisionException: 어느 슬라이스에서든 나머지가 0이 아닌 경우
        """
        slices = [
            poly.exact_divide(left.shift(d), slice_index=d) for d, poly in enumerate(a.slices)
        ]
        logger.debug("left division by %s succeeded in %d slices", left.render(), len(slices))
        return DiffOp(slices)

    @staticmethod
    def normalize_primitive(a: DiffOp) -> DiffOp:
        """
        정수 계수, content 1, q^0 슬라이스(없으면 첫 비영 슬라이스) 최고차 계수가 양수가 되도록 정규화합니다.

        Raises:
            ZeroOperatorException: a = 0
        """
        if a.is_zero():
            raise ZeroOperatorException()
        coefficients = list(a.monomials().values())
        denominator = lcm(*(c.denominator for c in coefficients))
        numerator = gcd(*(int(c * denominator) for c in coefficients))
        scale = Fraction(denominator, numerator)
        lead_slice = next(s for s in a.slices if not s.is_zero())
        if lead_slice.leading_coefficient() < 0:
            scale = -scale
        return a.scale(scale)

    @staticmethod
    def scalar_ratio(a: DiffOp, b: DiffOp) -> Optional[Fraction]:
        """a = s·b 인 유일한 유리수 s. 없으면 None."""
        if a.is_zero() or b.is_zero():
            return None
        mono_a, mono_b = a.monomials(), b.monomials()
        if mono_a.keys() != mono_b.keys():
            return None
        first = next(iter(mono_b))
        ratio = mono_a[first] / mono_b[first]
        if all(mono_a[key] == ratio * value for key, value in mono_b.items()):
            return ratio
        return None

    @staticmethod
    def equal_up_to_scalar(a: DiffOp, b: DiffOp) -> bool:
        return OreService.scalar_ratio(a, b) is not None

    @staticmethod
    def expand_dpoly_form(coeff_list: Sequence[PowerSeries]) -> DiffOp:
        """
        Σ_k c_k(q) D^k (c_k 는 다항식) 를 슬라이스 정규형으로 펼칩니다.

        c_k(q) D^k 는 이미 q 가 왼쪽에 있으므로 교환 관계가 필요 없습니다.
        """
        terms: dict[tuple[int, int], Fraction] = {}
        for k, series in enumerate(coeff_list):
            for d, c in enumerate(series.coeffs):
                if c:
                    terms[(d, k)] = c
        return DiffOp.from_monomials(terms)

    @staticmethod
    def collect_dpoly_form(a: DiffOp) -> list[PowerSeries]:
        """expand_dpoly_form 의 역: 각 D^k 의 q-다항식 계수"""
        return [
            PowerSeries((a.coefficient(d, k) for d in range(a.q_degree + 1)), max(a.q_degree, 0))
            for k in range(a.order + 1)
        ]
