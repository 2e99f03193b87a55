"""
미분 연산자 모델

- DPolynomial: 기호 D 에 대한 가환 다항식 (계수는 낮은 차수부터)
- DiffOp: Ore 대수 Q[q]<D> 의 원소, 정규형 Σ_d q^d P_d(D) (q 가 항상 D 의 왼쪽)

교환 관계 Dq - qD = q 에 의해 D^k q^d = q^d (D+d)^k 가 성립합니다.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, Union

from app.core.exceptions import OperatorDivisionException
from app.models.series import Scalar, format_scalar


def _format_coeff(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class DPolynomial:
    """D 에 대한 가환 다항식. 불변 객체이며 뒤쪽 0 계수는 제거됩니다."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        values = [Fraction(c) for c in coeffs]
        while values and not values[-1]:
            values.pop()
        self._coeffs: tuple[Fraction, ...] = tuple(values)

    @classmethod
    def constant(cls, value: Scalar) -> DPolynomial:
        return cls([value])

    @classmethod
    def monomial(cls, degree: int, value: Scalar = 1) -> DPolynomial:
        return cls([0] * degree + [value])

    @classmethod
    def linear(cls, root_shift: Scalar) -> DPolynomial:
        """D + root_shift"""
        return cls([root_shift, 1])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """0 다항식의 차수는 -1"""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Fraction(0)

    def leading_coefficient(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def __add__(self, other: DPolynomial) -> DPolynomial:
        size = max(len(self._coeffs), len(other._coeffs))
        return DPolynomial(self.coefficient(k) + other.coefficient(k) for k in range(size))

    def __neg__(self) -> DPolynomial:
        return DPolynomial(-c for c in self._coeffs)

    def __sub__(self, other: DPolynomial) -> DPolynomial:
        return self + (-other)

    def __mul__(self, other: Union[DPolynomial, Scalar]) -> DPolynomial:
        if not isinstance(other, DPolynomial):
            factor = Fraction(other)
            return DPolynomial(factor * c for c in self._coeffs)
        if self.is_zero() or other.is_zero():
            return DPolynomial()
        result = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if not a:
                continue
            for j, b in enumerate(other._coeffs):
                result[i + j] += a * b
        return DPolynomial(result)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> DPolynomial:
        result = DPolynomial.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def shift(self, a: Scalar) -> DPolynomial:
        """P(D) -> P(D + a), Horner 방식"""
        step = DPolynomial.linear(a)
        result = DPolynomial()
        for c in reversed(self._coeffs):
            result = result * step + DPolynomial.constant(c)
        return result

    def evaluate(self, x: Scalar) -> Fraction:
        value = Fraction(0)
        for c in reversed(self._coeffs):
            value = value * x + c
        return value

    def divmod(self, divisor: DPolynomial) -> tuple[DPolynomial, DPolynomial]:
        """긴 나눗셈. (몫, 나머지)"""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        remainder = list(self._coeffs)
        quotient = [Fraction(0)] * max(len(remainder) - divisor.degree, 0)
        lead = divisor.leading_coefficient()
        for k in range(len(quotient) - 1, -1, -1):
            factor = remainder[k + divisor.degree] / lead
            quotient[k] = factor
            if factor:
                for j, c in enumerate(divisor.coeffs):
                    remainder[k + j] -= factor * c
        return DPolynomial(quotient), DPolynomial(remainder[: divisor.degree])

    def exact_divide(self, divisor: DPolynomial, slice_index: int = 0) -> DPolynomial:
        quotient, remainder = self.divmod(divisor)
        if not remainder.is_zero():
            raise OperatorDivisionException(slice_index, remainder.render())
        return quotient

    def content(self) -> Fraction:
        """정수화 후 계수의 최대공약수를 유리수로 표현 (P = content * primitive)"""
        if self.is_zero():
            return Fraction(0)
        denominator = lcm(*(c.denominator for c in self._coeffs))
        numerator = gcd(*(int(c * denominator) for c in self._coeffs))
        return Fraction(numerator, denominator)

    def render(self, symbol: str = "D") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[k]
            if not c:
                continue
            if k == 0:
                terms.append(_format_coeff(c))
            else:
                power = symbol if k == 1 else f"{symbol}^{k}"
                terms.append(power if c == 1 else f"{_format_coeff(c)}*{power}")
        return " + ".join(terms).replace("+ -", "- ")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"DPolynomial({self.render()})"


class DiffOp:
    """
    Ore 대수 Q[q]<D> 의 원소

    slices[d] 는 q^d 의 계수 다항식 P_d(D) 입니다 (정규형 Σ_d q^d P_d(D)).
    """

    __slots__ = ("_slices",)

    def __init__(self, slices: Sequence[DPolynomial] = ()):
        values = list(slices)
        while values and values[-1].is_zero():
            values.pop()
        self._slices: tuple[DPolynomial, ...] = tuple(values)

    @classmethod
    def from_monomials(cls, terms: Mapping[tuple[int, int], Scalar]) -> DiffOp:
        """{(d, k): c} 형태의 c * q^d * D^k 합으로부터 생성"""
        if not terms:
            return cls()
        q_degree = max(d for d, _ in terms)
        rows: list[dict[int, Fraction]] = [dict() for _ in range(q_degree + 1)]
        for (d, k), c in terms.items():
            rows[d][k] = rows[d].get(k, Fraction(0)) + Fraction(c)
        slices = []
        for row in rows:
            top = max(row, default=-1)
            slices.append(DPolynomial(row.get(k, 0) for k in range(top + 1)))
        return cls(slices)

    @classmethod
    def identity(cls) -> DiffOp:
        return cls([DPolynomial.constant(1)])

    @classmethod
    def theta(cls) -> DiffOp:
        return cls([DPolynomial.monomial(1)])

    @classmethod
    def q(cls) -> DiffOp:
        return cls([DPolynomial(), DPolynomial.constant(1)])

    @property
    def slices(self) -> tuple[DPolynomial, ...]:
        return self._slices

    @property
    def q_degree(self) -> int:
        return len(self._slices) - 1

    @property
    def order(self) -> int:
        return max((s.degree for s in self._slices), default=-1)

    def slice(self, d: int) -> DPolynomial:
        if 0 <= d < len(self._slices):
            return self._slices[d]
        return DPolynomial()

    def is_zero(self) -> bool:
        return not self._slices

    def coefficient(self, d: int, k: int) -> Fraction:
        return self.slice(d).coefficient(k)

    def monomials(self) -> dict[tuple[int, int], Fraction]:
        return {
            (d, k): c
            for d, poly in enumerate(self._slices)
            for k, c in enumerate(poly.coeffs)
            if c
        }

    def __add__(self, other: DiffOp) -> DiffOp:
        size = max(len(self._slices), len(other._slices))
        return DiffOp([self.slice(d) + other.slice(d) for d in range(size)])

    def __neg__(self) -> DiffOp:
        return DiffOp([-s for s in self._slices])

    def __sub__(self, other: DiffOp) -> DiffOp:
        return self + (-other)

    def scale(self, factor: Scalar) -> DiffOp:
        return DiffOp([s * factor for s in self._slices])

    def __matmul__(self, other: DiffOp) -> DiffOp:
        """합성 self∘other: (q^a A)(q^b B) = q^{a+b} A(D+b) B(D)"""
        if self.is_zero() or other.is_zero():
            return DiffOp()
        result = [DPolynomial() for _ in range(len(self._slices) + len(other._slices) - 1)]
        for a, left in enumerate(self._slices):
            if left.is_zero():
                continue
            for b, right in enumerate(other._slices):
                if right.is_zero():
                    continue
                result[a + b] = result[a + b] + left.shift(b) * right
        return DiffOp(result)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self._slices == other._slices

    def __hash__(self) -> int:
        return hash(self._slices)

    def __repr__(self) -> str:
        return f"DiffOp({', '.join(f'q^{d}: {s.render()}' for d, s in enumerate(self._slices))})"

    def render_monomial(self) -> str:
        """"c * q^d * D^k" 항들의 합"""
        terms = [
            f"{format_scalar(c)} * q^{d} * D^{k}"
            for (d, k), c in sorted(self.monomials().items())
        ]
        return " + ".join(terms) if terms else "0"

    def render_collected(self) -> str:
        """Σ_k c_k(q) D^k"""
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.order, -1, -1):
            poly = DPolynomial(self.coefficient(d, k) for d in range(len(self._slices)))
            if poly.is_zero():
                continue
            terms.append(f"({poly.render('q')})*D^{k}")
        return " + ".join(terms)
