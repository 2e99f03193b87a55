"""
절단 멱급수(PowerSeries)와 로그 급수(LogSeries)

모든 계수는 Fraction이며, 절단 차수는 값의 일부로 명시적으로 저장됩니다.
절단 차수를 넘는 계수를 읽으면 예외가 발생합니다 (조용히 0을 돌려주지 않음).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, Union

from app.core.exceptions import (
    LogDegreeOverflowException,
    SeriesPreconditionException,
    SeriesTruncationException,
)

Scalar = Union[int, Fraction]

# 코호몰로지 환의 nilpotency 차수가 ln q 의 차수를 제한합니다.
MAX_LOG_DEGREE = 6


def format_scalar(value: Scalar) -> str:
    """Fraction을 "num/den" 문자열로 직렬화합니다."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_scalar(text: Union[str, int]) -> Fraction:
    """"num/den" 또는 정수 문자열을 Fraction으로 변환합니다."""
    return Fraction(text)


class PowerSeries:
    """
    q 에 대한 절단 멱급수 c_0 + c_1 q + ... + c_N q^N + O(q^{N+1})

    불변 객체입니다. 두 급수의 연산 결과는 더 작은 절단 차수를 가집니다.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar], trunc_order: int | None = None):
        values = [Fraction(c) for c in coeffs]
        if trunc_order is None:
            trunc_order = len(values) - 1
        if trunc_order < 0:
            raise SeriesPreconditionException("PowerSeries", "truncation order must be >= 0")
        values = values[: trunc_order + 1]
        values.extend([Fraction(0)] * (trunc_order + 1 - len(values)))
        self._coeffs: tuple[Fraction, ...] = tuple(values)

    @classmethod
    def zero(cls, trunc_order: int) -> PowerSeries:
        return cls([], trunc_order)

    @classmethod
    def constant(cls, value: Scalar, trunc_order: int) -> PowerSeries:
        return cls([value], trunc_order)

    @classmethod
    def variable(cls, trunc_order: int) -> PowerSeries:
        """급수 q 자체"""
        return cls([0, 1], trunc_order)

    @property
    def trunc_order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def __getitem__(self, index: int) -> Fraction:
        if index < 0:
            return Fraction(0)
        if index > self.trunc_order:
            raise SeriesTruncationException(index, self.trunc_order)
        return self._coeffs[index]

    def truncate(self, trunc_order: int) -> PowerSeries:
        if trunc_order > self.trunc_order:
            raise SeriesTruncationException(trunc_order, self.trunc_order)
        return PowerSeries(self._coeffs, trunc_order)

    def valuation(self) -> int | None:
        """첫 번째 0이 아닌 계수의 차수. 알려진 계수가 모두 0이면 None."""
        for index, value in enumerate(self._coeffs):
            if value:
                return index
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    # --- ring operations ---------------------------------------------------

    def _coerce(self, other: Union[PowerSeries, Scalar]) -> PowerSeries:
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries.constant(other, self.trunc_order)

    def __add__(self, other: Union[PowerSeries, Scalar]) -> PowerSeries:
        if isinstance(other, LogSeries):
            return NotImplemented
        other = self._coerce(other)
        order = min(self.trunc_order, other.trunc_order)
        return PowerSeries((self._coeffs[k] + other._coeffs[k] for k in range(order + 1)), order)

    __radd__ = __add__

    def __neg__(self) -> PowerSeries:
        return PowerSeries((-c for c in self._coeffs), self.trunc_order)

    def __sub__(self, other: Union[PowerSeries, Scalar]) -> PowerSeries:
        if isinstance(other, LogSeries):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> PowerSeries:
        return self._coerce(other) - self

    def __mul__(self, other: Union[PowerSeries, Scalar]) -> PowerSeries:
        if isinstance(other, LogSeries):
            return NotImplemented
        if not isinstance(other, PowerSeries):
            factor = Fraction(other)
            return PowerSeries((factor * c for c in self._coeffs), self.trunc_order)
        order = min(self.trunc_order, other.trunc_order)
        a, b = self._coeffs, other._coeffs
        result = [Fraction(0)] * (order + 1)
        for i in range(order + 1):
            if not a[i]:
                continue
            ai = a[i]
            for j in range(order + 1 - i):
                if b[j]:
                    result[i + j] += ai * b[j]
        return PowerSeries(result, order)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> PowerSeries:
        if exponent < 0:
            raise SeriesPreconditionException("power", "negative exponent")
        result = PowerSeries.constant(1, self.trunc_order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # --- q-adic operations -------------------------------------------------

    def shift(self, k: int) -> PowerSeries:
        """q^k 를 곱합니다. 절단 차수도 k 만큼 올라갑니다."""
        if k < 0:
            raise SeriesPreconditionException("shift", "use divide_by_q for negative shifts")
        return PowerSeries([Fraction(0)] * k + list(self._coeffs), self.trunc_order + k)

    def divide_by_q(self) -> PowerSeries:
        """q 로 나눕니다. 상수항이 0이어야 합니다."""
        if self._coeffs[0]:
            raise SeriesPreconditionException("divide_by_q", "nonzero constant term")
        if self.trunc_order < 1:
            raise SeriesPreconditionException("divide_by_q", "nothing known beyond the constant term")
        return PowerSeries(self._coeffs[1:], self.trunc_order - 1)

    def theta(self) -> PowerSeries:
        """D = q d/dq"""
        return PowerSeries((k * c for k, c in enumerate(self._coeffs)), self.trunc_order)

    # --- misc ---------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        terms = [f"{format_scalar(c)}*q^{k}" for k, c in enumerate(self._coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return f"PowerSeries({body} + O(q^{self.trunc_order + 1}))"


class LogSeries:
    """
    Σ_j parts[j] · (ln q)^j / j!  (j ≤ MAX_LOG_DEGREE)

    모든 part는 같은 절단 차수를 가지도록 정렬됩니다.
    뒤쪽의 0 part는 제거되지만 part가 하나는 항상 남습니다.
    """

    __slots__ = ("_parts",)

    def __init__(self, parts: Sequence[PowerSeries]):
        if not parts:
            raise SeriesPreconditionException("LogSeries", "at least one part is required")
        order = min(part.trunc_order for part in parts)
        trimmed = [part.truncate(order) for part in parts]
        while len(trimmed) > 1 and trimmed[-1].is_zero():
            trimmed.pop()
        if len(trimmed) - 1 > MAX_LOG_DEGREE:
            raise LogDegreeOverflowException(len(trimmed) - 1, MAX_LOG_DEGREE)
        self._parts: tuple[PowerSeries, ...] = tuple(trimmed)

    @classmethod
    def from_series(cls, series: PowerSeries) -> LogSeries:
        return cls([series])

    @classmethod
    def log_q(cls, trunc_order: int) -> LogSeries:
        """ln q"""
        return cls([PowerSeries.zero(trunc_order), PowerSeries.constant(1, trunc_order)])

    @property
    def parts(self) -> tuple[PowerSeries, ...]:
        return self._parts

    @property
    def trunc_order(self) -> int:
        return self._parts[0].trunc_order

    @property
    def log_degree(self) -> int:
        return len(self._parts) - 1

    def part(self, j: int) -> PowerSeries:
        if j < len(self._parts):
            return self._parts[j]
        return PowerSeries.zero(self.trunc_order)

    def is_zero(self) -> bool:
        return all(part.is_zero() for part in self._parts)

    def is_log_free(self) -> bool:
        return all(part.is_zero() for part in self._parts[1:])

    def truncate(self, trunc_order: int) -> LogSeries:
        return LogSeries([part.truncate(trunc_order) for part in self._parts])

    def _coerce(self, other: Union[LogSeries, PowerSeries, Scalar]) -> LogSeries:
        if isinstance(other, LogSeries):
            return other
        if isinstance(other, PowerSeries):
            return LogSeries([other])
        return LogSeries([PowerSeries.constant(other, self.trunc_order)])

    def __add__(self, other: Union[LogSeries, PowerSeries, Scalar]) -> LogSeries:
        other = self._coerce(other)
        size = max(len(self._parts), len(other._parts))
        return LogSeries([self.part(j) + other.part(j) for j in range(size)])

    __radd__ = __add__

    def __neg__(self) -> LogSeries:
        return LogSeries([-part for part in self._parts])

    def __sub__(self, other: Union[LogSeries, PowerSeries, Scalar]) -> LogSeries:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Union[PowerSeries, Scalar]) -> LogSeries:
        return self._coerce(other) - self

    def __mul__(self, other: Union[LogSeries, PowerSeries, Scalar]) -> LogSeries:
        if not isinstance(other, (LogSeries, PowerSeries)):
            return LogSeries([part * other for part in self._parts])
        other = self._coerce(other)
        top = self.log_degree + other.log_degree
        order = min(self.trunc_order, other.trunc_order)
        products = [PowerSeries.zero(order) for _ in range(top + 1)]
        # (ln q)^i/i! * (ln q)^j/j! = C(i+j, i) (ln q)^{i+j}/(i+j)!
        for i, a in enumerate(self._parts):
            for j, b in enumerate(other._parts):
                products[i + j] = products[i + j] + (a * b) * comb(i + j, i)
        while len(products) > 1 and products[-1].is_zero():
            products.pop()
        if len(products) - 1 > MAX_LOG_DEGREE:
            raise LogDegreeOverflowException(len(products) - 1, MAX_LOG_DEGREE)
        return LogSeries(products)

    __rmul__ = __mul__

    def shift(self, k: int) -> LogSeries:
        return LogSeries([part.shift(k) for part in self._parts])

    def theta(self) -> LogSeries:
        """D(f (ln q)^j/j!) = (Df)(ln q)^j/j! + f (ln q)^{j-1}/(j-1)!"""
        return LogSeries([part.theta() + self.part(j + 1) for j, part in enumerate(self._parts)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LogSeries):
            return NotImplemented
        return self._parts == other._parts

    def __hash__(self) -> int:
        return hash(self._parts)

    def __repr__(self) -> str:
        return f"LogSeries({', '.join(repr(part) for part in self._parts)})"
