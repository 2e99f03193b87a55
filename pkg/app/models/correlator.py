"""
Gromov-Witten 상관자 모델

- CorrelatorKey: 차수와 정렬된 insertion(basis 인덱스) 튜플
- GWTable: 알려진 값과 출처(provenance)
- LinearForm: 미지 상관자에 대한 선형식 Σ c_k x_k + constant
- WDVVSystem: 미지수 목록과 선형 관계식들
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator, Sequence

from app.core.exceptions import ConflictingCorrelatorException, NonlinearRelationException
from app.models.series import Scalar

TARGET_DIMENSION = 3  # 3차원 Calabi-Yau
DEGREE_WEIGHT = 3  # deg q = c_1(X) - c_1(E)


class Provenance(str, Enum):
    """상관자 값의 출처"""

    PAPER = "paper"
    CLASSICAL = "classical"
    DIVISOR = "divisor-reduced"
    WDVV = "wdvv-solved"


@dataclass(frozen=True, order=True)
class CorrelatorKey:
    """<Δ_{i1}, ..., Δ_{in}>_d. insertion 은 항상 정렬되어 저장됩니다."""

    degree: int
    insertions: tuple[int, ...]

    @classmethod
    def of(cls, degree: int, *insertions: int) -> CorrelatorKey:
        return cls(degree, tuple(sorted(insertions)))

    @property
    def length(self) -> int:
        return len(self.insertions)

    def without(self, index: int) -> CorrelatorKey:
        """insertion 하나를 제거한 key"""
        rest = list(self.insertions)
        rest.remove(index)
        return CorrelatorKey(self.degree, tuple(rest))

    def render(self, labels: Sequence[str]) -> str:
        return "<" + ",".join(labels[i] for i in self.insertions) + f">_{self.degree}"


def passes_dimension_filter(key: CorrelatorKey, codims: Sequence[int], unit_index: int = 0) -> bool:
    """
    Σ codim = dim + deg(q)·d + n - 3 이어야 0이 아닐 수 있습니다.

    d = 0 에서는 3점 상관자만, d > 0 에서는 단위원 insertion 이 없는 것만 통과합니다.
    """
    n = key.length
    if key.degree < 0 or n == 0:
        return False
    if key.degree == 0 and n != 3:
        return False
    if key.degree > 0 and unit_index in key.insertions:
        return False
    expected = TARGET_DIMENSION + DEGREE_WEIGHT * key.degree + n
    return sum(codims[i] for i in key.insertions) == expected


class GWTable:
    """상관자 값 테이블. 한 번 기록된 값은 바뀌지 않습니다."""

    def __init__(self, labels: Sequence[str]):
        self.labels = list(labels)
        self._values: dict[CorrelatorKey, Fraction] = {}
        self._provenance: dict[CorrelatorKey, Provenance] = {}

    def store(self, key: CorrelatorKey, value: Scalar, provenance: Provenance) -> None:
        value = Fraction(value)
        stored = self._values.get(key)
        if stored is not None:
            if stored != value:
                raise ConflictingCorrelatorException(key.render(self.labels), stored, value)
            return
        self._values[key] = value
        self._provenance[key] = provenance

    def get(self, key: CorrelatorKey) -> Fraction | None:
        return self._values.get(key)

    def provenance(self, key: CorrelatorKey) -> Provenance | None:
        return self._provenance.get(key)

    def __contains__(self, key: CorrelatorKey) -> bool:
        return key in self._values

    def __len__(self) -> int:
        return len(self._values)

    def __iter__(self) -> Iterator[CorrelatorKey]:
        return iter(sorted(self._values))

    def items(self) -> list[tuple[CorrelatorKey, Fraction, Provenance]]:
        return [(key, self._values[key], self._provenance[key]) for key in self]

    def copy(self) -> GWTable:
        clone = GWTable(self.labels)
        clone._values = dict(self._values)
        clone._provenance = dict(self._provenance)
        return clone


@dataclass(frozen=True)
class LinearForm:
    """Σ coeffs[key] · <key> + constant"""

    coeffs: dict[CorrelatorKey, Fraction] = field(default_factory=dict)
    constant: Fraction = Fraction(0)

    @classmethod
    def scalar(cls, value: Scalar) -> LinearForm:
        return cls({}, Fraction(value))

    @classmethod
    def unknown(cls, key: CorrelatorKey) -> LinearForm:
        return cls({key: Fraction(1)}, Fraction(0))

    def is_constant(self) -> bool:
        return not self.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs and self.constant == 0

    def __add__(self, other: LinearForm) -> LinearForm:
        coeffs = dict(self.coeffs)
        for key, c in other.coeffs.items():
            total = coeffs.get(key, Fraction(0)) + c
            if total:
                coeffs[key] = total
            else:
                coeffs.pop(key, None)
        return LinearForm(coeffs, self.constant + other.constant)

    def __neg__(self) -> LinearForm:
        return LinearForm({k: -c for k, c in self.coeffs.items()}, -self.constant)

    def __sub__(self, other: LinearForm) -> LinearForm:
        return self + (-other)

    def scale(self, factor: Scalar) -> LinearForm:
        factor = Fraction(factor)
        if not factor:
            return LinearForm()
        return LinearForm({k: factor * c for k, c in self.coeffs.items()}, factor * self.constant)

    def __mul__(self, other: LinearForm) -> LinearForm:
        if self.is_constant():
            return other.scale(self.constant)
        if other.is_constant():
            return self.scale(other.constant)
        raise NonlinearRelationException(repr(self), repr(other))

    def substitute(self, values: dict[CorrelatorKey, Fraction]) -> LinearForm:
        result = LinearForm.scalar(self.constant)
        for key, c in self.coeffs.items():
            if key in values:
                result = result + LinearForm.scalar(c * values[key])
            else:
                result = result + LinearForm({key: c})
        return result


@dataclass
class WDVVSystem:
    """한 차수의 선형 관계식 계"""

    degree: int
    unknowns: list[CorrelatorKey]
    equations: list[LinearForm] = field(default_factory=list)
    skipped_nonlinear: int = 0

    def to_matrix(self) -> tuple[list[list[Fraction]], list[Fraction]]:
        """A x = b 형태 (b = -constant)"""
        column = {key: i for i, key in enumerate(self.unknowns)}
        rows: list[list[Fraction]] = []
        rhs: list[Fraction] = []
        for equation in self.equations:
            row = [Fraction(0)] * len(self.unknowns)
            for key, c in equation.coeffs.items():
                row[column[key]] = c
            rows.append(row)
            rhs.append(-equation.constant)
        return rows, rhs
