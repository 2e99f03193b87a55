"""
유한 차원 graded Frobenius 환 모델

basis 는 생성원 p, γ₂ 의 단항식 p^a γ₂^b 이며 codim = a + 2b 입니다.
구조 상수와 pairing 행렬은 Fraction을 담은 numpy object 배열입니다.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from app.models.series import Scalar

TOP_CODIM = 6


@dataclass(frozen=True)
class BasisElement:
    """단항식 p^a γ₂^b"""

    label: str
    p_exponent: int
    g_exponent: int

    @property
    def codim(self) -> int:
        return self.p_exponent + 2 * self.g_exponent

    @property
    def exponents(self) -> tuple[int, int]:
        return (self.p_exponent, self.g_exponent)


class ClassVector:
    """basis 좌표로 표현된 코호몰로지 class. 불변 객체입니다."""

    __slots__ = ("_coords",)

    def __init__(self, coords: Iterable[Scalar]):
        self._coords: tuple[Fraction, ...] = tuple(Fraction(c) for c in coords)

    @classmethod
    def basis_vector(cls, dimension: int, index: int) -> ClassVector:
        return cls(Fraction(1) if i == index else Fraction(0) for i in range(dimension))

    @classmethod
    def zero(cls, dimension: int) -> ClassVector:
        return cls([0] * dimension)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return self._coords

    def __len__(self) -> int:
        return len(self._coords)

    def __getitem__(self, index: int) -> Fraction:
        return self._coords[index]

    def as_array(self) -> np.ndarray:
        return np.array(self._coords, dtype=object)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self._coords) if c]

    def is_zero(self) -> bool:
        return not self.support()

    def __add__(self, other: ClassVector) -> ClassVector:
        return ClassVector(a + b for a, b in zip(self._coords, other._coords))

    def __sub__(self, other: ClassVector) -> ClassVector:
        return ClassVector(a - b for a, b in zip(self._coords, other._coords))

    def __mul__(self, factor: Scalar) -> ClassVector:
        return ClassVector(Fraction(factor) * c for c in self._coords)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassVector):
            return NotImplemented
        return self._coords == other._coords

    def __hash__(self) -> int:
        return hash(self._coords)

    def __repr__(self) -> str:
        return f"ClassVector({[str(c) for c in self._coords]})"


@dataclass(frozen=True, eq=False)
class FrobeniusAlgebra:
    """
    graded Frobenius 환 A*

    Attributes:
        basis: 순서가 정해진 basis 단항식
        structure: structure[i, j] = Δ_i · Δ_j 의 좌표 (shape (n, n, n))
        gram: gram[i, j] = <Δ_i, Δ_j>
        gram_inverse: gram 의 역행렬 (dual basis 계산용)
        top_values: 최고 codim 단항식 (a, b) -> 적분값
    """

    basis: tuple[BasisElement, ...]
    structure: np.ndarray
    gram: np.ndarray
    gram_inverse: np.ndarray
    top_values: dict[tuple[int, int], Fraction]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def codims(self) -> list[int]:
        return [element.codim for element in self.basis]

    @property
    def labels(self) -> list[str]:
        return [element.label for element in self.basis]

    def index(self, label: str) -> int:
        for i, element in enumerate(self.basis):
            if element.label == label:
                return i
        raise KeyError(label)

    def block(self, codim: int) -> list[int]:
        return [i for i, element in enumerate(self.basis) if element.codim == codim]

    def betti(self) -> list[int]:
        return [len(self.block(c)) for c in range(TOP_CODIM + 1)]

    def unit(self) -> ClassVector:
        return self.vector(self.block(0)[0])

    def vector(self, index: Union[int, str]) -> ClassVector:
        if isinstance(index, str):
            index = self.index(index)
        return ClassVector.basis_vector(self.dimension, index)

    def codim_of(self, vector: ClassVector) -> int | None:
        """동차 class 이면 codim, 아니면 None"""
        degrees = {self.basis[i].codim for i in vector.support()}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def product(self, i: int, j: int) -> ClassVector:
        return ClassVector(self.structure[i, j])
