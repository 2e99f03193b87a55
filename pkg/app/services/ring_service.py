"""graded Frobenius 환 구성 및 연산 서비스."""

import logging
from fractions import Fraction
from itertools import product
from typing import Mapping, Optional, Sequence

import numpy as np

from app.core import linalg
from app.core.exceptions import RingConstructionException
from app.models.ring import TOP_CODIM, BasisElement, ClassVector, FrobeniusAlgebra
from app.schemas.dataset import RingData

logger = logging.getLogger(__name__)


class RingService:
    """최고차 단항식 값으로부터 환을 만들고 곱셈, pairing, dual basis 를 제공합니다."""

    @staticmethod
    def build_ring(
        basis: Sequence[BasisElement],
        top_values: Mapping[tuple[int, int], Fraction],
        expected_betti: Optional[Sequence[int]] = None,
    ) -> FrobeniusAlgebra:
        """
        graded pairing 으로 모든 basis 곱을 전개하여 환을 구성합니다.

        codim c 단항식 m 은 codim 6-c 블록과의 pairing 벡터 v 를 구한 뒤
        x · G_c = v (G_c 는 codim c 와 6-c 블록 사이의 pairing 행렬) 를 풀어 전개합니다.

        Args:
            basis: basis 단항식 (codim 순서)
            top_values: a + 2b = 6 인 (a, b) 에 대한 적분값
            expected_betti: 주어지면 codim 별 basis 개수와 비교

        Returns:
            FrobeniusAlgebra

        Raises:
            RingConstructionException: 최고차 값 누락, 특이 pairing 블록, Betti 수 불일치
        """
        basis = tuple(basis)
        size = len(basis)

        def pair(a: int, b: int) -> Fraction:
            if a + 2 * b != TOP_CODIM:
                return Fraction(0)
            if (a, b) not in top_values:
                raise RingConstructionException(f"missing top value for p^{a}*g2^{b}")
            return Fraction(top_values[(a, b)])

        blocks = {c: [i for i, e in enumerate(basis) if e.codim == c] for c in range(TOP_CODIM + 1)}
        betti = [len(blocks[c]) for c in range(TOP_CODIM + 1)]
        if expected_betti is not None and list(expected_betti) != betti:
            raise RingConstructionException(f"Betti numbers {betti} != expected {list(expected_betti)}")

        # 각 codim 블록의 pairing 역행렬
        block_inverse: dict[int, list[list[Fraction]]] = {}
        for c in range(TOP_CODIM + 1):
            rows, cols = blocks[c], blocks[TOP_CODIM - c]
            if len(rows) != len(cols):
                raise RingConstructionException(f"codim {c} and {TOP_CODIM - c} blocks differ in size")
            if not rows:
                continue
            gram_block = [
                [pair(basis[l].p_exponent + basis[m].p_exponent, basis[l].g_exponent + basis[m].g_exponent) for m in cols]
                for l in rows
            ]
            inverse = linalg.inverse(gram_block)
            if inverse is None:
                raise RingConstructionException(f"singular pairing block between codim {c} and {TOP_CODIM - c}")
            block_inverse[c] = inverse

        def expand(a: int, b: int) -> tuple[Fraction, ...]:
            coords = [Fraction(0)] * size
            c = a + 2 * b
            if c > TOP_CODIM or not blocks[c]:
                return tuple(coords)
            cols = blocks[TOP_CODIM - c]
            pairing = [pair(a + basis[m].p_exponent, b + basis[m].g_exponent) for m in cols]
            inverse = block_inverse[c]
            # x = v · G_c^{-1}
            for position, l in enumerate(blocks[c]):
                coords[l] = sum(
                    (pairing[k] * inverse[k][position] for k in range(len(cols))), Fraction(0)
                )
            return tuple(coords)

        structure = np.empty((size, size, size), dtype=object)
        for i, j in product(range(size), repeat=2):
            structure[i, j, :] = expand(
                basis[i].p_exponent + basis[j].p_exponent, basis[i].g_exponent + basis[j].g_exponent
            )

        gram = np.empty((size, size), dtype=object)
        for i, j in product(range(size), repeat=2):
            gram[i, j] = pair(
                basis[i].p_exponent + basis[j].p_exponent, basis[i].g_exponent + basis[j].g_exponent
            )
        gram_inverse = linalg.inverse(gram.tolist())
        if gram_inverse is None:
            raise RingConstructionException("pairing matrix is singular")

        logger.info("ring built: dimension %d, Betti %s", size, betti)
        return FrobeniusAlgebra(
            basis=basis,
            structure=structure,
            gram=gram,
            gram_inverse=np.array(gram_inverse, dtype=object),
            top_values={key: Fraction(value) for key, value in top_values.items()},
        )

    @staticmethod
    def from_dataset(data: RingData) -> FrobeniusAlgebra:
        basis = [BasisElement(e.label, e.p_exponent, e.g_exponent) for e in data.basis]
        top_values = {(t.p_exponent, t.g_exponent): Fraction(t.value) for t in data.top_values}
        return RingService.build_ring(basis, top_values, data.betti)

    @staticmethod
    def multiply(ring: FrobeniusAlgebra, x: ClassVector, y: ClassVector) -> ClassVector:
        """구조 상수의 쌍선형 확장"""
        result = [Fraction(0)] * ring.dimension
        for i in x.support():
            for j in y.support():
                factor = x[i] * y[j]
                column = ring.structure[i, j]
                for k in range(ring.dimension):
                    if column[k]:
                        result[k] += factor * column[k]
        return ClassVector(result)

    @staticmethod
    def pairing(ring: FrobeniusAlgebra, x: ClassVector, y: ClassVector) -> Fraction:
        """<x, y> = x^T G y"""
        return sum(
            (x[i] * ring.gram[i, j] * y[j] for i in x.support() for j in y.support() if ring.gram[i, j]),
            Fraction(0),
        )

    @staticmethod
    def dual_basis(ring: FrobeniusAlgebra) -> list[ClassVector]:
        """
        <Δ_i, Δ^j> = δ_ij 인 dual basis.

        Δ^j = Σ_k (G^{-1})_{kj} Δ_k
        """
        return [ClassVector(ring.gram_inverse[:, j]) for j in range(ring.dimension)]

    @staticmethod
    def check_axioms(ring: FrobeniusAlgebra) -> list[str]:
        """
        basis triple 전체에 대해 환 공리를 검사하고 위반 목록을 반환합니다.

        검사 항목: 단위원, 교환법칙, 결합법칙, Frobenius 성질, grading, pairing 블록 정칙성
        """
        violations: list[str] = []
        size = ring.dimension
        labels = ring.labels
        basis = [ring.vector(i) for i in range(size)]
        unit = ring.unit()

        for i in range(size):
            if RingService.multiply(ring, basis[i], unit) != basis[i]:
                violations.append(f"unit: {labels[i]}*1 != {labels[i]}")

        for i, j in product(range(size), repeat=2):
            if ring.product(i, j) != ring.product(j, i):
                violations.append(f"commutativity: {labels[i]}*{labels[j]}")
            target = ring.codim_of(ring.product(i, j))
            if target is not None and target != ring.basis[i].codim + ring.basis[j].codim:
                violations.append(f"grading: {labels[i]}*{labels[j]} lands in codim {target}")

        for i, j, k in product(range(size), repeat=3):
            left = RingService.multiply(ring, ring.product(i, j), basis[k])
            right = RingService.multiply(ring, basis[i], ring.product(j, k))
            if left != right:
                violations.append(f"associativity: ({labels[i]}*{labels[j]})*{labels[k]}")
            if RingService.pairing(ring, ring.product(i, j), basis[k]) != RingService.pairing(
                ring, basis[i], ring.product(j, k)
            ):
                violations.append(f"frobenius: <{labels[i]}*{labels[j]}, {labels[k]}>")

        for c in range(TOP_CODIM + 1):
            rows, cols = ring.block(c), ring.block(TOP_CODIM - c)
            block = [[ring.gram[r, s] for s in cols] for r in rows]
            if rows and linalg.rank(block, len(cols)) != len(rows):
                violations.append(f"duality: codim {c} block is degenerate")
        return violations
