"""양자 미분방정식 서비스: 양자 곱셈 행렬, 순환 벡터, 스칼라 소거 연산자, 기본해 적분."""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from app.core import linalg
from app.core.exceptions import AnnihilatorNotFoundException, MissingCorrelatorException
from app.models.correlator import CorrelatorKey, GWTable
from app.models.operator import DiffOp, DPolynomial
from app.models.quantum import (
    CyclicVectors,
    FundamentalSolution,
    QuantumMatrix,
    identity,
    is_zero_array,
    nilpotent_powers,
    zeros,
)
from app.models.ring import TOP_CODIM, FrobeniusAlgebra
from app.models.series import LogSeries, PowerSeries
from app.services.gw_service import GWService
from app.services.ore_service import OreService
from app.services.ring_service import RingService

logger = logging.getLogger(__name__)

# 2점 상관자 Σ codim = 5 + 3d ≤ 12 이므로 d ≤ 2
QUANTUM_DEGREE_BOUND = (2 * TOP_CODIM - 5) // 3


@dataclass
class AnnihilatorResult:
    operator: DiffOp
    nullity: int
    unknowns: int
    equations: int


class QDEService:
    """p 에 의한 양자 곱셈으로부터 스칼라 미분방정식을 얻습니다."""

    @staticmethod
    def build_quantum_p(ring: FrobeniusAlgebra, table: GWTable) -> QuantumMatrix:
        """
        p *_E 의 행렬 M(q) = M_0 + M_1 q + M_2 q^2 를 만듭니다.

        M_0 는 고전 곱셈, M_d (d > 0) 의 열 j 는 Σ_k d<Δ_j, Δ_k>_d Δ^k 입니다
        (<p, Δ_j, Δ_k>_d 를 divisor equation 으로 축약).

        Raises:
            MissingCorrelatorException: 필터를 통과하는 2점 값이 테이블에 없는 경우
        """
        size = ring.dimension
        p_index = next(i for i, e in enumerate(ring.basis) if e.exponents == (1, 0))
        duals = RingService.dual_basis(ring)

        classical = zeros(size, size)
        for j in range(size):
            classical[:, j] = ring.structure[p_index, j]
        slices = [classical]

        cache: dict = {}
        for d in range(1, QUANTUM_DEGREE_BOUND + 1):
            matrix = zeros(size, size)
            for j in range(size):
                for k in range(size):
                    key = CorrelatorKey.of(d, p_index, j, k)
                    form = GWService.resolve(ring, table, key, cache)
                    if not form.is_constant():
                        raise MissingCorrelatorException(key.without(p_index).render(ring.labels))
                    if form.constant:
                        matrix[:, j] = matrix[:, j] + duals[k].as_array() * form.constant
            slices.append(matrix)

        while len(slices) > 1 and is_zero_array(slices[-1]):
            slices.pop()
        logger.info("quantum matrix built with q-degree %d", len(slices) - 1)
        return QuantumMatrix(tuple(slices))

    @staticmethod
    def grading_violations(ring: FrobeniusAlgebra, matrix: QuantumMatrix, degree_weight: int = 3) -> list[str]:
        """q^e 성분의 0 아닌 원소가 codim 을 1 - 3e 만큼 바꾸지 않으면 위반으로 보고합니다."""
        codims = ring.codims
        violations = []
        for e in range(matrix.q_degree + 1):
            for row, col, _ in matrix.nonzero_entries(e):
                if codims[row] != codims[col] + 1 - degree_weight * e:
                    violations.append(f"M_{e}[{ring.labels[row]}, {ring.labels[col]}]")
        return violations

    @staticmethod
    def grading_check(ring: FrobeniusAlgebra, matrix: QuantumMatrix) -> bool:
        return not QDEService.grading_violations(ring, matrix)

    @staticmethod
    def self_adjoint_check(ring: FrobeniusAlgebra, matrix: QuantumMatrix) -> bool:
        """모든 q^e 성분에서 G·M_e = M_e^T·G"""
        gram = ring.gram
        return all(
            bool((gram.dot(m) == m.T.dot(gram)).all()) for m in matrix.slices
        )

    @staticmethod
    def cyclic_vectors(ring: FrobeniusAlgebra, matrix: QuantumMatrix, count: int) -> CyclicVectors:
        """
        v_0 = 1, v_{k+1} = D v_k + M(q) v_k 를 k = 0..count-1 까지 계산합니다.

        D 는 q^e 계수에 e 를 곱합니다.
        """
        unit = ring.unit().as_array()
        vectors = [(unit,)]
        for _ in range(count - 1):
            current = vectors[-1]
            degree = len(current) - 1 + matrix.q_degree
            following = []
            for e in range(degree + 1):
                value = zeros(ring.dimension)
                if e < len(current):
                    value = value + current[e] * e
                for s in range(matrix.q_degree + 1):
                    if 0 <= e - s < len(current):
                        value = value + matrix.slices[s].dot(current[e - s])
                following.append(value)
            while len(following) > 1 and is_zero_array(following[-1]):
                following.pop()
            vectors.append(tuple(following))
        return CyclicVectors(tuple(vectors))

    @staticmethod
    def find_annihilator(
        ring: FrobeniusAlgebra,
        matrix: QuantumMatrix,
        order_bound: int = 10,
        qdeg_bound: int = 5,
    ) -> AnnihilatorResult:
        """
        Σ_{k≤order_bound} c_k(q) v_k = 0 (deg c_k ≤ qdeg_bound) 의 해를 찾습니다.

        미지수 c_{k,e} 를 k·(qdeg_bound+1) + e 로 번호 매기고,
        각 q 차수와 basis 성분마다 하나의 방정식을 만들어 영공간을 구합니다.

        Returns:
            AnnihilatorResult (원시 정규화된 연산자 Σ_e q^e Σ_k c_{k,e} D^k 와 해공간 차원)

        Raises:
            AnnihilatorNotFoundException: 0 이 아닌 해가 없는 경우
        """
        cyclic = QDEService.cyclic_vectors(ring, matrix, order_bound + 1)
        width = qdeg_bound + 1
        unknowns = (order_bound + 1) * width
        top_degree = max(cyclic.degree(k) for k in range(order_bound + 1)) + qdeg_bound

        rows = []
        for m in range(top_degree + 1):
            for i in range(ring.dimension):
                row = [Fraction(0)] * unknowns
                for k in range(order_bound + 1):
                    for e in range(width):
                        if m - e < 0:
                            continue
                        row[k * width + e] = cyclic.component(k, m - e)[i]
                if any(row):
                    rows.append(row)

        basis = linalg.nullspace(rows, unknowns)
        logger.info(
            "annihilator search: %d unknowns, %d equations, nullity %d", unknowns, len(rows), len(basis)
        )
        if not basis:
            raise AnnihilatorNotFoundException(order_bound, qdeg_bound)

        solution = basis[0]
        slices = [
            DPolynomial(solution[k * width + e] for k in range(order_bound + 1)) for e in range(width)
        ]
        operator = OreService.normalize_primitive(DiffOp(slices))
        return AnnihilatorResult(operator=operator, nullity=len(basis), unknowns=unknowns, equations=len(rows))

    @staticmethod
    def integrate_fundamental(matrix: QuantumMatrix, trunc_order: int) -> FundamentalSolution:
        """
        D S = M S 의 기본해 S = Φ(q) q^{M_0} 를 q^N 까지 구합니다.

        Φ_0 = I, d Φ_d - [M_0, Φ_d] = Σ_{e≥1} M_e Φ_{d-e}.
        ad(X) = M_0 X - X M_0 는 nilpotent 이므로 Φ_d = Σ_j ad^j(RHS) / d^{j+1}.
        """
        m0 = matrix.slice(0)
        size = matrix.dimension
        phi = [identity(size)]
        for d in range(1, trunc_order + 1):
            rhs = zeros(size, size)
            for e in range(1, matrix.q_degree + 1):
                if d - e >= 0:
                    rhs = rhs + matrix.slices[e].dot(phi[d - e])
            term = rhs
            total = zeros(size, size)
            scale = Fraction(1, d)
            while not is_zero_array(term):
                total = total + term * scale
                term = m0.dot(term) - term.dot(m0)
                scale = scale / d
            phi.append(total)

        blocks = []
        for power in nilpotent_powers(m0):
            blocks.append(tuple(block.dot(power) for block in phi))
        return FundamentalSolution(log_blocks=tuple(blocks), trunc_order=trunc_order)

    @staticmethod
    def _polynomial_vector_series(
        ring: FrobeniusAlgebra, polys: tuple[np.ndarray, ...], trunc_order: int
    ) -> list[PowerSeries]:
        """(G v)_i 를 q 에 대한 급수로"""
        paired = [ring.gram.dot(coefficient) for coefficient in polys]
        return [
            PowerSeries((paired[e][i] if e < len(paired) else 0 for e in range(trunc_order + 1)), trunc_order)
            for i in range(ring.dimension)
        ]

    @staticmethod
    def solution_pairing(
        ring: FrobeniusAlgebra,
        solution: FundamentalSolution,
        column: int,
        polys: tuple[np.ndarray, ...],
    ) -> LogSeries:
        """<S_column, v> (v 는 q-다항식 벡터)"""
        weights = QDEService._polynomial_vector_series(ring, polys, solution.trunc_order)
        total = LogSeries.from_series(PowerSeries.zero(solution.trunc_order))
        for row in range(ring.dimension):
            if weights[row].is_zero():
                continue
            total = total + solution.entry(row, column) * weights[row]
        return total

    @staticmethod
    def j_function(ring: FrobeniusAlgebra, solution: FundamentalSolution, column: int) -> LogSeries:
        """
        J_c = <S e_c, 1>

        basis 열 e_c = Δ_c 에 대한 pairing 이므로 q^0 상수항은 <Δ_c, 1> 입니다 (p^6 열이면 14).
        상수항이 1 로 정규화된 J 는 dual_j_function 을 사용합니다.
        """
        return QDEService.solution_pairing(ring, solution, column, (ring.unit().as_array(),))

    @staticmethod
    def dual_j_function(ring: FrobeniusAlgebra, solution: FundamentalSolution, column: int) -> LogSeries:
        """
        J^c = <S Δ^c, 1> (Δ^c 는 dual basis)

        <Δ^c, Δ_j> = δ_cj 이므로 q^0 상수항은 c 가 단위원이면 1, 아니면 0 입니다.
        """
        dual = RingService.dual_basis(ring)[column]
        total = LogSeries.from_series(PowerSeries.zero(solution.trunc_order))
        for k in dual.support():
            total = total + QDEService.j_function(ring, solution, k) * dual[k]
        return total

    @staticmethod
    def connection_residual_free(matrix: QuantumMatrix, solution: FundamentalSolution) -> bool:
        """D S - M S = 0 (q^N 까지) 을 모든 원소에서 확인합니다."""
        size = matrix.dimension
        order = solution.trunc_order
        entries = [[PowerSeries((matrix.slice(e)[r, c] for e in range(order + 1)), order) for c in range(size)] for r in range(size)]
        for col in range(size):
            column = solution.column(col)
            for row in range(size):
                residual = column[row].theta()
                for inner in range(size):
                    if not entries[row][inner].is_zero():
                        residual = residual - column[inner] * entries[row][inner]
                if not residual.is_zero():
                    return False
        return True
