"""Gromov-Witten 상관자 테이블, divisor equation, WDVV 관계식 생성 및 풀이 서비스."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Optional

from app.core import linalg
from app.core.exceptions import (
    DivisorEquationException,
    NonlinearRelationException,
    UndeterminedCorrelatorException,
)
from app.models.correlator import (
    CorrelatorKey,
    GWTable,
    LinearForm,
    Provenance,
    WDVVSystem,
    passes_dimension_filter,
)
from app.models.ring import TOP_CODIM, ClassVector, FrobeniusAlgebra
from app.schemas.dataset import CorrelatorEntry
from app.services.ring_service import RingService

logger = logging.getLogger(__name__)


@dataclass
class SolveResult:
    """solve_unknowns 결과"""

    values: dict[CorrelatorKey, Fraction]
    undetermined: list[CorrelatorKey]
    rank: int
    equation_count: int


@dataclass
class DegreeStats:
    degree: int
    unknowns: int
    equations: int
    skipped_nonlinear: int
    rank: int
    determined: list[CorrelatorKey] = field(default_factory=list)
    undetermined: list[CorrelatorKey] = field(default_factory=list)
    residual_failures: int = 0


@dataclass
class ReconstructionResult:
    table: GWTable
    stats: list[DegreeStats]
    target: CorrelatorKey
    target_value: Fraction


def _divisor_index(ring: FrobeniusAlgebra) -> int:
    return next(i for i, e in enumerate(ring.basis) if e.exponents == (1, 0))


def _unit_index(ring: FrobeniusAlgebra) -> int:
    return ring.block(0)[0]


class GWService:
    """상관자 해석과 WDVV 관계식 풀이."""

    @staticmethod
    def key_from_labels(ring: FrobeniusAlgebra, degree: int, labels: list[str]) -> CorrelatorKey:
        return CorrelatorKey.of(degree, *(ring.index(label) for label in labels))

    @staticmethod
    def dimension_filter(ring: FrobeniusAlgebra, key: CorrelatorKey) -> bool:
        """
        상관자가 0이 아닐 수 있으면 True.

        Σ codim = 3 + 3d + n 이어야 하며, d = 0 은 3점만, d > 0 은 단위원 insertion 없이만 허용합니다.

        Example:
            <p^2, p^6>_1 : 2 + 6 = 8 = 5 + 3·1 -> True
        """
        return passes_dimension_filter(key, ring.codims, _unit_index(ring))

    @staticmethod
    def divisor_reduce(ring: FrobeniusAlgebra, key: CorrelatorKey) -> tuple[Fraction, CorrelatorKey]:
        """
        <p, T_1, ..., T_n>_d = d · <T_1, ..., T_n>_d

        Returns:
            (계수 d, p 를 하나 제거한 key)

        Raises:
            DivisorEquationException: p insertion 이 없거나, d = 0 이고 남은 insertion 이 3개 미만
        """
        p_index = _divisor_index(ring)
        if p_index not in key.insertions:
            raise DivisorEquationException(key.render(ring.labels))
        shorter = key.without(p_index)
        if key.degree == 0:
            if shorter.length < 3:
                raise DivisorEquationException(key.render(ring.labels))
            return Fraction(0), shorter
        return Fraction(key.degree), shorter

    @staticmethod
    def classical_correlator(ring: FrobeniusAlgebra, x: ClassVector, y: ClassVector, z: ClassVector) -> Fraction:
        """<x, y, z>_0 = <x·y, z>"""
        return RingService.pairing(ring, RingService.multiply(ring, x, y), z)

    @staticmethod
    def resolve(
        ring: FrobeniusAlgebra,
        table: GWTable,
        key: CorrelatorKey,
        cache: Optional[dict[CorrelatorKey, LinearForm]] = None,
    ) -> LinearForm:
        """
        상관자를 알려진 값 또는 미지수에 대한 선형식으로 바꿉니다.

        순서: 차원 필터 -> d=0 고전값 -> divisor 축약 -> 테이블 -> 미지수
        """
        if cache is not None and key in cache:
            return cache[key]

        if not GWService.dimension_filter(ring, key):
            form = LinearForm()
        elif key.degree == 0:
            x, y, z = (ring.vector(i) for i in key.insertions)
            form = LinearForm.scalar(GWService.classical_correlator(ring, x, y, z))
        elif _divisor_index(ring) in key.insertions:
            factor, shorter = GWService.divisor_reduce(ring, key)
            form = GWService.resolve(ring, table, shorter, cache).scale(factor)
        else:
            value = table.get(key)
            form = LinearForm.scalar(value) if value is not None else LinearForm.unknown(key)

        if cache is not None:
            cache[key] = form
        return form

    @staticmethod
    def table_from_entries(ring: FrobeniusAlgebra, entries: list[CorrelatorEntry]) -> GWTable:
        table = GWTable(ring.labels)
        for entry in entries:
            key = GWService.key_from_labels(ring, entry.degree, entry.insertions)
            table.store(key, Fraction(entry.value), Provenance.PAPER)
        return table

    @staticmethod
    def record_derived(ring: FrobeniusAlgebra, table: GWTable, degree: int) -> int:
        """
        값이 이미 정해진 차수 degree 의 3점 상관자를 테이블에 기록합니다.

        d = 0 은 고전 교차수(classical), d > 0 은 p 를 포함해 divisor equation 으로
        테이블의 2점 값에서 얻어지는 것(divisor-reduced)입니다. 0 인 값은 기록하지 않습니다.

        Returns:
            새로 기록한 상관자 개수
        """
        p_index = _divisor_index(ring)
        provenance = Provenance.CLASSICAL if degree == 0 else Provenance.DIVISOR
        recorded = 0
        for insertions in combinations_with_replacement(range(ring.dimension), 3):
            key = CorrelatorKey(degree, insertions)
            if key in table or (degree > 0 and p_index not in insertions):
                continue
            if not GWService.dimension_filter(ring, key):
                continue
            form = GWService.resolve(ring, table, key)
            if form.is_constant() and form.constant:
                table.store(key, form.constant, provenance)
                recorded += 1
        logger.debug("degree %d: recorded %d %s correlators", degree, recorded, provenance.value)
        return recorded

    @staticmethod
    def enumerate_unknowns(ring: FrobeniusAlgebra, table: GWTable, degree: int) -> list[CorrelatorKey]:
        """
        차수 degree 의 2점, 3점 상관자 중 필터를 통과하고 p 를 포함하지 않으며 테이블에 없는 것.

        p 를 포함한 key 는 divisor equation 으로 더 짧은 key 로 축약됩니다.
        """
        p_index = _divisor_index(ring)
        unknowns = []
        for n in (2, 3):
            for insertions in combinations_with_replacement(range(ring.dimension), n):
                key = CorrelatorKey(degree, insertions)
                if p_index in insertions or key in table:
                    continue
                if GWService.dimension_filter(ring, key):
                    unknowns.append(key)
        return unknowns

    @staticmethod
    def _three_point_row(
        ring: FrobeniusAlgebra,
        table: GWTable,
        a: int,
        b: int,
        degree: int,
        cache: dict,
    ) -> list[tuple[int, LinearForm]]:
        row_key = ("row", a, b, degree)
        if row_key not in cache:
            row = []
            for i in range(ring.dimension):
                form = GWService.resolve(ring, table, CorrelatorKey.of(degree, a, b, i), cache)
                if not form.is_zero():
                    row.append((i, form))
            cache[row_key] = row
        return cache[row_key]

    @staticmethod
    def feynman_sum(
        ring: FrobeniusAlgebra,
        table: GWTable,
        t1: int,
        t2: int,
        t3: int,
        t4: int,
        degree: int,
        cache: Optional[dict] = None,
    ) -> LinearForm:
        """
        Σ_{d1+d2=d} Σ_{i,k} <T1,T2,Δ_i>_{d1} g^{ik} <Δ_k,T3,T4>_{d2}

        Raises:
            NonlinearRelationException: 미지수끼리의 곱이 등장하는 경우
        """
        cache = {} if cache is None else cache
        total = LinearForm()
        for d1 in range(degree + 1):
            left = GWService._three_point_row(ring, table, t1, t2, d1, cache)
            if not left:
                continue
            right = GWService._three_point_row(ring, table, t3, t4, degree - d1, cache)
            for (i, lf), (k, rf) in product(left, right):
                weight = ring.gram_inverse[i, k]
                if weight:
                    total = total + (lf * rf).scale(weight)
        return total

    @staticmethod
    def generate_wdvv(
        ring: FrobeniusAlgebra,
        table: GWTable,
        t1: int,
        t2: int,
        t3: int,
        t4: int,
        degree: int,
        cache: Optional[dict] = None,
    ) -> LinearForm:
        """
        feyn(T1,T2;T3,T4)_d - feyn(T1,T3;T2,T4)_d = 0 인 선형 관계식

        알려진 상관자는 값으로 대입하고 미지수는 기호로 남깁니다.
        """
        cache = {} if cache is None else cache
        return GWService.feynman_sum(ring, table, t1, t2, t3, t4, degree, cache) - GWService.feynman_sum(
            ring, table, t1, t3, t2, t4, degree, cache
        )

    @staticmethod
    def build_system(ring: FrobeniusAlgebra, table: GWTable, degree: int) -> WDVVSystem:
        """
        차수 degree 에서 가능한 모든 basis 4중쌍의 관계식을 생성합니다.

        Σ codim(T) = 6 + 3d 인 4중쌍만 0이 아닌 관계식을 줍니다.
        단위원 insertion 은 자명한 관계식만 주므로 제외합니다.
        """
        unit = _unit_index(ring)
        codims = ring.codims
        expected = TOP_CODIM + 3 * degree
        system = WDVVSystem(degree=degree, unknowns=GWService.enumerate_unknowns(ring, table, degree))
        cache: dict = {}
        seen: set = set()
        candidates = [i for i in range(ring.dimension) if i != unit]
        for quad in product(candidates, repeat=4):
            if sum(codims[i] for i in quad) != expected:
                continue
            try:
                equation = GWService.generate_wdvv(ring, table, *quad, degree, cache)
            except NonlinearRelationException:
                system.skipped_nonlinear += 1
                continue
            if equation.is_zero():
                continue
            signature = (tuple(sorted(equation.coeffs.items())), equation.constant)
            if signature in seen:
                continue
            seen.add(signature)
            system.equations.append(equation)

        known = set(system.unknowns)
        extra = sorted({key for eq in system.equations for key in eq.coeffs if key not in known})
        system.unknowns.extend(extra)
        logger.debug(
            "degree %d: %d unknowns, %d distinct relations, %d nonlinear skipped",
            degree,
            len(system.unknowns),
            len(system.equations),
            system.skipped_nonlinear,
        )
        return system

    @staticmethod
    def solve_unknowns(system: WDVVSystem) -> SolveResult:
        """
        정확한 가우스 소거로 미지수를 풉니다.

        Raises:
            InconsistentSystemException: 관계식이 모순인 경우
        """
        rows, rhs = system.to_matrix()
        solution = linalg.solve(rows, rhs, len(system.unknowns), context=f"WDVV degree {system.degree}")
        values = {system.unknowns[col]: value for col, value in solution.values.items()}
        undetermined = [key for key in system.unknowns if key not in values]
        return SolveResult(
            values=values,
            undetermined=undetermined,
            rank=solution.rank,
            equation_count=len(system.equations),
        )

    @staticmethod
    def residual_failures(system: WDVVSystem, values: dict[CorrelatorKey, Fraction]) -> int:
        """풀이 후 대입했을 때 0 = 0 이 되지 않는 관계식 개수 (미결정 미지수가 남은 식 제외)"""
        failures = 0
        for equation in system.equations:
            reduced = equation.substitute(values)
            if reduced.is_constant() and reduced.constant != 0:
                failures += 1
        return failures

    @staticmethod
    def reconstruct(
        ring: FrobeniusAlgebra,
        table: GWTable,
        target: CorrelatorKey,
        max_degree: int = 2,
    ) -> ReconstructionResult:
        """
        차수별로 (d = 1, 2, ...) 관계식을 만들고 풀어 테이블을 채웁니다.

        d 차수 미지수를 모두 푼 뒤 d+1 로 넘어가므로 d+1 관계식은 d+1 미지수에 대해 선형입니다.

        Args:
            ring: Frobenius 환
            table: 입력 테이블 (변경하지 않음)
            target: 반드시 결정되어야 하는 상관자

        Returns:
            ReconstructionResult (갱신된 테이블과 차수별 통계)

        Raises:
            UndeterminedCorrelatorException: target 이 결정되지 않는 경우
            InconsistentSystemException: 관계식이 모순인 경우
        """
        solved = table.copy()
        GWService.record_derived(ring, solved, 0)
        stats: list[DegreeStats] = []
        for degree in range(1, max_degree + 1):
            system = GWService.build_system(ring, solved, degree)
            result = GWService.solve_unknowns(system)
            for key, value in result.values.items():
                solved.store(key, value, Provenance.WDVV)
            GWService.record_derived(ring, solved, degree)
            stats.append(
                DegreeStats(
                    degree=degree,
                    unknowns=len(system.unknowns),
                    equations=result.equation_count,
                    skipped_nonlinear=system.skipped_nonlinear,
                    rank=result.rank,
                    determined=sorted(result.values),
                    undetermined=result.undetermined,
                    residual_failures=GWService.residual_failures(system, result.values),
                )
            )
            logger.info(
                "degree %d: %d/%d unknowns determined (rank %d, %d relations)",
                degree,
                len(result.values),
                len(system.unknowns),
                result.rank,
                result.equation_count,
            )

        value = solved.get(target)
        if value is None:
            raise UndeterminedCorrelatorException(target.render(ring.labels))
        return ReconstructionResult(table=solved, stats=stats, target=target, target_value=value)
