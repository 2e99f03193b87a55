"""
검증 파이프라인 서비스

ring -> wdvv -> qde -> twist -> mirror 단계를 순서대로 실행하고,
각 단계의 결과를 데이터셋 값과 비교한 보고서를 만듭니다.
중간 결과는 PipelineContext 에 캐시되어 verify-all 에서 한 번만 계산됩니다.
"""

import logging
from fractions import Fraction
from functools import cached_property
from typing import Literal, Optional

from app.core.config import MIN_INSTANTON_ORDER, Settings
from app.core.exceptions import ConfigurationException
from app.models.correlator import CorrelatorKey
from app.models.mirror import FrobeniusBasis, InstantonTable, MirrorMapData, YukawaSeries
from app.models.operator import DiffOp
from app.models.quantum import QuantumMatrix
from app.models.ring import FrobeniusAlgebra
from app.models.series import PowerSeries, format_scalar
from app.schemas.dataset import PaperDataset
from app.schemas.report import (
    BasisReportEntry,
    CorrelatorReportEntry,
    DegreeReport,
    InstantonReport,
    MatrixEntry,
    MirrorReport,
    OperatorRendering,
    QDEReport,
    RingReport,
    SolutionResidualReport,
    StageSummary,
    TwistReport,
    VerifyAllReport,
    WDVVReport,
)
from app.services.gw_service import GWService, ReconstructionResult
from app.services.mirror_service import MirrorService
from app.services.ore_service import OreService
from app.services.qde_service import AnnihilatorResult, QDEService
from app.services.ring_service import RingService
from app.services.series_service import SeriesService

logger = logging.getLogger(__name__)

Source = Literal["paper", "computed"]


def render_operator(op: DiffOp) -> OperatorRendering:
    return OperatorRendering(
        q_degree=op.q_degree,
        order=op.order,
        slices=[poly.render() for poly in op.slices],
        monomial=op.render_monomial(),
        collected=op.render_collected(),
    )


def _coefficients(series: PowerSeries) -> list[str]:
    return [format_scalar(c) for c in series.coeffs]


class PipelineContext:
    """
    한 번의 실행에서 공유되는 중간 결과

    각 값은 처음 요청될 때 계산되고 source("paper" | "computed") 별로 캐시됩니다.
    """

    def __init__(self, dataset: PaperDataset, settings: Settings):
        self.dataset = dataset
        self.settings = settings
        self._quantum: dict[str, QuantumMatrix] = {}
        self._annihilators: dict[str, AnnihilatorResult] = {}
        self._quotients: dict[str, DiffOp] = {}
        self._frobenius: dict[tuple[str, int], FrobeniusBasis] = {}

    @cached_property
    def ring(self) -> FrobeniusAlgebra:
        return RingService.from_dataset(self.dataset.ring)

    @cached_property
    def target_key(self) -> CorrelatorKey:
        target = self.dataset.target_correlator
        return GWService.key_from_labels(self.ring, target.degree, target.insertions)

    @cached_property
    def reconstruction(self) -> ReconstructionResult:
        table = GWService.table_from_entries(self.ring, self.dataset.correlators)
        return GWService.reconstruct(self.ring, table, self.target_key, max_degree=self.target_key.degree)

    @cached_property
    def paper_reduced_operator(self) -> DiffOp:
        return DiffOp([factor.expand() for factor in self.dataset.reduced_operator])

    @cached_property
    def paper_operator(self) -> DiffOp:
        return OreService.expand_dpoly_form([factor.as_series() for factor in self.dataset.picard_fuchs])

    def quantum_matrix(self, source: Source) -> QuantumMatrix:
        """paper 는 데이터셋의 d = 2 값, computed 는 WDVV 로 구한 값을 사용합니다."""
        if source not in self._quantum:
            if source == "computed":
                table = self.reconstruction.table
            else:
                table = GWService.table_from_entries(
                    self.ring, [*self.dataset.correlators, self.dataset.target_correlator]
                )
            self._quantum[source] = QDEService.build_quantum_p(self.ring, table)
        return self._quantum[source]

    def annihilator(self, source: Source) -> AnnihilatorResult:
        if source not in self._annihilators:
            self._annihilators[source] = QDEService.find_annihilator(
                self.ring,
                self.quantum_matrix(source),
                self.settings.annihilator_order_bound,
                self.settings.annihilator_qdeg_bound,
            )
        return self._annihilators[source]

    def reduced_operator(self, source: Source) -> DiffOp:
        if source == "computed":
            return self.annihilator("computed").operator
        return self.paper_reduced_operator

    def twisted(self, source: Source) -> DiffOp:
        return OreService.hyperplane_twist(self.reduced_operator(source), self.dataset.twist.multiplicity)

    def quotient(self, source: Source) -> DiffOp:
        """twist 후 왼쪽 자명 인수로 나눈 연산자"""
        if source not in self._quotients:
            self._quotients[source] = OreService.left_divide_exact(
                self.twisted(source), self.dataset.twist.left_factor.expand()
            )
        return self._quotients[source]

    def scalar_operator(self, source: Source) -> DiffOp:
        """Frobenius 해를 구할 연산자 (paper: Picard-Fuchs 연산자, computed: quotient)"""
        if source == "computed":
            return self.quotient("computed")
        return self.paper_operator

    def frobenius_basis(self, source: Source, trunc_order: Optional[int] = None) -> FrobeniusBasis:
        """scalar_operator(source) 의 Frobenius 해 (trunc_order, 기본값 truncation_order 까지)"""
        order = self.settings.truncation_order if trunc_order is None else trunc_order
        if (source, order) not in self._frobenius:
            self._frobenius[(source, order)] = MirrorService.frobenius_solve(self.scalar_operator(source), order)
        return self._frobenius[(source, order)]


class PipelineService:
    """CLI 하위 명령마다 하나의 단계 보고서를 만듭니다."""

    @staticmethod
    def run_ring(context: PipelineContext) -> RingReport:
        """Frobenius 환을 만들고 공리를 검사합니다."""
        ring = context.ring
        labels = ring.labels
        violations = RingService.check_axioms(ring)

        structure: dict[str, dict[str, str]] = {}
        for i in range(ring.dimension):
            for j in range(i, ring.dimension):
                product = ring.product(i, j)
                if not product.is_zero():
                    structure[f"{labels[i]}*{labels[j]}"] = {
                        labels[k]: format_scalar(product[k]) for k in product.support()
                    }
        duals = RingService.dual_basis(ring)
        mismatches = [f"axiom violated: {v}" for v in violations]
        if ring.betti() != list(context.dataset.ring.betti):
            mismatches.append(f"betti numbers {ring.betti()} != {context.dataset.ring.betti}")

        return RingReport(
            passed=not mismatches,
            mismatches=mismatches,
            provenance={
                "basis": "paper",
                "top_values": "paper",
                "structure_constants": "computed",
                "pairing_matrix": "computed",
                "dual_basis": "computed",
            },
            basis=[BasisReportEntry(label=e.label, codim=e.codim) for e in ring.basis],
            betti=ring.betti(),
            structure_constants=structure,
            pairing_matrix=[[format_scalar(v) for v in row] for row in ring.gram],
            dual_basis={
                labels[j]: {labels[k]: format_scalar(duals[j][k]) for k in duals[j].support()}
                for j in range(ring.dimension)
            },
            axiom_violations=violations,
        )

    @staticmethod
    def run_wdvv(context: PipelineContext) -> WDVVReport:
        """d = 1 입력으로부터 d = 2 목표 상관자를 재구성합니다."""
        ring = context.ring
        labels = ring.labels
        result = context.reconstruction
        expected = Fraction(context.dataset.target_correlator.value)

        mismatches = []
        if result.target_value != expected:
            mismatches.append(
                f"{result.target.render(labels)} = {format_scalar(result.target_value)}, expected {format_scalar(expected)}"
            )
        for stats in result.stats:
            if stats.residual_failures:
                mismatches.append(f"degree {stats.degree}: {stats.residual_failures} relations not satisfied")

        return WDVVReport(
            passed=not mismatches,
            mismatches=mismatches,
            provenance={"table": "wdvv-solved", "target_value": "wdvv-solved", "expected_value": "paper"},
            table=[
                CorrelatorReportEntry(
                    correlator=key.render(labels),
                    degree=key.degree,
                    insertions=[labels[i] for i in key.insertions],
                    value=format_scalar(value),
                    provenance=provenance.value,
                )
                for key, value, provenance in result.table.items()
            ],
            degrees=[
                DegreeReport(
                    degree=stats.degree,
                    unknowns=stats.unknowns,
                    relations=stats.equations,
                    skipped_nonlinear=stats.skipped_nonlinear,
                    rank=stats.rank,
                    determined=[key.render(labels) for key in stats.determined],
                    undetermined=[key.render(labels) for key in stats.undetermined],
                    residual_failures=stats.residual_failures,
                )
                for stats in result.stats
            ],
            target=result.target.render(labels),
            target_value=format_scalar(result.target_value),
            expected_value=format_scalar(expected),
        )

    @staticmethod
    def run_qde(context: PipelineContext, source: Source) -> QDEReport:
        """
        양자 곱셈 행렬에서 스칼라 소거 연산자를 찾고 데이터셋 연산자와 비교합니다.

        source 가 paper 이면 데이터셋의 d = 2 값을, computed 이면 WDVV 로 구한 값을 사용합니다.
        """
        ring = context.ring
        labels = ring.labels
        matrix = context.quantum_matrix(source)
        grading = QDEService.grading_violations(ring, matrix)
        self_adjoint = QDEService.self_adjoint_check(ring, matrix)
        result = context.annihilator(source)
        operator = result.operator
        expected = OreService.normalize_primitive(context.paper_reduced_operator)

        mismatches = [f"grading violated at {entry}" for entry in grading]
        if not self_adjoint:
            mismatches.append("quantum multiplication is not self-adjoint")
        if result.nullity != 1:
            mismatches.append(f"annihilator space has dimension {result.nullity}")
        slice_mismatches = [
            d
            for d in range(max(operator.q_degree, expected.q_degree) + 1)
            if operator.slice(d) != expected.slice(d)
        ]
        if slice_mismatches:
            mismatches.append(f"operator differs from dataset in q-slices {slice_mismatches}")

        order = max(context.settings.truncation_order, operator.q_degree)
        solution = QDEService.integrate_fundamental(matrix, order)
        annihilated = all(
            OreService.apply(operator, QDEService.j_function(ring, solution, column)).is_zero()
            for column in range(ring.dimension)
        )
        if not annihilated:
            mismatches.append("operator does not annihilate the fundamental solution")

        logger.info("qde (%s): nullity %d, %d slice mismatches", source, result.nullity, len(slice_mismatches))
        return QDEReport(
            passed=not mismatches,
            mismatches=mismatches,
            provenance={
                "quantum_matrix": "wdvv-solved" if source == "computed" else "paper",
                "operator": "computed",
            },
            source=source,
            quantum_matrix=[
                MatrixEntry(q_degree=e, row=labels[r], col=labels[c], value=format_scalar(value))
                for e in range(matrix.q_degree + 1)
                for r, c, value in matrix.nonzero_entries(e)
            ],
            grading_ok=not grading,
            self_adjoint=self_adjoint,
            unknowns=result.unknowns,
            equations=result.equations,
            nullity=result.nullity,
            operator=render_operator(operator),
            slice_mismatches=slice_mismatches,
            annihilates_fundamental_solution=annihilated,
            trunc_order=order,
        )

    @staticmethod
    def run_twist(context: PipelineContext, source: Source) -> TwistReport:
        """
        twist 후 왼쪽 인수를 나누고, 결과가 Picard-Fuchs 연산자 L 의 해를 모두 소거하는지 확인합니다.

        quotient 는 L 의 상수배가 아니라 L 을 오른쪽 인수로 갖는 고차 연산자이므로,
        L 의 Frobenius 해 I_0..I_3 에 quotient 를 적용해 0 이 되는지로 검사합니다.
        q^0 슬라이스의 비는 데이터셋의 스칼라와 같아야 합니다.
        """
        twist = context.dataset.twist
        twisted = context.twisted(source)
        quotient = context.quotient(source)
        operator = context.paper_operator
        expected_scalar = Fraction(twist.expected_scalar)

        literal = OreService.scalar_ratio(quotient, operator)
        leading = OreService.scalar_ratio(DiffOp([quotient.slice(0)]), DiffOp([operator.slice(0)]))

        basis = context.frobenius_basis("paper", max(context.settings.truncation_order, quotient.q_degree))
        annihilated = [OreService.apply(quotient, solution).is_zero() for solution in basis.solutions]

        mismatches = [f"quotient does not annihilate I_{k}" for k, ok in enumerate(annihilated) if not ok]
        if leading != expected_scalar:
            mismatches.append(f"leading slice ratio is {leading}, expected {format_scalar(expected_scalar)}")

        return TwistReport(
            passed=not mismatches,
            mismatches=mismatches,
            provenance={
                "twisted": "computed",
                "quotient": "computed",
                "left_factor": "paper",
                "picard_fuchs": "paper",
            },
            source=source,
            multiplicity=twist.multiplicity,
            left_factor=twist.left_factor.expand().render(),
            twisted=render_operator(twisted),
            quotient=render_operator(quotient),
            literal_scalar=None if literal is None else format_scalar(literal),
            leading_scalar=None if leading is None else format_scalar(leading),
            annihilates_frobenius_basis=annihilated,
            checked_order=basis.trunc_order,
        )

    @staticmethod
    def _check_order(settings: Settings) -> int:
        order = settings.truncation_order
        if order < MIN_INSTANTON_ORDER:
            raise ConfigurationException(
                "truncation_order", f"must be at least {MIN_INSTANTON_ORDER} for instanton extraction, got {order}"
            )
        return order

    @staticmethod
    def _mirror_chain(
        context: PipelineContext, source: Source
    ) -> tuple[FrobeniusBasis, MirrorMapData, YukawaSeries, InstantonTable]:
        PipelineService._check_order(context.settings)
        constant = Fraction(context.dataset.yukawa_constant)
        basis = context.frobenius_basis(source)
        mirror = MirrorService.mirror_map(basis)
        yukawa = MirrorService.yukawa(basis, mirror, constant)
        max_degree = context.settings.instanton_max_degree
        if max_degree > yukawa.trunc_order:
            raise ConfigurationException(
                "instanton_max_degree", f"K(Q) is known only to Q^{yukawa.trunc_order}, requested {max_degree}"
            )
        table = MirrorService.instanton_extract(yukawa, max_degree, constant)
        return basis, mirror, yukawa, table

    @staticmethod
    def _instanton_mismatches(numbers: list[int], expected: list[int]) -> list[str]:
        return [
            f"n_{d} = {value}, expected {expected[d - 1]}"
            for d, value in enumerate(numbers, start=1)
            if d <= len(expected) and value != expected[d - 1]
        ]

    @staticmethod
    def run_mirror(context: PipelineContext, source: Source) -> MirrorReport:
        """Frobenius 해, 거울 사상, Yukawa 결합, 인스턴톤 수, 4차 연산자 해 검증"""
        basis, mirror, yukawa, table = PipelineService._mirror_chain(context, source)
        operator = context.scalar_operator(source)
        expected = list(context.dataset.instanton_numbers)
        numbers = list(table.numbers)

        annihilated = [OreService.apply(operator, solution).is_zero() for solution in basis.solutions]
        mismatches = [f"I_{k} is not annihilated" for k, ok in enumerate(annihilated) if not ok]
        round_trip = SeriesService.compose(mirror.Q_of_q, mirror.q_of_Q)
        if round_trip != PowerSeries.variable(round_trip.trunc_order):
            mismatches.append("mirror map does not invert")
        mismatches.extend(PipelineService._instanton_mismatches(numbers, expected))

        residuals = MirrorService.verify_theorem1(basis, mirror, yukawa)
        mismatches.extend(f"{r.name} is not a solution of the fourth-order equation" for r in residuals if not r.annihilated)

        return MirrorReport(
            passed=not mismatches,
            mismatches=mismatches,
            provenance={
                "operator": "paper" if source == "paper" else "computed",
                "n_d": "computed",
                "expected_n_d": "paper",
                "K_coefficients": "computed",
            },
            operator_source=source,
            N=basis.trunc_order,
            frobenius_annihilated=annihilated,
            holomorphic_coefficients=_coefficients(basis.holomorphic[0]),
            mirror_map_coefficients=_coefficients(mirror.Q_of_q),
            inverse_map_coefficients=_coefficients(mirror.q_of_Q),
            K_coefficients=_coefficients(yukawa.K),
            n_d=numbers,
            expected_n_d=expected,
            three_point_numbers=MirrorService.three_point_numbers(table),
            theorem1_residual_orders={
                r.name: None if r.first_nonzero is None else r.first_nonzero[1] for r in residuals
            },
            theorem1_residuals=[
                SolutionResidualReport(
                    solution=r.name,
                    annihilated=r.annihilated,
                    verified_order=r.verified_order,
                    first_nonzero=None if r.first_nonzero is None else list(r.first_nonzero),
                )
                for r in residuals
            ],
        )

    @staticmethod
    def run_instanton(context: PipelineContext, source: Source) -> InstantonReport:
        """인스턴톤 수만 추출해 데이터셋과 비교합니다."""
        basis, _, _, table = PipelineService._mirror_chain(context, source)
        expected = list(context.dataset.instanton_numbers)
        numbers = list(table.numbers)
        mismatches = PipelineService._instanton_mismatches(numbers, expected)
        return InstantonReport(
            passed=not mismatches,
            mismatches=mismatches,
            provenance={"n_d": "computed", "expected_n_d": "paper"},
            operator_source=source,
            N=basis.trunc_order,
            n_d=numbers,
            expected_n_d=expected,
            three_point_numbers=MirrorService.three_point_numbers(table),
        )

    @staticmethod
    def run_verify_all(context: PipelineContext) -> VerifyAllReport:
        """
        모든 단계를 computed 체인으로 실행하고, paper 연산자로부터의 결과와도 비교합니다.

        computed 체인: d=1 값 -> WDVV -> 양자 행렬 -> 소거 연산자 -> twist -> Frobenius -> n_d
        """
        order = PipelineService._check_order(context.settings)
        ring = PipelineService.run_ring(context)
        wdvv = PipelineService.run_wdvv(context)
        qde = PipelineService.run_qde(context, "computed")
        twist = PipelineService.run_twist(context, "computed")
        mirror_paper = PipelineService.run_mirror(context, "paper")
        mirror_computed = PipelineService.run_mirror(context, "computed")

        reports = [ring, wdvv, qde, twist, mirror_paper, mirror_computed]
        names = ["ring", "wdvv", "qde", "twist", "mirror (paper operator)", "mirror (computed operator)"]
        summary = [
            StageSummary(stage=name, passed=report.passed, mismatches=report.mismatches)
            for name, report in zip(names, reports)
        ]
        mismatches = [f"{s.stage}: {m}" for s in summary for m in s.mismatches]
        if mirror_paper.n_d != mirror_computed.n_d:
            mismatches.append("instanton numbers differ between paper and computed operators")

        logger.info("verify-all finished: %d mismatches", len(mismatches))
        return VerifyAllReport(
            passed=not mismatches,
            mismatches=mismatches,
            provenance={"summary": "computed"},
            N=order,
            summary=summary,
            ring=ring,
            wdvv=wdvv,
            qde=qde,
            twist=twist,
            mirror_paper=mirror_paper,
            mirror_computed=mirror_computed,
        )
