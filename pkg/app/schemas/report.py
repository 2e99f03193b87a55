"""
단계별 보고서 Pydantic 스키마

유리수는 "num/den" 문자열, 인스턴톤 수는 정수로 직렬화합니다.
모든 보고서는 필드별 출처(provenance)를 가집니다.
"""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

ProvenanceTag = Literal["paper", "computed", "classical", "divisor-reduced", "wdvv-solved"]


class StageReport(BaseModel):
    """
    모든 단계 보고서의 공통 필드

    Example:
        {
            "stage": "wdvv",
            "passed": true,
            "mismatches": [],
            "provenance": {"target_value": "wdvv-solved", "expected_value": "paper"}
        }
    """

    model_config = ConfigDict(frozen=True)

    stage: str = Field(..., description="단계 이름", examples=["ring"])
    passed: bool = Field(..., description="모든 검사를 통과했는지 여부")
    mismatches: list[str] = Field(default_factory=list, description="실패한 검사 설명")
    provenance: dict[str, ProvenanceTag] = Field(default_factory=dict, description="필드별 출처")


class OperatorRendering(BaseModel):
    """미분 연산자의 두 가지 표기"""

    model_config = ConfigDict(frozen=True)

    q_degree: int
    order: int
    slices: list[str] = Field(..., description="q^d 슬라이스 P_d(D)")
    monomial: str = Field(..., description='"c * q^d * D^k" 합')
    collected: str = Field(..., description="Σ c_k(q) D^k")


# --- ring -----------------------------------------------------------------


class BasisReportEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str
    codim: int


class RingReport(StageReport):
    stage: str = "ring"
    basis: list[BasisReportEntry]
    betti: list[int]
    structure_constants: dict[str, dict[str, str]] = Field(
        ..., description='"a*b" -> {basis label: 계수}, 0 이 아닌 곱만'
    )
    pairing_matrix: list[list[str]]
    dual_basis: dict[str, dict[str, str]]
    axiom_violations: list[str]


# --- wdvv -----------------------------------------------------------------


class CorrelatorReportEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    correlator: str = Field(..., examples=["<p^5,p^6>_2"])
    degree: int
    insertions: list[str]
    value: str
    provenance: ProvenanceTag


class DegreeReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    degree: int
    unknowns: int
    relations: int
    skipped_nonlinear: int
    rank: int
    determined: list[str]
    undetermined: list[str]
    residual_failures: int


class WDVVReport(StageReport):
    stage: str = "wdvv"
    table: list[CorrelatorReportEntry]
    degrees: list[DegreeReport]
    target: str
    target_value: str
    expected_value: str


# --- qde / twist ------------------------------------------------------------


class MatrixEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    q_degree: int
    row: str
    col: str
    value: str


class QDEReport(StageReport):
    stage: str = "qde"
    source: Literal["paper", "computed"]
    quantum_matrix: list[MatrixEntry]
    grading_ok: bool
    self_adjoint: bool
    unknowns: int
    equations: int
    nullity: int
    operator: OperatorRendering
    slice_mismatches: list[int] = Field(default_factory=list, description="기대값과 다른 q^d 슬라이스")
    annihilates_fundamental_solution: bool
    trunc_order: int


class TwistReport(StageReport):
    stage: str = "twist"
    source: Literal["paper", "computed"]
    multiplicity: int
    left_factor: str
    twisted: OperatorRendering
    quotient: OperatorRendering
    literal_scalar: Optional[str] = Field(None, description="quotient = s·L 인 s (없으면 null)")
    leading_scalar: Optional[str] = Field(None, description="q^0 슬라이스 사이의 비")
    annihilates_frobenius_basis: list[bool] = Field(..., description="quotient 가 L 의 해 I_0..I_3 을 소거하는지")
    checked_order: int = Field(..., description="소거를 확인한 q 차수")


# --- mirror / instanton -----------------------------------------------------


class SolutionResidualReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    solution: str
    annihilated: bool
    verified_order: int
    first_nonzero: Optional[list[int]] = Field(None, description="[ln Q 차수, Q 차수]")


class MirrorReport(StageReport):
    stage: str = "mirror"
    operator_source: Literal["paper", "computed"]
    N: int
    frobenius_annihilated: list[bool]
    holomorphic_coefficients: list[str]
    mirror_map_coefficients: list[str]
    inverse_map_coefficients: list[str]
    K_coefficients: list[str]
    n_d: list[int]
    expected_n_d: list[int]
    three_point_numbers: list[int]
    theorem1_residual_orders: dict[str, Optional[int]]
    theorem1_residuals: list[SolutionResidualReport]


class InstantonReport(StageReport):
    stage: str = "instanton"
    operator_source: Literal["paper", "computed"]
    N: int
    n_d: list[int]
    expected_n_d: list[int]
    three_point_numbers: list[int]


class StageSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    stage: str
    passed: bool
    mismatches: list[str]


class VerifyAllReport(StageReport):
    stage: str = "verify-all"
    N: int
    summary: list[StageSummary]
    ring: RingReport
    wdvv: WDVVReport
    qde: QDEReport
    twist: TwistReport
    mirror_paper: MirrorReport
    mirror_computed: MirrorReport
