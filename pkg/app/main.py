"""
pfaffian-mirror 명령줄 진입점

하위 명령마다 하나의 단계 보고서를 stdout 에 출력합니다 (--json 이면 JSON).
로그는 stderr 로만 출력됩니다.

Exit Code:
    0: 모든 검사 통과
    2: 계산 결과가 기대값과 다름
    3: 데이터셋 / 설정 / 사전조건 오류
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ValidationError

from app.core.config import Settings, get_settings
from app.core.exceptions import EXIT_OK, EXIT_PRECONDITION, PipelineException, VerificationMismatchException
from app.core.logging_config import configure_logging
from app.db.dataset import export_dataset, load_dataset
from app.schemas.report import (
    InstantonReport,
    MirrorReport,
    QDEReport,
    RingReport,
    StageReport,
    TwistReport,
    VerifyAllReport,
    WDVVReport,
)
from app.services.pipeline_service import PipelineContext, PipelineService

logger = logging.getLogger("app.main")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, dest="truncation_order", help="급수 절단 차수 N (기본 12)")
    common.add_argument("--json", action="store_const", const="json", dest="output_format", help="JSON 보고서 출력")
    common.add_argument("--dataset", type=Path, dest="dataset_path", help="내장 데이터셋 대신 사용할 JSON 파일")
    common.add_argument(
        "--stage-source",
        choices=["paper", "computed"],
        dest="stage_source",
        help="qde/twist/mirror 입력을 데이터셋 값에서 가져올지, 앞 단계 계산값을 쓸지",
    )
    common.add_argument("--log-level", dest="log_level", help="DEBUG, INFO, WARNING, ...")

    parser = argparse.ArgumentParser(
        prog="pfaffian-mirror",
        description="Pfaffian Calabi-Yau 3-fold 의 거울 대칭 예측을 정확한 유리수 연산으로 검증합니다.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("ring", parents=[common], help="Frobenius 환 구성과 공리 검사")
    commands.add_parser("wdvv", parents=[common], help="d=1 값에서 d=2 상관자 재구성")
    commands.add_parser("qde", parents=[common], help="양자 미분방정식과 스칼라 소거 연산자")
    commands.add_parser("twist", parents=[common], help="hyperplane twist 와 Picard-Fuchs 인수 확인")
    commands.add_parser("mirror", parents=[common], help="거울 사상, Yukawa 결합, 해 검증")
    commands.add_parser("instanton", parents=[common], help="인스턴톤 수 n_1..n_5")
    commands.add_parser("verify-all", parents=[common], help="전체 체인 실행")
    dataset = commands.add_parser("dataset", parents=[common], help="내장 데이터셋 확인 / 내보내기")
    dataset.add_argument("--export", type=Path, dest="export_path", help="데이터셋을 이 경로에 JSON 으로 저장")
    return parser


def run_command(command: str, context: PipelineContext) -> StageReport:
    source = context.settings.stage_source
    if command == "ring":
        return PipelineService.run_ring(context)
    if command == "wdvv":
        return PipelineService.run_wdvv(context)
    if command == "qde":
        return PipelineService.run_qde(context, source)
    if command == "twist":
        return PipelineService.run_twist(context, source)
    if command == "mirror":
        return PipelineService.run_mirror(context, source)
    if command == "instanton":
        return PipelineService.run_instanton(context, source)
    if command == "verify-all":
        return PipelineService.run_verify_all(context)
    raise ValueError(f"unknown command: {command}")


def _status(report: StageReport) -> str:
    return "PASS" if report.passed else "FAIL"


def render_text(report: StageReport) -> str:
    """사람이 읽는 요약. JSON 보고서의 일부만 보여줍니다."""
    lines = [f"[{report.stage}] {_status(report)}"]
    if isinstance(report, RingReport):
        lines.append(f"basis: {', '.join(f'{e.label}({e.codim})' for e in report.basis)}")
        lines.append(f"betti: {report.betti}")
        lines.append(f"axiom violations: {len(report.axiom_violations)}")
    elif isinstance(report, WDVVReport):
        for degree in report.degrees:
            lines.append(
                f"d={degree.degree}: {len(degree.determined)}/{degree.unknowns} determined, "
                f"rank {degree.rank}, {degree.relations} relations, {degree.skipped_nonlinear} nonlinear skipped"
            )
        lines.append(f"{report.target} = {report.target_value} (expected {report.expected_value})")
    elif isinstance(report, QDEReport):
        lines.append(f"source: {report.source}, nullity {report.nullity}, {report.unknowns} unknowns")
        lines.append(f"grading ok: {report.grading_ok}, self-adjoint: {report.self_adjoint}")
        lines.extend(f"P_{d} = {poly}" for d, poly in enumerate(report.operator.slices))
    elif isinstance(report, TwistReport):
        lines.append(f"left factor: {report.left_factor}")
        lines.extend(f"R_{d} = {poly}" for d, poly in enumerate(report.quotient.slices))
        lines.append(f"literal scalar: {report.literal_scalar}, leading scalar: {report.leading_scalar}")
        lines.append(f"I_0..I_3 annihilated through q^{report.checked_order}: {report.annihilates_frobenius_basis}")
    elif isinstance(report, MirrorReport):
        lines.append(f"operator: {report.operator_source}, N = {report.N}")
        lines.append(f"K(Q) = {' + '.join(f'{c} Q^{k}' for k, c in enumerate(report.K_coefficients[:4]))} + ...")
        lines.append(f"n_d: {report.n_d}")
        lines.extend(
            f"{r.solution}: {'ok' if r.annihilated else 'residual'} through Q^{r.verified_order}"
            for r in report.theorem1_residuals
        )
    elif isinstance(report, InstantonReport):
        lines.append(f"operator: {report.operator_source}, N = {report.N}")
        lines.extend(f"n_{d} = {n}" for d, n in enumerate(report.n_d, start=1))
    elif isinstance(report, VerifyAllReport):
        lines.extend(f"  {s.stage}: {'PASS' if s.passed else 'FAIL'}" for s in report.summary)
        lines.append(f"n_d: {report.mirror_computed.n_d}")
    lines.extend(f"mismatch: {m}" for m in report.mismatches)
    return "\n".join(lines)


def emit(report: BaseModel, settings: Settings) -> None:
    if settings.json_output:
        sys.stdout.write(report.model_dump_json(indent=2) + "\n")
    else:
        sys.stdout.write(render_text(report) + "\n")


def run_dataset(args: argparse.Namespace, settings: Settings) -> int:
    dataset = load_dataset(settings)
    if args.export_path is not None:
        export_dataset(dataset, args.export_path)
    if settings.json_output:
        sys.stdout.write(dataset.model_dump_json(indent=2) + "\n")
    else:
        sys.stdout.write(
            f"dataset {dataset.version}: {len(dataset.correlators)} correlators, "
            f"{len(dataset.reduced_operator)} operator slices, n_d = {dataset.instanton_numbers}\n"
        )
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = get_settings(
            truncation_order=args.truncation_order,
            output_format=args.output_format,
            dataset_path=args.dataset_path,
            stage_source=args.stage_source,
            log_level=args.log_level,
        )
    except ValidationError as exc:
        sys.stderr.write(f"invalid configuration: {exc.errors()[0]['msg']}\n")
        return EXIT_PRECONDITION
    configure_logging(settings)

    try:
        if args.command == "dataset":
            return run_dataset(args, settings)
        context = PipelineContext(load_dataset(settings), settings)
        report = run_command(args.command, context)
    except PipelineException as exc:
        logger.error("%s failed: %s", args.command, exc.message)
        return exc.exit_code

    emit(report, settings)
    if not report.passed:
        mismatch = VerificationMismatchException(report.stage, report.mismatches)
        logger.error(mismatch.message)
        return mismatch.exit_code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
