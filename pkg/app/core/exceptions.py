"""
커스텀 예외 정의

애플리케이션 전역에서 사용되는 커스텀 예외 클래스들입니다.
모든 예외는 CLI 종료 코드(exit_code)를 가집니다.

Exit Code:
    2: 검증 불일치 (계산 결과가 기대값과 다름)
    3: 데이터셋 / 사전조건 오류
"""

from fractions import Fraction

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_PRECONDITION = 3


class PipelineException(Exception):
    """
    모든 도메인 예외의 기반 클래스

    Exit Code: 3
    """

    exit_code = EXIT_PRECONDITION

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


# --- 급수 (series) ---------------------------------------------------------


class SeriesTruncationException(PipelineException):
    """
    절단 차수를 넘어선 계수를 읽으려 할 때 발생하는 예외

    Exit Code: 3
    """

    def __init__(self, index: int, trunc_order: int):
        self.index = index
        self.trunc_order = trunc_order
        super().__init__(
            f"Coefficient of q^{index} requested but series is only known through q^{trunc_order}"
        )


class SeriesPreconditionException(PipelineException):
    """
    급수 연산의 사전조건 위반 (상수항 0, 역원 없음 등)

    Exit Code: 3
    """

    def __init__(self, operation: str, reason: str):
        self.operation = operation
        self.reason = reason
        super().__init__(f"{operation}: {reason}")


class LogDegreeOverflowException(PipelineException):
    """
    로그 급수의 ln q 차수가 허용 상한을 넘을 때 발생하는 예외

    Exit Code: 3
    """

    def __init__(self, degree: int, bound: int):
        self.degree = degree
        self.bound = bound
        super().__init__(f"Log degree {degree} exceeds the bound {bound}")


# --- 미분 연산자 (operator) --------------------------------------------------


class OperatorDivisionException(PipelineException):
    """
    슬라이스 단위 정확 나눗셈에서 나머지가 0이 아닐 때 발생하는 예외

    Exit Code: 2
    """

    exit_code = EXIT_MISMATCH

    def __init__(self, slice_index: int, remainder: str):
        self.slice_index = slice_index
        self.remainder = remainder
        super().__init__(f"Nonzero remainder in q^{slice_index} slice: {remainder}")


class ZeroOperatorException(PipelineException):
    """
    0 연산자를 정규화하려 할 때 발생하는 예외

    Exit Code: 3
    """

    def __init__(self, operation: str = "normalize_primitive"):
        self.operation = operation
        super().__init__(f"{operation}: operator is zero")


class InsufficientOrderException(PipelineException):
    """
    연산자의 q 차수보다 입력 급수의 절단 차수가 낮을 때 발생하는 예외

    Exit Code: 3
    """

    def __init__(self, trunc_order: int, q_degree: int):
        self.trunc_order = trunc_order
        self.q_degree = q_degree
        super().__init__(
            f"Series truncated at q^{trunc_order} cannot absorb an operator of q-degree {q_degree}"
        )


# --- 프로베니우스 환 (ring) ---------------------------------------------------


class RingConstructionException(PipelineException):
    """
    최고차 값으로부터 환을 만들 수 없을 때 발생하는 예외 (특이 pairing 블록 등)

    Exit Code: 3
    """

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Cannot build the Frobenius ring: {reason}")


# --- Gromov-Witten 상관자 ----------------------------------------------------


class DivisorEquationException(PipelineException):
    """
    divisor equation을 적용할 수 없는 상관자에 적용하려 할 때 발생하는 예외

    Exit Code: 3
    """

    def __init__(self, key: str):
        self.key = key
        super().__init__(f"Divisor equation does not apply to {key}")


class NonlinearRelationException(PipelineException):
    """
    두 미지수의 곱이 등장하는 관계식을 선형화하려 할 때 발생하는 예외

    Exit Code: 3
    """

    def __init__(self, left: str, right: str):
        self.left = left
        self.right = right
        super().__init__(f"Product of two unknown forms: ({left}) * ({right})")


class InconsistentSystemException(PipelineException):
    """
    선형 연립방정식이 모순일 때 발생하는 예외 (입력 데이터 오류 신호)

    Exit Code: 3
    """

    def __init__(self, context: str, rank: int, augmented_rank: int):
        self.context = context
        self.rank = rank
        self.augmented_rank = augmented_rank
        super().__init__(
            f"Inconsistent linear system ({context}): rank {rank} < augmented rank {augmented_rank}"
        )


class UndeterminedCorrelatorException(PipelineException):
    """
    목표 상관자가 관계식들로부터 유일하게 결정되지 않을 때 발생하는 예외

    Exit Code: 2
    """

    exit_code = EXIT_MISMATCH

    def __init__(self, key: str):
        self.key = key
        super().__init__(f"Correlator {key} is not determined by the relation system")


class MissingCorrelatorException(PipelineException):
    """
    차원 필터를 통과하는 상관자가 테이블에 없을 때 발생하는 예외

    Exit Code: 3
    """

    def __init__(self, key: str):
        self.key = key
        super().__init__(f"Correlator {key} passes the dimension filter but is missing")


# --- 양자 접속 / 거울 대칭 ----------------------------------------------------


class AnnihilatorNotFoundException(PipelineException):
    """
    주어진 범위 안에서 0이 아닌 소거 연산자를 찾지 못했을 때 발생하는 예외

    Exit Code: 2
    """

    exit_code = EXIT_MISMATCH

    def __init__(self, order_bound: int, qdeg_bound: int):
        self.order_bound = order_bound
        self.qdeg_bound = qdeg_bound
        super().__init__(
            f"No annihilator of order <= {order_bound} and q-degree <= {qdeg_bound}"
        )


class FrobeniusRecursionException(PipelineException):
    """
    MUM 조건 위반 또는 점화식의 특이 단계에서 발생하는 예외

    Exit Code: 3
    """

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Frobenius recursion failed: {reason}")


class ResidualLogarithmException(PipelineException):
    """
    Yukawa 계산에서 (Q d/dQ)^2 y2 에 로그 항이 남을 때 발생하는 예외

    Exit Code: 2
    """

    exit_code = EXIT_MISMATCH

    def __init__(self, log_degree: int):
        self.log_degree = log_degree
        super().__init__(f"Residual (ln Q)^{log_degree} part in the Yukawa numerator")


class NonIntegralInstantonException(PipelineException):
    """
    인스턴톤 수가 정수가 아닐 때 발생하는 예외

    Exit Code: 2
    """

    exit_code = EXIT_MISMATCH

    def __init__(self, degree: int, value: Fraction):
        self.degree = degree
        self.value = value
        super().__init__(f"Instanton number n_{degree} = {value} is not an integer")


# --- 데이터셋 / 설정 / 검증 ---------------------------------------------------


class DatasetException(PipelineException):
    """
    데이터셋 파일을 읽거나 검증할 수 없을 때 발생하는 예외

    Exit Code: 3
    """

    def __init__(self, source: str, reason: str):
        self.source = source
        self.reason = reason
        super().__init__(f"Invalid dataset {source}: {reason}")


class ConfigurationException(PipelineException):
    """
    실행 설정이 단계의 사전조건을 만족하지 않을 때 발생하는 예외

    Exit Code: 3
    """

    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f"Invalid configuration '{field}': {reason}")


class VerificationMismatchException(PipelineException):
    """
    단계 결과가 데이터셋의 기대값과 다를 때 발생하는 예외

    Exit Code: 2
    """

    exit_code = EXIT_MISMATCH

    def __init__(self, stage: str, mismatches: list[str]):
        self.stage = stage
        self.mismatches = mismatches
        super().__init__(f"Stage '{stage}' failed: " + "; ".join(mismatches))


class ConflictingCorrelatorException(PipelineException):
    """
    이미 저장된 상관자에 다른 값을 쓰려 할 때 발생하는 예외

    Exit Code: 2
    """

    exit_code = EXIT_MISMATCH

    def __init__(self, key: str, stored: Fraction, incoming: Fraction):
        self.key = key
        self.stored = stored
        self.incoming = incoming
        super().__init__(f"Correlator {key} already stored as {stored}, refusing {incoming}")
