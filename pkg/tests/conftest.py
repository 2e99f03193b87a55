"""
pytest 픽스처 정의

계산 비용이 큰 중간 결과(WDVV 재구성, 소거 연산자 탐색)는 session 단위로 한 번만 만듭니다.
"""

import pytest

from app.core.config import Settings
from app.db.dataset import EMBEDDED_DATASET_PATH, read_dataset
from app.services.gw_service import GWService
from app.services.pipeline_service import PipelineContext
from app.services.ring_service import RingService


@pytest.fixture(scope="session")
def settings():
    """테스트용 설정 객체 픽스처 (.env 파일을 읽지 않음)"""
    return Settings(
        _env_file=None,
        truncation_order=8,
        instanton_max_degree=5,
        log_level="WARNING",
    )


@pytest.fixture(scope="session")
def dataset():
    """내장 데이터셋 픽스처"""
    return read_dataset(EMBEDDED_DATASET_PATH)


@pytest.fixture(scope="session")
def ring(dataset):
    """Frobenius 환 픽스처"""
    return RingService.from_dataset(dataset.ring)


@pytest.fixture(scope="function")
def table(ring, dataset):
    """
    d = 1 입력 상관자 테이블 픽스처

    GWTable 은 store 로 변경되므로 테스트 함수마다 새로 만듭니다.
    """
    return GWService.table_from_entries(ring, dataset.correlators)


@pytest.fixture(scope="session")
def context(dataset, settings):
    """중간 결과를 공유하는 파이프라인 컨텍스트 픽스처"""
    return PipelineContext(dataset, settings)


@pytest.fixture(scope="session")
def quantum_matrix(context):
    """데이터셋의 d = 2 값으로 만든 양자 곱셈 행렬"""
    return context.quantum_matrix("paper")


@pytest.fixture(scope="session")
def paper_operator(context):
    """4차 Picard-Fuchs 연산자"""
    return context.paper_operator


@pytest.fixture(scope="session")
def reduced_operator(context):
    """데이터셋의 10차 연산자 P(D)"""
    return context.paper_reduced_operator
