"""
애플리케이션 설정 관리

Pydantic Settings를 사용하여 환경 변수를 로드합니다.
.env 파일 또는 시스템 환경 변수에서 설정을 읽어옵니다.
CLI 플래그는 get_settings(**overrides)로 환경 변수 값을 덮어씁니다.
"""

from pathlib import Path
from typing import Literal, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """애플리케이션 설정 클래스 (CLI 실행 설정)"""

    # 급수 절단 차수 (q^N 까지의 계수를 정확하게 계산)
    truncation_order: int = Field(default=12, ge=1)

    # 출력 설정
    output_format: Literal["text", "json"] = "text"

    # 데이터셋 설정
    dataset_path: Optional[Path] = None  # 내장 데이터셋 대신 사용할 JSON 파일
    stage_source: Literal["paper", "computed"] = "paper"

    # 스칼라 소거(annihilator) 탐색 범위
    annihilator_order_bound: int = Field(default=10, ge=1)
    annihilator_qdeg_bound: int = Field(default=5, ge=0)

    # 인스턴톤 추출 설정
    instanton_max_degree: int = Field(default=5, ge=1)

    # 애플리케이션 설정
    app_env: str = "development"
    log_level: str = "INFO"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",  # 정의되지 않은 환경 변수 무시
    )

    @property
    def json_output(self) -> bool:
        """JSON 출력 여부"""
        return self.output_format == "json"


# 인스턴톤 추출에는 Q^5 계수와 여유 차수가 필요합니다.
MIN_INSTANTON_ORDER = 8


def get_settings(**overrides) -> Settings:
    """
    Settings 인스턴스를 반환하는 팩토리 함수

    값이 None인 override는 무시되므로 argparse 결과를 그대로 넘길 수 있습니다.
    """
    return Settings(**{key: value for key, value in overrides.items() if value is not None})
