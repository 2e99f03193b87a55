"""
설정(Config) 관련 테스트
"""

import pytest
from pydantic import ValidationError

from app.core.config import MIN_INSTANTON_ORDER, Settings, get_settings


def test_config_from_env(monkeypatch):
    """환경 변수로부터 설정을 로드하는지 테스트"""
    monkeypatch.setenv("TRUNCATION_ORDER", "15")
    monkeypatch.setenv("OUTPUT_FORMAT", "json")
    monkeypatch.setenv("STAGE_SOURCE", "computed")

    settings = Settings(_env_file=None)

    assert settings.truncation_order == 15
    assert settings.json_output is True
    assert settings.stage_source == "computed"


def test_config_defaults(monkeypatch):
    """환경 변수가 없을 때 기본값 테스트"""
    for name in ("TRUNCATION_ORDER", "OUTPUT_FORMAT", "STAGE_SOURCE", "DATASET_PATH"):
        monkeypatch.delenv(name, raising=False)

    settings = Settings(_env_file=None)

    assert settings.truncation_order == 12
    assert settings.truncation_order >= MIN_INSTANTON_ORDER
    assert settings.output_format == "text"
    assert settings.dataset_path is None
    assert settings.annihilator_order_bound == 10
    assert settings.annihilator_qdeg_bound == 5


def test_get_settings_ignores_none_overrides(monkeypatch):
    """None 인 override 는 환경 변수 값을 덮어쓰지 않는지 테스트"""
    monkeypatch.setenv("TRUNCATION_ORDER", "9")

    settings = get_settings(truncation_order=None, output_format="json")

    assert settings.truncation_order == 9
    assert settings.output_format == "json"


def test_config_rejects_invalid_values():
    """범위를 벗어난 값은 ValidationError 를 발생시키는지 테스트"""
    with pytest.raises(ValidationError):
        Settings(_env_file=None, truncation_order=0)

    with pytest.raises(ValidationError):
        Settings(_env_file=None, stage_source="guessed")
