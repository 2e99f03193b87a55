"""
데이터셋 로딩 관리

기본값은 패키지에 포함된 paper_dataset.json 이며,
Settings.dataset_path 가 지정되면 해당 파일을 대신 읽습니다.
"""

import json
import logging
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from app.core.config import Settings
from app.core.exceptions import DatasetException
from app.schemas.dataset import PaperDataset

logger = logging.getLogger(__name__)

EMBEDDED_DATASET_PATH = Path(__file__).with_name("paper_dataset.json")


def read_dataset(path: Path) -> PaperDataset:
    """
    JSON 파일을 읽어 PaperDataset 으로 검증합니다.

    Args:
        path: 데이터셋 JSON 파일 경로

    Returns:
        검증된 PaperDataset

    Raises:
        DatasetException: 파일이 없거나 JSON/스키마 오류가 있는 경우
    """
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DatasetException(str(path), f"cannot read file ({exc.strerror})") from exc
    try:
        return PaperDataset.model_validate(json.loads(raw))
    except json.JSONDecodeError as exc:
        raise DatasetException(str(path), f"malformed JSON at line {exc.lineno}") from exc
    except ValidationError as exc:
        raise DatasetException(str(path), f"{exc.error_count()} schema error(s): {exc.errors()[0]['msg']}") from exc


def load_dataset(settings: Optional[Settings] = None) -> PaperDataset:
    """
    설정에 따라 내장 데이터셋 또는 override 파일을 로드합니다.

    Args:
        settings: 애플리케이션 설정 객체 (None 이면 내장 데이터셋)
    """
    path = EMBEDDED_DATASET_PATH
    if settings is not None and settings.dataset_path is not None:
        path = Path(settings.dataset_path)
    logger.info("loading dataset from %s", path)
    return read_dataset(path)


def export_dataset(dataset: PaperDataset, path: Path) -> Path:
    """데이터셋을 사람이 읽을 수 있는 JSON 파일로 내보냅니다."""
    path.write_text(dataset.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info("dataset exported to %s", path)
    return path
