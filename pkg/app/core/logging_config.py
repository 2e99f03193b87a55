"""
로깅 설정

모든 로그는 stderr로 출력되어 stdout의 JSON 보고서와 섞이지 않습니다.
"""

import logging
import sys

from app.core.config import Settings

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(settings: Settings) -> None:
    """
    Settings.log_level 로 루트 로거를 설정합니다.

    여러 번 호출해도 마지막 설정이 적용됩니다 (force=True).
    """
    level = logging.getLevelName(settings.log_level.upper())
    if not isinstance(level, int):
        level = logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)
