"""
Pydantic 스키마 모듈
"""

from app.schemas.dataset import CorrelatorEntry, FactoredPolynomial, PaperDataset, RingData, TwistData
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

__all__ = [
    "PaperDataset",
    "RingData",
    "CorrelatorEntry",
    "FactoredPolynomial",
    "TwistData",
    "StageReport",
    "RingReport",
    "WDVVReport",
    "QDEReport",
    "TwistReport",
    "MirrorReport",
    "InstantonReport",
    "VerifyAllReport",
]
