"""계산 서비스."""

from app.services.series_service import SeriesService
from app.services.ore_service import OreService
from app.services.ring_service import RingService
from app.services.gw_service import GWService
from app.services.qde_service import QDEService
from app.services.mirror_service import MirrorService
from app.services.pipeline_service import PipelineContext, PipelineService

__all__ = [
    "SeriesService",
    "OreService",
    "RingService",
    "GWService",
    "QDEService",
    "MirrorService",
    "PipelineContext",
    "PipelineService",
]
