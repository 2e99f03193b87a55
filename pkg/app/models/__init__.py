"""
도메인 모델

정확한 유리수 계수의 급수, 미분 연산자, Frobenius 환, 상관자 테이블, 양자 행렬, 거울 대칭 결과를 정의합니다.
"""

from app.models.correlator import CorrelatorKey, GWTable, LinearForm, Provenance, WDVVSystem
from app.models.mirror import FrobeniusBasis, InstantonTable, MirrorMapData, SolutionResidual, YukawaSeries
from app.models.operator import DiffOp, DPolynomial
from app.models.quantum import CyclicVectors, FundamentalSolution, QuantumMatrix
from app.models.ring import BasisElement, ClassVector, FrobeniusAlgebra
from app.models.series import LogSeries, PowerSeries

__all__ = [
    "PowerSeries",
    "LogSeries",
    "DPolynomial",
    "DiffOp",
    "BasisElement",
    "ClassVector",
    "FrobeniusAlgebra",
    "CorrelatorKey",
    "GWTable",
    "LinearForm",
    "Provenance",
    "WDVVSystem",
    "QuantumMatrix",
    "CyclicVectors",
    "FundamentalSolution",
    "FrobeniusBasis",
    "MirrorMapData",
    "YukawaSeries",
    "InstantonTable",
    "SolutionResidual",
]
