"""
정확한 유리수 선형대수 유틸리티

sympy의 DomainMatrix(QQ 위)로 rref, 해 구하기, 영공간, 역행렬을 계산합니다.
입출력은 모두 fractions.Fraction 리스트입니다.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from app.core.exceptions import InconsistentSystemException

Matrix = list[list[Fraction]]


@dataclass(frozen=True)
class LinearSolution:
    """
    선형 연립방정식 A x = b 의 해

    values에는 유일하게 결정된 미지수만 들어갑니다.
    """

    values: dict[int, Fraction]
    rank: int
    free_columns: tuple[int, ...] = field(default_factory=tuple)

    def is_determined(self, column: int) -> bool:
        return column in self.values


def _to_domain_matrix(rows: Sequence[Sequence[Fraction]], ncols: int) -> DomainMatrix:
    data = [
        [QQ(int(Fraction(x).numerator), int(Fraction(x).denominator)) for x in row]
        for row in rows
    ]
    return DomainMatrix(data, (len(rows), ncols), QQ)


def _to_fractions(dm: DomainMatrix) -> Matrix:
    sym = dm.to_Matrix()
    nrows, ncols = dm.shape
    return [[Fraction(int(sym[i, j].p), int(sym[i, j].q)) for j in range(ncols)] for i in range(nrows)]


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[Matrix, tuple[int, ...]]:
    """
    기약 행 사다리꼴과 피벗 열을 반환합니다.

    Args:
        rows: 행렬의 행 목록 (빈 목록 허용)
        ncols: 열 개수

    Returns:
        (rref 행렬, 피벗 열 인덱스 튜플)
    """
    if not rows:
        return [], ()
    reduced, pivots = _to_domain_matrix(rows, ncols).rref()
    return _to_fractions(reduced), tuple(int(p) for p in pivots)


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def solve(
    rows: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
    ncols: int,
    context: str = "linear system",
) -> LinearSolution:
    """
    A x = b 를 가우스 소거로 풉니다.

    자유 변수가 섞인 피벗 행의 미지수는 결정되지 않은 것으로 취급합니다.

    Args:
        rows: 계수 행렬 A
        rhs: 우변 b
        ncols: 미지수 개수
        context: 오류 메시지용 설명

    Returns:
        LinearSolution (결정된 미지수 값, 계수 행렬의 rank, 자유 열)

    Raises:
        InconsistentSystemException: rank(A) < rank([A|b])
    """
    if not rows:
        return LinearSolution(values={}, rank=0, free_columns=tuple(range(ncols)))

    augmented = [list(row) + [Fraction(b)] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented, ncols + 1)

    if ncols in pivots:
        raise InconsistentSystemException(context, len(pivots) - 1, len(pivots))

    free = tuple(col for col in range(ncols) if col not in pivots)
    values: dict[int, Fraction] = {}
    for row_index, col in enumerate(pivots):
        row = reduced[row_index]
        if all(row[f] == 0 for f in free):
            values[col] = row[ncols]
    return LinearSolution(values=values, rank=len(pivots), free_columns=free)


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> Matrix:
    """
    A x = 0 의 해공간 기저를 반환합니다.

    각 기저 벡터는 자유 변수 하나를 1로, 나머지 자유 변수를 0으로 둔 해입니다.
    """
    reduced, pivots = rref(rows, ncols)
    free = [col for col in range(ncols) if col not in pivots]
    basis: Matrix = []
    for f in free:
        vector = [Fraction(0)] * ncols
        vector[f] = Fraction(1)
        for row_index, col in enumerate(pivots):
            vector[col] = -reduced[row_index][f]
        basis.append(vector)
    return basis


def inverse(matrix: Sequence[Sequence[Fraction]]) -> Optional[Matrix]:
    """
    정사각 행렬의 역행렬을 반환합니다. 특이 행렬이면 None.
    """
    size = len(matrix)
    augmented = [
        list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(size)]
        for i, row in enumerate(matrix)
    ]
    reduced, pivots = rref(augmented, 2 * size)
    if pivots != tuple(range(size)):
        return None
    return [row[size:] for row in reduced]
