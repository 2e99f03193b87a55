"""
정확한 유리수 선형대수 테스트
"""

from fractions import Fraction

import pytest

from app.core import linalg
from app.core.exceptions import InconsistentSystemException

F = Fraction


class TestSolve:
    """A x = b 풀이 테스트 클래스"""

    def test_unique_solution(self):
        """x + y = 3, x - y = 1 의 해가 (2, 1) 인지 테스트"""
        solution = linalg.solve([[F(1), F(1)], [F(1), F(-1)]], [F(3), F(1)], 2)

        assert solution.values == {0: F(2), 1: F(1)}
        assert solution.rank == 2
        assert solution.free_columns == ()

    def test_rational_solution(self):
        """해가 정수가 아닐 때 Fraction 으로 정확히 나오는지 테스트"""
        solution = linalg.solve([[F(3)]], [F(1)], 1)

        assert solution.values[0] == F(1, 3)

    def test_partially_determined(self):
        """자유 변수와 섞이지 않은 미지수만 결정되는지 테스트"""
        # x = 2, y + z = 3
        solution = linalg.solve([[F(1), F(0), F(0)], [F(0), F(1), F(1)]], [F(2), F(3)], 3)

        assert solution.is_determined(0)
        assert solution.values[0] == F(2)
        assert not solution.is_determined(1)
        assert not solution.is_determined(2)
        assert solution.free_columns == (2,)

    def test_inconsistent_system(self):
        """모순된 관계식이 InconsistentSystemException 을 발생시키는지 테스트"""
        with pytest.raises(InconsistentSystemException) as exc_info:
            linalg.solve([[F(1), F(1)], [F(2), F(2)]], [F(1), F(3)], 2, context="test")

        assert exc_info.value.exit_code == 3
        assert "test" in exc_info.value.message

    def test_empty_system(self):
        """관계식이 없으면 모든 미지수가 자유 변수인지 테스트"""
        solution = linalg.solve([], [], 3)

        assert solution.values == {}
        assert solution.free_columns == (0, 1, 2)


class TestNullspaceAndInverse:
    """영공간 / 역행렬 테스트 클래스"""

    def test_nullspace_basis(self):
        """x + y + z = 0 의 해공간이 2차원이고 각 벡터가 해인지 테스트"""
        rows = [[F(1), F(1), F(1)]]
        basis = linalg.nullspace(rows, 3)

        assert len(basis) == 2
        for vector in basis:
            assert sum(vector) == 0

    def test_nullspace_of_full_rank(self):
        """정칙 행렬의 영공간은 비어 있는지 테스트"""
        assert linalg.nullspace([[F(1), F(2)], [F(3), F(4)]], 2) == []

    def test_inverse(self):
        """2x2 역행렬 테스트"""
        inverse = linalg.inverse([[F(2), F(1)], [F(1), F(1)]])

        assert inverse == [[F(1), F(-1)], [F(-1), F(2)]]

    def test_inverse_of_singular_matrix(self):
        """특이 행렬이면 None 을 반환하는지 테스트"""
        assert linalg.inverse([[F(1), F(2)], [F(2), F(4)]]) is None

    def test_rank(self):
        assert linalg.rank([[F(1), F(2)], [F(2), F(4)], [F(0), F(1)]], 2) == 2
