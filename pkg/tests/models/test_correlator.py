"""
상관자 key / 테이블 / 선형식 모델 테스트
"""

from fractions import Fraction

import pytest

from app.core.exceptions import ConflictingCorrelatorException, NonlinearRelationException
from app.models.correlator import (
    CorrelatorKey,
    GWTable,
    LinearForm,
    Provenance,
    WDVVSystem,
    passes_dimension_filter,
)

LABELS = ["1", "p", "p^2", "g2", "p^3", "p*g2", "p^4", "p^2*g2", "p^5", "p^6"]
CODIMS = [0, 1, 2, 2, 3, 3, 4, 4, 5, 6]


class TestCorrelatorKey:
    """상관자 key 테스트 클래스"""

    def test_insertions_are_sorted(self):
        """insertion 순서와 무관하게 같은 key 가 되는지 테스트"""
        assert CorrelatorKey.of(2, 9, 8) == CorrelatorKey.of(2, 8, 9)

    def test_without(self):
        key = CorrelatorKey.of(1, 1, 2, 9)

        assert key.without(1) == CorrelatorKey.of(1, 2, 9)

    def test_render(self):
        assert CorrelatorKey.of(2, 9, 8).render(LABELS) == "<p^5,p^6>_2"


class TestDimensionFilter:
    """차원 필터 테스트 클래스"""

    def test_two_point_degree_one(self):
        """<p^2, p^6>_1: 2 + 6 = 8 = 5 + 3 테스트"""
        assert passes_dimension_filter(CorrelatorKey.of(1, 2, 9), CODIMS)

    def test_wrong_codim_sum(self):
        assert not passes_dimension_filter(CorrelatorKey.of(1, 2, 8), CODIMS)

    def test_unit_forbidden_in_positive_degree(self):
        """d > 0 에서는 단위원 insertion 이 허용되지 않는지 테스트"""
        assert not passes_dimension_filter(CorrelatorKey.of(1, 0, 2, 9), CODIMS)

    def test_degree_zero_only_three_point(self):
        """d = 0 에서는 3점 상관자만 통과하는지 테스트"""
        assert passes_dimension_filter(CorrelatorKey.of(0, 1, 2, 4), CODIMS)
        assert not passes_dimension_filter(CorrelatorKey.of(0, 4, 4), CODIMS)


class TestGWTable:
    """상관자 테이블 테스트 클래스"""

    def test_store_and_get(self):
        table = GWTable(LABELS)
        key = CorrelatorKey.of(1, 2, 9)

        table.store(key, 238, Provenance.PAPER)

        assert table.get(key) == Fraction(238)
        assert table.provenance(key) is Provenance.PAPER
        assert key in table
        assert len(table) == 1

    def test_same_value_is_idempotent(self):
        """같은 값을 다시 저장해도 출처가 바뀌지 않는지 테스트"""
        table = GWTable(LABELS)
        key = CorrelatorKey.of(1, 2, 9)
        table.store(key, 238, Provenance.PAPER)

        table.store(key, Fraction(238), Provenance.WDVV)

        assert table.provenance(key) is Provenance.PAPER

    def test_conflicting_value_raises(self):
        """다른 값을 덮어쓰려 하면 예외가 발생하는지 테스트"""
        table = GWTable(LABELS)
        key = CorrelatorKey.of(1, 2, 9)
        table.store(key, 238, Provenance.PAPER)

        with pytest.raises(ConflictingCorrelatorException) as exc_info:
            table.store(key, 239, Provenance.WDVV)

        assert exc_info.value.key == "<p^2,p^6>_1"

    def test_copy_is_independent(self):
        table = GWTable(LABELS)
        clone = table.copy()
        clone.store(CorrelatorKey.of(1, 2, 9), 1, Provenance.WDVV)

        assert len(table) == 0

    def test_items_are_sorted(self):
        table = GWTable(LABELS)
        table.store(CorrelatorKey.of(2, 8, 9), 9800, Provenance.PAPER)
        table.store(CorrelatorKey.of(1, 2, 9), 238, Provenance.PAPER)

        assert [key.degree for key, _, _ in table.items()] == [1, 2]


class TestLinearForm:
    """미지 상관자에 대한 선형식 테스트 클래스"""

    def test_cancellation_removes_key(self):
        x = LinearForm.unknown(CorrelatorKey.of(1, 2, 2, 8))

        assert (x - x).is_zero()

    def test_product_with_constant(self):
        x = LinearForm.unknown(CorrelatorKey.of(1, 2, 2, 8))

        product = x * LinearForm.scalar(3)

        assert product.coeffs == {CorrelatorKey.of(1, 2, 2, 8): Fraction(3)}

    def test_product_of_unknowns_raises(self):
        """미지수끼리의 곱은 NonlinearRelationException 을 발생시키는지 테스트"""
        x = LinearForm.unknown(CorrelatorKey.of(1, 2, 2, 8))
        y = LinearForm.unknown(CorrelatorKey.of(1, 3, 3, 8))

        with pytest.raises(NonlinearRelationException):
            x * y

    def test_substitute(self):
        key = CorrelatorKey.of(1, 2, 2, 8)
        form = LinearForm.unknown(key).scale(2) + LinearForm.scalar(1)

        assert form.substitute({key: Fraction(5)}) == LinearForm.scalar(11)

    def test_system_to_matrix(self):
        """2x + 1 = 0 이 A = [[2]], b = [-1] 로 변환되는지 테스트"""
        key = CorrelatorKey.of(1, 2, 2, 8)
        system = WDVVSystem(degree=1, unknowns=[key], equations=[LinearForm({key: Fraction(2)}, Fraction(1))])

        rows, rhs = system.to_matrix()

        assert rows == [[Fraction(2)]]
        assert rhs == [Fraction(-1)]
