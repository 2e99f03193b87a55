"""
Frobenius 환 서비스 테스트
"""

from fractions import Fraction

import pytest

from app.core.exceptions import RingConstructionException
from app.models.ring import BasisElement, ClassVector
from app.services.ring_service import RingService


class TestRingConstruction:
    """환 구성 테스트 클래스"""

    def test_dimension_and_betti(self, ring):
        assert ring.dimension == 10
        assert ring.betti() == [1, 1, 2, 2, 2, 1, 1]

    def test_axioms_hold(self, ring):
        """단위원, 교환, 결합, Frobenius, grading, 쌍대성 위반이 없는지 테스트"""
        assert RingService.check_axioms(ring) == []

    def test_wrong_betti_raises(self, dataset):
        with pytest.raises(RingConstructionException):
            RingService.build_ring(
                [BasisElement("1", 0, 0), BasisElement("p", 1, 0)],
                {(6, 0): Fraction(14)},
                expected_betti=[1, 1, 2, 2, 2, 1, 1],
            )

    def test_missing_top_value_raises(self, dataset):
        basis = [BasisElement(e.label, e.p_exponent, e.g_exponent) for e in dataset.ring.basis]

        with pytest.raises(RingConstructionException):
            RingService.build_ring(basis, {(6, 0): Fraction(14)})


class TestProducts:
    """곱셈 / pairing 테스트 클래스"""

    def test_top_degree_pairings(self, ring):
        """<p^3, p^3> = 14, <p^2, p^2 g2> = 28, <g2, p^2 g2> = 59 테스트"""
        assert RingService.pairing(ring, ring.vector("p^3"), ring.vector("p^3")) == 14
        assert RingService.pairing(ring, ring.vector("p^2"), ring.vector("p^2*g2")) == 28
        assert RingService.pairing(ring, ring.vector("g2"), ring.vector("p^2*g2")) == 59

    def test_monomial_product(self, ring):
        """p · p^2 = p^3 테스트"""
        assert RingService.multiply(ring, ring.vector("p"), ring.vector("p^2")) == ring.vector("p^3")

    def test_top_codim_reduction(self, ring):
        """p^2 · p^2 g2 = p^4 g2 = 2 p^6 테스트"""
        product = RingService.multiply(ring, ring.vector("p^2"), ring.vector("p^2*g2"))

        assert product == ring.vector("p^6") * 2

    def test_g2_squared(self, ring):
        """g2^2 = (205/42) p^4 - (1/3) p^2 g2 테스트"""
        product = RingService.multiply(ring, ring.vector("g2"), ring.vector("g2"))

        expected = ring.vector("p^4") * Fraction(205, 42) - ring.vector("p^2*g2") * Fraction(1, 3)
        assert product == expected

    def test_codim_overflow_is_zero(self, ring):
        assert RingService.multiply(ring, ring.vector("p^4"), ring.vector("p^3")).is_zero()

    def test_dual_of_unit(self, ring):
        """1 의 dual 은 p^6 / 14 인지 테스트"""
        duals = RingService.dual_basis(ring)

        assert duals[ring.index("1")] == ring.vector("p^6") * Fraction(1, 14)

    def test_dual_basis_property(self, ring):
        """<Δ_i, Δ^j> = δ_ij 테스트"""
        duals = RingService.dual_basis(ring)

        for i in range(ring.dimension):
            for j in range(ring.dimension):
                expected = 1 if i == j else 0
                assert RingService.pairing(ring, ring.vector(i), duals[j]) == expected

    def test_linear_combination(self, ring):
        x = ring.vector("p") + ring.vector("g2")

        product = RingService.multiply(ring, x, ClassVector.basis_vector(ring.dimension, ring.index("1")))

        assert product == x
