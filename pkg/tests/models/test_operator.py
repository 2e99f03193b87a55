"""
DPolynomial / DiffOp 모델 테스트
"""

from fractions import Fraction

import pytest

from app.core.exceptions import OperatorDivisionException
from app.models.operator import DiffOp, DPolynomial


class TestDPolynomial:
    """D 에 대한 다항식 테스트 클래스"""

    def test_trailing_zeros_stripped(self):
        poly = DPolynomial([1, 2, 0, 0])

        assert poly.degree == 1
        assert DPolynomial().degree == -1

    def test_shift(self):
        """D^2 -> (D+1)^2 = D^2 + 2D + 1 테스트"""
        assert DPolynomial.monomial(2).shift(1) == DPolynomial([1, 2, 1])

    def test_evaluate(self):
        assert DPolynomial([1, 2, 1]).evaluate(2) == 9

    def test_divmod(self):
        """(D^2 - 1) = (D - 1)(D + 1) 테스트"""
        quotient, remainder = DPolynomial([-1, 0, 1]).divmod(DPolynomial.linear(1))

        assert quotient == DPolynomial.linear(-1)
        assert remainder.is_zero()

    def test_exact_divide_with_remainder_raises(self):
        """나머지가 있으면 OperatorDivisionException 이 발생하는지 테스트"""
        with pytest.raises(OperatorDivisionException) as exc_info:
            DPolynomial([1, 0, 1]).exact_divide(DPolynomial.linear(1), slice_index=3)

        assert exc_info.value.slice_index == 3
        assert exc_info.value.exit_code == 2

    def test_content(self):
        assert DPolynomial([Fraction(1, 2), Fraction(3, 2)]).content() == Fraction(1, 2)

    def test_render(self):
        assert DPolynomial([-1, 0, 3]).render() == "3*D^2 - 1"


class TestDiffOp:
    """정규형 미분 연산자 테스트 클래스"""

    def test_commutation_relation(self):
        """D q - q D = q 테스트"""
        theta, q = DiffOp.theta(), DiffOp.q()

        assert (theta @ q) - (q @ theta) == q

    def test_theta_after_q(self):
        """D∘q = q(D + 1) 테스트"""
        assert DiffOp.theta() @ DiffOp.q() == DiffOp([DPolynomial(), DPolynomial.linear(1)])

    def test_composition_is_associative(self):
        """(A∘B)∘C = A∘(B∘C) 테스트"""
        a = DiffOp([DPolynomial([1, 1]), DPolynomial([0, 0, 2])])
        b = DiffOp([DPolynomial([0, 3]), DPolynomial([1])])
        c = DiffOp([DPolynomial([2]), DPolynomial(), DPolynomial([0, 1])])

        assert (a @ b) @ c == a @ (b @ c)

    def test_identity(self):
        a = DiffOp([DPolynomial([1, 1]), DPolynomial([0, 0, 2])])

        assert DiffOp.identity() @ a == a
        assert a @ DiffOp.identity() == a

    def test_from_monomials(self):
        """{(d, k): c} 로부터 슬라이스가 만들어지는지 테스트"""
        op = DiffOp.from_monomials({(0, 4): 1, (2, 0): -3})

        assert op.q_degree == 2
        assert op.order == 4
        assert op.slice(1).is_zero()
        assert op.coefficient(2, 0) == -3

    def test_zero_operator(self):
        assert DiffOp().is_zero()
        assert DiffOp([DPolynomial(), DPolynomial()]).is_zero()

    def test_render_monomial(self):
        op = DiffOp.q() @ DiffOp.theta()

        assert op.render_monomial() == "1/1 * q^1 * D^1"

    def test_scale(self):
        op = DiffOp([DPolynomial([1, 2])]).scale(3)

        assert op.slice(0) == DPolynomial([3, 6])
