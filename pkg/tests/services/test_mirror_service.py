"""
거울 사상 / 인스턴톤 서비스 테스트
"""

from fractions import Fraction

import pytest

from app.core.exceptions import (
    FrobeniusRecursionException,
    NonIntegralInstantonException,
    SeriesPreconditionException,
)
from app.models.mirror import FrobeniusBasis, InstantonTable, YukawaSeries
from app.models.operator import DiffOp, DPolynomial
from app.models.series import PowerSeries
from app.services.mirror_service import MirrorService
from app.services.ore_service import OreService
from app.services.series_service import SeriesService


def yukawa_of(coeffs):
    K = PowerSeries(coeffs, len(coeffs) - 1)
    return YukawaSeries(K=K, numerator=K)


@pytest.fixture(scope="module")
def basis(paper_operator):
    return MirrorService.frobenius_solve(paper_operator, 8)


@pytest.fixture(scope="module")
def mirror(basis):
    return MirrorService.mirror_map(basis)


class TestFrobeniusSolve:
    """Frobenius 해 테스트 클래스"""

    def test_holomorphic_period(self, basis):
        """I_0 = 1 + 17 q + ... 테스트"""
        assert basis.holomorphic[0][0] == 1
        assert basis.holomorphic[0][1] == 17
        assert basis.trunc_order == 8

    def test_log_structure(self, basis):
        """I_k 의 ln q 최고 차수는 k 이고 최고 차수 part 는 I_0 인지 테스트"""
        for k, solution in enumerate(basis.solutions):
            assert solution.log_degree == k
            assert solution.part(k) == basis.holomorphic[0]

    def test_higher_holomorphic_parts_vanish_at_zero(self, basis):
        for part in basis.holomorphic[1:]:
            assert part[0] == 0

    def test_solutions_are_annihilated(self, paper_operator, basis):
        for solution in basis.solutions:
            assert OreService.apply(paper_operator, solution).is_zero()

    def test_lead_slice_not_divisible_raises(self):
        """q^0 슬라이스가 D^4 로 나누어지지 않으면 예외가 발생하는지 테스트"""
        op = DiffOp([DPolynomial.monomial(3), DPolynomial([1])])

        with pytest.raises(FrobeniusRecursionException):
            MirrorService.frobenius_solve(op, 4)


class TestMirrorMap:
    """거울 사상 테스트 클래스"""

    def test_normalized(self, mirror):
        """Q(q) = q + O(q^2) 테스트"""
        assert mirror.Q_of_q[0] == 0
        assert mirror.Q_of_q[1] == 1

    def test_inverse_round_trip(self, mirror):
        round_trip = SeriesService.compose(mirror.Q_of_q, mirror.q_of_Q)

        assert round_trip == PowerSeries.variable(round_trip.trunc_order)

    def test_yukawa_constant_term(self, basis, mirror):
        yukawa = MirrorService.yukawa(basis, mirror, Fraction(14))

        assert yukawa.K[0] == 14


class TestInstantonExtract:
    """인스턴톤 수 추출 테스트 클래스"""

    def test_single_degree_one_curve(self):
        """K = 14 + Q/(1-Q) 이면 n_1 = 1 이고 나머지는 0 인지 테스트"""
        table = MirrorService.instanton_extract(yukawa_of([14, 1, 1, 1, 1]), 4)

        assert table.numbers == (1, 0, 0, 0)

    def test_non_integral_raises(self):
        """n_2 = (2 - 1)/8 이 정수가 아니면 예외가 발생하는지 테스트"""
        with pytest.raises(NonIntegralInstantonException) as exc_info:
            MirrorService.instanton_extract(yukawa_of([14, 1, 2]), 2)

        assert exc_info.value.degree == 2

    def test_wrong_constant_raises(self):
        with pytest.raises(SeriesPreconditionException):
            MirrorService.instanton_extract(yukawa_of([13, 1]), 1)

    def test_three_point_numbers(self):
        """<p,p,p>_2 = n_1 + 8 n_2 테스트"""
        assert MirrorService.three_point_numbers(InstantonTable((1, 2))) == [1, 17]


@pytest.mark.slow
class TestMirrorChain:
    """Picard-Fuchs 연산자로부터 인스턴톤 수까지의 전체 계산 테스트 클래스"""

    def test_instanton_numbers(self, basis, mirror, dataset):
        """n_1..n_5 가 588, 12103, 583884, 41359136, 3609394096 인지 테스트"""
        yukawa = MirrorService.yukawa(basis, mirror)

        table = MirrorService.instanton_extract(yukawa, 5)

        assert list(table.numbers) == dataset.instanton_numbers

    def test_fourth_order_equation_in_flat_coordinate(self, basis, mirror):
        """1, ln Q, y_2, y_3 모두 D^2 (1/K) D^2 y = 0 을 만족하는지 테스트"""
        yukawa = MirrorService.yukawa(basis, mirror)

        residuals = MirrorService.verify_theorem1(basis, mirror, yukawa)

        assert [r.name for r in residuals] == ["1", "ln Q", "y2", "y3"]
        assert all(r.annihilated for r in residuals)
        assert all(r.first_nonzero is None for r in residuals)

    @pytest.mark.parametrize(
        "c0, c1, c32, c30",
        [(1, 0, 2, 11), (Fraction(-3, 7), 5, 0, 1), (0, Fraction(1, 2), -1, 0)],
    )
    def test_yukawa_independent_of_normalization(self, basis, mirror, c0, c1, c32, c30):
        """I_2 -> I_2 + c0 I_0 + c1 I_1, I_3 -> I_3 + c32 I_2 + c30 I_0 으로 바꿔도 K 와 검증 결과가 같은지 테스트"""
        I0, I1, I2, I3 = basis.solutions
        shifted = FrobeniusBasis(
            holomorphic=basis.holomorphic,
            solutions=(I0, I1, I2 + I0 * c0 + I1 * c1, I3 + I2 * c32 + I0 * c30),
        )
        reference = MirrorService.yukawa(basis, mirror)

        yukawa = MirrorService.yukawa(shifted, mirror)
        residuals = MirrorService.verify_theorem1(shifted, mirror, yukawa)

        assert yukawa.K == reference.K
        assert all(r.annihilated for r in residuals)
