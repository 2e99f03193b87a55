"""
급수 서비스 테스트 (역원, exp/log, 합성, reversion, 로그 좌표 변환)
"""

import random
from fractions import Fraction

import pytest

from app.core.exceptions import SeriesPreconditionException
from app.models.series import LogSeries, PowerSeries
from app.services.series_service import SeriesService

ORDER = 12


def random_series(rng: random.Random, order: int, constant: int) -> PowerSeries:
    coeffs = [constant] + [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(order)]
    return PowerSeries(coeffs, order)


def random_coordinate(rng: random.Random, order: int) -> PowerSeries:
    """g(0) = 0, g'(0) != 0 인 임의의 급수"""
    linear = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))
    return PowerSeries([0, linear] + [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(order - 1)], order)


class TestInvertUnit:
    """급수 역원 테스트 클래스"""

    def test_geometric_series(self):
        """1 / (1 - q) = 1 + q + q^2 + ... 테스트"""
        inverse = SeriesService.invert_unit(PowerSeries([1, -1], 5))

        assert inverse.coeffs == (1, 1, 1, 1, 1, 1)

    def test_zero_constant_term_raises(self):
        with pytest.raises(SeriesPreconditionException):
            SeriesService.invert_unit(PowerSeries([0, 1], 3))

    @pytest.mark.parametrize("seed", range(10))
    def test_product_with_inverse_is_one(self, seed):
        """f · f^{-1} = 1 (임의의 유리수 계수, q^12 까지) 테스트"""
        f = random_series(random.Random(seed), ORDER, 3)

        assert f * SeriesService.invert_unit(f) == PowerSeries.constant(1, ORDER)


class TestExpLog:
    """exp / log 테스트 클래스"""

    def test_exp_of_q(self):
        """exp(q) 의 계수가 1/n! 인지 테스트"""
        result = SeriesService.exp(PowerSeries([0, 1], 4))

        assert result.coeffs == (1, 1, Fraction(1, 2), Fraction(1, 6), Fraction(1, 24))

    def test_log_of_one_plus_q(self):
        """log(1 + q) = q - q^2/2 + q^3/3 - ... 테스트"""
        result = SeriesService.log(PowerSeries([1, 1], 4))

        assert result.coeffs == (0, 1, Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 4))

    @pytest.mark.parametrize("seed", range(10, 20))
    def test_exp_inverts_log(self, seed):
        f = random_series(random.Random(seed), ORDER, 1)

        assert SeriesService.exp(SeriesService.log(f)) == f

    @pytest.mark.parametrize("seed", range(20, 30))
    def test_log_inverts_exp(self, seed):
        """log(exp(f)) = f (상수항 0) 테스트"""
        f = random_series(random.Random(seed), ORDER, 0)

        assert SeriesService.log(SeriesService.exp(f)) == f

    def test_preconditions(self):
        with pytest.raises(SeriesPreconditionException):
            SeriesService.exp(PowerSeries([1, 1], 3))
        with pytest.raises(SeriesPreconditionException):
            SeriesService.log(PowerSeries([2, 1], 3))


class TestCompositionAndReversion:
    """합성 / 역급수 테스트 클래스"""

    def test_compose_with_identity(self):
        f = PowerSeries([1, 2, 3, 4], 3)

        assert SeriesService.compose(f, PowerSeries.variable(3)) == f

    def test_compose_with_square(self):
        """f(q^2) 의 절단 차수가 (N + 1)·2 - 1 을 넘지 않는지 테스트"""
        f = PowerSeries([1, 1], 1)
        result = SeriesService.compose(f, PowerSeries([0, 0, 1], 6))

        assert result.trunc_order == 3
        assert result.coeffs == (1, 0, 1, 0)

    def test_compose_requires_zero_constant(self):
        with pytest.raises(SeriesPreconditionException):
            SeriesService.compose(PowerSeries([1, 1]), PowerSeries([1, 1]))

    def test_revert_catalan(self):
        """q + q^2 의 역급수는 부호가 바뀐 Catalan 수열인지 테스트"""
        inverse = SeriesService.revert(PowerSeries([0, 1, 1], 5))

        assert inverse.coeffs == (0, 1, -1, 2, -5, 14)

    @pytest.mark.parametrize("seed", range(30, 40))
    def test_revert_round_trip(self, seed):
        """g(h(q)) = q 와 h(g(q)) = q 테스트"""
        g = random_coordinate(random.Random(seed), ORDER)

        h = SeriesService.revert(g)

        assert SeriesService.compose(g, h) == PowerSeries.variable(ORDER)
        assert SeriesService.compose(h, g) == PowerSeries.variable(ORDER)

    def test_revert_requires_linear_term(self):
        with pytest.raises(SeriesPreconditionException):
            SeriesService.revert(PowerSeries([0, 0, 1], 4))


class TestSubstituteLog:
    """로그 급수의 좌표 변환 테스트 클래스"""

    def test_identity_change(self):
        """q = Q 이면 그대로인지 테스트"""
        f = LogSeries([PowerSeries([1, 2, 3], 4), PowerSeries([0, 1], 4)])

        result = SeriesService.substitute_log(f, PowerSeries.variable(4))

        assert result == f.truncate(result.trunc_order)

    def test_log_under_scaling(self):
        """q = Q(1 + Q) 이면 ln q = ln Q + log(1 + Q) 인지 테스트"""
        result = SeriesService.substitute_log(LogSeries.log_q(4), PowerSeries([0, 1, 1], 4))

        assert result.part(1) == PowerSeries.constant(1, result.trunc_order)
        assert result.part(0).coeffs[:4] == (0, 1, Fraction(-1, 2), Fraction(1, 3))

    def test_requires_normalized_change(self):
        with pytest.raises(SeriesPreconditionException):
            SeriesService.substitute_log(LogSeries.log_q(3), PowerSeries([0, 2], 3))
