"""
PowerSeries / LogSeries 모델 테스트
"""

import random
from fractions import Fraction

import pytest

from app.core.exceptions import (
    LogDegreeOverflowException,
    SeriesPreconditionException,
    SeriesTruncationException,
)
from app.models.series import LogSeries, PowerSeries, format_scalar, parse_scalar


def random_series(rng: random.Random, order: int = 12) -> PowerSeries:
    return PowerSeries([Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(order + 1)], order)


def random_log_series(rng: random.Random, log_degree: int = 3, order: int = 8) -> LogSeries:
    return LogSeries([random_series(rng, order) for _ in range(log_degree + 1)])


class TestPowerSeries:
    """절단 멱급수 테스트 클래스"""

    def test_coefficients_are_fractions(self):
        """정수 입력이 Fraction 으로 저장되는지 테스트"""
        series = PowerSeries([1, 2, 3])

        assert series.coeffs == (Fraction(1), Fraction(2), Fraction(3))
        assert series.trunc_order == 2

    def test_padding_to_trunc_order(self):
        """명시한 절단 차수까지 0 으로 채워지는지 테스트"""
        series = PowerSeries([1], 4)

        assert series.trunc_order == 4
        assert series[4] == 0

    def test_read_beyond_trunc_order_raises(self):
        """절단 차수를 넘는 계수를 읽으면 예외가 발생하는지 테스트"""
        series = PowerSeries([1, 2], 1)

        with pytest.raises(SeriesTruncationException) as exc_info:
            series[2]

        assert exc_info.value.index == 2
        assert exc_info.value.trunc_order == 1

    def test_sum_takes_minimum_order(self):
        """두 급수의 합은 더 작은 절단 차수를 갖는지 테스트"""
        total = PowerSeries([1, 1, 1]) + PowerSeries([1, 1])

        assert total.trunc_order == 1
        assert total.coeffs == (2, 2)

    def test_product(self):
        """(1 + q)^2 = 1 + 2q + q^2 테스트"""
        one_plus_q = PowerSeries([1, 1], 3)

        assert (one_plus_q * one_plus_q).coeffs == (1, 2, 1, 0)
        assert (one_plus_q**3).coeffs == (1, 3, 3, 1)

    def test_scalar_arithmetic(self):
        """스칼라와의 연산 테스트"""
        series = PowerSeries([1, 2], 1)

        assert (series * Fraction(1, 2)).coeffs == (Fraction(1, 2), 1)
        assert (1 - series).coeffs == (0, -2)
        assert (series + 3).coeffs == (4, 2)

    def test_shift_raises_order(self):
        """q^k 곱은 절단 차수를 k 만큼 올리는지 테스트"""
        shifted = PowerSeries([1, 2], 1).shift(2)

        assert shifted.trunc_order == 3
        assert shifted.coeffs == (0, 0, 1, 2)

    def test_divide_by_q(self):
        """상수항이 0 일 때만 q 로 나눌 수 있는지 테스트"""
        assert PowerSeries([0, 1, 2]).divide_by_q().coeffs == (1, 2)

        with pytest.raises(SeriesPreconditionException):
            PowerSeries([1, 1]).divide_by_q()

    def test_theta(self):
        """D q^n = n q^n 테스트"""
        assert PowerSeries([5, 1, 1, 1]).theta().coeffs == (0, 1, 2, 3)

    def test_valuation(self):
        assert PowerSeries([0, 0, 3]).valuation() == 2
        assert PowerSeries.zero(3).valuation() is None
        assert PowerSeries.zero(3).is_zero()

    @pytest.mark.parametrize("seed", range(8))
    def test_ring_axioms(self, seed):
        """임의의 유리수 계수 급수에서 분배, 교환, 결합 법칙 테스트"""
        rng = random.Random(seed)
        f, g, h = random_series(rng), random_series(rng), random_series(rng)

        assert (f + g) * h == f * h + g * h
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)

    @pytest.mark.parametrize("seed", range(8))
    def test_theta_is_derivation(self, seed):
        """D(fg) = (Df)g + f(Dg) 테스트"""
        rng = random.Random(seed)
        f, g = random_series(rng), random_series(rng)

        assert (f * g).theta() == f.theta() * g + f * g.theta()


class TestLogSeries:
    """로그 급수 테스트 클래스"""

    def test_theta_of_log_q(self):
        """D(ln q) = 1 테스트"""
        result = LogSeries.log_q(5).theta()

        assert result == LogSeries.from_series(PowerSeries.constant(1, 5))
        assert result.is_log_free()

    def test_log_square_normalization(self):
        """(ln q)^2 는 part_2 = 2 로 저장되는지 테스트 ((ln q)^j / j! 정규화)"""
        square = LogSeries.log_q(3) * LogSeries.log_q(3)

        assert square.log_degree == 2
        assert square.part(2) == PowerSeries.constant(2, 3)
        assert square.part(0).is_zero()

    def test_theta_product_rule(self):
        """D(q ln q) = q ln q + q 테스트"""
        q = PowerSeries.variable(4)
        f = LogSeries([PowerSeries.zero(4), q])

        result = f.theta()

        assert result.part(1) == q
        assert result.part(0) == q

    def test_trailing_zero_parts_trimmed(self):
        """뒤쪽의 0 part 는 제거되는지 테스트"""
        f = LogSeries([PowerSeries([1], 3), PowerSeries.zero(3), PowerSeries.zero(3)])

        assert f.log_degree == 0

    def test_parts_aligned_to_minimum_order(self):
        f = LogSeries([PowerSeries([1], 5), PowerSeries([1], 2)])

        assert f.trunc_order == 2

    def test_power_series_times_log_series(self):
        """PowerSeries * LogSeries 는 LogSeries 를 돌려주는지 테스트"""
        result = PowerSeries([0, 1], 3) * LogSeries.log_q(3)

        assert isinstance(result, LogSeries)
        assert result.part(1) == PowerSeries([0, 1], 3)

    @pytest.mark.parametrize("seed", range(100, 108))
    def test_leibniz_rule(self, seed):
        """로그 급수에서도 D(fg) = (Df)g + f(Dg) 가 성립하는지 테스트"""
        rng = random.Random(seed)
        f, g = random_log_series(rng), random_log_series(rng)

        assert (f * g).theta() == f.theta() * g + f * g.theta()

    @pytest.mark.parametrize("seed", range(200, 205))
    def test_log_series_distributive(self, seed):
        rng = random.Random(seed)
        f, g, h = (random_log_series(rng, 2) for _ in range(3))

        assert (f + g) * h == f * h + g * h
        assert f * g == g * f

    def test_log_degree_overflow(self):
        """ln q 차수가 상한을 넘으면 예외가 발생하는지 테스트"""
        log_q = LogSeries.log_q(2)
        power = log_q
        for _ in range(5):
            power = power * log_q

        assert power.log_degree == 6
        with pytest.raises(LogDegreeOverflowException):
            power * log_q


class TestScalarFormat:
    """유리수 직렬화 테스트"""

    def test_format_scalar(self):
        assert format_scalar(Fraction(-3, 6)) == "-1/2"
        assert format_scalar(7) == "7/1"

    def test_parse_scalar(self):
        assert parse_scalar("9800") == Fraction(9800)
        assert parse_scalar("205/42") == Fraction(205, 42)
