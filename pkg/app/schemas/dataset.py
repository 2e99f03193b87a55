"""
내장 데이터셋 Pydantic 스키마

유리수는 "num/den" 또는 정수 문자열로 저장하고, 사용할 때 Fraction으로 변환합니다.
"""

from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.models.operator import DPolynomial
from app.models.series import PowerSeries


def _check_rational(value: str) -> str:
    try:
        Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {value!r}") from exc
    return value


class PolynomialFactor(BaseModel):
    """낮은 차수부터의 계수와 거듭제곱"""

    model_config = ConfigDict(frozen=True)

    coefficients: list[str] = Field(..., min_length=1, description="계수 (낮은 차수부터)")
    power: int = Field(default=1, ge=1, description="거듭제곱 지수")

    @field_validator("coefficients")
    @classmethod
    def validate_coefficients(cls, value: list[str]) -> list[str]:
        return [_check_rational(c) for c in value]


class FactoredPolynomial(BaseModel):
    """
    scalar · ∏ factor^power 형태의 다항식

    Example:
        {"scalar": "3", "factors": [{"coefficients": ["0", "1"], "power": 7}]}
    """

    model_config = ConfigDict(frozen=True)

    scalar: str = Field(default="1", description="상수 배")
    factors: list[PolynomialFactor] = Field(default_factory=list)

    @field_validator("scalar")
    @classmethod
    def validate_scalar(cls, value: str) -> str:
        return _check_rational(value)

    def is_zero(self) -> bool:
        return Fraction(self.scalar) == 0 or any(not any(Fraction(c) for c in f.coefficients) for f in self.factors)

    def expand(self) -> DPolynomial:
        result = DPolynomial.constant(Fraction(self.scalar))
        for factor in self.factors:
            result = result * DPolynomial(Fraction(c) for c in factor.coefficients) ** factor.power
        return result

    def as_series(self) -> PowerSeries:
        """q 에 대한 다항식으로 보고 절단 차수 = 차수 인 급수로 변환"""
        poly = self.expand()
        return PowerSeries(poly.coeffs, max(poly.degree, 0))


class BasisEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str = Field(..., description="basis 이름", examples=["p^2*g2"])
    p_exponent: int = Field(..., ge=0)
    g_exponent: int = Field(..., ge=0)


class TopValue(BaseModel):
    model_config = ConfigDict(frozen=True)

    monomial: str = Field(..., examples=["p^6"])
    p_exponent: int = Field(..., ge=0)
    g_exponent: int = Field(..., ge=0)
    value: str

    @field_validator("value")
    @classmethod
    def validate_value(cls, value: str) -> str:
        return _check_rational(value)


class RingData(BaseModel):
    """Frobenius 환 입력 데이터"""

    model_config = ConfigDict(frozen=True)

    basis: list[BasisEntry]
    top_values: list[TopValue] = Field(..., min_length=1)
    betti: list[int]
    relations: list[str] = Field(default_factory=list, description="참고용 관계식 (계산에 사용하지 않음)")


class CorrelatorEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    degree: int = Field(..., ge=0)
    insertions: list[str] = Field(..., min_length=1, description="basis label 목록")
    value: str

    @field_validator("value")
    @classmethod
    def validate_value(cls, value: str) -> str:
        return _check_rational(value)


class TwistData(BaseModel):
    """hyperplane twist ∏_{m=1}^{d} (D+m)^multiplicity 와 왼쪽 자명 인수"""

    model_config = ConfigDict(frozen=True)

    multiplicity: int = Field(default=3, ge=1)
    left_factor: FactoredPolynomial
    expected_scalar: str = Field(default="3", description="quotient 의 q^0 슬라이스 / Picard-Fuchs 연산자의 q^0 슬라이스")


class PaperDataset(BaseModel):
    """
    검증 파이프라인의 전체 입력 데이터셋 (불변)

    Attributes:
        picard_fuchs: D^k 의 q-다항식 계수 c_k(q), k = 0..4
        reduced_operator: q^d 슬라이스 P_d(D), d = 0..5
    """

    model_config = ConfigDict(frozen=True)

    version: str
    description: str = ""
    picard_fuchs: list[FactoredPolynomial] = Field(..., min_length=1)
    reduced_operator: list[FactoredPolynomial] = Field(..., min_length=1)
    ring: RingData
    correlators: list[CorrelatorEntry]
    target_correlator: CorrelatorEntry
    twist: TwistData
    instanton_numbers: list[int] = Field(..., min_length=1)
    yukawa_constant: str = "14"

    @field_validator("yukawa_constant")
    @classmethod
    def validate_yukawa_constant(cls, value: str) -> str:
        return _check_rational(value)

    @model_validator(mode="after")
    def validate_consistency(self) -> "PaperDataset":
        """
        스키마는 통과하지만 계산을 시작할 수 없는 데이터셋을 거부합니다.

        - basis label 은 중복되지 않고, 단위원(p^0 γ₂^0)과 divisor p(p^1 γ₂^0)를 포함해야 합니다.
        - 모든 상관자 insertion 은 basis label 이어야 합니다.
        - twist 의 왼쪽 인수는 0 이 아니어야 합니다.
        """
        labels = [entry.label for entry in self.ring.basis]
        if len(set(labels)) != len(labels):
            raise ValueError("ring basis labels must be unique")
        exponents = {(entry.p_exponent, entry.g_exponent) for entry in self.ring.basis}
        for required, name in (((0, 0), "unit class 1"), ((1, 0), "divisor class p")):
            if required not in exponents:
                raise ValueError(f"ring basis has no {name}")
        known = set(labels)
        for entry in [*self.correlators, self.target_correlator]:
            missing = [label for label in entry.insertions if label not in known]
            if missing:
                raise ValueError(f"correlator insertions {missing} are not basis labels")
        if self.twist.left_factor.is_zero():
            raise ValueError("twist left_factor is the zero polynomial")
        return self
