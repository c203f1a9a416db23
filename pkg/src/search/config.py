"""Validated search configuration."""
from fractions import Fraction
from typing import Annotated, Any, List

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, field_validator

from src import config
from src.core.exact import Lattice, to_rat


def _parse_rat(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return to_rat(value)
    raise ValueError(f"expected an integer or a 'p/q' string, got {value!r}")


# Exact rational that round-trips through JSON as "p/q".
Rational = Annotated[Fraction, BeforeValidator(_parse_rat), PlainSerializer(lambda x: str(x), return_type=str)]


class SearchConfig(BaseModel):
    """
    Parameters of one search.

    Attributes:
        lattice: Denominator m of the coefficient lattice (1/m)Z
        max_depth: Deepest coefficient index explored
        grunsky_orders: Orders n tested once the prefix reaches depth 2n+1
        prawitz_alphas: Exponents of the Prawitz test
        prawitz_from_depth: First depth N at which Prawitz runs (M = N-1)
        strict_debranges: Prune |a_n| = n as well as |a_n| > n
        reconstruct_dmax: Largest denominator degree tried when fitting
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    lattice: int = Field(ge=1)
    max_depth: int = Field(default=config.SEARCH_DEFAULTS["max_depth"], ge=4)
    grunsky_orders: List[int] = Field(default_factory=lambda: list(config.SEARCH_DEFAULTS["grunsky_orders"]))
    prawitz_alphas: List[Rational] = Field(default_factory=lambda: list(config.SEARCH_DEFAULTS["prawitz_alphas"]))
    prawitz_from_depth: int = Field(default=config.SEARCH_DEFAULTS["prawitz_from_depth"], ge=2)
    strict_debranges: bool = config.SEARCH_DEFAULTS["strict_debranges"]
    reconstruct_dmax: int = Field(default=config.SEARCH_DEFAULTS["reconstruct_dmax"], ge=1)

    @field_validator("grunsky_orders")
    @classmethod
    def _orders_positive(cls, v: List[int]) -> List[int]:
        if any(n < 1 for n in v):
            raise ValueError("Grunsky orders must be >= 1")
        return sorted(set(v))

    @field_validator("prawitz_alphas")
    @classmethod
    def _alphas_positive(cls, v: List[Fraction]) -> List[Fraction]:
        if any(alpha <= 0 for alpha in v):
            raise ValueError("Prawitz exponents must be positive")
        return v

    @property
    def grid(self) -> Lattice:
        return Lattice(self.lattice)
