"""Exact rationals, lattices (1/m)Z and sqrt-free lattice enumeration."""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt
from typing import Iterable, List, Union

# Every coefficient, bound and witness in the exact core is a Fraction.
Rat = Fraction

RatLike = Union[Fraction, int, str]


class Ordering(Enum):
    """Result of a three-way comparison."""
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class Lattice:
    """
    The uniformly discrete lattice {k/m : k integer}.

    Attributes:
        denom: The denominator m (positive)
    """
    denom: int

    def __post_init__(self):
        if not isinstance(self.denom, int) or self.denom <= 0:
            raise ValueError(f"lattice denominator must be a positive integer, got {self.denom!r}")

    @property
    def r0(self) -> Fraction:
        """Separation bound: distinct lattice points differ by at least 1/m."""
        return Fraction(1, self.denom)

    def contains(self, x: Fraction) -> bool:
        """Check whether x = k/m for some integer k."""
        return (Fraction(x) * self.denom).denominator == 1


def to_rat(value: RatLike) -> Fraction:
    """
    Coerce an int, Fraction or "p/q" string into a Rat.

    Floats are refused: they would smuggle binary rounding into exact code.
    """
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals")
    return Fraction(value)


def rat_to_json(x: Fraction) -> str:
    """Serialize a rational as "p/q" (or "p" for integers)."""
    return str(Fraction(x))


def rat_from_json(text: str) -> Fraction:
    """Parse a "p/q" string back into a rational."""
    return Fraction(text)


def rats_to_json(values: Iterable[Fraction]) -> List[str]:
    return [rat_to_json(v) for v in values]


def cmp_sq(x: Fraction, bound_sq: Fraction) -> Ordering:
    """
    Compare x**2 with bound_sq exactly.

    Used for every bound of the form |x| <= sqrt(R) so that no square root
    is ever materialized.

    Args:
        x: Value to square
        bound_sq: Squared bound

    Returns:
        Ordering of x**2 relative to bound_sq
    """
    lhs = Fraction(x) ** 2
    rhs = Fraction(bound_sq)
    if lhs < rhs:
        return Ordering.LESS
    if lhs > rhs:
        return Ordering.GREATER
    return Ordering.EQUAL


def _inside(point: Fraction, center: Fraction, radius_sq: Fraction) -> bool:
    return cmp_sq(point - center, radius_sq) is not Ordering.GREATER


def lattice_points_in_interval(center: Fraction, radius_sq: Fraction, lat: Lattice) -> List[Fraction]:
    """
    Enumerate { k/m : (k/m - center)**2 <= radius_sq } in ascending order.

    With center = p/q the condition becomes (q*k - m*p)**2 <= q**2 * m**2 * radius_sq,
    so the admissible integer offsets t = q*k - m*p satisfy |t| <= isqrt(floor(bound)).

    Args:
        center: Interval center
        radius_sq: Squared half-width; a negative value yields no points
        lat: Lattice to enumerate

    Returns:
        Ascending list of lattice points (possibly empty)
    """
    center = Fraction(center)
    radius_sq = Fraction(radius_sq)
    if radius_sq < 0:
        return []

    m = lat.denom
    p, q = center.numerator, center.denominator
    bound = radius_sq * q * q * m * m
    t_max = isqrt(bound.numerator // bound.denominator)

    # ceil((m*p - t_max)/q) and floor((m*p + t_max)/q)
    k_lo = -((t_max - m * p) // q)
    k_hi = (m * p + t_max) // q

    # One-step corrections keep the range exact at both ends.
    while _inside(Fraction(k_lo - 1, m), center, radius_sq):
        k_lo -= 1
    while k_lo <= k_hi and not _inside(Fraction(k_lo, m), center, radius_sq):
        k_lo += 1
    while _inside(Fraction(k_hi + 1, m), center, radius_sq):
        k_hi += 1
    while k_hi >= k_lo and not _inside(Fraction(k_hi, m), center, radius_sq):
        k_hi -= 1

    return [Fraction(k, m) for k in range(k_lo, k_hi + 1)]
