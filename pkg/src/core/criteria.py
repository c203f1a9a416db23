"""Scalar pruning and termination predicates on Taylor prefixes and Laurent tails."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from src.core.exact import RatLike, to_rat
from src.core.series import LaurentTail, TaylorPrefix, pow_alpha
from src.errors import InsufficientDepthError


@dataclass(frozen=True)
class IntervalBound:
    """
    Admissible values x of the next coefficient: (x - center)**2 <= radius_sq.

    A negative radius_sq marks a dead branch.
    """
    center: Fraction
    radius_sq: Fraction

    @property
    def dead(self) -> bool:
        return self.radius_sq < 0


def area_sum(b: LaurentTail) -> Fraction:
    """Truncated area-theorem sum: sum_{n=1}^{M} n * b_n**2."""
    return sum((n * b.coeffs[n] ** 2 for n in range(1, len(b.coeffs))), Fraction(0))


def next_interval(a: TaylorPrefix, b: LaurentTail) -> IntervalBound:
    """
    Interval for a_{N+1} from the area theorem.

    With b_{N-1} = -a_{N+1} - sum_{k=2}^{N} a_k b_{N-k} and
    (N-1) b_{N-1}**2 <= 1 - sum_{j=1}^{N-2} j b_j**2, the center is
    -sum_{k=2}^{N} a_k b_{N-k} and the squared radius is the right side
    divided by N-1.

    The empty prefix (step to a_2) returns center 0 and radius_sq 1; the area
    theorem does not bound b_0, so the search roots itself on the de Branges
    bound |a_2| <= 2 instead (see `root_interval`).
    """
    N = a.depth
    if len(b.coeffs) != N - 1:
        raise ValueError(f"tail has {len(b.coeffs)} terms, expected {N - 1} for depth {N}")
    if N == 1:
        return IntervalBound(Fraction(0), Fraction(1))

    center = Fraction(0)
    for k in range(2, N + 1):
        center -= a.a(k) * b.coeffs[N - k]
    remaining = 1 - sum((j * b.coeffs[j] ** 2 for j in range(1, N - 1)), Fraction(0))
    return IntervalBound(center, remaining / (N - 1))


def root_interval() -> IntervalBound:
    """de Branges bound for the first coefficient: |a_2| <= 2."""
    return IntervalBound(Fraction(0), Fraction(4))


def debranges_violation(a: TaylorPrefix, strict: bool) -> Optional[Tuple[int, Fraction]]:
    """First (n, a_n) with |a_n| > n (or >= n when strict), if any."""
    for n, value in enumerate(a.coeffs, start=2):
        if abs(value) > n or (strict and abs(value) == n):
            return n, value
    return None


def debranges_ok(a: TaylorPrefix, strict: bool) -> bool:
    """True iff every |a_n| <= n (strict: < n)."""
    return debranges_violation(a, strict) is None


def prawitz_deficit(a: TaylorPrefix, alpha: RatLike, M: int) -> Fraction:
    """
    alpha - sum_{n=1}^{M} (n - alpha) * sigma_n**2.

    A negative value certifies that f is not univalent; for M >= alpha every
    dropped term is nonnegative, so truncation only strengthens the test.

    Args:
        a: Taylor prefix with depth >= M + 1
        alpha: Positive rational exponent
        M: Truncation order

    Returns:
        Exact deficit
    """
    alpha = to_rat(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    sigma = pow_alpha(a, alpha, M)
    total = Fraction(0)
    for n, s in enumerate(sigma.coeffs, start=1):
        total += (n - alpha) * s * s
    return alpha - total


def termination_slack(b: LaurentTail, N: int, r0: Fraction) -> Fraction:
    """4*(1 - sum_{n=1}^{N-2} n b_n**2) - (N-1)*r0**2; negative means terminated."""
    if len(b.coeffs) < N - 1:
        raise InsufficientDepthError(N, len(b.coeffs) + 1, "termination test")
    remaining = 1 - sum((n * b.coeffs[n] ** 2 for n in range(1, N - 1)), Fraction(0))
    return 4 * remaining - (N - 1) * Fraction(r0) ** 2


def termination_ok(b: LaurentTail, N: int, r0: RatLike) -> bool:
    """
    Uniqueness condition: once 4*(1 - sum n b_n**2) < (N-1)*r0**2 every later
    admissible interval is narrower than r0, so the branch has at most one
    continuation in the lattice.
    """
    return termination_slack(b, N, to_rat(r0)) < 0
