"""Location of polynomial zeros relative to the unit circle.

Roots are found numerically first. When some root modulus is within the
margin of 1 the count of zeros in the open disk is decided exactly: the
reciprocal-pair part is split off with gcd(H, H*) and counted on the real
line with Sturm sequences, the rest goes through the Schur-Cohn recursion.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from src import config
from src.errors import InconclusiveRootTest
from src.reconstruct import polynomial as poly
from src.reconstruct.rational_fn import RationalFn


@dataclass(frozen=True)
class RootCheck:
    """
    Outcome of a zero-in-disk test.

    Attributes:
        inside: At least one zero in |z| < 1
        count: Number of zeros in |z| < 1 with multiplicity
        method: "numeric" or "exact"
        min_modulus: Smallest root modulus (inf for constants)
        witness: A root of smallest modulus, when one lies inside
    """
    inside: bool
    count: int
    method: str
    min_modulus: float
    witness: Optional[complex] = None

    def to_dict(self, digits: int = config.GEOMETRY_DEFAULTS["float_digits"]) -> Dict[str, Any]:
        return {
            "inside": self.inside,
            "count": self.count,
            "method": self.method,
            "min_modulus": None if np.isinf(self.min_modulus) else round(self.min_modulus, digits),
            "witness": None if self.witness is None else [round(self.witness.real, digits),
                                                          round(self.witness.imag, digits)],
        }


def derivative_numerator(R: RationalFn) -> List[Fraction]:
    """
    Numerator of f' = (P'Q - PQ')/Q^2 with every factor shared with Q^2 removed.

    The zeros of the result are exactly the zeros of f' in the plane.
    """
    N, D = R.derivative_parts()
    g = poly.gcd_poly(N, D)
    if poly.degree(g) > 0:
        N = poly.exact_div(N, g)
    return [Fraction(c) for c in poly.primitive_integer(N)]


def numeric_roots(p: Sequence, residual: float = config.VERIFY_DEFAULTS["root_residual"]) -> np.ndarray:
    """Roots from the companion matrix, refined by Newton steps."""
    coeffs = np.asarray([float(c) for c in poly.trim(p)], dtype=float)
    if coeffs.size <= 1:
        return np.zeros(0, dtype=complex)
    roots = np.roots(coeffs[::-1]).astype(complex)
    dcoeffs = npoly.polyder(coeffs)
    for _ in range(50):
        values = npoly.polyval(roots, coeffs)
        scale = npoly.polyval(np.abs(roots), np.abs(coeffs))
        if np.all(np.abs(values) <= residual * np.maximum(scale, 1.0)):
            break
        slopes = npoly.polyval(roots, dcoeffs)
        step = np.where(slopes != 0, values / np.where(slopes != 0, slopes, 1), 0)
        roots = roots - step
    return roots


def _strip_zero_roots(p: List[Fraction]) -> tuple:
    k = 0
    while k < len(p) and p[k] == 0:
        k += 1
    return k, p[k:]


def _chebyshev_like(k: int) -> List[List[Fraction]]:
    """D_j(x) with z^j + z^-j = D_j(z + 1/z) for j = 0..k."""
    x = [Fraction(0), Fraction(1)]
    D = [[Fraction(2)], x]
    for _ in range(2, k + 1):
        D.append(poly.sub(poly.mul(x, D[-1]), D[-2]))
    return D[:k + 1]


def _inside_self_reciprocal(g: List[Fraction]) -> int:
    """Zeros in |z| < 1 of a polynomial whose roots are closed under z -> 1/z."""
    g = poly.trim(g)
    for unit in (Fraction(1), Fraction(-1)):
        while poly.degree(g) > 0 and poly.evaluate(g, unit) == 0:
            g = poly.exact_div(g, [-unit, Fraction(1)])
    n = poly.degree(g)
    if n <= 0:
        return 0
    if n % 2 or any(g[i] != g[n - i] for i in range(n + 1)):
        raise InconclusiveRootTest("reciprocal factor is not palindromic")

    k = n // 2
    D = _chebyshev_like(k)
    T = [g[k]]
    for j in range(1, k + 1):
        T = poly.add(T, poly.scale(D[j], g[k + j]))

    inside = 0
    for factor, mult in poly.squarefree_decomposition(T):
        on_circle = poly.count_real_roots(factor, Fraction(-2), Fraction(2))
        # Roots at exactly x = 2 correspond to z = 1, removed above.
        inside += mult * (poly.degree(factor) - on_circle)
    return inside


def _schur_cohn(p: List[Fraction]) -> int:
    """Zeros in |z| < 1 of a polynomial with no zeros on the unit circle."""
    count = 0
    p = poly.trim(p)
    while poly.degree(p) > 0:
        zeros, p = _strip_zero_roots(p)
        count += zeros
        n = poly.degree(p)
        if n <= 0:
            break
        a0, an = p[0], p[-1]
        if abs(a0) == abs(an):
            raise InconclusiveRootTest("singular Schur-Cohn step")
        transformed = poly.sub(poly.scale(p, a0), poly.scale(poly.reciprocal(p), an))
        if abs(a0) > abs(an):
            p = transformed
        else:
            return count + n - _schur_cohn(transformed)
    return count


def count_roots_in_open_disk(p: Sequence) -> int:
    """
    Exact number of zeros of p in |z| < 1, with multiplicity.

    Raises:
        InconclusiveRootTest: if the recursion hits a degenerate step
    """
    zeros, H = _strip_zero_roots(poly.trim(p))
    count = zeros
    while poly.degree(H) > 0:
        g = poly.gcd_poly(H, poly.reciprocal(H))
        if poly.degree(g) <= 0:
            break
        count += _inside_self_reciprocal(g)
        H = poly.exact_div(H, g)
    if poly.degree(H) > 0:
        count += _schur_cohn(H)
    return count


def has_zero_in_disk(
    p: Sequence,
    margin: float = config.VERIFY_DEFAULTS["root_margin"],
    residual: float = config.VERIFY_DEFAULTS["root_residual"],
) -> RootCheck:
    """
    Decide whether p has a zero in the open unit disk.

    Args:
        p: Rational coefficients, constant term first
        margin: Moduli within this distance of 1 trigger the exact test
        residual: Newton refinement target

    Returns:
        RootCheck
    """
    p = poly.trim(p)
    if poly.degree(p) <= 0:
        return RootCheck(False, 0, "numeric", float("inf"))

    roots = numeric_roots(p, residual)
    moduli = np.abs(roots)
    order = int(np.argmin(moduli))
    min_modulus = float(moduli[order])
    smallest = complex(roots[order])

    if np.any(np.abs(moduli - 1.0) <= margin):
        count = count_roots_in_open_disk(p)
        method = "exact"
    else:
        count = int(np.sum(moduli < 1.0))
        method = "numeric"

    inside = count > 0
    return RootCheck(inside, count, method, min_modulus, smallest if inside else None)
