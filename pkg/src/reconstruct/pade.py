"""Rational reconstruction of a Taylor prefix."""
from fractions import Fraction
from typing import List, Optional

from src.core.series import TaylorPrefix, taylor_of_rational
from src.errors import InsufficientDepthError, NotNormalizedError
from src.reconstruct import polynomial as poly
from src.reconstruct.rational_fn import RationalFn


def _nullspace(rows: List[List[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of the right nullspace from the reduced row echelon form."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        lead = A[r][col]
        A[r] = [x / lead for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                factor = A[i][col]
                A[i] = [x - factor * y for x, y in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
        if r == len(A):
            break

    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, col in enumerate(pivots):
            v[col] = -A[i][free]
        basis.append(v)
    return basis


def pade_from_prefix(a: TaylorPrefix, dmax: int) -> Optional[RationalFn]:
    """
    Rational function P/Q with deg P <= dmax + 1, deg Q <= dmax matching the prefix.

    The denominator solves sum_{i=0}^{dmax} q_i s_{k-i} = 0 for k = dmax+2..N,
    where s_k are the coefficients of z + a_2 z^2 + ... + a_N z^N. Each
    nullspace vector with q_0 != 0 yields a fit; the lowest-degree canonical
    fit that reproduces the whole prefix is returned.

    Args:
        a: Taylor prefix with depth N >= 2*dmax + 1
        dmax: Denominator degree bound

    Returns:
        Canonical RationalFn, or None when no fit exists at this dmax
    """
    if dmax < 1:
        raise ValueError("dmax must be at least 1")
    N = a.depth
    if N < 2 * dmax + 1:
        raise InsufficientDepthError(2 * dmax + 1, N, f"pade_from_prefix with dmax={dmax}")

    s = [Fraction(0)] + [a.a(n) for n in range(1, N + 1)]
    rows = [[s[k - i] if k - i >= 0 else Fraction(0) for i in range(dmax + 1)]
            for k in range(dmax + 2, N + 1)]

    fits = []
    for q in _nullspace(rows, dmax + 1):
        if q[0] == 0:
            continue
        P = poly.mul(s, q)[:dmax + 2]
        try:
            R = RationalFn.from_polynomials(P, q)
        except NotNormalizedError:
            continue
        if taylor_of_rational(R, N) == a:
            fits.append(R)

    if not fits:
        return None
    return min(fits, key=lambda R: (len(R.denominator), len(R.numerator)))


def fit_prefix(a: TaylorPrefix, dmax_limit: int, accept=None) -> Optional[tuple]:
    """
    Sweep dmax = 1..dmax_limit and return (dmax, fit) for the first accepted fit.

    Args:
        a: Taylor prefix
        dmax_limit: Largest dmax tried; capped by the prefix depth
        accept: Optional predicate on the fitted RationalFn

    Returns:
        (dmax, RationalFn) or None
    """
    for dmax in range(1, min(dmax_limit, (a.depth - 1) // 2) + 1):
        R = pade_from_prefix(a, dmax)
        if R is not None and (accept is None or accept(R)):
            return dmax, R
    return None
