"""Starlikeness, close-to-convexity, Kaplan and class-U quantities on circles |z| = r."""
import warnings
from typing import Optional, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.integrate import IntegrationWarning, quad

from src import config
from src.errors import EvaluationError, QuadratureError
from src.reconstruct.rational_fn import RationalFn

ComplexLike = Union[complex, Tuple[float, float]]


class _Derivatives:
    """Float coefficient arrays for f = P/Q and the numerator N of f' = N/Q^2."""

    def __init__(self, R: RationalFn):
        self.P = np.asarray(R.numerator, dtype=float)
        self.Q = np.asarray(R.denominator, dtype=float)
        self.N = npoly.polysub(npoly.polymul(npoly.polyder(self.P), self.Q),
                               npoly.polymul(self.P, npoly.polyder(self.Q)))
        self.dN = npoly.polyder(self.N) if self.N.size > 1 else np.zeros(1)
        self.dQ = npoly.polyder(self.Q) if self.Q.size > 1 else np.zeros(1)

    def values(self, z):
        return (npoly.polyval(z, self.P), npoly.polyval(z, self.Q), npoly.polyval(z, self.N))

    def log_derivative_of_derivative(self, z):
        """f''/f' = N'/N - 2 Q'/Q."""
        N = npoly.polyval(z, self.N)
        Q = npoly.polyval(z, self.Q)
        if np.any(N == 0) or np.any(Q == 0):
            raise EvaluationError("f' vanishes or has a pole on the path")
        return npoly.polyval(z, self.dN) / N - 2.0 * npoly.polyval(z, self.dQ) / Q


def _circle(r: float, n: int, arc: Optional[Tuple[float, float]] = None) -> np.ndarray:
    if n < 1:
        raise ValueError("need at least one sample")
    if arc is None:
        theta = 2.0 * np.pi * np.arange(n) / n
    else:
        theta = np.linspace(arc[0], arc[1], n)
    return r * np.exp(1j * theta)


def starlike_margin(R: RationalFn, r: float, n: int, arc: Optional[Tuple[float, float]] = None) -> float:
    """
    min Re[z f'(z)/f(z)] over n samples of |z| = r.

    Args:
        R: Function
        r: Radius, 0 < r < 1
        n: Number of samples
        arc: Optional (theta_1, theta_2) to sample densely instead of the full circle

    Returns:
        Minimum real part; positive on every circle iff f is starlike
    """
    if not 0 < r < 1:
        raise ValueError(f"radius must lie in (0, 1), got {r}")
    z = _circle(r, n, arc)
    d = _Derivatives(R)
    P, Q, N = d.values(z)
    if np.any(P == 0):
        raise EvaluationError("f vanishes at a sample point")
    # z f'/f = z N / (P Q)
    return float(np.min((z * N / (P * Q)).real))


def ctc_margin(R: RationalFn, G: RationalFn, r: float, n: int,
               arc: Optional[Tuple[float, float]] = None) -> float:
    """min Re[z f'(z)/g(z)] over n samples of |z| = r, for a starlike g."""
    if not 0 < r < 1:
        raise ValueError(f"radius must lie in (0, 1), got {r}")
    z = _circle(r, n, arc)
    _, Q, N = _Derivatives(R).values(z)
    Pg, Qg, _ = _Derivatives(G).values(z)
    if np.any(Pg == 0):
        raise EvaluationError("g vanishes at a sample point")
    return float(np.min((z * N * Qg / (Q * Q * Pg)).real))


def kaplan_gap(
    R: RationalFn,
    r: float,
    theta1: float,
    theta2: float,
    epsabs: float = config.GEOMETRY_DEFAULTS["quad_epsabs"],
    limit: int = config.GEOMETRY_DEFAULTS["quad_limit"],
) -> float:
    """
    Integral of Re[1 + z f''(z)/f'(z)] over z = r e^{i theta}, theta_1 < theta < theta_2.

    Close-to-convex functions keep this above -pi on every arc.

    Raises:
        QuadratureError: adaptive quadrature did not reach epsabs
    """
    if not theta1 < theta2:
        raise ValueError("theta1 must be smaller than theta2")
    if not 0 < r < 1:
        raise ValueError(f"radius must lie in (0, 1), got {r}")
    d = _Derivatives(R)

    def integrand(theta: float) -> float:
        z = r * np.exp(1j * theta)
        return float((1.0 + z * d.log_derivative_of_derivative(z)).real)

    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, _ = quad(integrand, theta1, theta2, epsabs=epsabs, epsrel=0.0, limit=limit)
        except IntegrationWarning as exc:
            raise QuadratureError(f"quadrature did not converge on [{theta1}, {theta2}]: {exc}") from exc
    return float(value)


def u_functional_sq(R: RationalFn, z: ComplexLike) -> float:
    """|z^2 f'(z)/f(z)^2 - 1|^2; functions of class U keep it below 1."""
    if isinstance(z, tuple):
        z = complex(z[0], z[1])
    z = complex(z)
    P, Q, N = _Derivatives(R).values(z)
    if P == 0:
        raise EvaluationError("f vanishes at the evaluation point")
    # f'/f^2 = N / P^2
    return float(abs(z * z * N / (P * P) - 1.0) ** 2)


def u_functional_sup(R: RationalFn, r: float, n: int) -> float:
    """max of u_functional_sq over n samples of |z| = r."""
    z = _circle(r, n)
    P, Q, N = _Derivatives(R).values(z)
    if np.any(P == 0):
        raise EvaluationError("f vanishes at a sample point")
    return float(np.max(np.abs(z * z * N / (P * P) - 1.0) ** 2))
