"""Boundary traces w = f(r e^{i theta}) and boundary-injectivity sampling."""
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree

from src import config
from src.reconstruct.polynomial import squarefree_decomposition
from src.reconstruct.rational_fn import RationalFn
from src.reconstruct.roots import numeric_roots

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class BoundaryTrace:
    """
    Samples of f on the circle |z| = r.

    Attributes:
        label: Function name used in figures
        r: Circle radius in (0, 1]
        theta: Strictly increasing sample angles in [0, 2 pi)
        w: Complex values f(r e^{i theta})
        poles: Angles of denominator zeros on the circle, sorted
        excluded: Sample angles dropped because they sit on a pole
    """
    label: str
    r: float
    theta: np.ndarray
    w: np.ndarray
    poles: Tuple[float, ...] = ()
    excluded: Tuple[float, ...] = ()

    @property
    def samples(self) -> List[Tuple[float, Tuple[float, float]]]:
        return [(float(t), (float(v.real), float(v.imag))) for t, v in zip(self.theta, self.w)]

    def segments(self, clip_radius: Optional[float] = None) -> List[np.ndarray]:
        """
        Split the trace into polylines.

        A break occurs across every pole and wherever |w| exceeds the clip
        radius. A trace without breaks is returned closed, its first point
        repeated at the end.
        """
        n = len(self.theta)
        if n == 0:
            return []
        keep = np.isfinite(self.w)
        if clip_radius is not None:
            keep &= np.abs(self.w) <= clip_radius

        breaks = np.zeros(n, dtype=bool)
        for pole in self.poles:
            breaks[int(np.searchsorted(self.theta, pole, side="right")) % n] = True

        if keep.all() and not breaks.any():
            return [np.append(self.w, self.w[0])]

        start = next(i for i in range(n) if breaks[i] or not keep[i - 1])
        pieces: List[np.ndarray] = []
        current: List[complex] = []
        for step in range(n):
            i = (start + step) % n
            if not keep[i] or (breaks[i] and current):
                if len(current) > 1:
                    pieces.append(np.asarray(current))
                current = []
            if keep[i]:
                current.append(self.w[i])
        if len(current) > 1:
            pieces.append(np.asarray(current))
        return pieces


def unit_circle_poles(R: RationalFn, r: float = 1.0, tol: float = 1e-9) -> Tuple[float, ...]:
    """Arguments in [0, 2 pi) of denominator zeros with modulus within tol of r."""
    angles = []
    # Squarefree factors have simple roots, which np.roots resolves to full precision.
    for factor, _ in squarefree_decomposition(R.Q):
        angles.extend(float(np.angle(z)) % TWO_PI for z in numeric_roots(factor) if abs(abs(z) - r) <= tol)
    return tuple(sorted(angles))


def _circular_distance(theta: np.ndarray, angle: float) -> np.ndarray:
    d = np.abs(theta - angle) % TWO_PI
    return np.minimum(d, TWO_PI - d)


def boundary_trace(
    R: RationalFn,
    r: float,
    n: int,
    label: str = "",
    pole_exclusion: float = config.GEOMETRY_DEFAULTS["pole_exclusion"],
) -> BoundaryTrace:
    """
    Sample f on n uniform angles of the circle |z| = r.

    Args:
        R: Function to trace
        r: Radius, 0 < r <= 1
        n: Number of angles (>= 16)
        label: Name carried into figures
        pole_exclusion: Angular distance within which samples next to a pole are dropped

    Returns:
        BoundaryTrace
    """
    if not 0 < r <= 1:
        raise ValueError(f"radius must lie in (0, 1], got {r}")
    if n < 16:
        raise ValueError(f"need at least 16 samples, got {n}")

    theta = TWO_PI * np.arange(n) / n
    poles = unit_circle_poles(R, r)
    keep = np.ones(n, dtype=bool)
    for pole in poles:
        keep &= _circular_distance(theta, pole) >= pole_exclusion

    kept = theta[keep]
    w = R(r * np.exp(1j * kept))
    return BoundaryTrace(label, r, kept, w, poles, tuple(float(t) for t in theta[~keep]))


def injectivity_collisions(
    R: RationalFn,
    n: int = 10_000,
    avoid: Sequence[float] = (),
    avoid_width: float = 0.05,
    tol: float = 1e-6,
    min_separation: float = 1e-3,
) -> List[Tuple[float, float]]:
    """
    Pairs of boundary angles at least min_separation apart whose images lie within tol.

    Args:
        R: Function sampled on |z| = 1
        n: Number of uniform angles
        avoid: Angles whose neighborhoods are skipped (poles, cusps)
        avoid_width: Half-width of each skipped neighborhood
        tol: Image distance counted as a collision
        min_separation: Angular distance below which nearby images are expected

    Returns:
        Colliding (theta_1, theta_2) pairs; empty when the sampled boundary is injective
    """
    theta = TWO_PI * (np.arange(n) + 0.5) / n
    keep = np.ones(n, dtype=bool)
    for angle in avoid:
        keep &= _circular_distance(theta, angle) >= avoid_width
    theta = theta[keep]
    w = R(np.exp(1j * theta))

    tree = cKDTree(np.column_stack([w.real, w.imag]))
    collisions = []
    for i, j in sorted(tree.query_pairs(tol)):
        if _circular_distance(np.asarray([theta[i]]), theta[j])[0] >= min_separation:
            collisions.append((float(theta[i]), float(theta[j])))
    return collisions
