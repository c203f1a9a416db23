"""Grunsky coefficients, Grunsky matrices and exact semidefiniteness tests.

The coefficients are defined by

    log((f(z) - f(w)) / (z - w)) = -sum_{j,k >= 0} c_{j,k} z^j w^k

and the order-n matrix by gamma_{j,k} = delta_{j,k}/j - sum_{m=1}^n m c_{m,j} c_{m,k}.
The bivariate expansion is the primary path; `grunsky_by_recursion` is the
faster coefficient recursion, kept as an independent cross-check.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from src.core.series import TaylorPrefix
from src.errors import InsufficientDepthError


@dataclass(frozen=True)
class GrunskyTable:
    """
    Grunsky coefficients c_{j,k} for j, k >= 0 and j + k <= max_sum.

    c_{0,k} are the coefficients of -log(f(z)/z); c_{0,0} = 0.
    """
    max_sum: int
    values: Dict[Tuple[int, int], Fraction]

    def c(self, j: int, k: int) -> Fraction:
        if j < 0 or k < 0 or j + k > self.max_sum:
            raise IndexError(f"c_({j},{k}) outside table with j+k <= {self.max_sum}")
        return self.values.get((j, k), Fraction(0))

    @property
    def J(self) -> int:
        """Largest square block 1 <= j,k <= J held by the table."""
        return self.max_sum // 2


@dataclass(frozen=True)
class GrunskyMatrix:
    """Real symmetric Grunsky matrix of order n; entries are 0-indexed internally."""
    order: int
    entries: Tuple[Tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class PsdWitness:
    """
    Certificate that a matrix is not positive semidefinite.

    Attributes:
        kind: "entry" (negative diagonal), "det" (negative full determinant)
              or "minor" (another negative principal minor)
        indices: 1-based index set of the principal submatrix
        value: The negative minor
    """
    kind: str
    indices: Tuple[int, ...]
    value: Fraction

    def describe(self) -> str:
        if self.kind == "entry":
            j = self.indices[0]
            return f"gamma_{j}{j}"
        if self.kind == "det":
            return "det"
        return "minor" + "".join(str(i) for i in self.indices)


def _homogeneous_product(x: Sequence[Fraction], y: Sequence[Fraction]) -> List[Fraction]:
    """Product of homogeneous polynomials stored as coefficient lists of z^i w^(d-i)."""
    out = [Fraction(0)] * (len(x) + len(y) - 1)
    for i, xi in enumerate(x):
        if xi:
            for j, yj in enumerate(y):
                out[i + j] += xi * yj
    return out


def grunsky_table(a: TaylorPrefix, max_sum: int) -> GrunskyTable:
    """
    Grunsky coefficients with j + k <= max_sum from the bivariate definition.

    The difference quotient (f(z)-f(w))/(z-w) has z^i w^j coefficient a_{i+j+1},
    so its degree-t homogeneous part is a_{t+1} times the all-ones vector. The
    logarithm is taken degree by degree: t*L_t = t*D_t - sum_{s<t} s*L_s*D_{t-s}.

    Args:
        a: Taylor prefix with depth >= max_sum + 1
        max_sum: Largest j + k required

    Returns:
        GrunskyTable
    """
    if a.depth < max_sum + 1:
        raise InsufficientDepthError(max_sum + 1, a.depth, f"Grunsky table to j+k={max_sum}")

    D = [[a.a(t + 1)] * (t + 1) for t in range(max_sum + 1)]
    L: List[List[Fraction]] = [[Fraction(0)]]
    for t in range(1, max_sum + 1):
        acc = [t * d for d in D[t]]
        for s in range(1, t):
            prod = _homogeneous_product(L[s], D[t - s])
            acc = [x - s * y for x, y in zip(acc, prod)]
        L.append([x / t for x in acc])

    values = {}
    for t in range(1, max_sum + 1):
        for j in range(t + 1):
            if L[t][j]:
                values[(j, t - j)] = -L[t][j]
    return GrunskyTable(max_sum, values)


def grunsky_coefficients(a: TaylorPrefix, J: int) -> GrunskyTable:
    """
    Table of c_{j,k} covering 1 <= j,k <= J.

    Args:
        a: Taylor prefix with depth >= 2J + 1
        J: Square block size

    Returns:
        GrunskyTable with max_sum = 2J
    """
    if a.depth < 2 * J + 1:
        raise InsufficientDepthError(2 * J + 1, a.depth, f"Grunsky coefficients of order {J}")
    return grunsky_table(a, 2 * J)


def grunsky_by_recursion(a: TaylorPrefix, max_sum: int) -> GrunskyTable:
    """
    Grunsky coefficients from the coefficient recursion

        c_{j,k} = sum_{l=1}^{k-1} (l/k) a_{k-l} c_{j+1,l}
                  - sum_{m=1}^{j} a_{m+1} c_{j-m,k} - a_{j+k+1}/k

    for j >= 0, k >= 1. Evaluation runs over k ascending and j ascending
    within each k; every right-hand term then has a smaller k or a smaller j
    at the same k. Row j = 0 is produced by the recursion itself, and
    c_{j,0} follows from symmetry.
    """
    if a.depth < max_sum + 1:
        raise InsufficientDepthError(max_sum + 1, a.depth, f"Grunsky recursion to j+k={max_sum}")

    c: Dict[Tuple[int, int], Fraction] = {}
    for k in range(1, max_sum + 1):
        for j in range(0, max_sum - k + 1):
            acc = Fraction(0)
            for l in range(1, k):
                acc += Fraction(l, k) * a.a(k - l) * c[(j + 1, l)]
            for m in range(1, j + 1):
                acc -= a.a(m + 1) * c[(j - m, k)]
            acc -= a.a(j + k + 1) / k
            c[(j, k)] = acc
    for k in range(1, max_sum + 1):
        c[(k, 0)] = c[(0, k)]
    return GrunskyTable(max_sum, {key: v for key, v in c.items() if v})


def grunsky_matrix(a: TaylorPrefix, n: int) -> GrunskyMatrix:
    """
    Order-n Grunsky matrix gamma^{(n)}.

    Args:
        a: Taylor prefix with depth >= 2n + 1
        n: Matrix order

    Returns:
        GrunskyMatrix
    """
    return grunsky_matrix_from_table(grunsky_coefficients(a, n), n)


def grunsky_matrix_from_table(table: GrunskyTable, n: int) -> GrunskyMatrix:
    """Order-n matrix from a table with J >= n; lets one table serve every order."""
    if table.J < n:
        raise ValueError(f"table holds orders up to {table.J}, requested {n}")
    rows = []
    for j in range(1, n + 1):
        row = []
        for k in range(1, n + 1):
            value = Fraction(1, j) if j == k else Fraction(0)
            for m in range(1, n + 1):
                value -= m * table.c(m, j) * table.c(m, k)
            row.append(value)
        rows.append(tuple(row))
    return GrunskyMatrix(n, tuple(rows))


def entry(M: GrunskyMatrix, j: int, k: int) -> Fraction:
    """gamma_{j,k} with 1-based indices."""
    if not (1 <= j <= M.order and 1 <= k <= M.order):
        raise IndexError(f"entry ({j},{k}) outside order-{M.order} matrix")
    return M.entries[j - 1][k - 1]


def _scaled_integer_matrix(rows: Sequence[Sequence[Fraction]]) -> Tuple[List[List[int]], int]:
    """Multiply by the common denominator; returns the integer matrix and the scale."""
    scale = 1
    for row in rows:
        for x in row:
            scale = lcm(scale, Fraction(x).denominator)
    return [[int(Fraction(x) * scale) for x in row] for row in rows], scale


def _bareiss_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    A, scale = _scaled_integer_matrix(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return Fraction(sign * A[n - 1][n - 1], scale ** n)


def det(M: GrunskyMatrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    return _bareiss_det(M.entries)


def principal_minor(M: GrunskyMatrix, indices: Sequence[int]) -> Fraction:
    """Determinant of the principal submatrix on 1-based `indices`."""
    sub = [[M.entries[i - 1][j - 1] for j in indices] for i in indices]
    return _bareiss_det(sub)


def _psd_by_elimination(rows: Sequence[Sequence[Fraction]]) -> bool:
    """
    Symmetric fraction-free elimination with full diagonal pivoting.

    The largest positive diagonal entry of the remaining block is used as
    pivot. With positive pivots the Bareiss-scaled Schur complement keeps the
    sign pattern of the true complement. When no positive pivot is left the
    block is semidefinite only if it vanishes identically.
    """
    A, _ = _scaled_integer_matrix(rows)
    active = list(range(len(A)))
    prev = 1
    while active:
        k = max(active, key=lambda i: (A[i][i], -i))
        pivot = A[k][k]
        if pivot < 0:
            return False
        if pivot == 0:
            return all(A[i][j] == 0 for i in active for j in active)
        active.remove(k)
        for i in active:
            for j in active:
                if j < i:
                    continue
                A[i][j] = (pivot * A[i][j] - A[i][k] * A[k][j]) // prev
                A[j][i] = A[i][j]
        prev = pivot
    return True


def _find_witness(M: GrunskyMatrix) -> Optional[PsdWitness]:
    n = M.order
    for j in range(1, n + 1):
        value = entry(M, j, j)
        if value < 0:
            return PsdWitness("entry", (j,), value)
    full = det(M)
    if full < 0:
        return PsdWitness("det", tuple(range(1, n + 1)), full)
    for size in range(2, n):
        for indices in combinations(range(1, n + 1), size):
            value = principal_minor(M, indices)
            if value < 0:
                return PsdWitness("minor", indices, value)
    return None


def is_psd(M: GrunskyMatrix) -> Tuple[bool, Optional[PsdWitness]]:
    """
    Decide positive semidefiniteness exactly.

    Args:
        M: Symmetric matrix

    Returns:
        (True, None) when PSD, otherwise (False, witness) where the witness is
        the first negative diagonal entry, else the negative full determinant,
        else the first negative principal minor by size.
    """
    if _psd_by_elimination(M.entries):
        return True, None
    witness = _find_witness(M)
    if witness is None:
        # A symmetric matrix with all principal minors >= 0 is PSD.
        raise ArithmeticError("elimination and principal minors disagree")
    return False, witness
