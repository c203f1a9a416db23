"""Truncated power series over the rationals.

Every routine states how many coefficients it can produce and raises
InsufficientDepthError instead of zero-filling past the known prefix.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, List, Sequence, Tuple

from src.core.exact import RatLike, to_rat
from src.errors import InsufficientDepthError, NotNormalizedError

if TYPE_CHECKING:
    from src.reconstruct.rational_fn import RationalFn


@dataclass(frozen=True)
class TaylorPrefix:
    """
    Known coefficients a_2..a_N of f(z) = z + a_2 z^2 + ... + a_N z^N + O(z^{N+1}).

    Attributes:
        coeffs: a_2..a_N (a_1 = 1 is implicit)
    """
    coeffs: Tuple[Fraction, ...] = ()

    @classmethod
    def of(cls, values: Iterable[RatLike]) -> "TaylorPrefix":
        return cls(tuple(to_rat(v) for v in values))

    @property
    def depth(self) -> int:
        """N, the highest known power."""
        return 1 + len(self.coeffs)

    def a(self, n: int) -> Fraction:
        """Coefficient a_n for 1 <= n <= depth."""
        if n == 1:
            return Fraction(1)
        if 2 <= n <= self.depth:
            return self.coeffs[n - 2]
        raise InsufficientDepthError(n, self.depth, f"a_{n}")

    def extend(self, value: Fraction) -> "TaylorPrefix":
        return TaylorPrefix(self.coeffs + (Fraction(value),))

    def truncate(self, depth: int) -> "TaylorPrefix":
        if depth > self.depth:
            raise InsufficientDepthError(depth, self.depth, "truncate")
        return TaylorPrefix(self.coeffs[:max(depth - 1, 0)])

    def mirrored(self) -> "TaylorPrefix":
        """Coefficients of -f(-z): a_n -> (-1)^(n+1) a_n."""
        return TaylorPrefix(tuple(c if n % 2 else -c for n, c in enumerate(self.coeffs, start=2)))


@dataclass(frozen=True)
class LaurentTail:
    """Coefficients b_0..b_M of 1/f(z) = 1/z + b_0 + b_1 z + ..."""
    coeffs: Tuple[Fraction, ...]

    @property
    def M(self) -> int:
        return len(self.coeffs) - 1

    def b(self, n: int) -> Fraction:
        if 0 <= n <= self.M:
            return self.coeffs[n]
        raise InsufficientDepthError(n + 2, self.M + 2, f"b_{n}")


@dataclass(frozen=True)
class SigmaPrefix:
    """Coefficients sigma_1..sigma_M with [z/f(z)]^alpha = 1 + sum sigma_n z^n."""
    coeffs: Tuple[Fraction, ...]
    alpha: Fraction

    @property
    def M(self) -> int:
        return len(self.coeffs)

    def sigma(self, n: int) -> Fraction:
        if 1 <= n <= self.M:
            return self.coeffs[n - 1]
        raise InsufficientDepthError(n + 1, self.M + 1, f"sigma_{n}")


def mul_series(x: Sequence[Fraction], y: Sequence[Fraction], length: int) -> List[Fraction]:
    """Truncated Cauchy product, first `length` coefficients."""
    if length > min(len(x), len(y)):
        raise InsufficientDepthError(length, min(len(x), len(y)), "series product")
    return [sum((x[i] * y[n - i] for i in range(n + 1)), Fraction(0)) for n in range(length)]


def log_series(u: Sequence[Fraction], length: int) -> List[Fraction]:
    """
    Coefficients of log(u) for a series with u_0 = 1.

    Uses n*L_n = n*u_n - sum_{s=1}^{n-1} s*L_s*u_{n-s}, which follows from u' = u*L'.
    """
    if length > len(u):
        raise InsufficientDepthError(length, len(u), "log series")
    if u[0] != 1:
        raise ValueError("log_series needs constant term 1")
    L = [Fraction(0)] * length
    for n in range(1, length):
        acc = n * u[n]
        for s in range(1, n):
            acc -= s * L[s] * u[n - s]
        L[n] = acc / n
    return L


def exp_series(L: Sequence[Fraction], length: int) -> List[Fraction]:
    """Coefficients of exp(L) for a series with L_0 = 0."""
    if length > len(L):
        raise InsufficientDepthError(length, len(L), "exp series")
    if L[0] != 0:
        raise ValueError("exp_series needs constant term 0")
    e = [Fraction(0)] * length
    e[0] = Fraction(1)
    for n in range(1, length):
        acc = Fraction(0)
        for s in range(1, n + 1):
            acc += s * L[s] * e[n - s]
        e[n] = acc / n
    return e


def reciprocal_tail(a: TaylorPrefix) -> LaurentTail:
    """
    Laurent tail of 1/f from a Taylor prefix.

    b_{n-1} = -a_{n+1} - sum_{k=2}^{n} a_k b_{n-k} for n = 1..N-1, so a prefix
    of depth N determines exactly b_0..b_{N-2}.

    Args:
        a: Taylor prefix of depth N >= 1

    Returns:
        LaurentTail with M = N - 2 (empty for N = 1)
    """
    N = a.depth
    b: List[Fraction] = []
    for n in range(1, N):
        acc = -a.a(n + 1)
        for k in range(2, n + 1):
            acc -= a.a(k) * b[n - k]
        b.append(acc)
    return LaurentTail(tuple(b))


def pow_alpha(a: TaylorPrefix, alpha: RatLike, M: int) -> SigmaPrefix:
    """
    First M coefficients of [z/f(z)]^alpha.

    Computed as exp(-alpha * log(f(z)/z)); every coefficient stays rational
    for rational alpha.

    Args:
        a: Taylor prefix with depth >= M + 1
        alpha: Nonzero rational exponent
        M: Number of sigma coefficients

    Returns:
        SigmaPrefix for the convention [z/f]^alpha = 1 + sum sigma_n z^n
    """
    alpha = to_rat(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    if M > a.depth - 1:
        raise InsufficientDepthError(M + 1, a.depth, f"pow_alpha with M={M}")

    u = [a.a(n + 1) for n in range(M + 1)]
    L = log_series(u, M + 1)
    e = exp_series([-alpha * c for c in L], M + 1)
    return SigmaPrefix(tuple(e[1:]), alpha)


def taylor_of_rational(R: "RationalFn", N: int) -> TaylorPrefix:
    """
    Taylor coefficients a_2..a_N of P/Q by the linear recurrence against Q.

    Args:
        R: Normalized rational function
        N: Target depth (>= 1)

    Returns:
        TaylorPrefix of depth N
    """
    P, Q = R.numerator, R.denominator
    if not Q or Q[0] == 0:
        raise NotNormalizedError("denominator must not vanish at 0")
    if (P[0] if P else 0) != 0:
        raise NotNormalizedError("numerator must vanish at 0")
    if (P[1] if len(P) > 1 else 0) != Q[0]:
        raise NotNormalizedError("f'(0) must equal 1")

    q0 = Fraction(Q[0])
    f: List[Fraction] = []
    for n in range(N + 1):
        acc = Fraction(P[n]) if n < len(P) else Fraction(0)
        for i in range(1, min(n, len(Q) - 1) + 1):
            acc -= Q[i] * f[n - i]
        f.append(acc / q0)
    return TaylorPrefix(tuple(f[2:]))
