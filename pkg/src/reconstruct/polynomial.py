"""Dense polynomials over the rationals, constant term first."""
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import List, Sequence, Tuple

Poly = List[Fraction]


def trim(p: Sequence) -> Poly:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p: Sequence) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(trim(p)) - 1


def add(p: Sequence, q: Sequence) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p: Sequence, q: Sequence) -> Poly:
    return add(p, [-c for c in q])


def scale(p: Sequence, c) -> Poly:
    return trim([Fraction(c) * x for x in p])


def mul(p: Sequence, q: Sequence) -> Poly:
    p, q = trim(p), trim(q)
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return trim(out)


def power(p: Sequence, n: int) -> Poly:
    out: Poly = [Fraction(1)]
    for _ in range(n):
        out = mul(out, p)
    return out


def divmod_poly(p: Sequence, d: Sequence) -> Tuple[Poly, Poly]:
    """Long division p = quotient*d + remainder."""
    p, d = trim(p), trim(d)
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(d):
        return [], p
    rem = list(p)
    quot = [Fraction(0)] * (len(p) - len(d) + 1)
    lead = d[-1]
    for shift in range(len(p) - len(d), -1, -1):
        coef = rem[shift + len(d) - 1] / lead
        quot[shift] = coef
        if coef:
            for i, x in enumerate(d):
                rem[shift + i] -= coef * x
    return trim(quot), trim(rem[:len(d) - 1])


def exact_div(p: Sequence, d: Sequence) -> Poly:
    q, r = divmod_poly(p, d)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return q


def monic(p: Sequence) -> Poly:
    p = trim(p)
    return [c / p[-1] for c in p] if p else []


def gcd_poly(p: Sequence, q: Sequence) -> Poly:
    """Monic greatest common divisor by the Euclidean algorithm."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def derivative(p: Sequence) -> Poly:
    return trim([i * Fraction(c) for i, c in enumerate(p)][1:])


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def reciprocal(p: Sequence) -> Poly:
    """z^deg p(1/z); roots map to their reciprocals."""
    return trim(list(reversed(trim(p))))


def negate_argument(p: Sequence) -> Poly:
    """p(-z)."""
    return trim([c if i % 2 == 0 else -c for i, c in enumerate(p)])


def primitive_integer(p: Sequence) -> List[int]:
    """Scale to coprime integer coefficients, keeping the sign."""
    p = trim(p)
    if not p:
        return []
    den = reduce(lcm, (c.denominator for c in p), 1)
    ints = [int(c * den) for c in p]
    g = reduce(gcd, (abs(c) for c in ints), 0)
    return [c // g for c in ints]


def squarefree_decomposition(p: Sequence) -> List[Tuple[Poly, int]]:
    """Yun's algorithm: p = lead * prod f_i^i with squarefree, pairwise coprime f_i."""
    p = monic(p)
    if degree(p) <= 0:
        return []
    factors = []
    a = gcd_poly(p, derivative(p))
    b = exact_div(p, a)
    c = exact_div(derivative(p), a) if a else []
    d = sub(c, derivative(b))
    i = 1
    while degree(b) > 0:
        a = gcd_poly(b, d)
        b = exact_div(b, a)
        c = exact_div(d, a)
        d = sub(c, derivative(b))
        if degree(a) > 0:
            factors.append((a, i))
        i += 1
    return factors


def sturm_sequence(p: Sequence) -> List[Poly]:
    seq = [trim(p), derivative(p)]
    while seq[-1]:
        rem = divmod_poly(seq[-2], seq[-1])[1]
        if not rem:
            break
        seq.append(scale(rem, -1))
    return seq


def _sign_changes(seq: Sequence[Poly], x: Fraction) -> int:
    signs = [v for v in (evaluate(s, x) for s in seq) if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u < 0) != (v < 0))


def count_real_roots(p: Sequence, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in (lo, hi] by Sturm's theorem."""
    seq = sturm_sequence(p)
    return _sign_changes(seq, Fraction(lo)) - _sign_changes(seq, Fraction(hi))
