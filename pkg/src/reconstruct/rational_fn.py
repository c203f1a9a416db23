"""Canonical rational functions P/Q and the function-literal parser."""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from src.errors import EvaluationError, FunctionParseError, NotNormalizedError
from src.reconstruct import polynomial as poly


@dataclass(frozen=True)
class RationalFn:
    """
    Normalized f = P/Q with integer coefficients, constant term first.

    Canonical form: P/Q reduced, Q(0) > 0, the coefficients of P and Q are
    jointly coprime, P(0) = 0 and P'(0) = Q(0). Two functions are equal iff
    their canonical forms are equal.
    """
    numerator: Tuple[int, ...]
    denominator: Tuple[int, ...]

    @classmethod
    def from_polynomials(cls, P: Sequence, Q: Sequence) -> "RationalFn":
        """
        Reduce and normalize an arbitrary rational pair.

        Raises:
            NotNormalizedError: if P/Q is not of the form z + O(z^2)
        """
        P, Q = poly.trim(P), poly.trim(Q)
        if not Q:
            raise NotNormalizedError("zero denominator")
        if not P:
            raise NotNormalizedError("zero numerator")

        g = poly.gcd_poly(P, Q)
        if poly.degree(g) > 0:
            P, Q = poly.exact_div(P, g), poly.exact_div(Q, g)

        if Q[0] == 0:
            raise NotNormalizedError("denominator vanishes at 0")
        if P[0] != 0:
            raise NotNormalizedError("numerator must vanish at 0")
        if len(P) < 2 or P[1] != Q[0]:
            raise NotNormalizedError("f'(0) must equal 1")

        joint = poly.primitive_integer(P + Q)
        P_int, Q_int = joint[:len(P)], joint[len(P):]
        if Q_int[0] < 0:
            P_int, Q_int = [-c for c in P_int], [-c for c in Q_int]
        return cls(tuple(P_int), tuple(Q_int))

    @property
    def P(self) -> List[Fraction]:
        return [Fraction(c) for c in self.numerator]

    @property
    def Q(self) -> List[Fraction]:
        return [Fraction(c) for c in self.denominator]

    def mirrored(self) -> "RationalFn":
        """-f(-z), which maps a_n to (-1)^(n+1) a_n."""
        return RationalFn.from_polynomials(
            poly.scale(poly.negate_argument(self.P), -1),
            poly.negate_argument(self.Q),
        )

    def derivative_parts(self) -> Tuple[List[Fraction], List[Fraction]]:
        """(P'Q - PQ', Q^2) so that f' is their quotient."""
        P, Q = self.P, self.Q
        return (poly.sub(poly.mul(poly.derivative(P), Q), poly.mul(P, poly.derivative(Q))),
                poly.mul(Q, Q))

    def __call__(self, z):
        """Evaluate at a complex scalar or numpy array."""
        num = npoly.polyval(z, np.asarray(self.numerator, dtype=float))
        den = npoly.polyval(z, np.asarray(self.denominator, dtype=float))
        if np.any(den == 0):
            raise EvaluationError("evaluation at a pole")
        return num / den

    def to_dict(self) -> Dict[str, Any]:
        return {
            "numerator": list(self.numerator),
            "denominator": list(self.denominator),
            "expression": self.expression(),
        }

    def expression(self) -> str:
        return f"({format_polynomial(self.numerator)})/({format_polynomial(self.denominator)})"


def format_polynomial(coeffs: Sequence[int]) -> str:
    """Human-readable polynomial in z, e.g. "2z - z^2"."""
    terms = []
    for power, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if power == 0:
            body = str(mag)
        else:
            var = "z" if power == 1 else f"z^{power}"
            body = var if mag == 1 else f"{mag}{var}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first_body = terms[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


# --- function literal parser -------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(z)|(\*\*|[-+*/^()·]))")
_NORMALIZE = str.maketrans({"−": "-", "–": "-", "⋅": "·", "×": "*"})
_SUPERSCRIPTS = {"²": "^2", "³": "^3", "⁴": "^4", "⁵": "^5"}

# A rational expression is carried as a (numerator, denominator) pair of polynomials.
_Pair = Tuple[List[Fraction], List[Fraction]]


def _tokenize(text: str) -> List[str]:
    text = text.translate(_NORMALIZE)
    for sup, rep in _SUPERSCRIPTS.items():
        text = text.replace(sup, rep)
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match or match.end() == pos:
            raise FunctionParseError(f"unexpected character at position {pos}: {text[pos:]!r}")
        tok = match.group(1) or match.group(2) or match.group(3)
        tokens.append("^" if tok == "**" else tok)
        pos = match.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return tokens


class _Parser:
    """
    Recursive descent over + - * / ^ with implicit multiplication.

    Juxtaposed or '*'/'·' factors after a '/' join the divisor, so a/b·c and
    a/b(c) both mean a/(b*c). A new '/' starts a new divisor.
    """

    def __init__(self, tokens: List[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise FunctionParseError(f"expected {expected or 'token'}, found {tok!r}")
        self.pos += 1
        return tok

    def parse(self) -> _Pair:
        value = self.expr()
        if self.peek() is not None:
            raise FunctionParseError(f"trailing input at token {self.peek()!r}")
        return value

    def expr(self) -> _Pair:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        num, den = self.term()
        value = (poly.scale(num, sign), den)
        while self.peek() in ("+", "-"):
            op = self.take()
            num, den = self.term()
            if op == "-":
                num = poly.scale(num, -1)
            value = (poly.add(poly.mul(value[0], den), poly.mul(num, value[1])), poly.mul(value[1], den))
        return value

    def term(self) -> _Pair:
        num, den = self.factor()
        dividing = False
        while True:
            tok = self.peek()
            if tok == "/":
                self.take()
                dividing = True
                f_num, f_den = self.factor()
            elif tok in ("*", "·"):
                self.take()
                f_num, f_den = self.factor()
            elif tok is not None and (tok.isdigit() or tok in ("z", "(")):
                f_num, f_den = self.factor()
            else:
                return num, den
            if dividing:
                num, den = poly.mul(num, f_den), poly.mul(den, f_num)
            else:
                num, den = poly.mul(num, f_num), poly.mul(den, f_den)
            if not den:
                raise FunctionParseError("division by zero in literal")

    def factor(self) -> _Pair:
        base = self.primary()
        if self.peek() == "^":
            self.take()
            exp_tok = self.take()
            if not exp_tok.isdigit():
                raise FunctionParseError(f"exponent must be a nonnegative integer, found {exp_tok!r}")
            n = int(exp_tok)
            return poly.power(base[0], n), poly.power(base[1], n)
        return base

    def primary(self) -> _Pair:
        tok = self.take()
        if tok.isdigit():
            return [Fraction(int(tok))], [Fraction(1)]
        if tok == "z":
            return [Fraction(0), Fraction(1)], [Fraction(1)]
        if tok == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if tok == "-":
            num, den = self.factor()
            return poly.scale(num, -1), den
        raise FunctionParseError(f"unexpected token {tok!r}")


def parse_function(text: str) -> RationalFn:
    """
    Parse a literal such as "z(2+z^3)/2(1+z^3)" into canonical form.

    Raises:
        FunctionParseError: malformed text
        NotNormalizedError: the expression is not z + O(z^2)
    """
    if not text or not text.strip():
        raise FunctionParseError("empty function literal")
    num, den = _Parser(_tokenize(text)).parse()
    if not den:
        raise FunctionParseError("division by zero in literal")
    return RationalFn.from_polynomials(num, den)
