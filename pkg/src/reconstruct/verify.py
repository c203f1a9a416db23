"""Lattice membership and necessary univalence conditions for a rational candidate."""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src import config
from src.core.criteria import area_sum, debranges_violation, prawitz_deficit
from src.core.exact import Lattice, RatLike, rat_to_json, to_rat
from src.core.grunsky import PsdWitness, grunsky_coefficients, grunsky_matrix_from_table, is_psd
from src.core.series import TaylorPrefix, reciprocal_tail, taylor_of_rational
from src.observability.tracer import trace_function
from src.reconstruct.rational_fn import RationalFn
from src.reconstruct.roots import RootCheck, derivative_numerator, has_zero_in_disk


def first_lattice_failure(a: TaylorPrefix, lat: Lattice, K: int) -> Optional[Tuple[int, Fraction]]:
    """First (n, a_n) with 2 <= n <= K and a_n outside the lattice."""
    for n in range(2, K + 1):
        value = a.a(n)
        if not lat.contains(value):
            return n, value
    return None


def verify_membership(R: RationalFn, lat: Lattice, K: int) -> bool:
    """True iff a_2..a_K of R all lie in the lattice."""
    return first_lattice_failure(taylor_of_rational(R, K), lat, K) is None


@dataclass
class VerificationReport:
    """
    Necessary conditions checked on one candidate.

    Every field is exact except the derivative root check, which is
    numeric with an exact fallback near the unit circle.
    """
    function: RationalFn
    lattice: int
    K: int
    n_cert: int
    M: int
    lattice_ok: bool
    lattice_failure: Optional[Tuple[int, Fraction]]
    debranges_ok: bool
    debranges_failure: Optional[Tuple[int, Fraction]]
    analytic_ok: bool
    denominator_check: RootCheck
    area_ok: bool
    area_sum: Fraction
    grunsky_ok: bool
    grunsky_failure: Optional[Tuple[int, PsdWitness]]
    prawitz_ok: bool
    prawitz_deficits: Dict[Fraction, Fraction] = field(default_factory=dict)
    derivative_ok: bool = True
    derivative_check: Optional[RootCheck] = None

    @property
    def passed(self) -> bool:
        return all((self.lattice_ok, self.debranges_ok, self.analytic_ok, self.area_ok,
                    self.grunsky_ok, self.prawitz_ok, self.derivative_ok))

    def failures(self) -> List[str]:
        """Names of the failed checks, in report order."""
        checks = [("lattice", self.lattice_ok), ("debranges", self.debranges_ok),
                  ("analytic", self.analytic_ok), ("area", self.area_ok),
                  ("grunsky", self.grunsky_ok), ("prawitz", self.prawitz_ok),
                  ("derivative", self.derivative_ok)]
        return [name for name, ok in checks if not ok]

    def to_dict(self) -> Dict[str, Any]:
        def pair(failure):
            return None if failure is None else {"n": failure[0], "value": rat_to_json(failure[1])}

        grunsky_failure = None
        if self.grunsky_failure is not None:
            order, witness = self.grunsky_failure
            grunsky_failure = {
                "order": order,
                "kind": witness.kind,
                "indices": list(witness.indices),
                "witness": rat_to_json(witness.value),
            }
        return {
            "function": self.function.to_dict(),
            "lattice": self.lattice,
            "K": self.K,
            "n_cert": self.n_cert,
            "M": self.M,
            "passed": self.passed,
            "lattice_ok": self.lattice_ok,
            "lattice_failure": pair(self.lattice_failure),
            "debranges_ok": self.debranges_ok,
            "debranges_failure": pair(self.debranges_failure),
            "analytic_ok": self.analytic_ok,
            "denominator_check": self.denominator_check.to_dict(),
            "area_ok": self.area_ok,
            "area_sum": rat_to_json(self.area_sum),
            "grunsky_ok": self.grunsky_ok,
            "grunsky_failure": grunsky_failure,
            "prawitz_ok": self.prawitz_ok,
            "prawitz_deficits": {rat_to_json(k): rat_to_json(v) for k, v in self.prawitz_deficits.items()},
            "derivative_ok": self.derivative_ok,
            "derivative_check": None if self.derivative_check is None else self.derivative_check.to_dict(),
        }


@trace_function("verify_candidate")
def verify_candidate(
    R: RationalFn,
    lat: Lattice,
    K: int = config.VERIFY_DEFAULTS["membership_depth"],
    n_cert: int = config.VERIFY_DEFAULTS["n_cert"],
    alphas: Sequence[RatLike] = tuple(config.VERIFY_DEFAULTS["prawitz_alphas"]),
    M: int = config.VERIFY_DEFAULTS["prawitz_depth"],
    root_margin: float = config.VERIFY_DEFAULTS["root_margin"],
) -> VerificationReport:
    """
    Check lattice membership and the necessary conditions for univalence.

    Args:
        R: Normalized candidate
        lat: Coefficient lattice
        K: Membership and area depth
        n_cert: Grunsky matrices of order 1..n_cert must be PSD
        alphas: Prawitz exponents
        M: Prawitz truncation order
        root_margin: Unit-circle margin for the derivative zero check

    Returns:
        VerificationReport; `passed` is the conjunction of all checks
    """
    depth = max(K + 2, 2 * n_cert + 1, M + 1)
    a = taylor_of_rational(R, depth)

    lattice_failure = first_lattice_failure(a, lat, K)
    debranges_failure = debranges_violation(a.truncate(K), strict=False)
    denominator_check = has_zero_in_disk(R.Q, margin=root_margin)

    total = area_sum(reciprocal_tail(a.truncate(K + 2)))

    grunsky_failure = None
    if n_cert >= 1:
        table = grunsky_coefficients(a, n_cert)
        for n in range(1, n_cert + 1):
            ok, witness = is_psd(grunsky_matrix_from_table(table, n))
            if not ok:
                grunsky_failure = (n, witness)
                break

    deficits = {to_rat(alpha): prawitz_deficit(a, alpha, M) for alpha in alphas}
    derivative_check = has_zero_in_disk(derivative_numerator(R), margin=root_margin)

    return VerificationReport(
        function=R,
        lattice=lat.denom,
        K=K,
        n_cert=n_cert,
        M=M,
        lattice_ok=lattice_failure is None,
        lattice_failure=lattice_failure,
        debranges_ok=debranges_failure is None,
        debranges_failure=debranges_failure,
        analytic_ok=not denominator_check.inside,
        denominator_check=denominator_check,
        area_ok=total <= 1,
        area_sum=total,
        grunsky_ok=grunsky_failure is None,
        grunsky_failure=grunsky_failure,
        prawitz_ok=all(d >= 0 for d in deficits.values()),
        prawitz_deficits=deficits,
        derivative_ok=not derivative_check.inside,
        derivative_check=derivative_check,
    )
