"""Per-function geometry table: starlikeness, close-to-convexity, class U and boundary shape."""
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src import config
from src.geometry.boundary import injectivity_collisions, unit_circle_poles
from src.geometry.margins import ctc_margin, kaplan_gap, starlike_margin, u_functional_sq, u_functional_sup
from src.observability.logger import LoggerMixin
from src.observability.tracer import trace_function
from src.reconstruct.catalog import CATALOG, representatives
from src.reconstruct.rational_fn import RationalFn

KAPLAN_DELTA = 0.05
KAPLAN_RADIUS = 0.99999

# Starlike comparison functions g for Re[z f'/g] > 0.
CTC_WITNESS: Dict[str, str] = {
    "f2_minus": "friedman_07",
    "f2_plus": "friedman_06",
    "f3_minus": "friedman_05",
    "f3_plus": "friedman_04",
    "f4_plus": "friedman_05",
    "f4_minus": "friedman_05",
    "f5_minus": "friedman_07",
    "f5_plus": "friedman_06",
}

# Arcs between the boundary poles on which the Kaplan integral drops below -pi.
KAPLAN_ARCS: Dict[str, Tuple[float, float]] = {
    "f6_minus": (math.pi / 3 + KAPLAN_DELTA, 5 * math.pi / 3 - KAPLAN_DELTA),
    "f6_plus": (4 * math.pi / 3 + KAPLAN_DELTA, 8 * math.pi / 3 - KAPLAN_DELTA),
}

BOUNDARY_NOTES: Dict[str, str] = {
    "f1_plus": "cardioid",
    "f2_minus": "unbounded, boundary through infinity at z=1",
    "f3_minus": "unbounded, boundary through infinity at z=1 and z=-1",
    "f4_plus": "plane slit along -1/4+iy, |y| >= sqrt(3)/4",
    "f5_minus": "parabola x+2y^2+3/8=0 (concave, opening angle 2pi; not checked)",
    "f6_minus": "2 Im w = sin(theta) on the circle, injective except at e^(+-i pi/3)",
}

# The rotation z(2+z+z^2)/2(1+z+z^2) leaves class U at this point.
U_SPOT_ID = "f6_plus"
U_SPOT_POINT = complex(-1.0, math.sqrt(7.0)) / math.sqrt(8.0)


@dataclass
class GeometryRow:
    """One function's numerical witnesses."""
    alias: str
    id: str
    expression: str
    starlike_margin: float
    ctc_kind: str
    ctc_detail: Optional[str]
    ctc_value: Optional[float]
    u_sup: float
    boundary: str
    poles: Tuple[float, ...] = ()
    boundary_collisions: Optional[int] = None

    @property
    def starlike(self) -> bool:
        return self.starlike_margin > 0

    @property
    def in_class_u(self) -> bool:
        return self.u_sup < 1


@dataclass
class GeometryReport:
    radius: float
    samples: int
    rows: List[GeometryRow] = field(default_factory=list)
    u_spot_value: Optional[float] = None


def _f(x: Optional[float], digits: int) -> Optional[str]:
    return None if x is None else f"{x:.{digits}f}"


def _md_row(cells: Sequence[Any]) -> str:
    """One Markdown table row; pipes inside cells are escaped."""
    return "| " + " | ".join(str(c).replace("|", "\\|") for c in cells) + " |"


class GeometryReporter(LoggerMixin):
    """
    Builds the geometry table for catalog functions.

    Usage:
        reporter = GeometryReporter()
        report = reporter.build()
        markdown = reporter.to_markdown(report)
    """

    def __init__(
        self,
        samples: int = config.GEOMETRY_DEFAULTS["samples"],
        radius: float = config.GEOMETRY_DEFAULTS["radius"],
        digits: int = config.GEOMETRY_DEFAULTS["float_digits"],
        correlation_id: Optional[str] = None,
    ):
        super().__init__(correlation_id=correlation_id)
        self.samples = samples
        self.radius = radius
        self.digits = digits

    def analyse(self, alias: str, entry_id: str, R: RationalFn) -> GeometryRow:
        """Compute one row; `entry_id` selects the witness pair or Kaplan arc, if any."""
        margin = starlike_margin(R, self.radius, self.samples)
        if entry_id in KAPLAN_ARCS:
            theta1, theta2 = KAPLAN_ARCS[entry_id]
            gap = kaplan_gap(R, KAPLAN_RADIUS, theta1, theta2)
            kind = "kaplan_violation" if gap < -math.pi else "kaplan_holds"
            ctc = (kind, f"arc [{theta1:.{self.digits}f}, {theta2:.{self.digits}f}] at r={KAPLAN_RADIUS}", gap)
        elif entry_id in CTC_WITNESS:
            g_id = CTC_WITNESS[entry_id]
            ctc = ("witness", g_id, ctc_margin(R, CATALOG[g_id].fn, self.radius, self.samples))
        elif margin > 0:
            ctc = ("starlike", None, None)
        else:
            ctc = ("unknown", None, None)

        collisions = None
        poles = unit_circle_poles(R)
        if entry_id in KAPLAN_ARCS:
            collisions = len(injectivity_collisions(R, avoid=poles))

        row = GeometryRow(
            alias=alias,
            id=entry_id,
            expression=R.expression(),
            starlike_margin=margin,
            ctc_kind=ctc[0],
            ctc_detail=ctc[1],
            ctc_value=ctc[2],
            u_sup=u_functional_sup(R, self.radius, self.samples),
            boundary=BOUNDARY_NOTES.get(entry_id, f"{len(poles)} boundary pole(s)"),
            poles=poles,
            boundary_collisions=collisions,
        )
        self.logger.info("row_computed", id=entry_id, starlike=row.starlike, ctc=row.ctc_kind)
        return row

    @trace_function("geometry_report")
    def build(self, functions: Optional[Sequence[Tuple[str, str, RationalFn]]] = None) -> GeometryReport:
        """
        Build the table for (alias, id, function) triples; defaults to the six representatives.

        Returns:
            GeometryReport including the class-U spot check
        """
        if functions is None:
            functions = [(alias, entry.id, entry.fn) for alias, entry in representatives()]
        report = GeometryReport(self.radius, self.samples)
        for alias, entry_id, R in functions:
            report.rows.append(self.analyse(alias, entry_id, R))
        report.u_spot_value = u_functional_sq(CATALOG[U_SPOT_ID].fn, U_SPOT_POINT)
        self.logger.info("phase_completed", phase="geometry_report", rows=len(report.rows))
        return report

    def to_dict(self, report: GeometryReport) -> Dict[str, Any]:
        d = self.digits
        return {
            "radius": report.radius,
            "samples": report.samples,
            "rows": [
                {
                    "alias": row.alias,
                    "id": row.id,
                    "expression": row.expression,
                    "starlike_margin": _f(row.starlike_margin, d),
                    "starlike": row.starlike,
                    "close_to_convex": {"kind": row.ctc_kind, "detail": row.ctc_detail,
                                        "value": _f(row.ctc_value, d)},
                    "u_sup": _f(row.u_sup, d),
                    "class_u": row.in_class_u,
                    "boundary": row.boundary,
                    "poles": [_f(p, d) for p in row.poles],
                    "boundary_collisions": row.boundary_collisions,
                }
                for row in report.rows
            ],
            "u_spot_check": {
                "id": U_SPOT_ID,
                "z": [_f(U_SPOT_POINT.real, d), _f(U_SPOT_POINT.imag, d)],
                "value": _f(report.u_spot_value, d),
            },
        }

    def to_markdown(self, report: GeometryReport) -> str:
        d = self.digits
        lines = [
            "# Geometry report",
            "",
            f"Samples: {report.samples} on |z| = {report.radius}.",
            "",
            "| function | id | starlike margin | starlike | close-to-convex | sup U-functional | class U | boundary |",
            "|---|---|---|---|---|---|---|---|",
        ]
        for row in report.rows:
            if row.ctc_kind == "witness":
                ctc = f"g = {row.ctc_detail}, margin {_f(row.ctc_value, d)}"
            elif row.ctc_kind.startswith("kaplan"):
                ctc = f"{row.ctc_kind.replace('_', ' ')}: gap {_f(row.ctc_value, d)} on {row.ctc_detail}"
            else:
                ctc = row.ctc_kind
            lines.append(_md_row([
                row.alias, row.id, _f(row.starlike_margin, d), "yes" if row.starlike else "no",
                ctc, _f(row.u_sup, d), "yes" if row.in_class_u else "no", row.boundary,
            ]))
        lines += ["", "## Notes", ""]
        lines.append(f"- |z^2 f'/f^2 - 1|^2 for {U_SPOT_ID} at z = (-1+sqrt(7) i)/sqrt(8): "
                     f"{_f(report.u_spot_value, d)} (5 + 10 sqrt(2)/3 = {_f(5 + 10 * math.sqrt(2) / 3, d)})")
        for row in report.rows:
            if row.boundary_collisions is not None:
                lines.append(f"- {row.id}: {row.boundary_collisions} boundary collisions among sampled pairs "
                             "away from the poles")
        return "\n".join(lines) + "\n"
