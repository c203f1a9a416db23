"""Test boundary traces, numerical margins, SVG output and the geometry report."""
import math
import random
import re
import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.geometry.boundary import boundary_trace, injectivity_collisions, unit_circle_poles
from src.geometry.margins import ctc_margin, kaplan_gap, starlike_margin, u_functional_sq, u_functional_sup
from src.geometry.report import GeometryReporter
from src.geometry.svg import render_svg
from src.reconstruct.catalog import CATALOG, representatives

KOEBE = CATALOG["friedman_07"].fn


def finite_part(trace, limit=50.0):
    mask = np.abs(trace.w) < limit
    return trace.theta[mask], trace.w[mask]


def test_unit_circle_poles():
    """Test pole angles on the unit circle."""
    assert unit_circle_poles(CATALOG["friedman_01"].fn) == ()
    assert unit_circle_poles(KOEBE) == pytest.approx((0.0,))
    poles = unit_circle_poles(CATALOG["f6_minus"].fn)
    assert poles == pytest.approx((math.pi / 3, 5 * math.pi / 3))


def test_boundary_trace_validation():
    """Test argument checks."""
    with pytest.raises(ValueError):
        boundary_trace(KOEBE, 1.5, 64)
    with pytest.raises(ValueError):
        boundary_trace(KOEBE, 1.0, 8)


def test_f4_boundary_is_a_slit_line():
    """Test Re f = -1/4 on the circle and the slit endpoints."""
    trace = boundary_trace(CATALOG["f4_plus"].fn, 1.0, 3000)
    theta, w = finite_part(trace)
    assert np.max(np.abs(w.real + 0.25)) <= 1e-9
    assert np.min(np.abs(w.imag)) == pytest.approx(math.sqrt(3) / 4, abs=1e-9)


def test_f5_boundary_is_a_parabola():
    """Test x + 2y^2 + 3/8 = 0 on the boundary."""
    trace = boundary_trace(CATALOG["f5_minus"].fn, 1.0, 2048)
    _, w = finite_part(trace)
    residual = w.real + 2 * w.imag ** 2 + 0.375
    assert np.max(np.abs(residual)) < 1e-9


def test_f6_boundary_imaginary_part():
    """Test 2 Im f = sin(theta) on the circle."""
    trace = boundary_trace(CATALOG["f6_minus"].fn, 1.0, 2048)
    theta, w = finite_part(trace)
    assert np.max(np.abs(2 * w.imag - np.sin(theta))) <= 1e-9
    assert len(trace.poles) == 2


def test_segments_close_smooth_traces():
    """Test that a pole-free trace is one closed polyline."""
    trace = boundary_trace(CATALOG["f1_plus"].fn, 1.0, 64)
    segments = trace.segments()
    assert len(segments) == 1
    assert len(segments[0]) == 65
    assert segments[0][0] == segments[0][-1]

    trace = boundary_trace(CATALOG["f4_plus"].fn, 1.0, 256)
    assert len(trace.segments(clip_radius=6.0)) == 2


def test_injectivity_on_univalent_boundaries():
    """Test that sampled boundaries of univalent functions do not collide."""
    assert injectivity_collisions(CATALOG["friedman_01"].fn, n=2000) == []
    assert injectivity_collisions(CATALOG["f1_plus"].fn, n=2000, avoid=(math.pi,)) == []


def test_starlike_margin():
    """Test min Re[z f'/f] on circles."""
    assert starlike_margin(CATALOG["friedman_01"].fn, 0.5, 64) == pytest.approx(1.0)
    assert starlike_margin(KOEBE, 0.9, 512) > 0
    assert starlike_margin(CATALOG["f1_plus"].fn, 0.999, 1024) > 0
    with pytest.raises(ValueError):
        starlike_margin(KOEBE, 1.0, 64)


def test_non_starlike_representatives():
    """Test that f2..f5 have negative starlike margins near the circle."""
    for name in ("f2_minus", "f3_minus", "f4_plus", "f5_minus"):
        assert starlike_margin(CATALOG[name].fn, 0.999, 4096) < 0, name


def test_ctc_margins():
    """Test close-to-convexity witnesses against the Koebe function."""
    assert ctc_margin(CATALOG["f2_minus"].fn, KOEBE, 0.999, 4096) >= 0.25 - 1e-6
    assert ctc_margin(CATALOG["f5_minus"].fn, KOEBE, 0.999, 4096) >= 0.5 - 1e-6


def test_kaplan_gap():
    """Test the Kaplan integral on a full period and on the f6 arc."""
    assert kaplan_gap(KOEBE, 0.9, 0.0, 2 * math.pi) == pytest.approx(2 * math.pi, abs=1e-6)
    for alias, entry in representatives():
        assert kaplan_gap(entry.fn, 0.9, 0.0, 2 * math.pi) == pytest.approx(2 * math.pi, abs=1e-6), alias

    gap = kaplan_gap(CATALOG["f6_minus"].fn, 0.99999, math.pi / 3 + 0.05, 5 * math.pi / 3 - 0.05)
    assert gap < -math.pi
    with pytest.raises(ValueError):
        kaplan_gap(KOEBE, 0.9, 1.0, 0.5)


def test_kaplan_gap_close_to_convex_f1():
    """Test that f1 keeps the Kaplan integral above -pi on random arcs."""
    rng = random.Random(7)
    f1 = CATALOG["f1_plus"].fn
    gaps = []
    for _ in range(200):
        theta1 = rng.uniform(0.0, 2 * math.pi)
        theta2 = theta1 + rng.uniform(1e-3, 2 * math.pi - 1e-3)
        gaps.append(kaplan_gap(f1, 0.99, theta1, theta2))
    assert min(gaps) > -math.pi


def test_u_functional():
    """Test |z^2 f'/f^2 - 1|^2 at known points."""
    assert u_functional_sq(KOEBE, 0.5) == pytest.approx(0.0625)
    assert u_functional_sq(KOEBE, (0.5, 0.0)) == pytest.approx(0.0625)

    z = complex(-1.0, math.sqrt(7.0)) / math.sqrt(8.0)
    assert u_functional_sq(CATALOG["f6_plus"].fn, z) == pytest.approx(5 + 10 * math.sqrt(2) / 3)

    assert u_functional_sup(CATALOG["friedman_01"].fn, 0.9, 64) == pytest.approx(0.0)


def test_render_svg(tmp_path):
    """Test SVG structure for a trace broken by poles."""
    trace = boundary_trace(CATALOG["f4_plus"].fn, 1.0, 256, label="f4")
    path = render_svg([trace], tmp_path / "f4.svg")
    text = path.read_text(encoding="utf-8")
    assert text.startswith('<?xml version="1.0"')
    assert 'viewBox="' in text
    assert '<g id="f4"' in text
    assert text.count("<polyline") == 2
    assert text.endswith("</svg>\n")

    with pytest.raises(ValueError):
        render_svg([], tmp_path / "empty.svg")


def test_geometry_report():
    """Test the six-row report and its renderings."""
    reporter = GeometryReporter(samples=512)
    report = reporter.build()
    assert [row.alias for row in report.rows] == ["f1", "f2", "f3", "f4", "f5", "f6"]

    rows = {row.alias: row for row in report.rows}
    assert rows["f1"].starlike
    assert rows["f2"].ctc_kind == "witness"
    assert rows["f2"].ctc_value >= 0.25 - 1e-6
    assert rows["f6"].ctc_kind == "kaplan_violation"
    assert rows["f6"].ctc_value < -math.pi
    assert report.u_spot_value == pytest.approx(5 + 10 * math.sqrt(2) / 3)

    data = reporter.to_dict(report)
    assert len(data["rows"]) == 6
    assert data["rows"][0]["starlike_margin"].count(".") == 1

    markdown = reporter.to_markdown(report)
    assert markdown.startswith("# Geometry report")
    assert "| f4 | f4_plus |" in markdown
    assert "\\|y\\| >= sqrt(3)/4" in markdown

    table = [line for line in markdown.splitlines() if line.startswith("|")]
    assert len(table) == 8
    widths = {len(re.split(r"(?<!\\)\|", line)) for line in table}
    assert widths == {10}
