"""Test node classification, the exhaustive search and its determinism."""
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest
from pydantic import ValidationError

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.series import TaylorPrefix, taylor_of_rational
from src.reconstruct.catalog import CATALOG, INTEGER_LATTICE, REFERENCE
from src.search.config import SearchConfig
from src.search.engine import (
    PHASE_COMPLETION,
    PruneReason,
    SubtreeResult,
    VerdictKind,
    child_values,
    classify_prefix,
    explore_node,
    koebe_sign,
)
from src.search.orchestrator import candidate_ids, search, trace_witnesses


@pytest.fixture(scope="module")
def integer_outcome():
    return search(SearchConfig(lattice=1), jobs=1)


@pytest.fixture(scope="module")
def half_integer_outcome():
    return search(SearchConfig(lattice=2), jobs=1)


def prefix(*values):
    return TaylorPrefix.of(values)


def test_config_validation():
    """Test SearchConfig parsing and bounds."""
    cfg = SearchConfig(lattice=2, grunsky_orders=[4, 2, 2], prawitz_alphas=["2/3", 1])
    assert cfg.grunsky_orders == [2, 4]
    assert cfg.prawitz_alphas == [F(2, 3), F(1)]
    assert cfg.grid.r0 == F(1, 2)
    assert cfg.model_dump(mode="json")["prawitz_alphas"] == ["2/3", "1"]
    with pytest.raises(ValidationError):
        SearchConfig(lattice=0)
    with pytest.raises(ValidationError):
        SearchConfig(lattice=1, max_depth=3)
    with pytest.raises(ValidationError):
        SearchConfig(lattice=1, prawitz_alphas=["-1"])


def test_root_children():
    """Test that the root enumerates a_2 >= 0 only."""
    _, points = child_values(TaylorPrefix(), SearchConfig(lattice=1))
    assert points == [F(0), F(1), F(2)]
    _, points = child_values(TaylorPrefix(), SearchConfig(lattice=2))
    assert points == [F(k, 2) for k in range(5)]


def test_koebe_sign():
    """Test detection of Koebe prefixes."""
    assert koebe_sign(prefix(2, 3, 4)) == 1
    assert koebe_sign(prefix(-2, 3, -4)) == -1
    assert koebe_sign(prefix(2, 3, 3)) is None


def test_classify_examples():
    """Test verdicts of hand-checked prefixes."""
    cfg = SearchConfig(lattice=2)

    verdict = classify_prefix(prefix(2, 3), cfg)
    assert verdict.kind is VerdictKind.TERMINATED
    assert verdict.detail == "koebe"

    verdict = classify_prefix(prefix(1, 2, 3, 5), cfg)
    assert verdict.reason is PruneReason.DE_BRANGES
    assert (verdict.order, verdict.witness) == (5, F(5))

    verdict = classify_prefix(prefix(F(3, 2), F(3, 2), 1, 0), cfg)
    assert verdict.reason is PruneReason.GRUNSKY_PSD
    assert verdict.order == 2
    assert verdict.witness < 0

    verdict = classify_prefix(prefix(F(1, 2), F(1, 2), F(1, 2), 0, 0, 0), cfg)
    assert verdict.reason is PruneReason.GRUNSKY_PSD
    assert (verdict.order, verdict.detail, verdict.witness) == (3, "gamma_33", F(-31, 1024))

    verdict = classify_prefix(prefix(1, F(1, 2), 0, F(-1, 2), -1, -1), cfg)
    assert (verdict.order, verdict.detail, verdict.witness) == (3, "det", F(-11, 256))

    verdict = classify_prefix(prefix(0, 0), cfg)
    assert verdict.kind is VerdictKind.CONTINUE


def test_classify_prawitz():
    """Test the Prawitz prune of a function whose Grunsky matrices stay PSD."""
    cfg = SearchConfig(lattice=2)
    g = taylor_of_rational(REFERENCE["g_prawitz"], 16)
    verdict = classify_prefix(g, cfg)
    assert verdict.reason is PruneReason.PRAWITZ
    assert verdict.alpha == F(2, 3)
    assert verdict.order == 15
    assert verdict.witness == F(-353917, 2 ** 6 * 3 ** 13)

    # Below the first Prawitz depth the same branch survives.
    assert classify_prefix(g.truncate(15), cfg).kind is not VerdictKind.PRUNED


def test_catalog_prefixes_never_pruned():
    """Test soundness: no catalog prefix of depth 4..18 is pruned."""
    cfg = SearchConfig(lattice=2)
    for entry in CATALOG.values():
        a = taylor_of_rational(entry.fn, 18)
        for depth in range(4, 19):
            verdict = classify_prefix(a.truncate(depth), cfg)
            assert verdict.kind is not VerdictKind.PRUNED, (entry.id, depth, verdict)


def test_explore_node_records():
    """Test that a pruned node yields exactly one record and no children."""
    cfg = SearchConfig(lattice=2)
    result = SubtreeResult()
    assert explore_node(prefix(1, 2, 3, 5), cfg, result) == []
    assert len(result.records) == 1
    assert result.stats.prunes == {"de_branges": 1}
    assert result.stats.nodes_visited == 1


def test_integer_lattice_search(integer_outcome):
    """Test that the integer lattice yields exactly the nine integer functions."""
    assert integer_outcome.complete
    assert not integer_outcome.unresolved
    ids = candidate_ids(integer_outcome)
    expected = {key for key, e in CATALOG.items() if e.provenance == INTEGER_LATTICE}
    assert len(ids) == 9
    assert set(ids) == expected


def test_half_integer_lattice_search(half_integer_outcome):
    """Test that the half-integer lattice yields all 21 catalog functions."""
    outcome = half_integer_outcome
    assert outcome.complete
    assert not outcome.unresolved
    ids = candidate_ids(outcome)
    assert len(ids) == 21
    assert set(ids) == set(CATALOG)
    assert outcome.to_dict()["candidate_count"] == 21


def test_candidates_sorted_by_prefix(half_integer_outcome):
    """Test output order."""
    keys = [taylor_of_rational(c.fn, 18).coeffs for c in half_integer_outcome.candidates]
    assert keys == sorted(keys)


def test_half_integer_trace_witnesses(half_integer_outcome):
    """Test that the trace carries the expected exact prune witnesses."""
    witnesses = set(trace_witnesses(half_integer_outcome))
    expected = [
        F(-215, 8192),
        F(-495, 8192),
        F(-1, 32),
        F(-11, 256),
        F(-395595, 2 ** 25),
        F(-523697, 3 * 2 ** 25),
        F(-31, 1024),
        F(-353917, 2 ** 6 * 3 ** 13),
    ]
    for value in expected:
        assert value in witnesses, value


def test_prawitz_prune_happens_in_completion(half_integer_outcome):
    """Test that Prawitz prunes occur while completing terminated branches."""
    records = [r for r in half_integer_outcome.trace if r.verdict.reason is PruneReason.PRAWITZ]
    assert records
    assert any(r.phase == PHASE_COMPLETION for r in records)


def test_search_is_deterministic_across_jobs(integer_outcome):
    """Test identical output for one and two workers."""
    parallel = search(SearchConfig(lattice=1), jobs=2)
    assert parallel.to_dict() == integer_outcome.to_dict()
    assert [r.to_dict() for r in parallel.trace] == [r.to_dict() for r in integer_outcome.trace]


def test_shallow_search_is_incomplete():
    """Test that hitting the depth cap is reported."""
    outcome = search(SearchConfig(lattice=2, max_depth=6), jobs=1)
    assert not outcome.complete
    assert outcome.stats.depth_exhausted > 0
