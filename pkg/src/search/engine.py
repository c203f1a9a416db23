"""Node classification, depth-first exploration and completion of terminated branches.

Everything here is pure and picklable so that subtrees can run in worker
processes; logging happens in the orchestrator.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from src.core.criteria import (
    IntervalBound,
    debranges_violation,
    next_interval,
    prawitz_deficit,
    root_interval,
    termination_slack,
)
from src.core.exact import lattice_points_in_interval, rat_to_json, rats_to_json
from src.core.grunsky import grunsky_matrix, is_psd
from src.core.series import TaylorPrefix, reciprocal_tail
from src.search.config import SearchConfig

PHASE_SEARCH = "search"
PHASE_COMPLETION = "completion"


class VerdictKind(str, Enum):
    CONTINUE = "continue"
    TERMINATED = "terminated"
    PRUNED = "pruned"


class PruneReason(str, Enum):
    AREA_INTERVAL = "area_interval"
    DE_BRANGES = "de_branges"
    GRUNSKY_PSD = "grunsky_psd"
    PRAWITZ = "prawitz"
    DEPTH_EXHAUSTED = "depth_exhausted"


@dataclass(frozen=True)
class NodeVerdict:
    """
    Outcome of classifying one prefix.

    Attributes:
        kind: continue, terminated or pruned
        reason: Prune reason (pruned only)
        witness: Exact value certifying the prune: a negative minor, a
            negative deficit, the offending a_n, the interval's squared
            radius, or the termination slack for depth_exhausted
        order: Grunsky order, Prawitz truncation M, or n of the offending a_n
        detail: Witness description ("det", "gamma_33", "minor23") or "koebe"
        alpha: Prawitz exponent
    """
    kind: VerdictKind
    reason: Optional[PruneReason] = None
    witness: Optional[Fraction] = None
    order: Optional[int] = None
    detail: Optional[str] = None
    alpha: Optional[Fraction] = None

    @classmethod
    def pruned(cls, reason: PruneReason, witness: Fraction, **kwargs) -> "NodeVerdict":
        return cls(VerdictKind.PRUNED, reason, Fraction(witness), **kwargs)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"verdict": self.kind.value}
        if self.reason is not None:
            out["reason"] = self.reason.value
        if self.witness is not None:
            out["witness"] = rat_to_json(self.witness)
        if self.order is not None:
            out["order"] = self.order
        if self.detail is not None:
            out["detail"] = self.detail
        if self.alpha is not None:
            out["alpha"] = rat_to_json(self.alpha)
        return out


CONTINUE = NodeVerdict(VerdictKind.CONTINUE)


@dataclass(frozen=True)
class TraceRecord:
    """One non-continue verdict, as streamed to the JSON-lines trace."""
    prefix: Tuple[Fraction, ...]
    verdict: NodeVerdict
    phase: str = PHASE_SEARCH

    def to_dict(self) -> Dict[str, Any]:
        out = {"prefix": rats_to_json(self.prefix), "phase": self.phase}
        out.update(self.verdict.to_dict())
        return out


@dataclass(frozen=True)
class TerminatedBranch:
    """
    A branch that passed the termination test and survived completion.

    Attributes:
        prefix: Completed prefix of depth max_depth
        termination_depth: Depth at which the branch became unique
        detail: "koebe" for the closed-form off-ramp
    """
    prefix: TaylorPrefix
    termination_depth: int
    detail: Optional[str] = None


@dataclass
class SearchStats:
    """Deterministic counters of one search or subtree."""
    nodes_visited: int = 0
    completion_steps: int = 0
    terminated: int = 0
    prunes: Dict[str, int] = field(default_factory=dict)
    completion_prunes: Dict[str, int] = field(default_factory=dict)

    def count_prune(self, reason: PruneReason, phase: str) -> None:
        target = self.prunes if phase == PHASE_SEARCH else self.completion_prunes
        target[reason.value] = target.get(reason.value, 0) + 1

    def merge(self, other: "SearchStats") -> None:
        self.nodes_visited += other.nodes_visited
        self.completion_steps += other.completion_steps
        self.terminated += other.terminated
        for mine, theirs in ((self.prunes, other.prunes), (self.completion_prunes, other.completion_prunes)):
            for key, value in theirs.items():
                mine[key] = mine.get(key, 0) + value

    @property
    def depth_exhausted(self) -> int:
        return self.prunes.get(PruneReason.DEPTH_EXHAUSTED.value, 0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "nodes_visited": self.nodes_visited,
            "completion_steps": self.completion_steps,
            "terminated": self.terminated,
            "prunes": dict(sorted(self.prunes.items())),
            "completion_prunes": dict(sorted(self.completion_prunes.items())),
        }


@dataclass
class SubtreeResult:
    """Records, terminated branches and counters of one explored subtree."""
    records: List[TraceRecord] = field(default_factory=list)
    branches: List[TerminatedBranch] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)

    def record(self, a: TaylorPrefix, verdict: NodeVerdict, phase: str = PHASE_SEARCH) -> None:
        self.records.append(TraceRecord(a.coeffs, verdict, phase))
        if verdict.kind is VerdictKind.PRUNED:
            self.stats.count_prune(verdict.reason, phase)
        elif verdict.kind is VerdictKind.TERMINATED:
            self.stats.terminated += 1

    def extend(self, other: "SubtreeResult") -> None:
        self.records.extend(other.records)
        self.branches.extend(other.branches)
        self.stats.merge(other.stats)


def koebe_sign(a: TaylorPrefix) -> Optional[int]:
    """+1 for a prefix of z/(1-z)^2, -1 for z/(1+z)^2, else None."""
    if a.depth < 2:
        return None
    for sign in (1, -1):
        if all(a.a(n) == n * sign ** (n + 1) for n in range(2, a.depth + 1)):
            return sign
    return None


def classify_prefix(a: TaylorPrefix, cfg: SearchConfig, incremental: bool = False) -> NodeVerdict:
    """
    Apply the pruning criteria to one prefix.

    Order: Koebe off-ramp, de Branges, Grunsky PSD by ascending order,
    Prawitz by configured exponent, then the termination test.

    Args:
        a: Prefix with coefficients in the lattice
        cfg: Search configuration
        incremental: Test each Grunsky order only at depth 2n+1, where its
            matrix first becomes available. Valid when every ancestor was
            classified.

    Returns:
        NodeVerdict
    """
    N = a.depth
    if koebe_sign(a) is not None:
        return NodeVerdict(VerdictKind.TERMINATED, detail="koebe")

    violation = debranges_violation(a, cfg.strict_debranges)
    if violation is not None:
        n, value = violation
        return NodeVerdict.pruned(PruneReason.DE_BRANGES, value, order=n)

    for n in cfg.grunsky_orders:
        if N < 2 * n + 1 or (incremental and N != 2 * n + 1):
            continue
        ok, witness = is_psd(grunsky_matrix(a, n))
        if not ok:
            return NodeVerdict.pruned(PruneReason.GRUNSKY_PSD, witness.value, order=n, detail=witness.describe())

    if N >= cfg.prawitz_from_depth:
        M = N - 1
        for alpha in cfg.prawitz_alphas:
            deficit = prawitz_deficit(a, alpha, M)
            if deficit < 0:
                return NodeVerdict.pruned(PruneReason.PRAWITZ, deficit, order=M, alpha=alpha)

    if termination_slack(reciprocal_tail(a), N, cfg.grid.r0) < 0:
        return NodeVerdict(VerdictKind.TERMINATED)
    return CONTINUE


def child_values(a: TaylorPrefix, cfg: SearchConfig) -> Tuple[IntervalBound, List[Fraction]]:
    """Admissible interval for the next coefficient and its lattice points (a_2 >= 0 at the root)."""
    if a.depth == 1:
        bound = root_interval()
        points = [x for x in lattice_points_in_interval(bound.center, bound.radius_sq, cfg.grid) if x >= 0]
        return bound, points
    bound = next_interval(a, reciprocal_tail(a))
    return bound, lattice_points_in_interval(bound.center, bound.radius_sq, cfg.grid)


def complete_branch(a: TaylorPrefix, verdict: NodeVerdict, cfg: SearchConfig,
                    result: SubtreeResult) -> Optional[TaylorPrefix]:
    """
    Follow the unique continuation of a terminated prefix up to max_depth.

    Each appended coefficient is classified again; prunes and empty
    intervals are recorded with phase "completion".

    Returns:
        The completed prefix, or None when the branch dies
    """
    if verdict.detail == "koebe":
        sign = koebe_sign(a)
        return TaylorPrefix.of(n * sign ** (n + 1) for n in range(2, cfg.max_depth + 1))

    cur = a
    while cur.depth < cfg.max_depth:
        bound, points = child_values(cur, cfg)
        if not points:
            result.record(cur, NodeVerdict.pruned(PruneReason.AREA_INTERVAL, bound.radius_sq), PHASE_COMPLETION)
            return None
        if len(points) > 1:
            raise ArithmeticError(f"terminated prefix at depth {cur.depth} has {len(points)} continuations")
        cur = cur.extend(points[0])
        result.stats.completion_steps += 1
        step = classify_prefix(cur, cfg, incremental=True)
        if step.kind is VerdictKind.PRUNED:
            result.record(cur, step, PHASE_COMPLETION)
            return None
    return cur


def explore_node(a: TaylorPrefix, cfg: SearchConfig, result: SubtreeResult) -> List[Fraction]:
    """
    Classify one node, record its verdict and return the values of its children.

    A node yields exactly one record unless it continues with children.
    """
    result.stats.nodes_visited += 1
    verdict = classify_prefix(a, cfg, incremental=True)

    if verdict.kind is VerdictKind.PRUNED:
        result.record(a, verdict)
        return []

    if verdict.kind is VerdictKind.TERMINATED:
        result.record(a, verdict)
        completed = complete_branch(a, verdict, cfg, result)
        if completed is not None:
            result.branches.append(TerminatedBranch(completed, a.depth, verdict.detail))
        return []

    if a.depth >= cfg.max_depth:
        slack = termination_slack(reciprocal_tail(a), a.depth, cfg.grid.r0)
        result.record(a, NodeVerdict.pruned(PruneReason.DEPTH_EXHAUSTED, slack))
        return []

    bound, points = child_values(a, cfg)
    if not points:
        result.record(a, NodeVerdict.pruned(PruneReason.AREA_INTERVAL, bound.radius_sq))
    return points


def explore_subtree(a: TaylorPrefix, cfg: SearchConfig) -> SubtreeResult:
    """Depth-first search below and including `a`, children in ascending order."""
    result = SubtreeResult()

    def visit(prefix: TaylorPrefix) -> None:
        for value in explore_node(prefix, cfg, result):
            visit(prefix.extend(value))

    visit(a)
    return result
