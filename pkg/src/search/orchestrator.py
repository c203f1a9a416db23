"""Search orchestration: root split, parallel subtrees, reconstruction and symmetry closure."""
import asyncio
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from src import config
from src.core.exact import rats_to_json
from src.core.series import TaylorPrefix, taylor_of_rational
from src.observability.logger import LoggerMixin
from src.observability.metrics import TimerContext, get_global_metrics
from src.observability.tracer import trace_function
from src.reconstruct.catalog import match_catalog
from src.reconstruct.pade import fit_prefix
from src.reconstruct.rational_fn import RationalFn
from src.reconstruct.verify import VerificationReport, verify_candidate, verify_membership
from src.search.config import SearchConfig
from src.search.engine import (
    SearchStats,
    SubtreeResult,
    TerminatedBranch,
    TraceRecord,
    VerdictKind,
    child_values,
    explore_node,
    explore_subtree,
)

STATUS_CANDIDATE = "candidate"
STATUS_REJECTED = "rejected"
STATUS_UNRESOLVED = "unresolved"


@dataclass
class CandidateRecord:
    """
    A reconstructed (or unresolved) terminated branch.

    Attributes:
        status: candidate, rejected or unresolved
        prefix: Completed prefix the reconstruction started from
        termination_depth: Depth at which the branch became unique
        fn: Fitted rational function (None when unresolved)
        dmax: Denominator degree bound of the accepted fit
        catalog_id: Matching catalog entry, if any
        via_symmetry: Added by the -f(-z) closure rather than found directly
        report: Necessary-condition report of the fit
    """
    status: str
    prefix: TaylorPrefix
    termination_depth: int
    fn: Optional[RationalFn] = None
    dmax: Optional[int] = None
    catalog_id: Optional[str] = None
    via_symmetry: bool = False
    report: Optional[VerificationReport] = None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "status": self.status,
            "id": self.catalog_id,
            "termination_depth": self.termination_depth,
            "via_symmetry": self.via_symmetry,
            "prefix": rats_to_json(self.prefix.coeffs),
        }
        if self.fn is not None:
            out.update(self.fn.to_dict())
            out["dmax"] = self.dmax
        if self.report is not None:
            out["failed_checks"] = self.report.failures()
        return out


@dataclass
class SearchOutcome:
    """
    Result of one search.

    `complete` is true iff no branch hit the depth cap; unresolved branches
    are reported separately and do not change it.
    """
    config: SearchConfig
    candidates: List[CandidateRecord]
    rejected: List[CandidateRecord]
    unresolved: List[CandidateRecord]
    stats: SearchStats
    trace: List[TraceRecord] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.stats.depth_exhausted == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "search": self.config.model_dump(mode="json"),
            "complete": self.complete,
            "candidate_count": len(self.candidates),
            "candidates": [c.to_dict() for c in self.candidates],
            "rejected": [c.to_dict() for c in self.rejected],
            "unresolved": [c.to_dict() for c in self.unresolved],
            "stats": self.stats.to_dict(),
        }


class SearchOrchestrator(LoggerMixin):
    """
    Runs the branch-and-prune search and turns its terminated branches into functions.

    Phases:
    1. Root split: classify every a_2 node inline and collect the (a_2, a_3) frontier
    2. Parallel: explore each frontier subtree, in a process pool when jobs > 1
    3. Reconstruction: fit, verify and match each terminated branch
    4. Symmetry closure under f -> -f(-z)
    """

    def __init__(self, jobs: int = config.MAX_WORKERS, correlation_id: Optional[str] = None):
        super().__init__(correlation_id=correlation_id)
        self.jobs = max(1, int(jobs))
        self.metrics = get_global_metrics()

    @trace_function("search")
    async def search(self, cfg: SearchConfig) -> SearchOutcome:
        """
        Enumerate all prefixes with lattice coefficients that survive every test.

        Args:
            cfg: Search configuration

        Returns:
            SearchOutcome with candidates sorted by Taylor prefix
        """
        start = time.time()
        self.logger.info("search_started", lattice=cfg.lattice, max_depth=cfg.max_depth, jobs=self.jobs)

        with TimerContext(self.metrics, "search.explore"):
            plan = self._plan_root(cfg)
            frontier = [item for item in plan if isinstance(item, TaylorPrefix)]
            self.logger.info("phase_completed", phase="root_split", subtrees=len(frontier))
            explored = await self._explore(frontier, cfg)

        merged = SubtreeResult()
        results = iter(explored)
        for item in plan:
            merged.extend(next(results) if isinstance(item, TaylorPrefix) else item)
        self.logger.info(
            "phase_completed",
            phase="explore",
            nodes=merged.stats.nodes_visited,
            terminated=len(merged.branches),
            depth_exhausted=merged.stats.depth_exhausted,
        )

        with TimerContext(self.metrics, "search.reconstruct"):
            records = await asyncio.gather(
                *(asyncio.to_thread(self._reconstruct, branch, cfg) for branch in merged.branches)
            )

        accepted = [r for r in records if r.status == STATUS_CANDIDATE]
        accepted = self._close_under_symmetry(accepted, cfg)

        outcome = SearchOutcome(
            config=cfg,
            candidates=accepted,
            rejected=[r for r in records if r.status == STATUS_REJECTED],
            unresolved=[r for r in records if r.status == STATUS_UNRESOLVED],
            stats=merged.stats,
            trace=merged.records,
        )

        self.metrics.increment("search.nodes_visited", merged.stats.nodes_visited)
        for reason, count in merged.stats.prunes.items():
            self.metrics.increment(f"search.prune.{reason}", count)
        self.logger.info(
            "search_completed",
            complete=outcome.complete,
            candidates=len(outcome.candidates),
            rejected=len(outcome.rejected),
            unresolved=len(outcome.unresolved),
            duration_seconds=round(time.time() - start, 3),
            metrics=self.metrics.get_summary()["counters"],
        )
        return outcome

    def _plan_root(self, cfg: SearchConfig) -> List[Union[SubtreeResult, TaylorPrefix]]:
        """Classify the a_2 nodes; returns their results interleaved with (a_2, a_3) frontier prefixes."""
        plan: List[Union[SubtreeResult, TaylorPrefix]] = []
        root = TaylorPrefix()
        _, first = child_values(root, cfg)
        for a2 in first:
            node = root.extend(a2)
            head = SubtreeResult()
            children = explore_node(node, cfg, head)
            plan.append(head)
            plan.extend(node.extend(a3) for a3 in children)
        return plan

    @trace_function("explore_subtrees")
    async def _explore(self, frontier: List[TaylorPrefix], cfg: SearchConfig) -> List[SubtreeResult]:
        if self.jobs == 1 or len(frontier) <= 1:
            results = []
            for prefix in frontier:
                results.append(explore_subtree(prefix, cfg))
                self.logger.debug("subtree_finished", prefix=rats_to_json(prefix.coeffs))
            return results

        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=self.jobs) as pool:
            futures = [loop.run_in_executor(pool, explore_subtree, prefix, cfg) for prefix in frontier]
            results = list(await asyncio.gather(*futures))
        for prefix in frontier:
            self.logger.debug("subtree_finished", prefix=rats_to_json(prefix.coeffs))
        return results

    def _reconstruct(self, branch: TerminatedBranch, cfg: SearchConfig) -> CandidateRecord:
        """Fit a rational function to a completed branch and verify it."""
        lat = cfg.grid
        K = config.VERIFY_DEFAULTS["membership_depth"]
        fit = fit_prefix(branch.prefix, cfg.reconstruct_dmax, accept=lambda R: verify_membership(R, lat, K))
        if fit is None:
            self.logger.warning(
                "candidate_unresolved",
                prefix=rats_to_json(branch.prefix.coeffs),
                termination_depth=branch.termination_depth,
                dmax=cfg.reconstruct_dmax,
            )
            return CandidateRecord(STATUS_UNRESOLVED, branch.prefix, branch.termination_depth)

        dmax, R = fit
        report = verify_candidate(R, lat, K=K)
        entry = match_catalog(R)
        status = STATUS_CANDIDATE if report.passed else STATUS_REJECTED
        if status == STATUS_REJECTED:
            self.logger.info("candidate_rejected", function=R.expression(), failed=report.failures())
        else:
            self.logger.info("candidate_accepted", function=R.expression(), id=entry.id if entry else None)
        return CandidateRecord(
            status,
            branch.prefix,
            branch.termination_depth,
            fn=R,
            dmax=dmax,
            catalog_id=entry.id if entry else None,
            report=report,
        )

    def _close_under_symmetry(self, accepted: List[CandidateRecord], cfg: SearchConfig) -> List[CandidateRecord]:
        """Add -f(-z) for every candidate and sort by Taylor prefix."""
        seen = {(r.fn.numerator, r.fn.denominator) for r in accepted}
        closed = list(accepted)
        for record in accepted:
            mirror = record.fn.mirrored()
            key = (mirror.numerator, mirror.denominator)
            if key in seen:
                continue
            seen.add(key)
            report = verify_candidate(mirror, cfg.grid, K=config.VERIFY_DEFAULTS["membership_depth"])
            if not report.passed:
                self.logger.warning("mirror_rejected", function=mirror.expression(), failed=report.failures())
                continue
            entry = match_catalog(mirror)
            closed.append(CandidateRecord(
                STATUS_CANDIDATE,
                record.prefix.mirrored(),
                record.termination_depth,
                fn=mirror,
                dmax=record.dmax,
                catalog_id=entry.id if entry else None,
                via_symmetry=True,
                report=report,
            ))

        def sort_key(r: CandidateRecord):
            return taylor_of_rational(r.fn, cfg.max_depth).coeffs

        return sorted(closed, key=sort_key)


def search(cfg: SearchConfig, jobs: int = 1, correlation_id: Optional[str] = None) -> SearchOutcome:
    """Synchronous entry point around SearchOrchestrator.search."""
    return asyncio.run(SearchOrchestrator(jobs=jobs, correlation_id=correlation_id).search(cfg))


def candidate_ids(outcome: SearchOutcome) -> List[Optional[str]]:
    """Catalog ids of the accepted candidates, in output order."""
    return [c.catalog_id for c in outcome.candidates]


def trace_witnesses(outcome: SearchOutcome) -> List[Fraction]:
    """All exact witness values of pruned trace records."""
    return [r.verdict.witness for r in outcome.trace
            if r.verdict.kind is VerdictKind.PRUNED and r.verdict.witness is not None]
