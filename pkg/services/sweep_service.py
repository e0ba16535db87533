"""
Sweep Service
Expands parameter grids into verification tasks, runs them on a worker pool and
gathers the reports in a deterministic order.
"""

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Set, Tuple

from loguru import logger

from models.parameters import GParams, KernelKind
from models.reports import IdentityReport, RunSummary
from models.run_config import IntRange
from verifiers import identities, series
from verifiers.bressoud import (
    PROVEN_FAMILIES,
    borwein_abc,
    conjecture_grid,
    g_poly,
    region_check,
    theorem1_params,
)
from verifiers.errors import UnknownIdentity
from verifiers.transforms import kernel_row


@dataclass
class Task:
    identity_id: str
    params: Dict[str, int]
    run: Callable[[], IdentityReport]


@dataclass
class TaskBatch:
    tasks: List[Task] = field(default_factory=list)
    skipped: int = 0

    def extend(self, other: "TaskBatch") -> "TaskBatch":
        self.tasks.extend(other.tasks)
        self.skipped += other.skipped
        return self


def expand_grid(names: List[str], ranges: Dict[str, IntRange]) -> Iterable[Dict[str, int]]:
    """Cartesian product of the named ranges, first name varying slowest."""
    axes = [ranges[name].values() for name in names]
    for combo in itertools.product(*axes):
        yield dict(zip(names, combo))


# ----------------------------------------------------------------------
# task builders


def identity_tasks(
    identity_id: str,
    ranges: Optional[Dict[str, IntRange]] = None,
    cap: Optional[int] = None,
    render_limit: int = identities.DEFAULT_RENDER_LIMIT,
) -> TaskBatch:
    """Tasks for one registered id, finite or series; missing ranges fall back to the defaults."""
    ranges = ranges or {}
    ignored = sorted(set(ranges) - identity_param_names(identity_id))
    if ignored:
        logger.warning("{} takes no {} range, ignored", identity_id, ", ".join(ignored))
    if series.is_series_id(identity_id):
        return series_tasks(identity_id, cap, ranges, render_limit)

    descriptor = identities.describe(identity_id)
    grid = {**descriptor.default_grid(), **{k: v for k, v in ranges.items() if k in descriptor.param_names}}
    batch = TaskBatch()
    for params in expand_grid(descriptor.param_names, grid):
        if not descriptor.admissible(params):
            batch.skipped += 1
            continue
        batch.tasks.append(
            Task(identity_id, params, lambda p=params: identities.verify(identity_id, p, render_limit))
        )
    return batch


def series_tasks(
    identity_id: str,
    cap: Optional[int] = None,
    ranges: Optional[Dict[str, IntRange]] = None,
    render_limit: int = series.DEFAULT_RENDER_LIMIT,
) -> TaskBatch:
    """A reading group expands into every reading; jtp expands over s."""
    members = series.READING_GROUPS.get(identity_id, (series.resolve_series_id(identity_id),))
    batch = TaskBatch()
    for member in members:
        allowed = series_list_params(member)
        names = list(allowed)
        axes = [
            ranges[name].values() if ranges and name in ranges else list(allowed[name]) for name in names
        ]
        for combo in itertools.product(*axes):
            params = dict(zip(names, combo))
            if any(params[name] not in allowed[name] for name in names):
                batch.skipped += 1
                continue
            batch.tasks.append(
                Task(member, params, lambda m=member, p=params: series.verify_series(m, cap, p, render_limit))
            )
    return batch


def identity_param_names(identity_id: str) -> Set[str]:
    """Range flags that apply to a finite id, a series id or a reading group."""
    if series.is_series_id(identity_id):
        members = series.READING_GROUPS.get(identity_id, (series.resolve_series_id(identity_id),))
        return {name for member in members for name in series_list_params(member)}
    return set(identities.describe(identity_id).param_names)


def series_list_params(identity_id: str) -> Dict[str, Tuple[int, ...]]:
    for identity in series.series_list():
        if identity.identity_id == identity_id:
            return identity.params
    raise UnknownIdentity(identity_id)


def verify_all_tasks(cap: Optional[int] = None, render_limit: int = identities.DEFAULT_RENDER_LIMIT) -> TaskBatch:
    """Every finite identity over its default grid and every series identity at its default cap."""
    batch = TaskBatch()
    for descriptor in identities.registry_list():
        batch.extend(identity_tasks(descriptor.identity_id, render_limit=render_limit))
    for identity in series.series_list():
        batch.extend(series_tasks(identity.identity_id, cap, render_limit=render_limit))
    return batch


def _timed(builder: Callable[[], list], identity_id: str, params: Dict[str, int], render_limit: int):
    def run() -> IdentityReport:
        started = time.perf_counter()
        return identities.positivity_report(identity_id, params, builder(), render_limit, started)

    return run


def positivity_tasks(
    ranges: Optional[Dict[str, IntRange]] = None,
    render_limit: int = identities.DEFAULT_RENDER_LIMIT,
) -> TaskBatch:
    """
    Nonnegativity of kernel rows, of the G families proven by the transformations,
    of the Borwein polynomials and of the Theorem 1 grid.
    """
    ranges = ranges or {}
    L_values = ranges.get("L", IntRange(start=0, stop=20)).values()
    n_values = ranges.get("n", IntRange(start=0, stop=20)).values()
    nu_values = ranges.get("nu", IntRange(start=1, stop=3)).values()
    theorem_L = ranges.get("L", IntRange(start=0, stop=14)).values()

    batch = TaskBatch()
    for kind in KernelKind:
        for L in L_values:
            if L < 0:
                batch.skipped += 1
                continue
            params = {"L": L}
            batch.tasks.append(
                Task(
                    f"kernel-{kind.value}",
                    params,
                    _timed(
                        lambda k=kind, L=L: list(kernel_row(k, L).entries),
                        f"kernel-{kind.value}",
                        params,
                        render_limit,
                    ),
                )
            )
    for name, family in PROVEN_FAMILIES:
        for L in L_values:
            params = {"L": L}
            g = family(L)
            if g.N < 0 or g.M < 0:
                batch.skipped += 1
                continue
            batch.tasks.append(Task(name, params, _timed(lambda g=g: [g_poly(g)], name, params, render_limit)))
    for n in n_values:
        if n < 0:
            batch.skipped += 1
            continue
        params = {"n": n}
        batch.tasks.append(
            Task("borwein", params, _timed(lambda n=n: list(borwein_abc(n)), "borwein", params, render_limit))
        )
    batch.extend(theorem1_tasks(nu_values, theorem_L, render_limit))
    return batch


def theorem1_tasks(nu_values: Iterable[int], L_values: Iterable[int], render_limit: int) -> TaskBatch:
    batch = TaskBatch()
    L_values = list(L_values)
    for nu in nu_values:
        if nu < 1:
            batch.skipped += 1
            continue
        for s in range(nu):
            for L in L_values:
                if L < 0:
                    batch.skipped += 1
                    continue
                g = theorem1_params(nu, s, L)
                params = {"nu": nu, "s": s, "L": L, **g.as_params()}
                batch.tasks.append(
                    Task("theorem1", params, _timed(lambda g=g: [g_poly(g)], "theorem1", params, render_limit))
                )
    return batch


def conjecture_tasks(
    K_values: Iterable[int],
    size: int,
    alpha_range: Optional[IntRange] = None,
    beta_range: Optional[IntRange] = None,
    render_limit: int = identities.DEFAULT_RENDER_LIMIT,
) -> TaskBatch:
    """Every in-region integer point (N, M, alphaK, betaK) with N + M <= size; the rest is skipped."""
    batch = TaskBatch()
    for K in K_values:
        if K < 2:
            raise ValueError(f"K must be at least 2, got {K}")
        for g in conjecture_grid(K, size):
            if alpha_range is not None and not alpha_range.start <= g.alpha_k <= alpha_range.stop:
                continue
            if beta_range is not None and not beta_range.start <= g.beta_k <= beta_range.stop:
                continue
            if not region_check(g).in_region:
                batch.skipped += 1
                continue
            params = g.as_params()
            batch.tasks.append(
                Task("conjecture", params, _timed(lambda g=g: [g_poly(g)], "conjecture", params, render_limit))
            )
    return batch


def point_task(g: GParams, render_limit: int = identities.DEFAULT_RENDER_LIMIT) -> TaskBatch:
    """A single conjecture point, skipped when it lies outside the region."""
    batch = TaskBatch()
    if not region_check(g).in_region:
        batch.skipped = 1
        return batch
    params = g.as_params()
    batch.tasks.append(Task("conjecture", params, _timed(lambda: [g_poly(g)], "conjecture", params, render_limit)))
    return batch


# ----------------------------------------------------------------------
# execution


def _satisfied_readings(reports: Iterable[IdentityReport]) -> Set[Tuple[str, Optional[int]]]:
    """(group, cap) pairs where at least one reading passed."""
    satisfied = set()
    for report in reports:
        group = series.reading_group_of(report.identity_id)
        if group and report.passed:
            satisfied.add((group, report.cap))
    return satisfied


def _excused_group(report: IdentityReport, satisfied: Set[Tuple[str, Optional[int]]]) -> Optional[str]:
    if report.passed:
        return None
    group = series.reading_group_of(report.identity_id)
    if group and (group, report.cap) in satisfied:
        return group
    return None


class SweepService:
    def __init__(self, parallelism: int = 1):
        if parallelism < 1:
            raise ValueError(f"parallelism must be at least 1, got {parallelism}")
        self.parallelism = parallelism

    def _run_one(self, task: Task) -> IdentityReport:
        try:
            return task.run()
        except Exception as e:
            logger.exception("{} {} raised: {}", task.identity_id, task.params, e)
            return IdentityReport(
                identity_id=task.identity_id,
                params=task.params,
                passed=False,
                error=f"{type(e).__name__}: {e}",
            )

    def run(self, batch: TaskBatch) -> List[IdentityReport]:
        """Run every task and return the reports sorted by identity id, then parameters."""
        logger.info("running {} tasks on {} worker(s), {} skipped", len(batch.tasks), self.parallelism, batch.skipped)
        if self.parallelism == 1:
            reports = [self._run_one(task) for task in batch.tasks]
        else:
            with ThreadPoolExecutor(max_workers=self.parallelism) as pool:
                reports = list(pool.map(self._run_one, batch.tasks))
        reports.sort(key=IdentityReport.sort_key)
        return self.annotate_readings(reports)

    @staticmethod
    def annotate_readings(reports: List[IdentityReport]) -> List[IdentityReport]:
        """Copies of the reports, with a note on failing readings whose group passed another way."""
        satisfied = _satisfied_readings(reports)
        annotated = []
        for report in reports:
            group = _excused_group(report, satisfied)
            note = f"another reading of {group} passed"
            if group and note not in report.notes:
                report = report.model_copy(update={"notes": [*report.notes, note]})
            annotated.append(report)
        return annotated

    @staticmethod
    def summarize(reports: List[IdentityReport], skipped: int = 0) -> RunSummary:
        """
        Count passes and failures. A failing reading of a reading group is not counted
        as a failure when another reading of the same group passed at the same cap.
        """
        satisfied = _satisfied_readings(reports)
        summary = RunSummary(total=len(reports), skipped=skipped)
        for report in reports:
            if report.passed:
                summary.passed += 1
            elif _excused_group(report, satisfied) is None:
                summary.failed += 1
        if summary.failed:
            logger.warning("{} of {} reports failed", summary.failed, summary.total)
        else:
            logger.info("all {} reports passed", summary.total)
        return summary
