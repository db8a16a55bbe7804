# rankforge/tournament.py

import concurrent.futures
import math
import threading
import time
from dataclasses import dataclass, field, replace
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from rankforge import config
from rankforge.errors import EpsilonLimitDiverged, InputError
from rankforge.graph import dangling_columns, strongly_connected_components, validate_round_robin
from rankforge.matrix import NonNegMatrix, ScoreVector, default_labels, normalize_1, one_vector, shift
from rankforge.records import (
    CHESS,
    Convergence,
    Diagnostics,
    RankEntry,
    RankReport,
    ScoringScheme,
    SpectralStatus,
)
from rankforge.spectral import SpectralResult, iterate_k, l1_distance, power_method
from rankforge.utils import get_logger, print_progress

logger = get_logger(__name__)

DECISIVE_PAIRS = "decisive-pairs"
UNIFORM = "uniform"


def check_schedule(schedule: Tuple[float, ...]) -> None:
    """Raises InputError unless schedule is non-empty, strictly decreasing and inside (0, 1/2)."""
    if not schedule:
        raise InputError("ε schedule is empty")
    if any(not (0.0 < e < 0.5) for e in schedule):
        raise InputError(f"ε values must lie in (0, 1/2), got {schedule}")
    if any(b >= a for a, b in zip(schedule, schedule[1:])):
        raise InputError(f"ε schedule must be strictly decreasing, got {schedule}")


@dataclass(frozen=True)
class LandauOptions:
    """Budget and ε schedule for landau_score; defaults come from config."""
    tol: float = config.TOL
    max_iter: int = config.MAX_ITER
    epsilon_schedule: Tuple[float, ...] = config.EPSILON_SCHEDULE
    limit_tol: float = config.LIMIT_TOL
    max_workers: int = config.MAX_WORKERS
    progress: bool = False

    def __post_init__(self) -> None:
        check_schedule(tuple(self.epsilon_schedule))


@dataclass(frozen=True)
class EpsilonStep:
    epsilon: float
    result: SpectralResult


@dataclass(frozen=True)
class EpsilonLimit:
    """
    Outcome of the ε-limit scan. Unpacks as (scores, eigenvalue, epsilon_used).

    resolution is "stabilised" when two consecutive ε runs agreed within
    limit_tol, "refined" when the trace was heading to the eigenpair of the
    unperturbed matrix and that eigenpair is reported instead.
    """
    scores: ScoreVector
    eigenvalue: float
    epsilon_used: float
    perturbation: str
    resolution: str
    iterations: int
    status: SpectralStatus
    residual: float
    trace: Tuple[EpsilonStep, ...] = field(default=(), repr=False)

    def __iter__(self) -> Iterator:
        return iter((self.scores, self.eigenvalue, self.epsilon_used))

    def step_distances(self) -> List[float]:
        return [l1_distance(a.result.vector, b.result.vector) for a, b in zip(self.trace, self.trace[1:])]


def rank_players(scores: ScoreVector, tie_tol: float = config.TIE_TOL) -> Tuple[RankEntry, ...]:
    """
    Descending competition ranking (1, 2, 2, 4). Two players tie when their
    scores differ by at most tie_tol·max(1, max score) from the best score of
    the group; a group is listed by ascending index.
    """
    if not math.isfinite(tie_tol) or tie_tol < 0:
        raise InputError(f"tie_tol must be nonnegative, got {tie_tol!r}")
    values = scores.values
    if len(values) == 0:
        return ()
    slack = tie_tol * max(1.0, float(values.max()))
    order = sorted(range(len(values)), key=lambda i: (-values[i], i))

    groups: List[List[int]] = []
    for i in order:
        if groups and values[groups[-1][0]] - values[i] <= slack:
            groups[-1].append(i)
        else:
            groups.append([i])

    entries: List[RankEntry] = []
    position = 1
    for group_no, members in enumerate(groups, start=1):
        for i in sorted(members):
            entries.append(RankEntry(scores.labels[i], i, position, group_no))
        position += len(members)
    return tuple(entries)


def perturb(A: NonNegMatrix, epsilon: float, perturbation: str = DECISIVE_PAIRS) -> NonNegMatrix:
    """
    A(ε), an irreducible neighbour of A.

    decisive-pairs: each pair with a_ij = w > l = a_ji becomes
    (w - ε(w-l), l + ε(w-l)); chess (1, 0) ↦ (1-ε, ε). Draws and the
    diagonal are untouched.
    uniform: A + ε(𝟙𝟙ᵀ - I), for inputs that are not a valid round robin.
    """
    dense = A.to_dense()
    n = A.n
    if perturbation == UNIFORM:
        bump = np.full((n, n), epsilon)
        np.fill_diagonal(bump, 0.0)
        return NonNegMatrix.dense(dense + bump)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = dense[i, j], dense[j, i]
            if a == b:
                continue
            hi, lo = (i, j), (j, i)
            if b > a:
                hi, lo = lo, hi
            gap = dense[hi] - dense[lo]
            dense[hi] = dense[hi] - epsilon * gap
            dense[lo] = dense[lo] + epsilon * gap
    return NonNegMatrix.dense(dense)


def prize_split(report: RankReport, pool: float) -> Tuple[Tuple[str, float], ...]:
    """Amount of the prize pool per participant, proportional to the shares."""
    if not math.isfinite(pool) or pool < 0:
        raise InputError(f"prize pool must be nonnegative, got {pool!r}")
    if report.shares is None:
        raise InputError("report has no shares to split (all scores are zero)")
    return tuple((label, pool * share) for label, share in zip(report.labels, report.shares))


class TournamentRanker:
    """
    Scores a game results matrix A (a_ij = points of i against j) with
    the row sum, Wei's second-order score, Kendall's k-th iterate and
    Landau's dominant eigenvector.
    """

    def __init__(
        self,
        scheme: ScoringScheme = CHESS,
        tie_tol: float = config.TIE_TOL,
        options: Optional[LandauOptions] = None,
    ) -> None:
        self.scheme = scheme
        self.tie_tol = tie_tol
        self.options = options or LandauOptions()

    # ------------------------------------------------------------------
    # Methods
    # ------------------------------------------------------------------

    def row_sum_score(self, A: NonNegMatrix, labels: Optional[Sequence[str]] = None) -> RankReport:
        labels = self._labels(A, labels)
        return self._report("rowsum", A, labels, iterate_k(A, 1, labels))

    def wei_score(self, A: NonNegMatrix, labels: Optional[Sequence[str]] = None) -> RankReport:
        """A(A𝟙): each player collects the row sum of every opponent beaten, half of every draw."""
        labels = self._labels(A, labels)
        return self._report("wei", A, labels, iterate_k(A, 2, labels))

    def kendall_score(self, A: NonNegMatrix, k: int, labels: Optional[Sequence[str]] = None) -> RankReport:
        if k < 1:
            raise InputError(f"kendall iterate needs k >= 1, got {k}")
        labels = self._labels(A, labels)
        return self._report(f"iterate:{k}", A, labels, iterate_k(A, k, labels))

    def kendall_trajectory(
        self, A: NonNegMatrix, k_max: int, labels: Optional[Sequence[str]] = None
    ) -> List[RankReport]:
        """kendall_score for k = 1..k_max, sharing the products."""
        if k_max < 1:
            raise InputError(f"trajectory needs k_max >= 1, got {k_max}")
        labels = self._labels(A, labels)
        diagnostics = self.diagnose(A, labels)
        reports = []
        x = one_vector(A.n, labels)
        for k in range(1, k_max + 1):
            x = A.matvec(x)
            reports.append(self._report(f"iterate:{k}", A, labels, x, diagnostics=diagnostics))
        return reports

    def landau_score(
        self,
        A: NonNegMatrix,
        opts: Optional[LandauOptions] = None,
        labels: Optional[Sequence[str]] = None,
    ) -> RankReport:
        """
        Landau's relative score: the dominant eigenvector of A as prize shares.
        Irreducible A goes straight to the power method; reducible A takes the
        ε-limit. Non-convergence is reported through the convergence status.
        """
        opts = opts or self.options
        labels = self._labels(A, labels)
        diagnostics = self.diagnose(A, labels)

        if A.n == 1:
            return self._report(
                "landau", A, labels, one_vector(1, labels),
                eigenvalue=A.entry(0, 0),
                convergence=Convergence(iterations=0, status=SpectralStatus.CONVERGED, residual=0.0),
                diagnostics=diagnostics,
            )

        if diagnostics.irreducible:
            res = power_method(A, one_vector(A.n, labels), opts.tol, opts.max_iter)
            return self._report(
                "landau", A, labels, res.vector,
                eigenvalue=res.eigenvalue,
                convergence=Convergence(iterations=res.iterations, status=res.status, residual=res.residual),
                diagnostics=diagnostics,
            )

        logger.info("results matrix is reducible (%d classes), taking the ε-limit", diagnostics.scc_count)
        try:
            limit = self.epsilon_limit_score(A, opts.epsilon_schedule, opts=opts, labels=labels)
        except EpsilonLimitDiverged as exc:
            last_eps, last_scores, last_lambda = exc.trace[-1]
            return self._report(
                "landau", A, labels, ScoreVector(last_scores, labels),
                eigenvalue=last_lambda,
                convergence=Convergence(epsilon_used=last_eps, perturbation=self._perturbation_for(A)),
                diagnostics=diagnostics,
                flags=("epsilon-limit-diverged",),
            )
        return self._report(
            "landau", A, labels, limit.scores,
            eigenvalue=limit.eigenvalue,
            convergence=Convergence(
                iterations=limit.iterations,
                status=limit.status,
                epsilon_used=limit.epsilon_used,
                perturbation=limit.perturbation,
                resolution=limit.resolution,
                residual=limit.residual,
            ),
            diagnostics=diagnostics,
        )

    def epsilon_limit_score(
        self,
        A: NonNegMatrix,
        schedule: Optional[Sequence[float]] = None,
        opts: Optional[LandauOptions] = None,
        labels: Optional[Sequence[str]] = None,
    ) -> EpsilonLimit:
        """
        Landau's limiting argument: perturb A into irreducible A(ε) for each ε
        of a strictly decreasing schedule, run the power method on each, and
        return the later vector of the first consecutive pair that agrees
        within limit_tol. When the trace heads monotonically to the eigenpair
        of A itself (power method on A converged, or vanished on a nilpotent
        A) that eigenpair is returned, with ε of the confirming step.

        Raises:
            InputError: bad schedule.
            EpsilonLimitDiverged: the schedule ran out without stabilising.
        """
        opts = opts or self.options
        schedule = tuple(float(e) for e in (schedule if schedule is not None else opts.epsilon_schedule))
        check_schedule(schedule)
        labels = self._labels(A, labels)
        perturbation = self._perturbation_for(A)

        trace = self._run_schedule(A, schedule, perturbation, opts, labels)
        steps = [l1_distance(a.result.vector, b.result.vector) for a, b in zip(trace, trace[1:])]
        stable_at = next((k + 1 for k, d in enumerate(steps) if d <= opts.limit_tol), None)
        accept_at = stable_at if stable_at is not None else len(trace) - 1

        candidate = power_method(A, one_vector(A.n, labels), opts.tol, opts.max_iter)
        if candidate.status in (SpectralStatus.CONVERGED, SpectralStatus.ZERO_ITERATE) and self._trace_confirms(
            [s.result.vector for s in trace[: accept_at + 1]], candidate.vector, opts
        ):
            logger.debug("ε trace confirms the unperturbed eigenpair at ε=%g", trace[accept_at].epsilon)
            return EpsilonLimit(
                scores=candidate.vector,
                eigenvalue=candidate.eigenvalue,
                epsilon_used=trace[accept_at].epsilon,
                perturbation=perturbation,
                resolution="refined",
                iterations=candidate.iterations,
                status=candidate.status,
                residual=candidate.residual,
                trace=tuple(trace),
            )

        if stable_at is not None:
            step = trace[stable_at]
            return EpsilonLimit(
                scores=step.result.vector,
                eigenvalue=step.result.eigenvalue,
                epsilon_used=step.epsilon,
                perturbation=perturbation,
                resolution="stabilised",
                iterations=step.result.iterations,
                status=step.result.status,
                residual=step.result.residual,
                trace=tuple(trace),
            )

        raise EpsilonLimitDiverged(
            [(s.epsilon, s.result.vector.tolist(), s.result.eigenvalue) for s in trace],
            opts.limit_tol,
        )

    def diagnose(self, A: NonNegMatrix, labels: Optional[Sequence[str]] = None) -> Diagnostics:
        """Irreducibility, SCC count, dangling columns and round-robin validation of A."""
        labels = self._labels(A, labels)
        components = strongly_connected_components(A)
        return Diagnostics(
            irreducible=A.n == 1 or len(components) == 1,
            scc_count=len(components),
            dangling=tuple(labels[j] for j in sorted(dangling_columns(A))),
            validation=validate_round_robin(A, self.scheme),
        )

    # ------------------------------------------------------------------
    # Private helpers
    # ------------------------------------------------------------------

    @staticmethod
    def _labels(A: NonNegMatrix, labels: Optional[Sequence[str]]) -> Tuple[str, ...]:
        if labels is None:
            return default_labels(A.n)
        labels = tuple(labels)
        if len(labels) != A.n:
            raise InputError(f"{len(labels)} labels for a {A.n}×{A.n} matrix")
        return labels

    def _perturbation_for(self, A: NonNegMatrix) -> str:
        return DECISIVE_PAIRS if validate_round_robin(A, self.scheme).valid else UNIFORM

    def _run_schedule(
        self,
        A: NonNegMatrix,
        schedule: Tuple[float, ...],
        perturbation: str,
        opts: LandauOptions,
        labels: Tuple[str, ...],
    ) -> List[EpsilonStep]:
        results: List[Optional[EpsilonStep]] = [None] * len(schedule)
        print_lock = threading.Lock()
        completed_count = 0
        start_time = time.time()

        def solve(idx: int, epsilon: float) -> None:
            nonlocal completed_count
            A_eps = perturb(A, epsilon, perturbation)
            res = power_method(A_eps, one_vector(A.n, labels), opts.tol, opts.max_iter)
            if res.status is SpectralStatus.OSCILLATING:
                res = self._shifted_rerun(A_eps, res, opts, labels)
            results[idx] = EpsilonStep(epsilon, res)
            logger.debug("ε=%g: %s after %d iterations, λ=%r", epsilon, res.status.value, res.iterations, res.eigenvalue)
            if opts.progress:
                with print_lock:
                    print_progress(completed_count, len(schedule), start_time,
                                   [f"ε={epsilon:g} λ={res.eigenvalue:.6g} {res.status.value}"])
                    completed_count += 1

        with concurrent.futures.ThreadPoolExecutor(max_workers=max(1, opts.max_workers)) as executor:
            futures = [executor.submit(solve, idx, eps) for idx, eps in enumerate(schedule)]
            for future in concurrent.futures.as_completed(futures):
                future.result()

        return [step for step in results if step is not None]

    @staticmethod
    def _shifted_rerun(
        A_eps: NonNegMatrix, res: SpectralResult, opts: LandauOptions, labels: Tuple[str, ...]
    ) -> SpectralResult:
        """
        A(ε) can be periodic (two players, one decisive game). Its Perron vector
        is that of A(ε) + cI; c is the geometric mean of two consecutive growth
        factors of the oscillating run, and λ is shifted back.
        """
        y = res.vector
        growth_a = A_eps.matvec(y).total
        growth_b = A_eps.matvec(normalize_1(A_eps.matvec(y))).total if growth_a > 0 else 0.0
        c = math.sqrt(growth_a * growth_b) or 1.0
        shifted = power_method(shift(A_eps, c), one_vector(A_eps.n, labels), opts.tol, opts.max_iter)
        my = A_eps.matvec(shifted.vector)
        eigenvalue = my.total
        residual = float(np.abs(my.values - eigenvalue * shifted.vector.values).sum())
        return replace(shifted, eigenvalue=eigenvalue, residual=residual,
                       iterations=res.iterations + shifted.iterations)

    @staticmethod
    def _trace_confirms(vectors: List[ScoreVector], candidate: ScoreVector, opts: LandauOptions) -> bool:
        """
        The trace approaches candidate monotonically (up to power-method
        noise) and ends within limit_tol of it, or within twice the geometric
        tail predicted by the last two trace steps.
        """
        noise = 10 * opts.tol
        deltas = [l1_distance(v, candidate) for v in vectors]
        if any(b > a + noise for a, b in zip(deltas, deltas[1:])):
            return False
        if deltas[-1] <= opts.limit_tol:
            return True
        if len(vectors) < 3:
            return False
        d_last = l1_distance(vectors[-1], vectors[-2])
        d_prev = l1_distance(vectors[-2], vectors[-3])
        if d_prev == 0.0 or d_last >= d_prev:
            return False
        q = d_last / d_prev
        tail = d_last * q / (1.0 - q)
        return deltas[-1] <= 2.0 * tail + opts.limit_tol

    def _report(
        self,
        method: str,
        A: NonNegMatrix,
        labels: Tuple[str, ...],
        scores: ScoreVector,
        eigenvalue: Optional[float] = None,
        convergence: Optional[Convergence] = None,
        diagnostics: Optional[Diagnostics] = None,
        flags: Tuple[str, ...] = (),
    ) -> RankReport:
        scores = scores.relabel(labels)
        flags = list(flags)
        if A.n == 1:
            shares: Optional[ScoreVector] = one_vector(1, labels)
            flags.append("single-participant")
        elif scores.is_zero():
            shares = None
            flags.append("zero-scores")
            if method.startswith("iterate:") or method in ("rowsum", "wei"):
                flags.append("zero-iterate")
        else:
            shares = normalize_1(scores)
        return RankReport(
            method=method,
            labels=labels,
            scores=scores,
            shares=shares,
            ranking=rank_players(scores, self.tie_tol),
            diagnostics=diagnostics or self.diagnose(A, labels),
            eigenvalue=eigenvalue,
            convergence=convergence or Convergence(),
            flags=tuple(flags),
        )
