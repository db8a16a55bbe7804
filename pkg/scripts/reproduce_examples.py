# scripts/reproduce_examples.py
"""Recomputes the worked examples and prints one ✓/✗ line per check.

Usage:
    python scripts/reproduce_examples.py            # run every check
    python scripts/reproduce_examples.py --dry-run  # list the checks only

Exit code 1 when a check fails.
"""

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, Optional, Tuple

import numpy as np

# Ensure project root is importable
sys.path.append(str(Path(__file__).parent.parent))

from rankforge import worked_examples as ex
from rankforge.matrix import NonNegMatrix
from rankforge.parsers import parse_edges
from rankforge.spectral import iterate_k
from rankforge.tournament import TournamentRanker
from rankforge.utils import print_progress
from rankforge.web import GoogleParams, pagerank


@dataclass(frozen=True)
class Check:
    name: str
    passed: Optional[bool]
    detail: str = ""


def _close(values, expected, tol: float) -> bool:
    return float(np.abs(np.asarray(list(values)) - np.asarray(expected)).sum()) <= tol


def _row_sums_a() -> Tuple[bool, str]:
    scores = iterate_k(NonNegMatrix.dense(ex.ROUND_ROBIN_A), 1).tolist()
    return scores == [1.5, 1.0, 0.5], f"A𝟙 = {scores}"


def _landau_a() -> Tuple[bool, str]:
    A = NonNegMatrix.dense(ex.ROUND_ROBIN_A)
    report = TournamentRanker().landau_score(A)
    rho = max(abs(np.linalg.eigvals(A.to_dense())))
    ok = abs(report.eigenvalue - rho) <= 1e-8 * rho and min(report.shares) > 0
    return ok, f"λ = {report.eigenvalue:.12g}, spectral radius {rho:.12g}"


def _landau_a1() -> Tuple[bool, str]:
    report = TournamentRanker().landau_score(NonNegMatrix.dense(ex.ROUND_ROBIN_A1))
    ok = abs(report.eigenvalue - 0.5) <= 1e-9 and _close(report.shares, [2 / 3, 1 / 6, 1 / 6], 1e-8)
    return ok, f"λ = {report.eigenvalue:.12g}, shares {[round(s, 9) for s in report.shares]}"


def _landau_a2() -> Tuple[bool, str]:
    report = TournamentRanker().landau_score(NonNegMatrix.dense(ex.ROUND_ROBIN_A2))
    ok = report.eigenvalue == 0.0 and _close(report.shares, [1.0, 0.0, 0.0], 1e-6)
    return ok, f"λ = {report.eigenvalue:.12g}, shares {[round(s, 9) for s in report.shares]}"


def _kendall(k: int, expected: List[float]) -> Callable[[], Tuple[bool, str]]:
    def check() -> Tuple[bool, str]:
        scores = iterate_k(NonNegMatrix.dense(ex.KENDALL), k).tolist()
        return scores == expected, f"A^{k}𝟙 = {scores}"
    return check


def _kendall_third() -> Tuple[bool, str]:
    report = TournamentRanker().kendall_score(NonNegMatrix.dense(ex.KENDALL), 3)
    return report.rank_of("4") == 3, f"player 4 ranked {report.rank_of('4')}"


def _patent() -> Tuple[bool, str]:
    report = pagerank(parse_edges(ex.PATENT_EDGES), GoogleParams(alpha=0.0))
    ok = _close(report.shares, [0.4, 0.2, 0.4], 1e-9) and report.convergence.residual <= 1e-10
    return ok, f"r = {[round(s, 12) for s in report.shares]}, residual {report.convergence.residual:.2e}"


CHECKS: List[Tuple[str, Callable[[], Tuple[bool, str]]]] = [
    ("first round robin: row sums (1.5, 1, 0.5)", _row_sums_a),
    ("first round robin: landau λ = spectral radius", _landau_a),
    ("A1: landau shares (2/3, 1/6, 1/6), λ = 1/2", _landau_a1),
    ("A2: landau shares (1, 0, 0), λ = 0", _landau_a2),
    ("kendall k=1", _kendall(1, [4.5, 2.5, 4.5, 1.5, 2.5, 2.5])),
    ("kendall k=2", _kendall(2, [14.25, 5.25, 11.25, 5.25, 5.25, 5.25])),
    ("kendall k=3", _kendall(3, [34.125, 13.125, 26.625, 16.875, 13.125, 13.125])),
    ("kendall k=3: player 4 third", _kendall_third),
    ("patent graph: pagerank α=0 (0.4, 0.2, 0.4)", _patent),
]


def reproduce(*, dry_run: bool = False, progress: bool = False) -> List[Check]:
    checks: List[Check] = []
    start = time.time()
    for i, (name, fn) in enumerate(CHECKS):
        if dry_run:
            checks.append(Check(name, None))
            continue
        try:
            passed, detail = fn()
        except Exception as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        checks.append(Check(name, bool(passed), detail))
        if progress:
            print_progress(i, len(CHECKS), start, [name])
    return checks


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Recompute the worked ranking examples")
    parser.add_argument("--dry-run", action="store_true", help="List the checks without running them")
    parser.add_argument("--progress", action="store_true", help="Progress line per check on stderr")
    args = parser.parse_args()

    results = reproduce(dry_run=args.dry_run, progress=args.progress)
    for check in results:
        mark = "·" if check.passed is None else ("✓" if check.passed else "✗")
        print(f"  {mark} {check.name}" + (f"  [{check.detail}]" if check.detail else ""))
    failed = sum(1 for c in results if c.passed is False)
    print(f"\n{len(results)} checks, {failed} failed")
    sys.exit(1 if failed else 0)
