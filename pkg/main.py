# main.py

import argparse
import sys
from typing import List, Optional, Sequence, Tuple

from rankforge import config
from rankforge.errors import ConvergenceError, InputError, RankForgeError
from rankforge.matrix import NonNegMatrix, default_labels
from rankforge.parsers import parse_edges, parse_games, parse_matrix
from rankforge.persistence import save_report
from rankforge.records import CHESS, RankReport, ScoringScheme
from rankforge.reporting import FORMATS, emit_report, emit_reports
from rankforge.tournament import LandauOptions, TournamentRanker
from rankforge.utils import get_logger, set_verbosity
from rankforge.web import GoogleParams, link_diagnostics, pagerank

logger = get_logger("main")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_CONVERGED = 2

METHODS = ("rowsum", "wei", "landau", "iterate:<k>")


class RankForgeRunner:
    """
    One CLI invocation: reads the input text, runs a method, returns the
    reports. Parsing and persistence stay here; the services do the math.
    """

    def __init__(
        self,
        ranker: TournamentRanker,
        params: GoogleParams,
        strict: bool = True,
        db_path: Optional[str] = None,
    ) -> None:
        self.ranker = ranker
        self.params = params
        self.strict = strict
        self.db_path = db_path

    def _load_results(self, text: str, input_kind: str) -> Tuple[NonNegMatrix, Optional[Tuple[str, ...]]]:
        if input_kind == "games":
            table = parse_games(text, self.ranker.scheme, strict=self.strict)
            return table.matrix, table.labels
        if input_kind == "matrix":
            return parse_matrix(text), None
        raise InputError(f"input kind {input_kind!r} does not describe a results matrix")

    def tournament(self, text: str, method: str, input_kind: str = "games", trajectory: bool = False) -> List[RankReport]:
        if trajectory and not method.startswith("iterate:"):
            raise InputError("--trajectory needs --method iterate:<k>")
        A, labels = self._load_results(text, input_kind)
        if method == "rowsum":
            reports = [self.ranker.row_sum_score(A, labels)]
        elif method == "wei":
            reports = [self.ranker.wei_score(A, labels)]
        elif method == "landau":
            reports = [self.ranker.landau_score(A, labels=labels)]
        elif method.startswith("iterate:"):
            k = parse_iterate(method)
            if trajectory:
                reports = self.ranker.kendall_trajectory(A, k, labels)
            else:
                reports = [self.ranker.kendall_score(A, k, labels)]
        else:
            raise InputError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
        return self._persist(reports)

    def web(self, text: str) -> List[RankReport]:
        return self._persist([pagerank(parse_edges(text), self.params, self.ranker.tie_tol)])

    def analyze(self, text: str, input_kind: str = "games") -> List[RankReport]:
        """Diagnostics only: SCC count, irreducibility, dangling columns, round-robin validation."""
        if input_kind == "edges":
            g = parse_edges(text)
            labels, diagnostics = g.pages, link_diagnostics(g)
        else:
            A, labels = self._load_results(text, input_kind)
            diagnostics = self.ranker.diagnose(A, labels)
            labels = labels or default_labels(A.n)
        report = RankReport(
            method="analyze",
            labels=tuple(labels),
            scores=None,
            shares=None,
            ranking=(),
            diagnostics=diagnostics,
        )
        return self._persist([report])

    def _persist(self, reports: List[RankReport]) -> List[RankReport]:
        if self.db_path:
            for report in reports:
                save_report(report, self.db_path)
        return reports


def parse_iterate(method: str) -> int:
    try:
        k = int(method.split(":", 1)[1])
    except ValueError:
        raise InputError(f"bad method {method!r}; expected iterate:<k>") from None
    if k < 1:
        raise InputError(f"iterate:<k> needs k >= 1, got {k}")
    return k


def parse_schedule(text: str) -> Tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise InputError(f"bad ε schedule {text!r}; expected a comma separated list") from None


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 1); exit 2 means non-convergence."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json", help="report format (default: json)")
    common.add_argument("--tol", type=float, default=config.TOL, help="power-method step tolerance")
    common.add_argument("--max-iter", type=int, default=config.MAX_ITER, help="power-method product budget")
    common.add_argument("--tie-tol", type=float, default=config.TIE_TOL, help="relative tie tolerance for ranks")
    common.add_argument("--epsilon-schedule", default=None,
                        help="strictly decreasing comma list of ε for the Landau limit")
    common.add_argument("--strict", action=argparse.BooleanOptionalAction, default=True,
                        help="reject repeated pairings (--no-strict sums them)")
    common.add_argument("--input-file", default=None, help="read input from this file instead of stdin")
    common.add_argument("--db", default=config.DATABASE_PATH, help="append the report to this SQLite history")
    common.add_argument("--prize-pool", type=float, default=None, help="table format: split this pool by share")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug (stderr)")

    parser = _Parser(prog="rank", description="Rank tournament participants and web pages by dominant eigenvectors.")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tournament", parents=[common], help="rank players from game results")
    t.add_argument("--method", default="landau", help="rowsum | wei | iterate:<k> | landau (default)")
    t.add_argument("--scheme", default="chess", help="chess | football | <w>,<d>,<l>")
    t.add_argument("--input", choices=("games", "matrix"), default="games", dest="input_kind")
    t.add_argument("--trajectory", action="store_true", help="with iterate:<k>, one report per k = 1..k")

    w = sub.add_parser("web", parents=[common], help="PageRank of an edge list")
    w.add_argument("--alpha", type=float, default=config.ALPHA,
                   help="teleport weight α in G = (1-α)S + α/n; conventional damping d = 1-α (default 0.15)")

    a = sub.add_parser("analyze", parents=[common], help="diagnostics only")
    a.add_argument("--input", choices=("games", "matrix", "edges"), default="games", dest="input_kind")
    a.add_argument("--scheme", default="chess", help="chess | football | <w>,<d>,<l>")
    return parser


def _read_input(path: Optional[str]) -> str:
    if path is None:
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from e


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Runs one command; returns 0 (ok), 1 (input error) or 2 (not converged)."""
    try:
        args = build_parser().parse_args(argv)
        set_verbosity(args.verbose)

        scheme = ScoringScheme.parse(args.scheme) if hasattr(args, "scheme") else CHESS
        options = LandauOptions(
            tol=args.tol,
            max_iter=args.max_iter,
            epsilon_schedule=parse_schedule(args.epsilon_schedule) if args.epsilon_schedule else config.EPSILON_SCHEDULE,
            progress=args.verbose > 0,
        )
        runner = RankForgeRunner(
            ranker=TournamentRanker(scheme, args.tie_tol, options),
            params=GoogleParams(alpha=getattr(args, "alpha", config.ALPHA), tol=args.tol, max_iter=args.max_iter),
            strict=args.strict,
            db_path=args.db,
        )

        text = _read_input(args.input_file)
        if args.command == "tournament":
            reports = runner.tournament(text, args.method, args.input_kind, args.trajectory)
        elif args.command == "web":
            reports = runner.web(text)
        else:
            reports = runner.analyze(text, args.input_kind)

        if len(reports) == 1:
            sys.stdout.write(emit_report(reports[0], args.format, args.prize_pool))
        else:
            sys.stdout.write(emit_reports(reports, args.format, args.prize_pool))
    except InputError as e:
        logger.error("%s", e)
        return EXIT_INPUT
    except ConvergenceError as e:
        logger.error("%s", e)
        return EXIT_NOT_CONVERGED
    except RankForgeError as e:
        logger.error("%s", e)
        return EXIT_INPUT

    if not all(r.converged for r in reports):
        logger.warning("computation did not converge")
        return EXIT_NOT_CONVERGED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
