# rankforge/reporting.py

import io
import json
from typing import Any, Dict, Optional, Sequence

import pandas as pd
from rich.console import Console
from rich.table import Table
from rich.text import Text

from rankforge.errors import InputError
from rankforge.matrix import NonNegMatrix, ScoreVector
from rankforge.records import (
    Convergence,
    Diagnostics,
    RankEntry,
    RankReport,
    SpectralStatus,
    ValidationReport,
    Violation,
)
from rankforge.tournament import prize_split

FORMATS = ("json", "table", "csv")
CSV_COLUMNS = ["rank", "participant", "score", "share"]


# ----------------------------------------------------------------------
# JSON
# ----------------------------------------------------------------------

def report_to_dict(report: RankReport) -> Dict[str, Any]:
    """Stable key order; floats are left to json's shortest round-trip repr."""
    entries = {e.index: e for e in report.ranking}
    scores = []
    for i, label in enumerate(report.labels):
        entry = entries.get(i)
        scores.append({
            "id": label,
            "score": report.scores[i] if report.scores is not None else None,
            "share": report.shares[i] if report.shares is not None else None,
            "rank": entry.rank if entry else None,
            "tie_group": entry.tie_group if entry else None,
        })

    diag = report.diagnostics
    validation = None
    if diag.validation is not None:
        validation = {
            "valid": diag.validation.valid,
            "violations": [
                {"kind": v.kind, "i": v.i, "j": v.j, "value": v.value, "message": v.message}
                for v in diag.validation.violations
            ],
            "scheme": diag.validation.scheme,
        }

    conv = report.convergence
    return {
        "method": report.method,
        "eigenvalue": report.eigenvalue,
        "converged": report.converged,
        "iterations": conv.iterations,
        "epsilon_used": conv.epsilon_used,
        "scores": scores,
        "diagnostics": {
            "irreducible": diag.irreducible,
            "scc_count": diag.scc_count,
            "dangling": list(diag.dangling),
            "validation": validation,
        },
        "status": conv.status.value if conv.status is not None else None,
        "perturbation": conv.perturbation,
        "resolution": conv.resolution,
        "residual": conv.residual,
        "flags": list(report.flags),
    }


def report_from_dict(doc: Dict[str, Any]) -> RankReport:
    """Inverse of report_to_dict."""
    try:
        rows = doc["scores"]
        labels = tuple(row["id"] for row in rows)
        scores = None
        if rows and all(row["score"] is not None for row in rows):
            scores = ScoreVector([row["score"] for row in rows], labels)
        shares = None
        if rows and all(row["share"] is not None for row in rows):
            shares = ScoreVector([row["share"] for row in rows], labels)
        ranking = tuple(sorted(
            (RankEntry(row["id"], i, row["rank"], row["tie_group"]) for i, row in enumerate(rows) if row["rank"] is not None),
            key=lambda e: (e.rank, e.index),
        ))

        diag = doc["diagnostics"]
        validation = None
        if diag.get("validation") is not None:
            v = diag["validation"]
            validation = ValidationReport(
                valid=v["valid"],
                violations=tuple(Violation(x["kind"], x["i"], x["j"], x["value"], x["message"]) for x in v["violations"]),
                scheme=v.get("scheme", "chess"),
            )
        status = doc.get("status")
        return RankReport(
            method=doc["method"],
            labels=labels,
            scores=scores,
            shares=shares,
            ranking=ranking,
            diagnostics=Diagnostics(
                irreducible=diag["irreducible"],
                scc_count=diag["scc_count"],
                dangling=tuple(diag["dangling"]),
                validation=validation,
            ),
            eigenvalue=doc.get("eigenvalue"),
            convergence=Convergence(
                iterations=doc.get("iterations"),
                status=SpectralStatus(status) if status is not None else None,
                epsilon_used=doc.get("epsilon_used"),
                perturbation=doc.get("perturbation"),
                resolution=doc.get("resolution"),
                residual=doc.get("residual"),
            ),
            flags=tuple(doc.get("flags", ())),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"not a rank report document: {e}") from e


def report_from_json(text: str) -> RankReport:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}") from e
    return report_from_dict(doc)


# ----------------------------------------------------------------------
# Table / CSV
# ----------------------------------------------------------------------

def _fmt(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.6g}"


def _render(*renderables: Any) -> str:
    buffer = io.StringIO()
    console = Console(file=buffer, width=100, color_system=None, force_terminal=False)
    for r in renderables:
        console.print(r)
    return buffer.getvalue()


def _ranking_table(report: RankReport, prize_pool: Optional[float] = None) -> Table:
    table = Table(title=report.method)
    table.add_column("rank", justify="right")
    table.add_column("participant")
    table.add_column("score", justify="right")
    table.add_column("share", justify="right")
    prizes = dict(prize_split(report, prize_pool)) if prize_pool is not None else None
    if prizes is not None:
        table.add_column("prize", justify="right")

    for entry in report.ranking:
        row = [
            str(entry.rank),
            Text(entry.participant),
            _fmt(report.scores[entry.index] if report.scores is not None else None),
            _fmt(report.shares[entry.index] if report.shares is not None else None),
        ]
        if prizes is not None:
            row.append(f"{prizes[entry.participant]:.2f}")
        table.add_row(*row)
    return table


def _summary_lines(report: RankReport) -> str:
    diag = report.diagnostics
    conv = report.convergence
    lines = [
        f"irreducible: {diag.irreducible}  scc_count: {diag.scc_count}  "
        f"dangling: {', '.join(diag.dangling) or '-'}",
    ]
    if report.eigenvalue is not None:
        lines.append(f"eigenvalue: {_fmt(report.eigenvalue)}  converged: {report.converged}")
    if conv.status is not None:
        lines.append(f"status: {conv.status.value}  iterations: {conv.iterations}  residual: {_fmt(conv.residual)}")
    if conv.epsilon_used is not None:
        lines.append(f"epsilon: {conv.epsilon_used:g} ({conv.perturbation}, {conv.resolution or 'diverged'})")
    if diag.validation is not None:
        lines.append(f"round robin ({diag.validation.scheme}): {'valid' if diag.validation.valid else 'invalid'}")
        lines.extend(f"  {v.kind}: {v.message}" for v in diag.validation.violations)
    if report.flags:
        lines.append(f"flags: {', '.join(report.flags)}")
    return "\n".join(lines)


def _csv_frame(report: RankReport) -> pd.DataFrame:
    rows = [
        {
            "rank": entry.rank,
            "participant": entry.participant,
            "score": report.scores[entry.index] if report.scores is not None else None,
            "share": report.shares[entry.index] if report.shares is not None else None,
        }
        for entry in report.ranking
    ]
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def emit_report(report: RankReport, fmt: str = "json", prize_pool: Optional[float] = None) -> str:
    """
    Renders a report as json (stable keys), table (rich, 6 significant
    digits) or csv (rank,participant,score,share).
    """
    if fmt == "json":
        return json.dumps(report_to_dict(report), indent=2, ensure_ascii=False) + "\n"
    if fmt == "table":
        if not report.ranking:
            return _render(Text(_summary_lines(report)))
        return _render(_ranking_table(report, prize_pool), Text(_summary_lines(report)))
    if fmt == "csv":
        return _csv_frame(report).to_csv(index=False)
    raise InputError(f"unknown output format {fmt!r}; expected one of {', '.join(FORMATS)}")


def emit_reports(reports: Sequence[RankReport], fmt: str = "json", prize_pool: Optional[float] = None) -> str:
    """Several reports (a Kendall trajectory): a JSON array, stacked tables, or one csv with a leading k column."""
    if fmt == "json":
        return json.dumps([report_to_dict(r) for r in reports], indent=2, ensure_ascii=False) + "\n"
    if fmt == "table":
        return "".join(emit_report(r, "table", prize_pool) for r in reports)
    if fmt == "csv":
        frames = []
        for k, report in enumerate(reports, start=1):
            frame = _csv_frame(report)
            frame.insert(0, "k", k)
            frames.append(frame)
        return pd.concat(frames, ignore_index=True).to_csv(index=False)
    raise InputError(f"unknown output format {fmt!r}; expected one of {', '.join(FORMATS)}")


def format_matrix(M: NonNegMatrix) -> str:
    """Matrix in the parse_matrix text format, shortest round-trip decimals."""
    dense = M.to_dense()
    return "".join(" ".join(repr(float(x)) for x in row) + "\n" for row in dense)
