import io
import json

import numpy as np
import pandas as pd
import pytest

from rankforge.errors import InputError
from rankforge.matrix import NonNegMatrix
from rankforge.parsers import parse_matrix
from rankforge.reporting import (
    CSV_COLUMNS,
    emit_report,
    emit_reports,
    format_matrix,
    report_from_json,
    report_to_dict,
)
from rankforge.web import GoogleParams, pagerank


@pytest.fixture
def landau_a1(ranker, a1):
    return ranker.landau_score(a1)


def test_json_key_order(landau_a1):
    doc = report_to_dict(landau_a1)
    assert list(doc) == [
        "method", "eigenvalue", "converged", "iterations", "epsilon_used", "scores", "diagnostics",
        "status", "perturbation", "resolution", "residual", "flags",
    ]
    assert list(doc["scores"][0]) == ["id", "score", "share", "rank", "tie_group"]
    assert list(doc["diagnostics"]) == ["irreducible", "scc_count", "dangling", "validation"]
    assert [row["id"] for row in doc["scores"]] == ["1", "2", "3"]
    assert doc["diagnostics"]["validation"] == {"valid": True, "violations": [], "scheme": "chess"}


def test_json_round_trip(ranker, landau_a1, kendall, patent_graph):
    reports = [
        landau_a1,
        ranker.row_sum_score(kendall),
        ranker.row_sum_score(NonNegMatrix.zeros(2)),
        pagerank(patent_graph),
    ]
    for report in reports:
        assert report_from_json(emit_report(report, "json")) == report


def test_json_violations(ranker, kendall):
    doc = json.loads(emit_report(ranker.row_sum_score(kendall)))
    violations = doc["diagnostics"]["validation"]["violations"]
    assert len(violations) == 6
    assert violations[0]["kind"] == "diagonal"
    assert violations[0]["value"] == 0.5


@pytest.mark.parametrize("text", ["not json", "{}", '{"scores": [{"id": "a"}]}'])
def test_json_rejects_bad_documents(text):
    with pytest.raises(InputError):
        report_from_json(text)


def test_table(landau_a1):
    out = emit_report(landau_a1, "table")
    assert "landau" in out
    assert "0.666667" in out
    assert "0.166667" in out
    assert "decisive-pairs, refined" in out
    assert "irreducible: False" in out


def test_table_prize_column(landau_a1):
    out = emit_report(landau_a1, "table", prize_pool=600)
    assert "prize" in out
    assert "400.00" in out
    assert "100.00" in out


def test_table_keeps_brackets_in_names(ranker, a1):
    out = emit_report(ranker.row_sum_score(a1, labels=["[bold]x", "y", "z"]), "table")
    assert "[bold]x" in out


def test_csv_patent(patent_graph):
    out = emit_report(pagerank(patent_graph, GoogleParams(alpha=0.0)), "csv")
    frame = pd.read_csv(io.StringIO(out), dtype={"participant": str})
    assert list(frame.columns) == CSV_COLUMNS
    assert frame["participant"].tolist() == ["A", "C", "B"]
    assert frame["rank"].tolist() == [1, 1, 3]
    assert frame["share"].to_numpy() == pytest.approx([0.4, 0.4, 0.2], abs=1e-9)


def test_csv_single_row(ranker):
    out = emit_report(ranker.row_sum_score(NonNegMatrix.dense([[0.0]])), "csv")
    assert out.splitlines() == ["rank,participant,score,share", "1,1,0.0,1.0"]


def test_csv_trajectory(ranker, kendall):
    out = emit_reports(ranker.kendall_trajectory(kendall, 3), "csv")
    frame = pd.read_csv(io.StringIO(out))
    assert list(frame.columns) == ["k"] + CSV_COLUMNS
    assert frame["k"].tolist() == [1] * 6 + [2] * 6 + [3] * 6
    third = frame[frame["k"] == 3]
    assert third.iloc[2]["participant"] == 4
    assert third.iloc[2]["score"] == 16.875


def test_json_trajectory(ranker, kendall):
    docs = json.loads(emit_reports(ranker.kendall_trajectory(kendall, 2), "json"))
    assert [d["method"] for d in docs] == ["iterate:1", "iterate:2"]


def test_unknown_format(landau_a1):
    with pytest.raises(InputError):
        emit_report(landau_a1, "xml")
    with pytest.raises(InputError):
        emit_reports([landau_a1], "xml")


def test_format_matrix_round_trip(rng, kendall):
    assert parse_matrix(format_matrix(kendall)) == kendall
    for _ in range(20):
        n = int(rng.integers(1, 8))
        a = rng.random((n, n)) * (rng.random((n, n)) < 0.6) * 10.0 ** float(rng.integers(-6, 6))
        M = NonNegMatrix.dense(a)
        assert np.array_equal(parse_matrix(format_matrix(M)).to_dense(), a)
