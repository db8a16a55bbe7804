import io
import json

import pandas as pd
import pytest

import main
from rankforge import worked_examples as ex
from rankforge.persistence import load_reports


@pytest.fixture
def write(tmp_path):
    def _write(text, name="input.txt"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write


def run(capsys, *argv):
    code = main.main(list(argv))
    return code, capsys.readouterr().out


def test_landau_from_games(capsys, write):
    code, out = run(capsys, "tournament", "--input-file", write(ex.A1_GAMES))
    assert code == main.EXIT_OK
    doc = json.loads(out)
    assert doc["method"] == "landau"
    assert [row["id"] for row in doc["scores"]] == ["p1", "p2", "p3"]
    assert [row["share"] for row in doc["scores"]] == pytest.approx([2 / 3, 1 / 6, 1 / 6], abs=1e-9)
    assert doc["resolution"] == "refined"


def test_games_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(ex.A_GAMES))
    code, out = run(capsys, "tournament", "--method", "rowsum")
    assert code == main.EXIT_OK
    assert [row["score"] for row in json.loads(out)["scores"]] == [1.5, 1.0, 0.5]


def test_analyze_matrix(capsys, write):
    code, out = run(capsys, "analyze", "--input", "matrix", "--input-file", write("0 1 1\n0 0 1\n0 0 0\n"))
    assert code == main.EXIT_OK
    doc = json.loads(out)
    assert doc["method"] == "analyze"
    assert doc["diagnostics"]["irreducible"] is False
    assert doc["diagnostics"]["scc_count"] == 3
    assert doc["diagnostics"]["dangling"] == ["1"]
    assert doc["diagnostics"]["validation"]["valid"] is True


def test_analyze_edges(capsys, write):
    code, out = run(capsys, "analyze", "--input", "edges", "--input-file", write(ex.PATENT_EDGES))
    assert code == main.EXIT_OK
    assert json.loads(out)["diagnostics"]["irreducible"] is True


def test_web_csv(capsys, write):
    code, out = run(capsys, "web", "--alpha", "0", "--format", "csv", "--input-file", write(ex.PATENT_EDGES))
    assert code == main.EXIT_OK
    frame = pd.read_csv(io.StringIO(out))
    assert frame["participant"].tolist() == ["A", "C", "B"]


def test_trajectory_csv(capsys, write):
    code, out = run(capsys, "tournament", "--input", "matrix", "--method", "iterate:3", "--trajectory",
                    "--format", "csv", "--input-file", write(ex.KENDALL_TEXT))
    assert code == main.EXIT_OK
    assert len(out.splitlines()) == 1 + 18


def test_table_with_prize_pool(capsys, write):
    code, out = run(capsys, "tournament", "--format", "table", "--prize-pool", "600",
                    "--input-file", write(ex.A1_GAMES))
    assert code == main.EXIT_OK
    assert "400.00" in out


def test_not_converged_exits_two(capsys, write):
    code, out = run(capsys, "tournament", "--input", "matrix", "--max-iter", "1",
                    "--input-file", write("0 1 1/2\n0 0 1\n1/2 0 0\n"))
    assert code == main.EXIT_NOT_CONVERGED
    assert json.loads(out)["status"] == "MaxIterations"


@pytest.mark.parametrize("argv", [
    ["tournament", "--method", "landau", "--trajectory"],
    ["tournament", "--method", "borda"],
    ["tournament", "--method", "iterate:0"],
    ["tournament", "--scheme", "2,3,1"],
    ["tournament", "--epsilon-schedule", "1e-2,x"],
    ["tournament", "--epsilon-schedule", "1e-3,1e-2"],
    ["tournament", "--bogus"],
    [],
])
def test_input_errors_exit_one(capsys, write, argv):
    code, out = run(capsys, *argv, "--input-file", write(ex.A_GAMES)) if argv else run(capsys)
    assert code == main.EXIT_INPUT
    assert out == ""


def test_bad_game_file_exits_one(capsys, write):
    code, _ = run(capsys, "tournament", "--input-file", write("a,a,1-0\n"))
    assert code == main.EXIT_INPUT


def test_missing_file_exits_one(capsys, tmp_path):
    code, _ = run(capsys, "tournament", "--input-file", str(tmp_path / "nope.txt"))
    assert code == main.EXIT_INPUT


def test_reports_are_saved(capsys, write, tmp_path):
    db = str(tmp_path / "history.db")
    games = write(ex.A_GAMES)
    assert run(capsys, "tournament", "--db", db, "--input-file", games)[0] == main.EXIT_OK
    assert run(capsys, "tournament", "--db", db, "--method", "wei", "--input-file", games)[0] == main.EXIT_OK
    assert [r.method for r in load_reports(db)] == ["landau", "wei"]


def test_parse_helpers():
    assert main.parse_iterate("iterate:4") == 4
    assert main.parse_schedule("1e-2, 1e-3") == (1e-2, 1e-3)
