import importlib.util
from pathlib import Path

import pytest

SCRIPT = Path(__file__).resolve().parent.parent / "scripts" / "reproduce_examples.py"


@pytest.fixture(scope="module")
def script():
    spec = importlib.util.spec_from_file_location("reproduce_examples", SCRIPT)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def test_every_worked_example_reproduces(script):
    checks = script.reproduce()
    assert len(checks) == len(script.CHECKS)
    failed = [f"{c.name}: {c.detail}" for c in checks if not c.passed]
    assert failed == []


def test_dry_run(script):
    checks = script.reproduce(dry_run=True)
    assert [c.name for c in checks] == [name for name, _ in script.CHECKS]
    assert all(c.passed is None for c in checks)
