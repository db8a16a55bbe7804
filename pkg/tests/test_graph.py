import itertools

import numpy as np

from rankforge.graph import dangling_columns, is_irreducible, strongly_connected_components, validate_round_robin
from rankforge.matrix import NonNegMatrix
from rankforge.records import CHESS, FOOTBALL
from rankforge.web import hyperlink_matrix


def reachability(b):
    """Transitive closure of j → i for b[i][j] > 0, reflexive."""
    n = len(b)
    reach = np.eye(n, dtype=bool) | (b.T > 0)
    for k in range(n):
        reach = reach | (reach[:, [k]] & reach[[k], :])
    return reach


def brute_force_components(b):
    reach = reachability(b)
    mutual = reach & reach.T
    seen, comps = set(), set()
    for v in range(len(b)):
        if v not in seen:
            comp = frozenset(np.flatnonzero(mutual[v]).tolist())
            seen |= comp
            comps.add(comp)
    return comps, reach


def test_scc_a2_singletons(a2):
    # edges run column to row, so the class of player 3 comes first
    assert strongly_connected_components(a2) == [frozenset({2}), frozenset({1}), frozenset({0})]


def test_scc_patent(patent_graph):
    assert strongly_connected_components(hyperlink_matrix(patent_graph)) == [frozenset({0, 1, 2})]


def test_scc_a1(a1):
    assert strongly_connected_components(a1) == [frozenset({1, 2}), frozenset({0})]


def test_is_irreducible_examples(a2, patent_graph, round_robin_a):
    assert not is_irreducible(a2)
    assert is_irreducible(hyperlink_matrix(patent_graph))
    assert is_irreducible(round_robin_a)
    assert is_irreducible(NonNegMatrix.zeros(1))


def test_dangling_columns(a2, patent_graph):
    assert dangling_columns(a2) == {0}
    assert dangling_columns(hyperlink_matrix(patent_graph)) == frozenset()
    assert dangling_columns(NonNegMatrix.zeros(2)) == {0, 1}


def test_validate_round_robin_examples(round_robin_a, kendall):
    assert validate_round_robin(round_robin_a, CHESS).valid

    report = validate_round_robin(kendall, CHESS)
    assert not report.valid
    assert {v.kind for v in report.violations} == {"diagonal"}
    assert len(report.violations) == 6

    report = validate_round_robin(NonNegMatrix.dense([[0, 1], [1, 0]]), CHESS)
    assert not report.valid
    assert [(v.kind, v.i, v.j, v.value) for v in report.violations] == [("pair", 0, 1, 2.0)]


def test_validate_missing_pairing():
    report = validate_round_robin(NonNegMatrix.dense([[0, 1, 0], [0, 0, 1], [0, 0, 0]]))
    assert [(v.kind, v.i, v.j) for v in report.violations] == [("missing", 0, 2)]


def test_validate_football():
    football = NonNegMatrix.dense([[0, 3, 1], [0, 0, 3], [1, 0, 0]])
    assert validate_round_robin(football, FOOTBALL).valid
    assert not validate_round_robin(football, CHESS).valid


def test_scc_matches_reachability(rng):
    for _ in range(500):
        n = int(rng.integers(1, 13))
        b = (rng.random((n, n)) < rng.uniform(0.05, 0.4)).astype(float)
        components = strongly_connected_components(NonNegMatrix.dense(b))
        expected, reach = brute_force_components(b)

        assert set(components) == expected
        assert sorted(v for c in components for v in c) == list(range(n))
        # topological: nothing in a later component reaches an earlier one
        for a, later in itertools.combinations(range(len(components)), 2):
            u = next(iter(components[later]))
            v = next(iter(components[a]))
            assert not reach[u, v]


def test_scc_tie_break_by_smallest_index():
    # three isolated nodes: no edges, order is by index
    assert strongly_connected_components(NonNegMatrix.zeros(3)) == [frozenset({0}), frozenset({1}), frozenset({2})]


def test_irreducible_matches_power_oracle(rng):
    for _ in range(300):
        n = int(rng.integers(1, 11))
        a = rng.random((n, n)) * (rng.random((n, n)) < rng.uniform(0.1, 0.5))
        b = (a > 0).astype(np.int64)
        oracle = np.all(np.linalg.matrix_power(np.eye(n, dtype=np.int64) + b, max(n - 1, 0)) > 0)
        M = NonNegMatrix.dense(a)
        assert is_irreducible(M) == bool(oracle or n == 1)
        assert is_irreducible(M.as_sparse()) == is_irreducible(M)
        assert is_irreducible(NonNegMatrix.dense(a * 7.5)) == is_irreducible(M)
        if is_irreducible(M) and n >= 2:
            assert dangling_columns(M) == frozenset()
