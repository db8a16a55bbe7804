import numpy as np
import pytest

from rankforge import worked_examples as ex
from rankforge.matrix import NonNegMatrix
from rankforge.parsers import parse_edges
from rankforge.tournament import TournamentRanker


@pytest.fixture
def round_robin_a():
    return NonNegMatrix.dense(ex.ROUND_ROBIN_A)


@pytest.fixture
def a1():
    return NonNegMatrix.dense(ex.ROUND_ROBIN_A1)


@pytest.fixture
def a2():
    return NonNegMatrix.dense(ex.ROUND_ROBIN_A2)


@pytest.fixture
def kendall():
    return NonNegMatrix.dense(ex.KENDALL)


@pytest.fixture
def patent_graph():
    return parse_edges(ex.PATENT_EDGES)


@pytest.fixture
def ranker():
    return TournamentRanker()


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


def random_round_robin(rng, n, scheme=(1.0, 0.5, 0.0)):
    """Complete round robin with random outcomes under (win, draw, loss)."""
    win, draw, loss = scheme
    a = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            outcome = rng.integers(3)
            if outcome == 0:
                a[i, j], a[j, i] = win, loss
            elif outcome == 1:
                a[i, j], a[j, i] = loss, win
            else:
                a[i, j] = a[j, i] = draw
    return a


def random_primitive(rng, n):
    """Nonnegative matrix with a positive diagonal and a Hamiltonian cycle: irreducible and aperiodic."""
    a = rng.random((n, n)) * (rng.random((n, n)) < 0.4)
    perm = rng.permutation(n)
    for k in range(n):
        a[perm[(k + 1) % n], perm[k]] += 0.5 + rng.random()
    a[np.diag_indices(n)] += 0.5 + rng.random(n)
    return a


@pytest.fixture
def make_round_robin(rng):
    return lambda n, scheme=(1.0, 0.5, 0.0): random_round_robin(rng, n, scheme)


@pytest.fixture
def make_primitive(rng):
    return lambda n: random_primitive(rng, n)
