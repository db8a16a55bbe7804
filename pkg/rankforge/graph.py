# rankforge/graph.py

import heapq
import itertools
from typing import Dict, FrozenSet, List, Set

from rankforge.matrix import NonNegMatrix
from rankforge.records import CHESS, ScoringScheme, ValidationReport, Violation

# Relative slack when comparing a_ij + a_ji to a legal game total
_PAIR_TOL = 1e-12


def _successors(M: NonNegMatrix) -> List[List[int]]:
    """Adjacency of the digraph with an edge j → i whenever M[i][j] > 0."""
    succ: List[List[int]] = [[] for _ in range(M.n)]
    for i, j in M.positive_pattern():
        if i != j:
            succ[j].append(i)
    for nbrs in succ:
        nbrs.sort()
    return succ


def _tarjan(succ: List[List[int]]) -> List[Set[int]]:
    """
    Non-recursive Tarjan. Components come out in reverse topological order
    of the condensation (sinks first).
    """
    counter = itertools.count()
    index: Dict[int, int] = {}
    lowlink: Dict[int, int] = {}
    on_stack: Set[int] = set()
    stack: List[int] = []
    components: List[Set[int]] = []

    for root in range(len(succ)):
        if root in index:
            continue
        index[root] = lowlink[root] = next(counter)
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(succ[root]))]
        while work:
            v, nbrs = work[-1]
            advanced = False
            for w in nbrs:
                if w not in index:
                    index[w] = lowlink[w] = next(counter)
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                scc = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    scc.add(w)
                    if w == v:
                        break
                components.append(scc)
    return components


def strongly_connected_components(M: NonNegMatrix) -> List[FrozenSet[int]]:
    """
    Strongly connected components of the digraph of M (edge j → i when
    M[i][j] > 0), 0-based, listed in topological order of the condensation.
    Among components that are ready at the same time the one holding the
    smallest index comes first.
    """
    succ = _successors(M)
    components = _tarjan(succ)

    owner = {}
    for c, scc in enumerate(components):
        for v in scc:
            owner[v] = c

    indegree = [0] * len(components)
    edges: List[Set[int]] = [set() for _ in components]
    for v, nbrs in enumerate(succ):
        for w in nbrs:
            a, b = owner[v], owner[w]
            if a != b and b not in edges[a]:
                edges[a].add(b)
                indegree[b] += 1

    ready = [(min(components[c]), c) for c in range(len(components)) if indegree[c] == 0]
    heapq.heapify(ready)
    ordered: List[FrozenSet[int]] = []
    while ready:
        _, c = heapq.heappop(ready)
        ordered.append(frozenset(components[c]))
        for d in edges[c]:
            indegree[d] -= 1
            if indegree[d] == 0:
                heapq.heappush(ready, (min(components[d]), d))
    return ordered


def is_irreducible(M: NonNegMatrix) -> bool:
    """
    True iff the digraph of M is strongly connected. A 1×1 matrix counts as
    irreducible whatever its entry.
    """
    if M.n == 1:
        return True
    return len(strongly_connected_components(M)) == 1


def dangling_columns(M: NonNegMatrix) -> FrozenSet[int]:
    """0-based indices of the all-zero columns (pages without outlinks)."""
    return frozenset(j for j in range(M.n) if len(M.column(j)[0]) == 0)


def validate_round_robin(M: NonNegMatrix, scheme: ScoringScheme = CHESS) -> ValidationReport:
    """
    Checks that M reads as a single round robin under the scheme:
    zero diagonal, and a_ij + a_ji equal to win+loss or 2·draw for i != j.
    Violations are reported, never raised.
    """
    dense = M.to_dense()
    n = M.n
    violations: List[Violation] = []

    for i in range(n):
        if dense[i, i] != 0.0:
            violations.append(Violation("diagonal", i, i, float(dense[i, i]),
                                        f"diagonal entry {i + 1} is {dense[i, i]:g}, expected 0"))

    legal = (scheme.decisive_total, scheme.drawn_total)
    slack = _PAIR_TOL * max(1.0, scheme.win)
    for i in range(n):
        for j in range(i + 1, n):
            total = float(dense[i, j] + dense[j, i])
            if any(abs(total - t) <= slack for t in legal):
                continue
            if dense[i, j] == 0.0 and dense[j, i] == 0.0:
                violations.append(Violation("missing", i, j, 0.0,
                                            f"players {i + 1} and {j + 1} never met"))
            else:
                violations.append(Violation("pair", i, j, total,
                                            f"a[{i + 1}][{j + 1}] + a[{j + 1}][{i + 1}] = {total:g}, "
                                            f"expected {legal[0]:g} or {legal[1]:g}"))

    return ValidationReport(valid=not violations, violations=tuple(violations), scheme=scheme.name)
