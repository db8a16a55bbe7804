# rankforge/web.py

import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from rankforge import config
from rankforge.errors import InputError, MalformedColumnError
from rankforge.graph import strongly_connected_components
from rankforge.matrix import NonNegMatrix, ScoreVector, StorageKind, one_vector
from rankforge.records import Convergence, Diagnostics, RankReport
from rankforge.spectral import l1_distance, power_method
from rankforge.tournament import rank_players
from rankforge.utils import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class LinkGraph:
    """
    Pages and hyperlinks.

    Atributos:
      - pages: page ids, first-appearance order (index = matrix row/column).
      - edges: {(source, target): t} with t >= 1 links from source to target.
      - dropped_self_links: self-links discarded while building.
    """
    pages: Tuple[str, ...]
    edges: Mapping[Tuple[str, str], int] = field(default_factory=dict)
    dropped_self_links: int = 0

    def __post_init__(self) -> None:
        if len(set(self.pages)) != len(self.pages):
            raise InputError("duplicate page ids")
        known = set(self.pages)
        for (src, dst), count in self.edges.items():
            if src not in known or dst not in known:
                raise InputError(f"edge {src!r} -> {dst!r} references an unknown page")
            if src == dst:
                raise InputError(f"self-link on {src!r}")
            if count < 1:
                raise InputError(f"link count must be positive, got {count} for {src!r} -> {dst!r}")
        object.__setattr__(self, "edges", dict(self.edges))

    @classmethod
    def build(cls, links: Iterable[Tuple[str, str, int]], nodes: Iterable[str] = ()) -> "LinkGraph":
        """
        Accumulates (source, target, count) triples: duplicates add up and
        self-links are dropped and counted. Declared nodes come first.
        """
        order: Dict[str, None] = dict.fromkeys(nodes)
        edges: Dict[Tuple[str, str], int] = {}
        dropped = 0
        for src, dst, count in links:
            if count < 1:
                raise InputError(f"link count must be positive, got {count} for {src!r} -> {dst!r}")
            order.setdefault(src)
            order.setdefault(dst)
            if src == dst:
                dropped += 1
                continue
            edges[(src, dst)] = edges.get((src, dst), 0) + int(count)
        if dropped:
            logger.warning("dropped %d self-link(s)", dropped)
        return cls(tuple(order), edges, dropped)

    @property
    def n(self) -> int:
        return len(self.pages)

    def index(self) -> Dict[str, int]:
        return {page: i for i, page in enumerate(self.pages)}

    def outlink_total(self) -> Dict[str, int]:
        """L_j: links leaving page j (0 for dangling pages)."""
        totals = dict.fromkeys(self.pages, 0)
        for (src, _), count in self.edges.items():
            totals[src] += count
        return totals

    def links(self, source: str, target: str) -> int:
        return self.edges.get((source, target), 0)


@dataclass(frozen=True)
class GoogleParams:
    """α is the teleport weight: G = (1-α)S + α(1/n)𝟙𝟙ᵀ, damping factor d = 1-α."""
    alpha: float = config.ALPHA
    tol: float = config.TOL
    max_iter: int = config.MAX_ITER

    def __post_init__(self) -> None:
        if not (0.0 <= self.alpha <= 1.0):
            raise InputError(f"alpha must lie in [0, 1], got {self.alpha!r}")


def hyperlink_matrix(g: LinkGraph) -> NonNegMatrix:
    """H[i][j] = t_ij / L_j, sparse CSC; columns of dangling pages stay empty."""
    if g.n < 1:
        raise InputError("link graph has no pages")
    idx = g.index()
    totals = g.outlink_total()
    entries = {
        (idx[dst], idx[src]): count / totals[src]
        for (src, dst), count in g.edges.items()
    }
    return NonNegMatrix.from_entries(g.n, entries, StorageKind.SPARSE)


def random_jump_distribution(H: NonNegMatrix) -> ScoreVector:
    """(1/n)·H𝟙: chance of reaching page i by following one link out of a uniformly chosen page."""
    x = H.matvec(one_vector(H.n))
    return ScoreVector(x.values / H.n, x.labels)


@dataclass(frozen=True)
class StochasticOperator:
    """
    S = H with every dangling column replaced by (1/n)𝟙, applied implicitly:
    S·x = H·x + (1/n)(Σ_{j dangling} x_j)𝟙.

    A column counts as dangling when it has no entry; every other column
    must sum to 1 within config.COLUMN_SUM_TOL.
    """
    H: NonNegMatrix
    dangling: FrozenSet[int] = field(init=False)

    def __post_init__(self) -> None:
        dangling = set()
        for j, total in enumerate(self.H.column_sums()):
            if len(self.H.column(j)[0]) == 0:
                dangling.add(j)
            elif abs(total - 1.0) > config.COLUMN_SUM_TOL:
                raise MalformedColumnError(j, float(total))
        object.__setattr__(self, "dangling", frozenset(dangling))

    @property
    def n(self) -> int:
        return self.H.n

    def matvec(self, x: ScoreVector) -> ScoreVector:
        hx = self.H.matvec(x)
        if not self.dangling:
            return hx
        mass = math.fsum(x.values[j] for j in sorted(self.dangling))
        if mass == 0.0:
            return hx
        return ScoreVector(hx.values + mass / self.n, hx.labels)

    def to_matrix(self) -> NonNegMatrix:
        """S materialized (sparse); for diagnostics and test oracles."""
        s = self.H.to_dense()
        for j in self.dangling:
            s[:, j] = 1.0 / self.n
        return NonNegMatrix.sparse(s)


def stochastic_fix(H: NonNegMatrix) -> StochasticOperator:
    return StochasticOperator(H)


def google_matvec(S: StochasticOperator, alpha: float, x: ScoreVector) -> ScoreVector:
    """(1-α)·S·x + α·(1/n)·(Σx)·𝟙 without forming G."""
    if not (0.0 <= alpha <= 1.0):
        raise InputError(f"alpha must lie in [0, 1], got {alpha!r}")
    sx = S.matvec(x)
    if alpha == 0.0:
        return sx
    teleport = alpha * x.total / S.n
    return ScoreVector((1.0 - alpha) * sx.values + teleport, sx.labels)


@dataclass(frozen=True)
class GoogleOperator:
    """The Google matrix as a LinearMap for power_method."""
    S: StochasticOperator
    alpha: float

    @property
    def n(self) -> int:
        return self.S.n

    def matvec(self, x: ScoreVector) -> ScoreVector:
        return google_matvec(self.S, self.alpha, x)

    def to_matrix(self) -> np.ndarray:
        """Dense G; only sensible for small n."""
        s = self.S.to_matrix().to_dense()
        return (1.0 - self.alpha) * s + self.alpha / self.n


def link_diagnostics(g: LinkGraph, S: Optional[StochasticOperator] = None) -> Diagnostics:
    """Irreducibility and SCCs of the support of S, and the dangling pages."""
    S = S or stochastic_fix(hyperlink_matrix(g))
    components = strongly_connected_components(S.to_matrix())
    return Diagnostics(
        irreducible=g.n == 1 or len(components) == 1,
        scc_count=len(components),
        dangling=tuple(g.pages[j] for j in sorted(S.dangling)),
    )


def pagerank(g: LinkGraph, p: Optional[GoogleParams] = None, tie_tol: float = config.TIE_TOL) -> RankReport:
    """
    Rank vector of the link graph: the power method on the implicit Google
    operator from 𝟙/n. The eigenvalue is reported as 1 (G is column-stochastic)
    and the measured ||G·r - r||₁ goes to convergence.residual.
    """
    p = p or GoogleParams()
    H = hyperlink_matrix(g)
    S = stochastic_fix(H)
    G = GoogleOperator(S, p.alpha)
    labels = g.pages

    res = power_method(G, one_vector(g.n, labels), p.tol, p.max_iter)
    rank = res.vector
    residual = l1_distance(G.matvec(rank), rank)

    diagnostics = link_diagnostics(g, S)
    if not diagnostics.irreducible and p.alpha == 0.0:
        logger.info("alpha = 0 on a reducible link structure; the rank vector may depend on the start vector")

    flags: List[str] = []
    if g.dropped_self_links:
        flags.append(f"dropped-self-links:{g.dropped_self_links}")

    return RankReport(
        method="pagerank",
        labels=labels,
        scores=rank,
        shares=rank,
        ranking=rank_players(rank, tie_tol),
        diagnostics=diagnostics,
        eigenvalue=1.0,
        convergence=Convergence(iterations=res.iterations, status=res.status, residual=residual),
        flags=tuple(flags),
    )
