# rankforge/records.py

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from rankforge.errors import InputError
from rankforge.matrix import ScoreVector


@dataclass(frozen=True)
class ScoringScheme:
    """
    Points awarded per game: win > draw >= loss >= 0.

    chess = (1, ½, 0); football = (3, 1, 0).
    """
    win: float
    draw: float
    loss: float
    name: str = field(default="custom", compare=False)

    def __post_init__(self) -> None:
        values = (self.win, self.draw, self.loss)
        if not all(math.isfinite(v) for v in values):
            raise InputError(f"scoring scheme must be finite, got {values}")
        if not (self.win > self.draw >= self.loss >= 0):
            raise InputError(f"scoring scheme needs win > draw >= loss >= 0, got {values}")

    @classmethod
    def parse(cls, text: str) -> "ScoringScheme":
        """'chess', 'football' or '<w>,<d>,<l>'."""
        key = text.strip().lower()
        if key in SCHEMES:
            return SCHEMES[key]
        parts = [p.strip() for p in key.split(",")]
        if len(parts) != 3:
            raise InputError(f"unknown scoring scheme {text!r}")
        try:
            win, draw, loss = (float(p) for p in parts)
        except ValueError:
            raise InputError(f"unknown scoring scheme {text!r}") from None
        return cls(win, draw, loss)

    @property
    def decisive_total(self) -> float:
        return self.win + self.loss

    @property
    def drawn_total(self) -> float:
        return 2 * self.draw


CHESS = ScoringScheme(1.0, 0.5, 0.0, name="chess")
FOOTBALL = ScoringScheme(3.0, 1.0, 0.0, name="football")
SCHEMES = {"chess": CHESS, "football": FOOTBALL}


class GameResult(str, Enum):
    """Outcome from white's perspective."""
    WIN = "win"
    LOSS = "loss"
    DRAW = "draw"


@dataclass(frozen=True)
class GameRecord:
    white: str
    black: str
    result: GameResult

    def __post_init__(self) -> None:
        if self.white == self.black:
            raise InputError(f"self-game: {self.white!r} cannot play itself")


@dataclass(frozen=True)
class Violation:
    """
    One failed round-robin check.

    kind: "diagonal" (a_ii != 0), "pair" (a_ij + a_ji not a legal game total)
    or "missing" (i and j never met). Indices are 0-based.
    """
    kind: str
    i: int
    j: int
    value: float
    message: str


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: Tuple[Violation, ...] = ()
    scheme: str = "chess"


class SpectralStatus(str, Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS = "MaxIterations"
    ZERO_ITERATE = "ZeroIterate"
    OSCILLATING = "Oscillating"


@dataclass(frozen=True)
class RankEntry:
    participant: str
    index: int
    rank: int
    tie_group: int


@dataclass(frozen=True)
class Diagnostics:
    irreducible: bool
    scc_count: int
    dangling: Tuple[str, ...] = ()
    validation: Optional[ValidationReport] = None


@dataclass(frozen=True)
class Convergence:
    """
    How a report's numbers were obtained.

    Atributos:
      - iterations: power-method steps (None for closed-form methods).
      - status: SpectralStatus of the run that produced the scores.
      - epsilon_used: ε of the accepted perturbed matrix; for a refined
        result, the ε whose run confirmed the unperturbed eigenpair.
      - perturbation: "decisive-pairs" or "uniform" on the ε path.
      - resolution: "stabilised" or "refined" on the ε path.
      - residual: ||M·v - λ·v||₁ of the returned vector.
    """
    iterations: Optional[int] = None
    status: Optional[SpectralStatus] = None
    epsilon_used: Optional[float] = None
    perturbation: Optional[str] = None
    resolution: Optional[str] = None
    residual: Optional[float] = None


@dataclass(frozen=True)
class RankReport:
    """
    Aggregated ranking of one method over one input.

    Atributos:
      - method: "rowsum", "wei", "iterate:<k>", "landau", "pagerank" or "analyze".
      - labels: participant identifiers in input order.
      - scores: raw scores (None for diagnostics-only reports).
      - shares: scores normalized to sum 1; None when the raw scores sum to 0.
      - ranking: entries in display order (rank, then index).
      - eigenvalue: λ for eigenvector methods.
      - flags: notes such as "zero-scores" or "zero-iterate".
    """
    method: str
    labels: Tuple[str, ...]
    scores: Optional[ScoreVector]
    shares: Optional[ScoreVector]
    ranking: Tuple[RankEntry, ...]
    diagnostics: Diagnostics
    eigenvalue: Optional[float] = None
    convergence: Convergence = field(default_factory=Convergence)
    flags: Tuple[str, ...] = ()

    @property
    def converged(self) -> bool:
        if "epsilon-limit-diverged" in self.flags:
            return False
        return self.convergence.status not in (SpectralStatus.MAX_ITERATIONS, SpectralStatus.OSCILLATING)

    def rank_of(self, participant: str) -> int:
        for entry in self.ranking:
            if entry.participant == participant:
                return entry.rank
        raise KeyError(participant)
