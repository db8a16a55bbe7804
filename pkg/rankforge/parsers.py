# rankforge/parsers.py

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Sequence, TextIO, Tuple, Union

import numpy as np

from rankforge.errors import InvalidMatrixError, ParseError
from rankforge.matrix import NonNegMatrix
from rankforge.records import CHESS, GameRecord, GameResult, ScoringScheme
from rankforge.utils import get_logger
from rankforge.web import LinkGraph

logger = get_logger(__name__)

Source = Union[str, TextIO]

# Result tokens, white's perspective
RESULT_TOKENS: Dict[str, GameResult] = {
    "1-0": GameResult.WIN,
    "0-1": GameResult.LOSS,
    "1/2-1/2": GameResult.DRAW,
    "½-½": GameResult.DRAW,
    "1": GameResult.WIN,
    "0": GameResult.LOSS,
    "0.5": GameResult.DRAW,
    "=": GameResult.DRAW,
}

_HEADER = ("white", "black", "result")


@dataclass(frozen=True)
class GameTable:
    """Results matrix built from a game list, plus the participants and the games it came from."""
    matrix: NonNegMatrix
    labels: Tuple[str, ...]
    games: Tuple[GameRecord, ...]


def _lines(source: Source) -> List[Tuple[int, str]]:
    """(1-based line number, stripped line) for every line that is not blank or a # comment."""
    text = source.read() if hasattr(source, "read") else source
    out = []
    for number, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((number, line))
    return out


def parse_games(source: Source, scheme: ScoringScheme = CHESS, strict: bool = True) -> GameTable:
    """
    Reads `white,black,result` lines into A[i][j] = points of i against j.

    Participants are indexed by first appearance. An optional
    `white,black,result` header is skipped. In strict mode a pairing may
    appear once; otherwise repeated pairings add up (double round robin).
    """
    labels: Dict[str, int] = {}
    games: List[GameRecord] = []
    seen: Dict[FrozenSet[str], int] = {}
    points: Dict[Tuple[int, int], float] = {}

    rows = _lines(source)
    for position, (number, line) in enumerate(rows):
        fields = [f.strip() for f in next(csv.reader([line]))]
        if position == 0 and tuple(f.lower() for f in fields) == _HEADER:
            continue
        if len(fields) != 3:
            raise ParseError(f"expected white,black,result, got {line!r}", line=number)
        white, black, token = fields
        if not white or not black:
            raise ParseError("empty participant id", line=number)
        if token not in RESULT_TOKENS:
            raise ParseError(f"unknown result token {token!r}", line=number)
        if white == black:
            raise ParseError(f"self-game: {white!r} cannot play itself", line=number)

        pair = frozenset((white, black))
        if strict and pair in seen:
            raise ParseError(f"duplicate pairing {white!r}/{black!r} (first seen on line {seen[pair]})", line=number)
        seen.setdefault(pair, number)

        game = GameRecord(white, black, RESULT_TOKENS[token])
        games.append(game)
        w = labels.setdefault(white, len(labels))
        b = labels.setdefault(black, len(labels))
        if game.result is GameResult.WIN:
            gained = (scheme.win, scheme.loss)
        elif game.result is GameResult.LOSS:
            gained = (scheme.loss, scheme.win)
        else:
            gained = (scheme.draw, scheme.draw)
        points[(w, b)] = points.get((w, b), 0.0) + gained[0]
        points[(b, w)] = points.get((b, w), 0.0) + gained[1]

    if not games:
        raise ParseError("no games found")

    n = len(labels)
    a = np.zeros((n, n))
    for (i, j), value in points.items():
        a[i, j] = value
    return GameTable(NonNegMatrix.dense(a), tuple(labels), tuple(games))


def _number(token: str, line: int) -> float:
    try:
        value = float(Fraction(token))
    except (ValueError, ZeroDivisionError, OverflowError):
        raise ParseError(f"bad matrix entry {token!r}", line=line) from None
    return value


def parse_matrix(source: Source) -> NonNegMatrix:
    """
    n whitespace-separated rows of n entries; an entry is a decimal or a
    fraction p/q, each rounded once to binary64.
    """
    rows: List[Sequence[float]] = []
    width = None
    for number, line in _lines(source):
        values = [_number(tok, number) for tok in line.split()]
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise ParseError(f"ragged row: {len(values)} entries, expected {width}", line=number)
        negative = [v for v in values if v < 0]
        if negative:
            raise InvalidMatrixError(f"negative entry {negative[0]!r}", line=number)
        rows.append(values)

    if not rows:
        raise ParseError("empty matrix")
    if len(rows) != width:
        raise ParseError(f"matrix is {len(rows)}×{width}, expected a square matrix")
    return NonNegMatrix.dense(rows)


def parse_edges(source: Source) -> LinkGraph:
    """
    `src dst [count]` lines (count defaults to 1) and `node id` lines for
    pages without links. Pages are indexed by first appearance.
    """
    order: Dict[str, None] = {}
    links: List[Tuple[str, str, int]] = []
    for number, line in _lines(source):
        tokens = line.split()
        if tokens[0] == "node":
            if len(tokens) != 2:
                raise ParseError(f"expected 'node <id>', got {line!r}", line=number)
            order.setdefault(tokens[1])
            continue
        if len(tokens) not in (2, 3):
            raise ParseError(f"expected 'src dst [count]', got {line!r}", line=number)
        count = 1
        if len(tokens) == 3:
            try:
                count = int(tokens[2])
            except ValueError:
                raise ParseError(f"bad link count {tokens[2]!r}", line=number) from None
            if count <= 0:
                raise ParseError(f"link count must be positive, got {count}", line=number)
        src, dst = tokens[0], tokens[1]
        order.setdefault(src)
        order.setdefault(dst)
        links.append((src, dst, count))

    if not order:
        raise ParseError("no pages found")
    return LinkGraph.build(links, nodes=order)
