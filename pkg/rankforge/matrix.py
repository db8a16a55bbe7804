# rankforge/matrix.py

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, Optional, Protocol, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp

from rankforge.errors import (
    DimensionMismatchError,
    InputError,
    InvalidMatrixError,
    ZeroVectorError,
)


class StorageKind(str, Enum):
    DENSE = "dense"
    SPARSE = "sparse"


def default_labels(n: int) -> Tuple[str, ...]:
    """Participants without names are labelled "1".."n"."""
    return tuple(str(i + 1) for i in range(n))


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class ScoreVector:
    """
    Nonnegative score per participant.

    Atributos:
      - values: float64 array, read-only, every entry finite and >= 0.
      - labels: participant identifiers, same length as values.
    """
    values: np.ndarray
    labels: Tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise InputError(f"score vector must be one-dimensional, got {values.ndim} dimensions")
        if not np.all(np.isfinite(values)):
            raise InputError("score vector entries must be finite")
        if np.any(values < 0):
            raise InputError("score vector entries must be nonnegative")
        labels = tuple(self.labels) if self.labels else default_labels(len(values))
        if len(labels) != len(values):
            raise DimensionMismatchError(len(values), len(labels))
        object.__setattr__(self, "values", _frozen(values))
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[float]:
        return (float(x) for x in self.values)

    def __getitem__(self, i: int) -> float:
        return float(self.values[i])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScoreVector):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.values, other.values)

    __hash__ = None  # type: ignore[assignment]

    @property
    def total(self) -> float:
        return math.fsum(self.values)

    def is_zero(self) -> bool:
        return not np.any(self.values > 0)

    def tolist(self) -> list[float]:
        return [float(x) for x in self.values]

    def relabel(self, labels: Sequence[str]) -> "ScoreVector":
        return ScoreVector(self.values, tuple(labels))


@dataclass(frozen=True, eq=False)
class NonNegMatrix:
    """
    Square matrix of nonnegative finite reals. Dense storage is a read-only
    float64 ndarray; sparse storage is a canonical scipy CSC matrix (sorted
    indices, no duplicates, no explicit zeros), column-major because the web
    pipeline consumes columns (outlinks of page j).
    """
    data: Union[np.ndarray, sp.csc_matrix]
    storage_kind: StorageKind = StorageKind.DENSE

    def __post_init__(self) -> None:
        kind = StorageKind(self.storage_kind)
        if kind is StorageKind.DENSE:
            data = np.array(self.data.toarray() if sp.issparse(self.data) else self.data, dtype=np.float64)
            if data.ndim != 2 or data.shape[0] != data.shape[1]:
                raise InvalidMatrixError(f"matrix must be square, got shape {data.shape}")
            values = data
            data = _frozen(data)
        else:
            data = sp.csc_matrix(self.data, dtype=np.float64, copy=True)
            if data.shape[0] != data.shape[1]:
                raise InvalidMatrixError(f"matrix must be square, got shape {data.shape}")
            data.sum_duplicates()
            data.eliminate_zeros()
            data.sort_indices()
            values = data.data
            for arr in (data.data, data.indices, data.indptr):
                arr.flags.writeable = False
        if data.shape[0] < 1:
            raise InvalidMatrixError("matrix dimension must be at least 1")
        if not np.all(np.isfinite(values)):
            raise InvalidMatrixError("matrix entries must be finite")
        if np.any(values < 0):
            raise InvalidMatrixError("matrix entries must be nonnegative")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "storage_kind", kind)

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def dense(cls, rows: Union[Sequence[Sequence[float]], np.ndarray]) -> "NonNegMatrix":
        return cls(np.asarray(rows, dtype=np.float64), StorageKind.DENSE)

    @classmethod
    def sparse(cls, rows: Union[Sequence[Sequence[float]], np.ndarray, sp.spmatrix]) -> "NonNegMatrix":
        if sp.issparse(rows):
            return cls(rows, StorageKind.SPARSE)
        return cls(sp.csc_matrix(np.asarray(rows, dtype=np.float64)), StorageKind.SPARSE)

    @classmethod
    def from_entries(
        cls,
        n: int,
        entries: Dict[Tuple[int, int], float],
        storage_kind: StorageKind = StorageKind.SPARSE,
    ) -> "NonNegMatrix":
        """Builds an n×n matrix from {(row, col): value}; absent entries are 0."""
        if n < 1:
            raise InvalidMatrixError("matrix dimension must be at least 1")
        rows = [i for (i, _) in entries]
        cols = [j for (_, j) in entries]
        vals = [float(v) for v in entries.values()]
        coo = sp.coo_matrix((vals, (rows, cols)), shape=(n, n))
        if StorageKind(storage_kind) is StorageKind.DENSE:
            return cls(coo.toarray(), StorageKind.DENSE)
        return cls(coo.tocsc(), StorageKind.SPARSE)

    @classmethod
    def zeros(cls, n: int) -> "NonNegMatrix":
        return cls(np.zeros((n, n)), StorageKind.DENSE)

    # ------------------------------------------------------------------
    # Views
    # ------------------------------------------------------------------

    @property
    def n(self) -> int:
        return int(self.data.shape[0])

    @property
    def is_sparse(self) -> bool:
        return self.storage_kind is StorageKind.SPARSE

    def to_dense(self) -> np.ndarray:
        """Writable dense copy."""
        if self.is_sparse:
            return self.data.toarray()
        return np.array(self.data)

    def as_dense(self) -> "NonNegMatrix":
        return self if not self.is_sparse else NonNegMatrix(self.data.toarray(), StorageKind.DENSE)

    def as_sparse(self) -> "NonNegMatrix":
        return self if self.is_sparse else NonNegMatrix(sp.csc_matrix(self.data), StorageKind.SPARSE)

    def entry(self, i: int, j: int) -> float:
        return float(self.data[i, j])

    def column(self, j: int) -> Tuple[np.ndarray, np.ndarray]:
        """(row indices, values) of the positive entries of column j, ascending by row."""
        if self.is_sparse:
            start, end = self.data.indptr[j], self.data.indptr[j + 1]
            return self.data.indices[start:end], self.data.data[start:end]
        col = self.data[:, j]
        rows = np.flatnonzero(col > 0)
        return rows, col[rows]

    def positive_pattern(self) -> Iterator[Tuple[int, int]]:
        """Yields (i, j) for every M[i][j] > 0, column by column."""
        for j in range(self.n):
            rows, _ = self.column(j)
            for i in rows:
                yield int(i), j

    def column_sums(self) -> np.ndarray:
        sums = np.zeros(self.n)
        for j in range(self.n):
            _, vals = self.column(j)
            sums[j] = math.fsum(vals)
        return sums

    def diagonal(self) -> np.ndarray:
        return np.asarray(self.data.diagonal(), dtype=np.float64)

    def matvec(self, v: ScoreVector) -> ScoreVector:
        return mat_vec(self, v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NonNegMatrix):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.to_dense(), other.to_dense())

    __hash__ = None  # type: ignore[assignment]


class LinearMap(Protocol):
    """Anything power_method can iterate: a dimension and a product."""

    @property
    def n(self) -> int: ...

    def matvec(self, v: ScoreVector) -> ScoreVector: ...


def mat_vec(M: NonNegMatrix, v: ScoreVector) -> ScoreVector:
    """
    result_i = Σ_j M[i][j]·v[j], accumulated column by column in ascending j.

    Both storage kinds run the same accumulation (one scaled column added to
    the running sum per step), so dense and sparse products agree bit for bit:
    a skipped structural zero contributes +0.0, which leaves the sum unchanged.
    """
    if len(v) != M.n:
        raise DimensionMismatchError(M.n, len(v))
    x = v.values
    out = np.zeros(M.n)
    if M.is_sparse:
        indptr, indices, data = M.data.indptr, M.data.indices, M.data.data
        for j in range(M.n):
            xj = x[j]
            if xj == 0.0:
                continue
            start, end = indptr[j], indptr[j + 1]
            if start == end:
                continue
            rows = indices[start:end]
            out[rows] = out[rows] + data[start:end] * xj
    else:
        a = M.data
        for j in range(M.n):
            xj = x[j]
            if xj == 0.0:
                continue
            out += a[:, j] * xj
    return ScoreVector(out, v.labels)


def one_vector(n: int, labels: Optional[Sequence[str]] = None) -> ScoreVector:
    """𝟙, the canonical start vector."""
    if n < 1:
        raise InputError("dimension must be at least 1")
    return ScoreVector(np.ones(n), tuple(labels) if labels else ())


def normalize_1(v: ScoreVector) -> ScoreVector:
    """
    Rescales v to sum 1 (the 1-norm, since entries are nonnegative).

    Raises:
        ZeroVectorError: v has no positive entry (e.g. a vanished iterate).
    """
    total = v.total
    if total <= 0.0:
        raise ZeroVectorError()
    return ScoreVector(v.values / total, v.labels)


def scale(M: NonNegMatrix, c: float) -> NonNegMatrix:
    """Entrywise c·M for finite c > 0; keeps the storage kind."""
    if not math.isfinite(c) or c <= 0:
        raise InputError(f"scale factor must be positive and finite, got {c!r}")
    return NonNegMatrix(M.data * c, M.storage_kind)


def shift(M: NonNegMatrix, c: float) -> NonNegMatrix:
    """
    M + c·I. power_method never shifts on its own; callers facing a periodic
    matrix (status Oscillating) pass the shifted matrix and subtract c from λ.
    """
    if not math.isfinite(c) or c < 0:
        raise InputError(f"shift must be nonnegative and finite, got {c!r}")
    eye = sp.identity(M.n, format="csc") * c
    if M.is_sparse:
        return NonNegMatrix(M.data + eye, StorageKind.SPARSE)
    return NonNegMatrix(M.data + eye.toarray(), StorageKind.DENSE)
