# rankforge/spectral.py

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from rankforge import config
from rankforge.errors import DimensionMismatchError, InputError, ZeroVectorError
from rankforge.matrix import LinearMap, ScoreVector, normalize_1, one_vector
from rankforge.records import SpectralStatus
from rankforge.utils import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class SpectralResult:
    """
    Outcome of one power iteration.

    Atributos:
      - eigenvalue: λ ≈ Σ_i (M·v)_i with Σ v = 1; 0.0 after a zero iterate.
      - vector: last normalized iterate (sums to 1). After a zero iterate it
        is the last non-zero iterate, a null vector of M.
      - iterations: number of products M·y computed.
      - status: Converged | MaxIterations | ZeroIterate | Oscillating.
      - residual: ||M·v - λ·v||₁.
      - history: y_0, y_1, ... when record_history was requested.
    """
    eigenvalue: float
    vector: ScoreVector
    iterations: int
    status: SpectralStatus
    residual: float
    history: Tuple[ScoreVector, ...] = ()

    @property
    def converged(self) -> bool:
        return self.status is SpectralStatus.CONVERGED


def l1_distance(u: ScoreVector, v: ScoreVector) -> float:
    return float(np.abs(u.values - v.values).sum())


def _check_budget(tol: float, max_iter: int) -> None:
    if not math.isfinite(tol) or tol <= 0:
        raise InputError(f"tol must be positive and finite, got {tol!r}")
    if max_iter < 0:
        raise InputError(f"max_iter must be nonnegative, got {max_iter!r}")


def power_method(
    M: LinearMap,
    x0: Optional[ScoreVector] = None,
    tol: float = config.TOL,
    max_iter: int = config.MAX_ITER,
    record_history: bool = False,
) -> SpectralResult:
    """
    Dominant eigenpair by the power method with 1-norm normalization.

    Iterates x_{k+1} = M·y_k, y_{k+1} = x_{k+1} / Σ x_{k+1} and stops when
      - ||y_{k+1} - y_k||₁ <= tol (Converged),
      - x_{k+1} = 0 (ZeroIterate; nilpotent input),
      - y_{k+1} ≈ y_{k-1} but not ≈ y_k for OSCILLATION_WINDOW steps in a
        row (Oscillating; periodic input, no shift is applied),
      - max_iter products were computed (MaxIterations).

    Args:
        M: NonNegMatrix or any LinearMap.
        x0: start vector with a positive entry; 𝟙 when omitted.
        tol: step tolerance in the 1-norm.
        max_iter: product budget.
        record_history: keep every y_k on the result.

    Raises:
        DimensionMismatchError: len(x0) != M.n.
        ZeroVectorError: x0 has no positive entry.
    """
    _check_budget(tol, max_iter)
    if x0 is None:
        x0 = one_vector(M.n)
    if len(x0) != M.n:
        raise DimensionMismatchError(M.n, len(x0))
    if x0.is_zero():
        raise ZeroVectorError("start vector has no positive entry")

    y = normalize_1(x0)
    y_prev: Optional[ScoreVector] = None
    history: List[ScoreVector] = [y] if record_history else []
    status = SpectralStatus.MAX_ITERATIONS
    oscillating_steps = 0
    k = 0

    while k < max_iter:
        x = M.matvec(y)
        k += 1
        if x.is_zero():
            status = SpectralStatus.ZERO_ITERATE
            break
        y_next = normalize_1(x)
        if record_history:
            history.append(y_next)
        step = l1_distance(y_next, y)
        if step <= tol:
            y = y_next
            status = SpectralStatus.CONVERGED
            break
        if y_prev is not None and l1_distance(y_next, y_prev) <= tol:
            oscillating_steps += 1
        else:
            oscillating_steps = 0
        y_prev, y = y, y_next
        if oscillating_steps >= config.OSCILLATION_WINDOW:
            status = SpectralStatus.OSCILLATING
            break

    if status is SpectralStatus.ZERO_ITERATE:
        eigenvalue, residual = 0.0, 0.0
    else:
        my = M.matvec(y)
        eigenvalue = my.total
        residual = float(np.abs(my.values - eigenvalue * y.values).sum())

    if status in (SpectralStatus.MAX_ITERATIONS, SpectralStatus.OSCILLATING):
        logger.warning("power method stopped with %s after %d iterations", status.value, k)
    else:
        logger.debug("power method %s after %d iterations, λ=%r", status.value, k, eigenvalue)

    return SpectralResult(
        eigenvalue=eigenvalue,
        vector=y,
        iterations=k,
        status=status,
        residual=residual,
        history=tuple(history),
    )


def iterate_k(M: LinearMap, k: int, labels: Optional[Tuple[str, ...]] = None) -> ScoreVector:
    """Mᵏ·𝟙, unnormalized, by k successive products (k = 0 gives 𝟙)."""
    if k < 0:
        raise InputError(f"k must be nonnegative, got {k}")
    x = one_vector(M.n, labels)
    for _ in range(k):
        x = M.matvec(x)
    return x
