"""Deterministic global minimization of a scalar function on an interval.

The subproblems of both algorithms are nonconvex and kinked, so no
derivative information is used: a uniform grid scan locates every basin,
and golden-section search refines each one inside its three-point bracket.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ._util import evaluate_array
from .exceptions import InfeasibleError
from .functions import Domain

INVPHI = (math.sqrt(5) - 1) / 2

# basins refined per solve; the rest are discarded by grid value
MAX_BASINS = 64


@dataclass(frozen=True)
class SolverConfig:
    grid_points: int = 100001
    refine_tol: float = 1e-10
    value_tol: float = 1e-9
    max_refine_iters: int = 200

    def __post_init__(self):
        if self.grid_points < 3:
            raise ValueError("grid_points must be at least 3")
        if self.refine_tol <= 0 or self.value_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_refine_iters < 1:
            raise ValueError("max_refine_iters must be at least 1")


class Tiebreak(enum.Enum):
    SMALLEST_ABS = "smallest-abs"
    MOST_NEGATIVE = "most-negative"
    POSITIVE = "positive"


def golden_section(
    obj: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_iters: int = 200,
) -> tuple[float, float]:
    """Golden-section search for a minimum of ``obj`` on ``[a, b]``.

    Returns the best point evaluated (end points included), so a minimum
    sitting on the bracket boundary is returned exactly.
    """
    fa, fb = obj(a), obj(b)
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = obj(c), obj(d)
    for _ in range(max_iters):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = obj(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = obj(d)
    m = 0.5 * (a + b)
    candidates = [(fc, c), (fd, d), (obj(m), m), (fa, a), (fb, b)]
    fbest, xbest = min(candidates, key=lambda t: t[0])
    return xbest, fbest


def _basins(vals: np.ndarray) -> list[tuple[int, int]]:
    """Runs ``[i, j]`` of grid indices that are discrete local minima."""
    n = len(vals)
    finite = np.isfinite(vals)
    left = np.empty(n, dtype=bool)
    right = np.empty(n, dtype=bool)
    left[0] = True
    right[-1] = True
    left[1:] = vals[1:] <= vals[:-1]
    right[:-1] = vals[:-1] <= vals[1:]
    idx = np.flatnonzero(finite & left & right)
    if idx.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(idx) > 1)
    starts = np.concatenate(([idx[0]], idx[breaks + 1]))
    ends = np.concatenate((idx[breaks], [idx[-1]]))
    return list(zip(starts.tolist(), ends.tolist()))


def minimize_scalar(
    obj: Callable,
    dom: Domain,
    cfg: SolverConfig = SolverConfig(),
) -> tuple[list[float], float]:
    """All global minimizers of ``obj`` on ``dom`` and the minimum value.

    ``obj`` should accept numpy arrays (a pointwise fallback is used when it
    does not).  ``+inf`` marks excluded points.  Minimizers whose refined
    value is within ``cfg.value_tol`` of the best are all returned, sorted.
    Raises ``InfeasibleError`` if ``obj`` is infinite on the whole grid.
    """
    xs = dom.grid(cfg.grid_points)
    vals = evaluate_array(obj, xs)
    if not np.any(np.isfinite(vals)):
        raise InfeasibleError(f"objective is +inf everywhere on {dom}")

    def f(x: float) -> float:
        return float(evaluate_array(obj, np.array([x]))[0])

    basins = _basins(vals)
    basins.sort(key=lambda ij: (vals[ij[0]], ij[0]))
    basins = basins[:MAX_BASINS]

    n = len(xs)
    refined = []
    for i, j in basins:
        lo, hi = xs[max(i - 1, 0)], xs[min(j + 1, n - 1)]
        x, v = golden_section(f, lo, hi, cfg.refine_tol, cfg.max_refine_iters)
        # a grid point can beat the search result at kinks and boundaries
        for k in range(i, j + 1) if j - i < 8 else (i, j):
            if vals[k] < v:
                x, v = float(xs[k]), float(vals[k])
        refined.append((v, float(x)))

    best = min(v for v, _ in refined)
    keep = sorted(x for v, x in refined if v <= best + cfg.value_tol)
    merged = [keep[0]]
    for x in keep[1:]:
        if x - merged[-1] > 10 * cfg.refine_tol:
            merged.append(x)
    return merged, best


def argmin_tiebreak(
    minimizers: Sequence[float],
    rule: Tiebreak = Tiebreak.SMALLEST_ABS,
    tie_tol: float = 1e-7,
) -> float:
    """Pick one minimizer deterministically.

    ``SMALLEST_ABS`` treats magnitudes within ``tie_tol`` as tied and then
    prefers the positive candidate.  ``POSITIVE`` takes the smallest positive
    candidate when there is one.
    """
    if len(minimizers) == 0:
        raise ValueError("no minimizers to choose from")
    rule = Tiebreak(rule)
    xs = [float(x) for x in minimizers]
    if rule is Tiebreak.MOST_NEGATIVE:
        return min(xs)
    if rule is Tiebreak.POSITIVE:
        pos = [x for x in xs if x > 0]
        xs = pos or xs
    smallest = min(abs(x) for x in xs)
    return max(x for x in xs if abs(x) <= smallest + tie_tol)
