"""Objective oracles on a real interval and their L-subdifferentials.

Every subdifferential in this package is a set of even quadratics
``t -> a*t**2`` and is stored as an interval of curvature coefficients ``a``
(``SubdiffSet``).  Constant offsets are dropped because they cancel in the
subgradient inequality ``f(y) >= f(x) + l(y) - l(x)``.

The worked example is ``f = f1 + f2 + f3`` with

* ``f1(x) = x**4 - x**2``
* ``f2(x) = 1 - 2|x|``
* ``f3(x) = 1 - 2|x|`` on ``[-1/2, 1/2]`` and ``0`` elsewhere

and the divergence generator ``phi(x) = -|x|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ._util import evaluate_array
from .exceptions import DegeneratePointError
from .lspace import LFunc

INF = math.inf


@dataclass(frozen=True)
class Domain:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"domain bounds must be finite, got [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise ValueError(f"empty domain [{self.lo}, {self.hi}]")

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def grid(self, n: int) -> np.ndarray:
        return np.linspace(self.lo, self.hi, n)

    @property
    def width(self) -> float:
        return self.hi - self.lo


DEFAULT_DOMAIN = Domain(-5.0, 5.0)


@dataclass(frozen=True)
class SubdiffSet:
    """Interval ``[a_lo, a_hi]`` of curvature coefficients, or the empty set."""

    kind: str
    a_lo: float = INF
    a_hi: float = -INF

    def __post_init__(self):
        if self.kind not in ("empty", "interval"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "interval":
            if math.isnan(self.a_lo) or math.isnan(self.a_hi) or self.a_lo > self.a_hi:
                raise ValueError(f"invalid interval [{self.a_lo}, {self.a_hi}]")

    @classmethod
    def empty(cls) -> SubdiffSet:
        return cls("empty")

    @classmethod
    def singleton(cls, a: float) -> SubdiffSet:
        return cls("interval", float(a), float(a))

    @classmethod
    def interval(cls, lo: float, hi: float) -> SubdiffSet:
        return cls("interval", float(lo), float(hi))

    @property
    def is_empty(self) -> bool:
        return self.kind == "empty"

    @property
    def is_singleton(self) -> bool:
        return not self.is_empty and self.a_lo == self.a_hi

    def contains(self, a: float, tol: float = 0.0) -> bool:
        return not self.is_empty and self.a_lo - tol <= a <= self.a_hi + tol

    def clamp(self, a: float) -> float:
        """Element of the set nearest to ``a``."""
        if self.is_empty:
            raise DegeneratePointError("cannot clamp into an empty subdifferential")
        return min(max(a, self.a_lo), self.a_hi)

    def distance(self, a: float) -> float:
        return abs(a - self.clamp(a))

    def intersect(self, other: SubdiffSet) -> SubdiffSet:
        if self.is_empty or other.is_empty:
            return SubdiffSet.empty()
        lo, hi = max(self.a_lo, other.a_lo), min(self.a_hi, other.a_hi)
        return SubdiffSet.interval(lo, hi) if lo <= hi else SubdiffSet.empty()

    def affine(self, shift: float, factor: float) -> SubdiffSet:
        """Image ``{shift + factor*a}`` of the set."""
        if self.is_empty:
            return self
        with np.errstate(invalid="ignore"):
            ends = sorted((shift + factor * self.a_lo, shift + factor * self.a_hi))
        return SubdiffSet.interval(*ends)

    def __add__(self, other: SubdiffSet) -> SubdiffSet:
        if not isinstance(other, SubdiffSet):
            return NotImplemented
        if self.is_empty or other.is_empty:
            return SubdiffSet.empty()
        return SubdiffSet.interval(self.a_lo + other.a_lo, self.a_hi + other.a_hi)

    def hull(self, other: SubdiffSet) -> SubdiffSet:
        if self.is_empty:
            return other
        if other.is_empty:
            return self
        return SubdiffSet.interval(min(self.a_lo, other.a_lo), max(self.a_hi, other.a_hi))

    def representative(self) -> float:
        """Default element: the point of a singleton, the midpoint of a
        bounded interval, the finite end of a half-line, ``0`` for the line."""
        if self.is_empty:
            raise DegeneratePointError("empty subdifferential has no representative")
        lo, hi = self.a_lo, self.a_hi
        if math.isfinite(lo) and math.isfinite(hi):
            return 0.5 * (lo + hi)
        if math.isfinite(lo):
            return lo
        if math.isfinite(hi):
            return hi
        return 0.0

    def endpoints(self, clip: float = 1e6) -> tuple[float, float]:
        if self.is_empty:
            raise DegeneratePointError("empty subdifferential has no endpoints")
        return (max(self.a_lo, -clip), min(self.a_hi, clip))

    def select(self) -> LFunc:
        return LFunc(self.representative(), 0.0)


@dataclass(frozen=True)
class ObjectiveOracle:
    """A function on ``domain`` together with its L-subdifferential.

    ``eval_fn`` must accept numpy arrays.  Calling the oracle on a float
    returns a float.
    """

    eval_fn: Callable[[np.ndarray], np.ndarray]
    subdiff_fn: Callable[[float], SubdiffSet]
    domain: Domain = DEFAULT_DOMAIN
    name: str = field(default="f", compare=False)

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        out = self.eval_fn(arr)
        return float(out) if arr.ndim == 0 else np.asarray(out, dtype=float)

    def eval(self, x):
        return self(x)

    def subdiff(self, x: float) -> SubdiffSet:
        return self.subdiff_fn(float(x))

    def with_domain(self, domain: Domain) -> ObjectiveOracle:
        return ObjectiveOracle(self.eval_fn, self.subdiff_fn, domain, self.name)


# --- the worked example -----------------------------------------------------

def _f1_eval(x):
    return x**4 - x**2


def _f1_subdiff(x):
    if x == 0:
        return SubdiffSet.interval(-INF, -1.0)
    return SubdiffSet.singleton(2 * x * x - 1)


def _f2_eval(x):
    return 1 - 2 * np.abs(x)


def _f2_subdiff(x):
    if x == 0:
        return SubdiffSet.empty()
    return SubdiffSet.singleton(-1 / abs(x))


def _f3_eval(x):
    ax = np.abs(x)
    return np.where(ax <= 0.5, 1 - 2 * ax, 0.0)


def _f3_subdiff(x):
    ax = abs(x)
    if ax == 0:
        return SubdiffSet.empty()
    if ax < 0.5:
        return SubdiffSet.singleton(-1 / ax)
    if ax == 0.5:
        return SubdiffSet.interval(-2.0, 0.0)
    return SubdiffSet.singleton(0.0)


def _phi_eval(x):
    return -np.abs(x)


def _phi_subdiff(x):
    if x == 0:
        return SubdiffSet.empty()
    return SubdiffSet.singleton(-1 / (2 * abs(x)))


def example_f1(domain: Domain = DEFAULT_DOMAIN) -> ObjectiveOracle:
    return ObjectiveOracle(_f1_eval, _f1_subdiff, domain, "f1")


def example_f2(domain: Domain = DEFAULT_DOMAIN) -> ObjectiveOracle:
    return ObjectiveOracle(_f2_eval, _f2_subdiff, domain, "f2")


def example_f3(domain: Domain = DEFAULT_DOMAIN) -> ObjectiveOracle:
    return ObjectiveOracle(_f3_eval, _f3_subdiff, domain, "f3")


def example_f(domain: Domain = DEFAULT_DOMAIN) -> ObjectiveOracle:
    """``f1 + f2 + f3``; minimum ``-1`` at ``x = +-1``."""
    parts = [example_f1(domain), example_f2(domain), example_f3(domain)]
    return sum_oracle(parts, name="f")


def example_phi(domain: Domain = DEFAULT_DOMAIN) -> ObjectiveOracle:
    """``-|x|`` with subgradient ``t -> -t**2 / (2|x|)`` away from zero."""
    return ObjectiveOracle(_phi_eval, _phi_subdiff, domain, "phi")


def sum_oracle(parts: Sequence[ObjectiveOracle], name: str | None = None) -> ObjectiveOracle:
    """Pointwise sum of oracles with Minkowski-summed subdifferentials.

    The sum rule is not guaranteed for abstract subdifferentials, so the
    result should be validated with :func:`check_subgradient` when it matters.
    """
    parts = tuple(parts)
    if not parts:
        raise ValueError("sum_oracle needs at least one part")
    domain = parts[0].domain
    for p in parts[1:]:
        if p.domain != domain:
            raise ValueError(f"domain mismatch: {p.name} on {p.domain}, expected {domain}")

    def eval_fn(x):
        total = parts[0].eval_fn(x)
        for p in parts[1:]:
            total = total + p.eval_fn(x)
        return total

    def subdiff_fn(x):
        total = parts[0].subdiff_fn(x)
        for p in parts[1:]:
            total = total + p.subdiff_fn(x)
        return total

    if name is None:
        name = "+".join(p.name for p in parts)
    return ObjectiveOracle(eval_fn, subdiff_fn, domain, name)


# --- numeric checkers -------------------------------------------------------

def check_subgradient(
    f: ObjectiveOracle,
    x: float,
    l: LFunc,
    grid_points: int = 10001,
    tol: float = 1e-9,
) -> bool:
    """True iff ``f(y) >= f(x) + l(y) - l(x) - tol`` on a uniform grid."""
    if not f.domain.contains(x):
        raise ValueError(f"x={x} outside {f.domain}")
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    ys = f.domain.grid(grid_points)
    gap = f(ys) - f(x) - l.a * (ys * ys - x * x)
    return bool(np.all(gap >= -tol))


@dataclass(frozen=True)
class StrictnessResult:
    strict: bool
    witness: float | None = None


def check_strictness(
    f_eval: Callable[[float], float],
    x: float,
    u_eval: Callable[[float], float],
    grid_points: int = 2001,
    tol: float = 1e-7,
    domain: Domain = DEFAULT_DOMAIN,
) -> StrictnessResult:
    """Test whether the minorant ``y -> f(x) + u(y) - u(x)`` touches ``f``
    anywhere away from ``x``.

    Returns a non-strict result with the first grid witness ``y`` (farther
    than one grid step from ``x``) where the gap is within ``tol`` of zero.
    Raises ``ValueError`` if ``u`` is not a minorant shift at ``x``.
    """
    ys = domain.grid(grid_points)
    step = domain.width / (grid_points - 1)
    gap = evaluate_array(f_eval, ys) - f_eval(x) - (evaluate_array(u_eval, ys) - u_eval(x))
    if np.any(gap < -tol):
        bad = ys[np.argmin(gap)]
        raise ValueError(f"u is not a subgradient at x={x}: violated at y={bad}")
    touching = (np.abs(gap) <= tol) & (np.abs(ys - x) > step)
    if np.any(touching):
        return StrictnessResult(False, float(ys[np.argmax(touching)]))
    return StrictnessResult(True)
