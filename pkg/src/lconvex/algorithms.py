"""Bregman proximal point and abstract mirror descent.

Both methods track a subgradient ``lam_k`` of the generator ``phi`` at the
current iterate and move it by ``lam_{k+1} = lam_k - c_k * g`` where ``g`` is
a subgradient of the objective.

Proximal point::

    x_{k+1} in argmin_x  f(x) + D(x, x_k) / c_k,     g in subdiff f(x_{k+1})

Mirror descent::

    u_k in subdiff f(x_k)
    x_{k+1} in argmin_x  u_k(x) + D(x, x_k) / c_k

with ``D(x, x_k) = phi(x) - phi(x_k) - (lam_k(x) - lam_k(x_k))``.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .bregman import BregmanGenerator, divergence
from .exceptions import DegeneratePointError, LambdaConsistencyWarning
from .functions import Domain, ObjectiveOracle, SubdiffSet
from .lspace import LFunc
from .solver1d import SolverConfig, Tiebreak, argmin_tiebreak, minimize_scalar

# literal lambda updates farther than this (in curvature) from subdiff phi
# trigger a warning and are clamped back into it
LAMBDA_WARN_TOL = 1e-3


@dataclass(frozen=True)
class Schedule:
    """Step sizes ``c_k`` for steps ``k = 1, 2, ...``.

    ``harmonic`` is ``1/k``, ``constant`` is ``c``, ``explicit`` reads
    ``values[k - 1]``.
    """

    kind: str
    c: float = 1.0
    values: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in ("harmonic", "constant", "explicit"):
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if self.kind == "constant" and not (self.c > 0 and math.isfinite(self.c)):
            raise ValueError(f"constant step must be positive, got {self.c}")
        if self.kind == "explicit":
            if not self.values:
                raise ValueError("explicit schedule needs at least one value")
            if any(not (v > 0 and math.isfinite(v)) for v in self.values):
                raise ValueError("explicit step sizes must be positive")

    @classmethod
    def harmonic(cls) -> Schedule:
        return cls("harmonic")

    @classmethod
    def constant(cls, c: float) -> Schedule:
        return cls("constant", c=float(c))

    @classmethod
    def explicit(cls, values: Sequence[float]) -> Schedule:
        return cls("explicit", values=tuple(float(v) for v in values))

    def covers(self, k: int) -> bool:
        return self.kind != "explicit" or k <= len(self.values)

    def __call__(self, k: int) -> float:
        if k < 1:
            raise ValueError("step index starts at 1")
        if self.kind == "harmonic":
            return 1.0 / k
        if self.kind == "constant":
            return self.c
        return self.values[k - 1]

    def partial_sum(self, k: int) -> float:
        """``c_1 + ... + c_k``."""
        return math.fsum(self(j) for j in range(1, k + 1))

    def spec(self) -> str:
        if self.kind == "harmonic":
            return "harmonic"
        if self.kind == "constant":
            return f"constant:{self.c!r}"
        return "explicit:" + ",".join(repr(v) for v in self.values)


class LambdaMode(enum.Enum):
    LITERAL = "literal"
    REFRESH = "refresh"


@dataclass(frozen=True)
class StopRule:
    max_iters: int = 50
    f_tol: float = 1e-9
    zero_subgrad_tol: float = 1e-6

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")


@dataclass(frozen=True)
class IterateRecord:
    k: int
    x: float
    f_x: float
    lam: LFunc
    c_k: float
    step_div: float
    subproblem_value: float

    @property
    def lambda_a(self) -> float:
        return self.lam.a


@dataclass(frozen=True)
class Trace:
    method: str
    records: tuple[IterateRecord, ...]
    stop_reason: str = ""

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[IterateRecord]:
        return iter(self.records)

    def __getitem__(self, i):
        return self.records[i]

    @property
    def xs(self) -> np.ndarray:
        return np.array([r.x for r in self.records])

    @property
    def fs(self) -> np.ndarray:
        return np.array([r.f_x for r in self.records])

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([r.lambda_a for r in self.records])


class StepResult(NamedTuple):
    x: float
    lam: LFunc
    g: LFunc
    subproblem_value: float
    step_div: float


def _local_subdiff(f: ObjectiveOracle, x: float, delta: float) -> SubdiffSet:
    """Hull of the subdifferentials at ``x`` and ``x +- delta``.

    The solver only locates ``x`` to within its tolerance, so a minimizer
    that sits on a kink is usually reported a hair to one side of it.
    """
    dom = f.domain
    out = f.subdiff(x)
    for y in (x - delta, x + delta):
        if dom.contains(y) and (y == 0) == (x == 0):
            out = out.hull(f.subdiff(y))
    return out


def _update_lambda(
    lam_k: LFunc,
    c: float,
    g: LFunc,
    phi_sd: SubdiffSet,
    x_next: float,
    mode: LambdaMode,
) -> LFunc:
    literal = lam_k - c * g
    if phi_sd.is_empty:
        raise DegeneratePointError(
            f"generator has an empty subdifferential at x={x_next}", x_next
        )
    if mode is LambdaMode.REFRESH:
        return LFunc(phi_sd.clamp(literal.a), 0.0)
    gap = phi_sd.distance(literal.a)
    if gap > LAMBDA_WARN_TOL:
        warnings.warn(
            f"lambda update a={literal.a:.6g} is {gap:.3g} away from the generator "
            f"subdifferential at x={x_next:.6g}; clamped",
            LambdaConsistencyWarning,
            stacklevel=3,
        )
        return LFunc(phi_sd.clamp(literal.a), literal.b)
    return literal


def _check_step(c_k: float, x_k: float, dom: Domain):
    if not (c_k > 0 and math.isfinite(c_k)):
        raise ValueError(f"step size must be positive, got {c_k}")
    if not dom.contains(x_k):
        raise ValueError(f"x_k={x_k} outside {dom}")


def prox_step(
    f: ObjectiveOracle,
    gen: BregmanGenerator,
    x_k: float,
    lambda_k: LFunc,
    c_k: float,
    cfg: SolverConfig = SolverConfig(),
    mode: LambdaMode = LambdaMode.LITERAL,
    tiebreak: Tiebreak = Tiebreak.SMALLEST_ABS,
) -> StepResult:
    """One proximal step from ``x_k``.

    ``g`` is the subgradient of ``f`` at the new point that keeps
    ``lambda_k - c_k * g`` inside the generator's subdifferential there, when
    such an element exists; otherwise the default representative.
    """
    _check_step(c_k, x_k, f.domain)

    def obj(z):
        return f(z) + divergence(gen, z, x_k, lambda_k) / c_k

    minimizers, value = minimize_scalar(obj, f.domain, cfg)
    x_next = argmin_tiebreak(minimizers, tiebreak)

    phi_sd = gen.phi.subdiff(x_next)
    f_sd = _local_subdiff(f, x_next, 1e3 * cfg.refine_tol)
    if f_sd.is_empty:
        raise DegeneratePointError(f"empty subdifferential of {f.name} at x={x_next}", x_next)
    consistent = f_sd.intersect(phi_sd.affine(lambda_k.a / c_k, -1.0 / c_k))
    if not consistent.is_empty:
        g = LFunc(consistent.representative(), 0.0)
    else:
        exact = f.subdiff(x_next)
        g = (exact if not exact.is_empty else f_sd).select()

    lam_next = _update_lambda(lambda_k, c_k, g, phi_sd, x_next, mode)
    step_div = divergence(gen, x_next, x_k, lambda_k)
    return StepResult(x_next, lam_next, g, value, step_div)


def mirror_step(
    f: ObjectiveOracle,
    gen: BregmanGenerator,
    x_k: float,
    lambda_k: LFunc,
    c_k: float,
    cfg: SolverConfig = SolverConfig(),
    mode: LambdaMode = LambdaMode.LITERAL,
    tiebreak: Tiebreak = Tiebreak.SMALLEST_ABS,
) -> StepResult:
    """One mirror descent step from ``x_k``; the returned ``g`` is ``u_k``."""
    _check_step(c_k, x_k, f.domain)
    f_sd = f.subdiff(x_k)
    if f_sd.is_empty:
        raise DegeneratePointError(f"empty subdifferential of {f.name} at x={x_k}", x_k)
    u = f_sd.select()

    def obj(z):
        return u(z) + divergence(gen, z, x_k, lambda_k) / c_k

    minimizers, value = minimize_scalar(obj, f.domain, cfg)
    x_next = argmin_tiebreak(minimizers, tiebreak)
    lam_next = _update_lambda(lambda_k, c_k, u, gen.phi.subdiff(x_next), x_next, mode)
    step_div = divergence(gen, x_next, x_k, lambda_k)
    return StepResult(x_next, lam_next, u, value, step_div)


def _is_stationary(f: ObjectiveOracle, x: float, tol: float) -> bool:
    sd = f.subdiff(x)
    return sd.contains(0.0, tol)


def _run(method, step_fn, f, gen, x0, sched, stop, cfg, mode, tiebreak) -> Trace:
    x = float(x0)
    if not f.domain.contains(x):
        raise ValueError(f"x0={x} outside {f.domain}")
    lam = gen.lambda_of(x)
    fx = f(x)
    records = [IterateRecord(0, x, fx, lam, 0.0, 0.0, fx)]
    reason = "max_iters"
    for k in range(1, stop.max_iters + 1):
        if _is_stationary(f, x, stop.zero_subgrad_tol):
            reason = "stationary"
            break
        if not sched.covers(k):
            reason = "schedule_exhausted"
            break
        c = sched(k)
        step = step_fn(f, gen, x, lam, c, cfg, mode, tiebreak)
        f_next = f(step.x)
        records.append(
            IterateRecord(k, step.x, f_next, step.lam, c, step.step_div, step.subproblem_value)
        )
        f_prev, x, lam = fx, step.x, step.lam
        fx = f_next
        if abs(fx - f_prev) <= stop.f_tol:
            reason = "f_tol"
            break
    return Trace(method, tuple(records), reason)


def prox_run(
    f: ObjectiveOracle,
    gen: BregmanGenerator,
    x0: float,
    sched: Schedule = Schedule.harmonic(),
    stop: StopRule = StopRule(),
    cfg: SolverConfig = SolverConfig(),
    mode: LambdaMode = LambdaMode.LITERAL,
    tiebreak: Tiebreak = Tiebreak.SMALLEST_ABS,
) -> Trace:
    """Run the proximal point method from ``x0``.

    Record 0 holds ``x0`` with ``lam_0 = gen.lambda_of(x0)``; step ``k`` uses
    ``sched(k)``.  Stops when ``0`` is (within tolerance) a subgradient of
    ``f`` at the current point, when ``f`` changes by at most ``stop.f_tol``,
    or after ``stop.max_iters`` steps.
    """
    return _run("prox", prox_step, f, gen, x0, sched, stop, cfg, mode, tiebreak)


def mirror_run(
    f: ObjectiveOracle,
    gen: BregmanGenerator,
    x0: float,
    sched: Schedule = Schedule.harmonic(),
    stop: StopRule = StopRule(),
    cfg: SolverConfig = SolverConfig(),
    mode: LambdaMode = LambdaMode.LITERAL,
    tiebreak: Tiebreak = Tiebreak.SMALLEST_ABS,
) -> Trace:
    """Run mirror descent from ``x0``; same conventions as :func:`prox_run`.

    Function values are not monotone along the trace.
    """
    return _run("mirror", mirror_step, f, gen, x0, sched, stop, cfg, mode, tiebreak)


def best_value(trace: Trace) -> tuple[int, float]:
    """First index attaining the smallest ``f`` in the trace, and that value."""
    fs = trace.fs
    k = int(np.argmin(fs))
    return trace.records[k].k, float(fs[k])


@dataclass(frozen=True)
class LevelReport:
    level: float
    bounded: bool
    extent: tuple[float, float] | None


@dataclass(frozen=True)
class AssumptionReport:
    x0: float
    levels: tuple[LevelReport, ...]
    reference_divergence: dict = field(default_factory=dict)

    @property
    def sublevels_bounded(self) -> bool:
        return all(r.bounded for r in self.levels)

    @property
    def reference_finite(self) -> bool:
        return all(math.isfinite(v) for v in self.reference_divergence.values())


def check_assumptions(
    gen: BregmanGenerator,
    x0: float,
    probe: Domain,
    levels: Sequence[float],
    candidates: Sequence[float] = (),
    grid_points: int = 100001,
) -> AssumptionReport:
    """Probe bounded sublevel sets of ``D(., x0)`` and finiteness of
    ``D(x*, x0)`` for candidate minimizers ``x*``.

    A sublevel set that reaches the edge of ``probe`` is reported as
    unbounded at that scale.
    """
    lam0 = gen.lambda_of(x0)
    xs = np.union1d(probe.grid(grid_points), [x0])
    ds = divergence(gen, xs, x0, lam0)
    reports = []
    for level in levels:
        mask = ds <= level + 1e-12
        if not mask.any():
            reports.append(LevelReport(float(level), True, None))
            continue
        inside = xs[mask]
        touches = bool(mask[0] or mask[-1])
        reports.append(LevelReport(float(level), not touches, (float(inside[0]), float(inside[-1]))))
    ref = {float(c): float(divergence(gen, c, x0, lam0)) for c in candidates}
    return AssumptionReport(float(x0), tuple(reports), ref)
