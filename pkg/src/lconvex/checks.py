"""Invariant suites run by ``lconvex check``.

Each suite returns ``(passed, detail)``.  Every tolerance is multiplied by
``tol_scale``; the CLI reads it from ``LCONVEX_CHECK_TOL_SCALE`` so a broken
tolerance can be injected to exercise the failure path.
"""

from __future__ import annotations

import warnings
from typing import Callable

import numpy as np

from . import tables
from .algorithms import LambdaMode, Schedule, StopRule, prox_run, mirror_run
from .bregman import (
    divergence,
    divergence_flat,
    divergence_sharp,
    example_generator,
    triangle_residual,
)
from .exceptions import LambdaConsistencyWarning
from .functions import (
    Domain,
    check_strictness,
    check_subgradient,
    example_f,
    example_f1,
    example_f2,
    example_f3,
    example_phi,
)
from .lspace import LFunc
from .solver1d import SolverConfig, minimize_scalar

SEED = 20240501


def _rng():
    return np.random.default_rng(SEED)


def lspace_axioms(scale: float = 1.0):
    rng = _rng()
    worst = 0.0
    for _ in range(200):
        a1, b1, a2, b2, s = rng.uniform(-10, 10, 5)
        l1, l2 = LFunc(a1, b1), LFunc(a2, b2)
        if l1 + l2 != l2 + l1 or l1 + (-l1) != LFunc():
            return False, "commutativity or inverse failed"
        xs = rng.uniform(-5, 5, 16)
        lhs = (l1 * s + l2)(xs)
        rhs = s * l1(xs) + l2(xs)
        worst = max(worst, float(np.max(np.abs(lhs - rhs) / (1 + np.abs(rhs)))))
    return worst <= 1e-12 * scale, f"max relative eval error {worst:.2e}"


def subgradient_endpoints(scale: float = 1.0):
    tol = 1e-9 * scale
    oracles = [example_f(), example_f1(), example_f2(), example_f3(), example_phi()]
    xs = np.linspace(-5, 5, 2001)
    checked = 0
    for f in oracles:
        for x in xs:
            sd = f.subdiff(x)
            if sd.is_empty:
                continue
            for a in set(sd.endpoints(1e6)):
                checked += 1
                if not check_subgradient(f, x, LFunc(a, 0.0), 2001, tol):
                    return False, f"{f.name}: a={a} fails at x={x}"
    return True, f"{checked} endpoint subgradients verified"


def even_symmetry(scale: float = 1.0):
    f = example_f()
    xs = np.linspace(-5, 5, 2001)
    err = float(np.max(np.abs(f(xs) - f(-xs))))
    return err <= 1e-12 * scale, f"max |f(x) - f(-x)| = {err:.2e}"


def divergence_closed_form(scale: float = 1.0):
    rng = _rng()
    gen = example_generator()
    x = rng.uniform(-5, 5, 10_000)
    y = rng.uniform(-5, 5, 10_000)
    y = np.where(np.abs(y) < 1e-3, 1e-3, y)
    got = np.array([divergence(gen, xi, yi) for xi, yi in zip(x, y)])
    ref = -np.abs(x) + np.abs(y) + (x * x - y * y) / (2 * np.abs(y))
    mirrored = np.array([divergence(gen, xi, -yi) for xi, yi in zip(x, y)])
    err = float(np.max(np.abs(got - ref)))
    ok = err <= 1e-12 * scale and bool(np.all(mirrored == got))
    return ok, f"max closed-form error {err:.2e}"


def triangle_identity(scale: float = 1.0):
    rng = _rng()
    gen = example_generator()
    worst = 0.0
    for _ in range(1000):
        a, b, c = rng.uniform(-5, 5, 3)
        a = a if abs(a) >= 1e-3 else 1e-3
        b = b if abs(b) >= 1e-3 else 1e-3
        lhs, rhs = triangle_residual(gen, a, b, c)
        worst = max(worst, abs(lhs - rhs) / (1 + abs(lhs)))
    return worst <= 1e-12 * scale, f"max scaled residual {worst:.2e}"


def divergence_ordering(scale: float = 1.0):
    phi = example_phi()
    gen = example_generator()
    xs = np.linspace(-5, 5, 2001)
    for y in (0.1, 0.5, -1.3, 4.0):
        lam = gen.lambda_of(y)
        samples = [lam, LFunc(lam.a - 0.5, 0.0), LFunc(lam.a + 0.25, 0.0)]
        d = divergence(gen, xs, y)
        lo = divergence_flat(phi, xs, y, samples)
        hi = divergence_sharp(phi, xs, y, samples)
        if np.min(d) < -1e-12 * scale:
            return False, f"negative divergence at base {y}"
        if np.any(lo > d + 1e-15 * scale) or np.any(d > hi + 1e-15 * scale):
            return False, f"flat <= D <= sharp violated at base {y}"
        zeros = xs[np.abs(d) <= 1e-12 * scale]
        if not np.all(np.isclose(np.abs(zeros), abs(y), atol=1e-2)):
            return False, f"zero of D(., {y}) away from +-{abs(y)}"
    return True, "nonnegative, ordered, zero only at +-y"


def strictness_fixtures(scale: float = 1.0):
    sq = lambda z: z * z
    r1 = check_strictness(sq, 1.0, lambda z: max(0.0, z) ** 2, tol=1e-7 * scale)
    r2 = check_strictness(sq, 1.0, lambda z: 2 * z, tol=1e-7 * scale)
    ok = (not r1.strict) and r2.strict
    return ok, f"max(0,z)^2 strict={r1.strict}, 2z strict={r2.strict}"


def solver_oracle(scale: float = 1.0, count: int = 20):
    rng = _rng()
    dom = Domain(-2.0, 2.0)
    dense = np.linspace(dom.lo, dom.hi, 1_000_001)
    worst = -np.inf
    for _ in range(count):
        c4 = rng.uniform(0.1, 2)
        c3, c2, c1 = rng.uniform(-2, 2, 3)
        k, s = rng.uniform(0, 3), rng.uniform(-1.5, 1.5)

        def obj(x, c4=c4, c3=c3, c2=c2, c1=c1, k=k, s=s):
            return c4 * x**4 + c3 * x**3 + c2 * x**2 + c1 * x + k * np.abs(x - s)

        _, value = minimize_scalar(obj, dom, SolverConfig())
        worst = max(worst, value - float(np.min(obj(dense))))
    return worst <= 1e-6 * scale, f"worst excess over brute force {worst:.2e}"


def _prox_traces(count: int, mode: LambdaMode):
    rng = _rng()
    f, gen = example_f(), example_generator()
    starts = rng.uniform(1e-3, 5, count) * rng.choice([-1, 1], count)
    return [prox_run(f, gen, x0, Schedule.harmonic(), StopRule(), mode=mode) for x0 in starts]


def prox_monotone(scale: float = 1.0, count: int = 10):
    worst = -np.inf
    final = 0.0
    for tr in _prox_traces(count, LambdaMode.LITERAL):
        worst = max(worst, float(np.max(np.diff(tr.fs), initial=-np.inf)))
        final = max(final, abs(tr.fs[-1] + 1))
    ok = worst <= 1e-9 * scale and final <= 1e-3 * scale
    return ok, f"max increase {worst:.2e}, max |f_K + 1| {final:.2e}"


def _lambda_gap(trace) -> float:
    gap = 0.0
    for r in trace:
        ax = abs(r.x)
        if ax > 1e-3 and abs(ax - 0.5) > 1e-3:
            gap = max(gap, abs(r.lambda_a + 1 / (2 * ax)))
    return gap


def lambda_consistency(scale: float = 1.0):
    worst = 0.0
    for mode in LambdaMode:
        for tid in tables.TABLES:
            for col in tables.reproduce(tid, mode=mode).columns:
                worst = max(worst, _lambda_gap(col.trace))
    return worst <= 1e-4 * scale, f"max |lambda_a + 1/(2|x|)| {worst:.2e}"


def level_set_projection(scale: float = 1.0):
    f, gen = example_f(), example_generator()
    xs = np.linspace(-5, 5, 100001)
    fx = f(xs)
    worst = -np.inf
    for x0 in (0.25, 1.75):
        tr = tables.run_preset(tables.TABLES[1], x0)
        for prev, cur in zip(tr.records, tr.records[1:]):
            mask = fx <= cur.f_x
            if not mask.any():
                continue
            d_next = divergence(gen, cur.x, prev.x, prev.lam)
            d_grid = divergence(gen, xs[mask], prev.x, prev.lam)
            worst = max(worst, float(np.max(d_next - d_grid)))
    return worst <= 1e-8 * scale, f"max D(x_k+1,x_k) - D(x,x_k) {worst:.2e}"


def mirror_projection(scale: float = 1.0):
    f, gen = example_f(), example_generator()
    xs = np.linspace(-5, 5, 100001)
    worst = -np.inf
    for tid in (3, 4):
        for x0 in (0.25, 1.75):
            tr = tables.run_preset(tables.TABLES[tid], x0)
            for prev, cur in zip(tr.records, tr.records[1:]):
                u = f.subdiff(prev.x).select()
                at_next = cur.c_k * u(cur.x) + divergence(gen, cur.x, prev.x, prev.lam)
                grid = cur.c_k * u(xs) + divergence(gen, xs, prev.x, prev.lam)
                worst = max(worst, float(at_next - np.min(grid)))
    return worst <= 1e-9 * scale, f"max optimality excess {worst:.2e}"


def reference_tables(scale: float = 1.0):
    details = []
    ok = True
    for tid in tables.TABLES:
        res = tables.reproduce(tid)
        for col in res.columns:
            good = col.x_err <= tables.TABLE_TOL * scale and col.f_err <= tables.TABLE_TOL * scale
            ok &= good
            details.append(f"T{tid}/{col.x0}:{'ok' if good else 'FAIL'}")
    return ok, " ".join(details)


SUITES: dict[str, Callable] = {
    "lspace-axioms": lspace_axioms,
    "subgradient-endpoints": subgradient_endpoints,
    "even-symmetry": even_symmetry,
    "divergence-closed-form": divergence_closed_form,
    "triangle-identity": triangle_identity,
    "divergence-ordering": divergence_ordering,
    "strictness-fixtures": strictness_fixtures,
    "solver-oracle": solver_oracle,
    "prox-monotone": prox_monotone,
    "lambda-consistency": lambda_consistency,
    "level-set-projection": level_set_projection,
    "mirror-projection": mirror_projection,
    "reference-tables": reference_tables,
}


def run_all(scale: float = 1.0):
    """Yield ``(name, passed, detail)`` for every suite."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LambdaConsistencyWarning)
        for name, suite in SUITES.items():
            try:
                ok, detail = suite(scale)
            except Exception as exc:  # a crashing suite is a failing suite
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            yield name, bool(ok), detail
