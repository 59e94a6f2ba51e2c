"""Abstract Bregman divergences and projections.

For a generator ``phi`` and a subgradient ``lam`` of ``phi`` at the base
point ``y``::

    D(x, y) = phi(x) - phi(y) - (lam(x) - lam(y))

which is nonnegative because ``lam`` is an L-subgradient.  With
``phi = -|x|`` this is ``-|x| + |y| + (x**2 - y**2) / (2|y|)``.

The flat and sharp variants take the infimum and supremum over a finite
sample of subgradients *at the base point* (the second argument), which is
what makes ``flat <= D <= sharp`` hold pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .exceptions import DegeneratePointError, InfeasibleError
from .functions import Domain, ObjectiveOracle, example_phi
from .lspace import LFunc
from .solver1d import SolverConfig, minimize_scalar


def _default_selection(phi: ObjectiveOracle) -> Callable[[float], LFunc]:
    def select(y: float) -> LFunc:
        sd = phi.subdiff(y)
        if sd.is_empty:
            raise DegeneratePointError(
                f"generator undefined at y={y}: empty subdifferential of {phi.name}", y
            )
        return sd.select()

    return select


@dataclass(frozen=True)
class BregmanGenerator:
    """A generator ``phi`` with a rule picking ``lambda_of(y)`` from its
    subdifferential at ``y``."""

    phi: ObjectiveOracle
    lambda_of: Callable[[float], LFunc]

    @classmethod
    def from_oracle(cls, phi: ObjectiveOracle) -> BregmanGenerator:
        return cls(phi, _default_selection(phi))

    @property
    def domain(self) -> Domain:
        return self.phi.domain


def example_generator(domain: Domain | None = None) -> BregmanGenerator:
    phi = example_phi() if domain is None else example_phi(domain)
    return BregmanGenerator.from_oracle(phi)


def _pointwise(phi: ObjectiveOracle, x, y: float, lam: LFunc):
    x = np.asarray(x, dtype=float)
    out = phi(x) - phi(y) - lam.a * (x * x - y * y)
    return float(out) if out.ndim == 0 else out


def divergence(gen: BregmanGenerator, x, y: float, lam: LFunc | None = None):
    """``D(x, y)`` for scalar or array ``x``.

    ``lam`` overrides the generator's selection at ``y``; algorithms pass the
    subgradient they are tracking.
    """
    if lam is None:
        lam = gen.lambda_of(y)
    return _pointwise(gen.phi, x, y, lam)


def divergence_flat(phi: ObjectiveOracle, x, y: float, samples: Sequence[LFunc]):
    """Smallest divergence over the sampled subgradients at ``y``."""
    if len(samples) == 0:
        raise ValueError("divergence_flat needs at least one subgradient sample")
    vals = [_pointwise(phi, x, y, s) for s in samples]
    return float(min(vals)) if np.ndim(vals[0]) == 0 else np.min(vals, axis=0)


def divergence_sharp(phi: ObjectiveOracle, x, y: float, samples: Sequence[LFunc]):
    """Largest divergence over the sampled subgradients at ``y``."""
    if len(samples) == 0:
        raise ValueError("divergence_sharp needs at least one subgradient sample")
    vals = [_pointwise(phi, x, y, s) for s in samples]
    return float(max(vals)) if np.ndim(vals[0]) == 0 else np.max(vals, axis=0)


def triangle_residual(gen: BregmanGenerator, a: float, b: float, c: float) -> tuple[float, float]:
    """Both sides of the three-point identity

    ``D_alpha(c, a) + D_beta(a, b) - D_beta(c, b)
    = beta(c) - beta(a) - (alpha(c) - alpha(a))``

    with ``alpha = lambda_of(a)`` and ``beta = lambda_of(b)``.
    """
    alpha, beta = gen.lambda_of(a), gen.lambda_of(b)
    lhs = (
        divergence(gen, c, a, alpha)
        + divergence(gen, a, b, beta)
        - divergence(gen, c, b, beta)
    )
    rhs = beta.a * (c * c - a * a) - alpha.a * (c * c - a * a)
    return lhs, rhs


def project(
    gen: BregmanGenerator,
    C: Callable,
    y: float,
    domain: Domain | None = None,
    cfg: SolverConfig = SolverConfig(),
) -> list[float]:
    """Bregman projections of ``y`` onto ``{z in domain : C(z)}``.

    Every near-minimizer of ``D(., y)`` over the set is returned (the
    projection is set-valued).  ``y`` itself is included whenever ``C(y)``.
    """
    domain = gen.domain if domain is None else domain
    lam = gen.lambda_of(y)

    def obj(z):
        z = np.asarray(z, dtype=float)
        try:
            inside = np.asarray(C(z), dtype=bool)
            if inside.shape != z.shape:
                raise ValueError("shape mismatch")
        except (TypeError, ValueError):
            inside = np.array([bool(C(float(v))) for v in z.ravel()]).reshape(z.shape)
        with np.errstate(invalid="ignore"):
            return np.where(inside, _pointwise(gen.phi, z, y, lam), np.inf)

    try:
        points, _ = minimize_scalar(obj, domain, cfg)
    except InfeasibleError as exc:
        raise InfeasibleError(f"projection set is empty on the {domain} grid") from exc
    if domain.contains(y) and bool(C(float(y))):
        points = [p for p in points if abs(p - y) > 10 * cfg.refine_tol]
        points = sorted(points + [float(y)])
    return points
