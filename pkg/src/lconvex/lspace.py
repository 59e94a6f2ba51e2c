"""Even quadratics ``x -> a*x**2 + b`` as a two-dimensional linear space.

These are the abstract linear functions used throughout the package.  The
curvature ``a`` is the only coefficient that matters in subgradient
inequalities; the offset ``b`` is carried so that linear combinations stay
closed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LFunc:
    """The function ``x -> a*x**2 + b``."""

    a: float = 0.0
    b: float = 0.0

    def __call__(self, x):
        return self.a * np.square(x) + self.b

    def __add__(self, other: LFunc) -> LFunc:
        if not isinstance(other, LFunc):
            return NotImplemented
        return LFunc(self.a + other.a, self.b + other.b)

    def __sub__(self, other: LFunc) -> LFunc:
        if not isinstance(other, LFunc):
            return NotImplemented
        return LFunc(self.a - other.a, self.b - other.b)

    def __neg__(self) -> LFunc:
        return LFunc(-self.a, -self.b)

    def __mul__(self, c: float) -> LFunc:
        if isinstance(c, LFunc):
            return NotImplemented
        return LFunc(c * self.a, c * self.b)

    __rmul__ = __mul__

    def is_finite(self) -> bool:
        return bool(np.isfinite(self.a) and np.isfinite(self.b))


def zero() -> LFunc:
    return LFunc(0.0, 0.0)


def eval_l(l: LFunc, x):
    """Evaluate ``l`` at ``x`` (scalar or array)."""
    return l(x)


def add(l1: LFunc, l2: LFunc) -> LFunc:
    return l1 + l2


def scale(l: LFunc, c: float) -> LFunc:
    if not np.isfinite(c):
        raise ValueError(f"scale factor must be finite, got {c!r}")
    return l * c
