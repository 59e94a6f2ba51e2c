import numpy as np


def evaluate_array(fn, xs: np.ndarray) -> np.ndarray:
    """Evaluate ``fn`` on every entry of ``xs``.

    Vectorized callables are called once; anything that fails on an array
    (``max(0, z)``, ``if z > 0`` ...) is evaluated pointwise instead.  NaN is
    mapped to +inf so that undefined points behave as excluded ones.
    """
    xs = np.asarray(xs, dtype=float)
    try:
        out = np.asarray(fn(xs), dtype=float)
        if out.shape != xs.shape:
            raise ValueError("shape mismatch")
    except (TypeError, ValueError):
        out = np.array([float(fn(float(x))) for x in xs.ravel()]).reshape(xs.shape)
    return np.where(np.isnan(out), np.inf, out)
