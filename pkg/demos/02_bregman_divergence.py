# %% [markdown]
# # A divergence built from a nonconvex generator
#
# The generator is `phi(x) = -|x|`.  Its only quadratic minorant touching at
# `y` has curvature `-1/(2|y|)`, so the divergence has a closed form and
# vanishes at both `y` and `-y`.

# %%
import numpy as np

from lconvex import divergence, divergence_flat, divergence_sharp, example_generator, example_phi
from lconvex import LFunc, project, triangle_residual

gen = example_generator()
xs = np.linspace(-2, 2, 9)
for y in (0.5, -0.5, 1.5):
    print(f"y={y:+.1f}", np.round(divergence(gen, xs, y), 4))

# %% [markdown]
# The three-point identity holds to rounding error.

# %%
rng = np.random.default_rng(0)
for a, b, c in rng.uniform(-5, 5, (5, 3)):
    lhs, rhs = triangle_residual(gen, a, b, c)
    print(f"{lhs:+.12f} {rhs:+.12f}")

# %% [markdown]
# With several candidate curvatures at the base point, the flat and sharp
# versions bracket the divergence built from the actual selection.

# %%
phi = example_phi()
samples = [gen.lambda_of(0.5), LFunc(-1.5, 0)]
print("flat ", np.round(divergence_flat(phi, xs, 0.5, samples), 4))
print("D    ", np.round(divergence(gen, xs, 0.5), 4))
print("sharp", np.round(divergence_sharp(phi, xs, 0.5, samples), 4))

# %% [markdown]
# Projection of `0.5` onto `|x| >= 1` picks both signs.

# %%
print(project(gen, lambda z: np.abs(z) >= 1, 0.5))
