# %% [markdown]
# # Subdifferentials over quadratic minorants
#
# Functions of the form `a*x**2 + b` play the part of linear functions here.
# A subgradient of `f` at `x` is any `a` with
# `f(y) >= f(x) + a*(y**2 - x**2)` for every `y`.

# %%
import numpy as np

from lconvex import LFunc, check_subgradient, example_f, example_f1, example_f2, example_f3

f = example_f()
for x in (0.25, 0.5, 1.0, 1.75):
    print(f"x={x:<5} f(x)={f(x):+.5f}  subdiff={f.subdiff(x)}")

# %% [markdown]
# At `x = 0.5` the third piece switches off and the subdifferential is a
# whole interval.  At `x = 0` it is empty, which is why runs cannot start there.

# %%
print("parts at 0.5:", [p.subdiff(0.5) for p in (example_f1(), example_f2(), example_f3())])
print("sum at 0.5:  ", f.subdiff(0.5))
print("empty at 0:  ", f.subdiff(0.0).is_empty)

# %% [markdown]
# Numerically confirm the endpoints and show that leaving the interval breaks
# the inequality somewhere on the grid.

# %%
for a in (-4.5, -2.5, -4.6, -2.4):
    print(f"a={a:+.2f} subgradient at 0.5: {check_subgradient(f, 0.5, LFunc(a, 0))}")

# %%
xs = np.linspace(-2, 2, 9)
print(np.column_stack([xs, f(xs)]))
