# %% [markdown]
# # Mirror descent
#
# Mirror descent freezes the subgradient at the current point, so with large
# steps the quadratic model can send the iterate to the edge of the domain.

# %%
import warnings

import numpy as np

from lconvex import LambdaConsistencyWarning, LambdaMode, Schedule, StopRule
from lconvex import example_f, example_generator, mirror_run

f, gen = example_f(), example_generator()
stop = StopRule(max_iters=9, f_tol=0)

with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always", LambdaConsistencyWarning)
    tr = mirror_run(f, gen, 0.25, Schedule.harmonic(), stop)
print(np.column_stack([np.abs(tr.xs), tr.fs]).round(4))
print(len(caught), "tracker clamps at the boundary")

# %% [markdown]
# The `refresh` mode resets the tracker from the new point every step and
# gives the same iterates here, up to solver precision, without any clamping.

# %%
tr2 = mirror_run(f, gen, 0.25, Schedule.harmonic(), stop, mode=LambdaMode.REFRESH)
print(np.max(np.abs(tr.xs - tr2.xs)))

# %%
tr3 = mirror_run(f, gen, 1.75, Schedule.constant(0.1), StopRule(max_iters=4, f_tol=0))
print(np.column_stack([np.abs(tr3.xs), tr3.fs]).round(4))
