# %% [markdown]
# # Proximal point runs
#
# Each step minimizes `f + D(., x_k) / c_k` globally on `[-5, 5]` and then
# moves the curvature tracker by `-c_k` times a subgradient of `f`.

# %%
import numpy as np

from lconvex import Schedule, StopRule, best_value, example_f, example_generator, prox_run

f, gen = example_f(), example_generator()

for sched in (Schedule.harmonic(), Schedule.constant(0.1)):
    for x0 in (0.25, 1.75):
        tr = prox_run(f, gen, x0, sched, StopRule(max_iters=12, f_tol=1e-6))
        print(f"{sched.spec():>14} x0={x0}: ", np.round(np.abs(tr.xs), 3), tr.stop_reason)

# %% [markdown]
# Values never go up along a proximal run, and the tracker stays equal to
# `-1/(2|x_k|)`.

# %%
tr = prox_run(f, gen, -3.3)
print("f:", np.round(tr.fs, 5))
print("max increase:", np.diff(tr.fs).max())
print("tracker gap:", np.max(np.abs(tr.lambdas + 1 / (2 * np.abs(tr.xs)))))
print("best:", best_value(tr))
