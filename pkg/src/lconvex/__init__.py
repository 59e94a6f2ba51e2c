"""Abstract convex minimization with abstract Bregman divergences."""

from .algorithms import (
    AssumptionReport,
    IterateRecord,
    LambdaMode,
    Schedule,
    StepResult,
    StopRule,
    Trace,
    best_value,
    check_assumptions,
    mirror_run,
    mirror_step,
    prox_run,
    prox_step,
)
from .bregman import (
    BregmanGenerator,
    divergence,
    divergence_flat,
    divergence_sharp,
    example_generator,
    project,
    triangle_residual,
)
from .exceptions import (
    DegeneratePointError,
    InfeasibleError,
    LambdaConsistencyWarning,
    LConvexError,
)
from .functions import (
    DEFAULT_DOMAIN,
    Domain,
    ObjectiveOracle,
    StrictnessResult,
    SubdiffSet,
    check_strictness,
    check_subgradient,
    example_f,
    example_f1,
    example_f2,
    example_f3,
    example_phi,
    sum_oracle,
)
from .lspace import LFunc, add, eval_l, scale, zero
from .solver1d import SolverConfig, Tiebreak, argmin_tiebreak, golden_section, minimize_scalar

__version__ = "0.1.0"
