import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lconvex.algorithms import (
    LambdaMode,
    Schedule,
    StopRule,
    best_value,
    check_assumptions,
    mirror_run,
    mirror_step,
    prox_run,
    prox_step,
)
from lconvex.bregman import divergence, example_generator
from lconvex.exceptions import DegeneratePointError, LambdaConsistencyWarning
from lconvex.functions import Domain, example_f
from lconvex.lspace import LFunc
from lconvex.solver1d import Tiebreak

F = example_f()
GEN = example_generator()
LAM_QUARTER = LFunc(-2.0, 0.0)  # -1/(2*0.25)


def real_root_in(coeffs, lo, hi):
    r = np.roots(coeffs)
    r = r[np.isreal(r)].real
    return float(r[(r > lo) & (r < hi)][0])


def test_prox_step_unit_step():
    # on |x| > 1/2 the subproblem is x^4 + x^2 - 3|x| + const
    step = prox_step(F, GEN, 0.25, LAM_QUARTER, 1.0)
    want = real_root_in([4, 0, 2, -3], 0.5, 1.5)
    assert abs(step.x) == pytest.approx(want, abs=1e-8)
    assert F(step.x) == pytest.approx(F(want), abs=1e-8)
    # reference coordinates are good to about 1e-5
    assert abs(abs(step.x) - 0.7280872808728087) < 1e-5
    assert abs(F(step.x) + 0.7052678840908218) < 1e-5
    assert step.lam.a == pytest.approx(-1 / (2 * abs(step.x)), abs=1e-6)


def test_prox_step_small_step():
    # on 0 < x < 1/2 the subproblem derivative is 4x^3 + 38x - 14
    step = prox_step(F, GEN, 0.25, LAM_QUARTER, 0.1)
    want = real_root_in([4, 0, 38, -14], 0, 0.5)
    assert step.x == pytest.approx(want, abs=1e-8)
    assert abs(step.x - 0.364) < 5e-3


def test_prox_fixed_point_at_minimizer():
    step = prox_step(F, GEN, 1.0, LFunc(-0.5, 0), 1.0)
    assert step.x == pytest.approx(1.0, abs=1e-8)
    assert step.step_div == pytest.approx(0.0, abs=1e-12)


def test_mirror_step_unit_step_hits_boundary():
    # u = -8.875, objective -6.875 x^2 - |x| + const -> edge of the domain
    with pytest.warns(LambdaConsistencyWarning):
        step = mirror_step(F, GEN, 0.25, LAM_QUARTER, 1.0)
    assert step.x == 5.0
    assert F(step.x) == 591.0
    assert step.g == LFunc(-8.875, 0)


def test_mirror_step_small_step():
    # 11.125 x^2 - 10|x| + const
    step = mirror_step(F, GEN, 0.25, LAM_QUARTER, 0.1)
    assert step.x == pytest.approx(10 / 22.25, abs=1e-8)


def test_mirror_step_zero_subgradient_stays():
    step = mirror_step(F, GEN, 1.0, LFunc(-0.5, 0), 0.7)
    assert abs(step.x) == pytest.approx(1.0, abs=1e-8)
    assert step.g == LFunc(0.0, 0.0)


def test_mirror_step_tiebreak_rules():
    pos = mirror_step(F, GEN, 0.25, LAM_QUARTER, 0.1, tiebreak=Tiebreak.SMALLEST_ABS)
    neg = mirror_step(F, GEN, 0.25, LAM_QUARTER, 0.1, tiebreak=Tiebreak.MOST_NEGATIVE)
    assert neg.x == pytest.approx(-pos.x, abs=1e-7)


def test_degenerate_start():
    with pytest.raises(DegeneratePointError):
        prox_run(F, GEN, 0.0)
    with pytest.raises(DegeneratePointError):
        mirror_run(F, GEN, 0.0)


def test_step_validation():
    with pytest.raises(ValueError):
        prox_step(F, GEN, 0.25, LAM_QUARTER, 0.0)
    with pytest.raises(ValueError):
        mirror_step(F, GEN, 9.0, LAM_QUARTER, 1.0)
    with pytest.raises(ValueError):
        prox_run(F, GEN, 6.0)


def test_prox_run_from_quarter():
    tr = prox_run(F, GEN, 0.25, Schedule.harmonic(), StopRule(max_iters=4, f_tol=0))
    np.testing.assert_allclose(np.abs(tr.xs), [0.25, 0.728, 0.938, 0.985, 0.996], atol=5e-3)
    np.testing.assert_allclose(tr.fs, [0.941, -0.705, -0.982, -0.999, -1.0], atol=5e-3)
    assert tr.stop_reason == "max_iters"
    assert [r.k for r in tr] == [0, 1, 2, 3, 4]
    assert [r.c_k for r in tr] == [0.0, 1.0, 0.5, 1 / 3, 0.25]
    assert tr[0].lam == LAM_QUARTER


def test_prox_run_stops_on_f_tol():
    tr = prox_run(F, GEN, 1.75)
    assert tr.stop_reason in ("f_tol", "stationary")
    assert abs(tr.fs[-1] + 1) <= 1e-6


def test_mirror_run_from_minimizer_is_single_record():
    tr = mirror_run(F, GEN, 1.0)
    assert len(tr) == 1 and tr.stop_reason == "stationary"


def test_mirror_run_oscillates():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LambdaConsistencyWarning)
        tr = mirror_run(F, GEN, 0.25, Schedule.harmonic(), StopRule(max_iters=8, f_tol=0))
    assert tr.fs[1] == 591.0 and tr.fs[3] == 591.0
    assert abs(tr.fs[-1] + 1) <= 5e-3
    assert not np.all(np.diff(tr.fs) <= 0)


def test_mirror_boundary_warns_in_literal_mode():
    with pytest.warns(LambdaConsistencyWarning):
        mirror_step(F, GEN, 0.25, LAM_QUARTER, 1.0, mode=LambdaMode.LITERAL)


def test_refresh_mode_is_silent_and_consistent():
    with warnings.catch_warnings():
        warnings.simplefilter("error", LambdaConsistencyWarning)
        step = mirror_step(F, GEN, 0.25, LAM_QUARTER, 1.0, mode=LambdaMode.REFRESH)
    assert step.lam.a == -0.1


def test_best_value():
    tr = prox_run(F, GEN, 0.25, Schedule.harmonic(), StopRule(max_iters=4, f_tol=0))
    k, v = best_value(tr)
    assert k == 4 and v == tr.fs[-1]


def test_schedule():
    h = Schedule.harmonic()
    assert [h(k) for k in (1, 2, 4)] == [1.0, 0.5, 0.25]
    assert h.partial_sum(3) == pytest.approx(11 / 6)
    e = Schedule.explicit([0.5, 0.25])
    assert e.covers(2) and not e.covers(3)
    assert Schedule.constant(0.1).spec() == "constant:0.1"
    with pytest.raises(ValueError):
        h(0)
    with pytest.raises(ValueError):
        Schedule.constant(-1)
    with pytest.raises(ValueError):
        Schedule.explicit([1.0, 0.0])
    with pytest.raises(ValueError):
        StopRule(max_iters=0)


def test_explicit_schedule_exhausts():
    tr = prox_run(F, GEN, 0.25, Schedule.explicit([1.0, 0.5]), StopRule(f_tol=0))
    assert len(tr) == 3 and tr.stop_reason == "schedule_exhausted"


def test_check_assumptions():
    # D(., 0.25) = 2x^2 - |x| + 1/8 grows quadratically, so every level is bounded
    rep = check_assumptions(GEN, 0.25, Domain(-50, 50), [0.0, 1.0, 100.0], [1.0, -1.0])
    assert rep.sublevels_bounded and rep.reference_finite
    assert rep.reference_divergence[1.0] == pytest.approx(1.125)
    lvl1 = rep.levels[1]
    # edge of {D <= 1} solves 2t^2 - t - 7/8 = 0 with t = |x|
    edge = (1 + np.sqrt(1 + 8 * 0.875)) / 4
    assert lvl1.extent[1] == pytest.approx(edge, abs=1e-3)
    tiny = check_assumptions(GEN, 0.25, Domain(-1, 1), [100.0])
    assert not tiny.sublevels_bounded


@settings(max_examples=15, deadline=None)
@given(st.floats(1e-3, 5))
def test_sign_invariance(x0):
    # the example and the generator are even, so runs mirror each other
    stop = StopRule(max_iters=3, f_tol=0)
    a = prox_run(F, GEN, x0, stop=stop)
    b = prox_run(F, GEN, -x0, stop=stop, tiebreak=Tiebreak.MOST_NEGATIVE)
    np.testing.assert_allclose(a.fs, b.fs, atol=1e-9)
    np.testing.assert_allclose(np.abs(a.xs), np.abs(b.xs), atol=1e-7)


@settings(max_examples=15, deadline=None)
@given(st.floats(1e-3, 5), st.booleans())
def test_telescoping_bound(x0, neg):
    # f(x_l) <= f(x*) + D(x*, x0) / (c_1 + ... + c_l) for x* = +-1
    x0 = -x0 if neg else x0
    sched = Schedule.harmonic()
    tr = prox_run(F, GEN, x0, sched, StopRule(max_iters=6, f_tol=0))
    ref = min(divergence(GEN, s, x0) for s in (1.0, -1.0))
    for r in tr.records[1:]:
        assert r.f_x <= -1 + ref / sched.partial_sum(r.k) + 1e-8


@pytest.mark.parametrize("mode", list(LambdaMode))
def test_lambda_tracks_generator_on_prox_runs(mode):
    for x0 in (0.25, 1.75, -3.0):
        tr = prox_run(F, GEN, x0, mode=mode)
        for r in tr:
            assert r.lambda_a == pytest.approx(-1 / (2 * abs(r.x)), abs=1e-4)
