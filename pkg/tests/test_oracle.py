import math

import numpy as np
import pytest

from invosc import mode as md
from invosc import oracle
from invosc.errors import DomainError, QuadratureError


def test_harmonic_closed_form():
    res = oracle.integrate_mode(md.ConstantHarmonic(2.0), -1.0, 3.0, 1e-12, t_eval=[0.0, 1.5, 3.0])
    for i, t in enumerate(res.times):
        ref = complex(math.cos(2 * (t + 1)), math.sin(2 * (t + 1))) / math.sqrt(2.0)
        assert abs(res.eps(i) - ref) < 1e-9


def test_lands_on_requested_times():
    ts = [-1.0, -0.3, 0.0, 0.25, 1.0]
    res = oracle.integrate_mode(md.PowerCrossing(2, 10.0), -1.0, 1.0, 1e-10, t_eval=ts)
    assert res.times == ts
    assert all(b > a for a, b in zip(res.times, res.times[1:]))
    assert res.wronskian_drift >= 0.0 and res.steps_taken > 0


def test_matches_closed_form_mode():
    prof = md.PowerCrossing(2, 50.0)
    ts = list(np.linspace(-1.0, 1.2, 45))
    res = oracle.integrate_mode(prof, -1.0, 1.2, 1e-10, t_eval=ts)
    c = md.transition_coefficients(prof)
    for i, t in enumerate(res.times):
        m = md.mode_at(prof, c, t)
        assert abs(res.eps(i) - m.eps) < 1e-6 * max(1.0, abs(m.eps))
        assert abs(res.eps_dot(i) - m.eps_dot) / 50.0 < 1e-6 * max(1.0, abs(m.eps_dot) / 50.0)


def test_rescaling_keeps_values_finite():
    res = oracle.integrate_mode(md.SuddenJump(5.0), -1.0, 60.0, 1e-10)
    assert res.log_scales[-1] > 200
    e = res.samples[-1][1]
    assert math.isfinite(abs(e))
    # growth rate of the unstable branch
    assert res.log_scales[-1] + math.log(abs(e)) == pytest.approx(5.0 * 60.0 + math.log(abs(md.jump_v(5.0)[0]) / math.sqrt(10.0)), abs=1e-6)


def test_explicit_initial_state():
    res = oracle.integrate_mode(md.ConstantHarmonic(1.0), 0.0, math.pi, 1e-11, initial=(1.0 + 0j, 0j))
    assert abs(res.eps(1) + 1.0) < 1e-9


@pytest.mark.parametrize("kw", [dict(tol=1e-16), dict(tol=1e-2)])
def test_tolerance_range(kw):
    with pytest.raises(DomainError):
        oracle.integrate_mode(md.ConstantHarmonic(1.0), -1.0, 0.0, **kw)


def test_window_checks():
    with pytest.raises(DomainError):
        oracle.integrate_mode(md.PowerCrossing(2, 1.0), -2.0, 0.0)
    with pytest.raises(DomainError):
        oracle.integrate_mode(md.PowerCrossing(2, 1.0), -1.0, -1.0)


def test_quadrature():
    val, err = oracle.quad_adaptive(math.exp, 0.0, 1.0)
    assert val == pytest.approx(math.e - 1.0, rel=1e-13)
    assert err < 1e-10


def test_quadrature_budget():
    with pytest.raises(QuadratureError):
        oracle.quad_adaptive(lambda x: math.sin(1.0 / x) / x, 1e-9, 1.0, 1e-14, limit=5)
    with pytest.raises(DomainError):
        oracle.quad_adaptive(math.exp, 1.0, 0.0)
