import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invosc import mode as md
from invosc import moments as mo
from invosc.errors import DomainError, PreconditionError


def ladder(dim):
    a = np.diag(np.sqrt(np.arange(1, dim)), 1)
    X = (a + a.T) / math.sqrt(2.0)
    P = (a - a.T) / (1j * math.sqrt(2.0))
    return X, P


def matrix_energy(mode, N, dim=40):
    """<N|E|N> and <N|E^2|N> from truncated Heisenberg operators."""
    X, P = ladder(dim)
    e, ed = mode.eps, mode.eps_dot
    x = X * e.real + P * e.imag
    p = X * ed.real + P * ed.imag
    E = 0.5 * (p @ p + mode.gamma * x @ x)
    return E[N, N].real, (E @ E)[N, N].real


CASES = [
    (md.PowerCrossing(2, 10.0), -0.4),
    (md.PowerCrossing(2, 10.0), 0.3),
    (md.PowerCrossing(1, 3.0), 0.6),
    (md.SuddenJump(2.0), 0.5),
]


@pytest.mark.parametrize("prof,t", CASES)
@pytest.mark.parametrize("N", [0, 1, 3])
def test_master_formula_against_fock_matrices(prof, t, N):
    m = md.mode_at(prof, t=t)
    w0 = prof.omega0
    e1, e2 = matrix_energy(m, N)
    got_e2, var = mo.energy_variance_fock("exact", N, mode=m)
    assert got_e2 * w0 * w0 == pytest.approx(e2, rel=1e-10)
    assert var * w0 * w0 == pytest.approx(e2 - e1 * e1, rel=1e-8, abs=1e-10 * e2)
    assert mo.mean_energy(mo.propagate_second(mo.Fock(N), m), m.gamma) == pytest.approx(e1, rel=1e-10, abs=1e-12)


def test_fock_fourth_moments_against_matrices():
    X, P = ladder(30)
    for N in range(5):
        x4, xxpp, xpxp = mo.fock_fourth_moments(N)
        assert (X @ X @ X @ X)[N, N].real == pytest.approx(x4)
        assert (X @ X @ P @ P + P @ P @ X @ X)[N, N].real == pytest.approx(xxpp)
        s = X @ P + P @ X
        assert (s @ s)[N, N].real == pytest.approx(xpxp)


def _gaussian(x2, excess, c, x0, p0):
    # p2 chosen so that x2*p2 - xp^2/4 = 1/4 + excess
    xp = c * 2.0 * math.sqrt(0.25 + excess)
    p2 = (0.25 + excess + 0.25 * xp * xp) / x2
    return mo.Gaussian(x2, p2, xp, x0, p0)


gaussians = st.builds(
    _gaussian,
    st.floats(0.05, 5.0),
    st.floats(0.0, 3.0),
    st.floats(-2.0, 2.0),
    st.floats(-1.0, 1.0),
    st.floats(-1.0, 1.0),
)


@settings(max_examples=60, deadline=None)
@given(gaussians, st.sampled_from(CASES))
def test_propagation_paths_agree(g, case):
    prof, t = case
    m = md.mode_at(prof, t=t)
    a = mo.propagate_second(g, m)
    b = mo.propagate_second(g, m, central=True)
    c = mo.propagate_second(g, m, scaled=True).unscaled()
    for u, v in ((a, b), (a, c)):
        assert u.x2 == pytest.approx(v.x2, rel=1e-9, abs=1e-12)
        assert u.p2 == pytest.approx(v.p2, rel=1e-9, abs=1e-12)
        assert u.xp == pytest.approx(v.xp, rel=1e-9, abs=1e-9 * (abs(u.x2) + abs(u.p2)))
    e_direct = mo.mean_energy(a, m.gamma)
    e_forms = float(mo.mean_energy_from_mode(g, m))
    assert e_direct == pytest.approx(e_forms, rel=1e-8, abs=1e-9 * (a.p2 + abs(m.gamma) * a.x2))


@settings(max_examples=60, deadline=None)
@given(gaussians, st.floats(-1.0, 0.4))
def test_universal_invariant_conserved(g, t):
    prof = md.PowerCrossing(2, 20.0)
    d0 = mo.universal_invariant(mo.propagate_second(g, md.mode_at(prof, t=-1.0)))
    d = mo.universal_invariant(mo.propagate_second(g, md.mode_at(prof, t=t)))
    assert d == pytest.approx(d0, rel=1e-9)


def test_first_moments_follow_classical_motion():
    prof = md.ConstantHarmonic(2.0)
    m = md.mode_at(prof, t=-1.0 + 0.3)
    x, p = mo.propagate_first(0.4, -0.1, m)
    assert x == pytest.approx(0.4 * math.cos(0.6) - 0.1 / 2.0 * math.sin(0.6), abs=1e-14)
    assert p == pytest.approx(-0.4 * 2.0 * math.sin(0.6) - 0.1 * math.cos(0.6), abs=1e-14)


def test_special_form():
    m = md.mode_at(md.PowerCrossing(2, 10.0), t=0.2)
    a = mo.propagate_second(mo.Fock(2), m, form="special")
    b = mo.propagate_second(mo.Fock(2), m)
    assert a.x2 == pytest.approx(b.x2) and a.xp == pytest.approx(b.xp)
    with pytest.raises(PreconditionError):
        mo.propagate_second(mo.Gaussian(1.0, 1.0, 0.5), m, form="special")


def test_initial_states():
    with pytest.raises(DomainError):
        mo.Gaussian(0.1, 0.1)
    with pytest.raises(DomainError):
        mo.Fock(-1)
    assert mo.initial_moments(mo.Fock(1), 4.0) == (0.375, 6.0, 0.0, 0.0, 0.0)


@pytest.mark.parametrize("nu,G", [(0.25, 20.0), (1 / 3, 50.0), (0.2, 5.0)])
def test_exact_ratio_matches_mode(nu, G):
    prof = md.PowerCrossing(1 / nu - 2, G)
    c = md.transition_coefficients(prof)
    for t in (-0.9, -0.3, -1e-3, 0.0, 1e-3, 0.2, 0.6, 1.5, 5.0):
        a = mo.energy_ratio_exact_scaled(nu, G, t)
        b = mo.energy_ratio_from_mode(md.mode_at(prof, c, t))
        assert a.sign == b.sign
        assert a.log_abs == pytest.approx(b.log_abs, abs=1e-9)


def test_exact_ratio_revival_matches_mode():
    prof = md.PowerCrossing(2, 30.0, revival=True)
    for t in (0.1, 0.8, 2.0):
        a = mo.energy_ratio_exact(0.25, 30.0, t, revival=True)
        b = float(mo.energy_ratio_from_mode(md.mode_at(prof, t=t)))
        assert a == pytest.approx(b, rel=1e-9)


def test_ratio_starts_at_one():
    assert mo.energy_ratio_exact(0.25, 50.0, -1.0) == pytest.approx(1.0, rel=1e-12)


def test_adiabatic_laws():
    assert mo.adiabatic_prediction("pre", 0.25, t=-0.5) == pytest.approx(0.5)
    assert mo.adiabatic_prediction("revival", 0.25, t=1.0) == pytest.approx(3.0)
    assert mo.adiabatic_prediction("revival", 1 / 3, t=1.0) == pytest.approx(5 / 3)
    assert mo.adiabatic_prediction("crossing", 0.25, G=50.0) == pytest.approx(mo.crossing_ratio(0.25, 50.0))
    inv = mo.adiabatic_prediction("invertedAsymptotic", 0.25, G=50.0, t=1.0)
    assert inv.sign == -1 and inv.exponent == pytest.approx(2 * 25.0)
    with pytest.raises(DomainError):
        mo.adiabatic_prediction("pre", 0.25, t=0.5)
    with pytest.raises(DomainError):
        mo.adiabatic_prediction("bogus", 0.25, t=0.5)


def test_inverted_asymptotic_tracks_exponent():
    # the asymptotic law carries the right exponent and sign; the prefactor is checked loosely
    ex = mo.energy_ratio_exact_scaled(0.25, 50.0, 1.0)
    ap = mo.adiabatic_prediction("invertedAsymptotic", 0.25, G=50.0, t=1.0)
    assert ex.sign == ap.sign
    assert abs(ex.log_abs - ap.log_abs) < 2.5


@pytest.mark.parametrize("state", [mo.Gaussian(0.3, 1.2, 0.4), mo.Gaussian(2.0, 0.5, -1.1, 0.3, 0.2), mo.Fock(2)])
def test_revival_with_initial_state_correction(state):
    G = 100.0
    prof = md.PowerCrossing(2, G, revival=True)
    g = state if isinstance(state, mo.Fock) else mo.Gaussian(state.x2 / G, state.p2 * G, state.xp, state.x0 / math.sqrt(G), state.p0 * math.sqrt(G))
    x2, p2, _, _, _ = mo.initial_moments(g, G)
    e0 = 0.5 * (p2 + G * G * x2)
    for t in (1.0, 2.0, 3.0):
        exact = float(mo.mean_energy_from_mode(g, md.mode_at(prof, t=t))) / e0
        pred = mo.adiabatic_prediction("revival", 0.25, G=G, t=t, init=g)
        assert exact == pytest.approx(pred, rel=5e-3)


def test_revival_weights_limit():
    up, um = md.revival_weights(0.25, 400.0)
    assert abs(up) ** 2 - abs(um) ** 2 == pytest.approx(1.0, abs=1e-12)
    assert mo.beta_coefficient(up, um) == pytest.approx(mo.beta_coefficient(*md.revival_u(0.25)), rel=2e-3)


def test_jump_energetics():
    assert mo.jump_energy_fock(0, 1.0) == 0.0
    assert mo.inverted_energy(md.jump_v(2.0), mo.Fock(0), 2.0) == pytest.approx(-0.75)
    assert mo.jump_energy(mo.Fock(1), 2.0) == pytest.approx(mo.jump_energy_fock(1, 2.0))
    with pytest.raises(PreconditionError):
        mo.inverted_energy((1.0, 1.0), mo.Fock(0), 1.0)


def test_squeezing():
    u = md.revival_u(0.25)
    lo, hi = mo.squeeze_bounds(u)
    assert lo == pytest.approx(math.tan(math.pi / 8) ** 2, rel=1e-12)
    assert hi * lo == pytest.approx(1.0)
    vals = [mo.squeeze_ratio(u, phi) for phi in np.linspace(0, math.pi, 721)]
    assert min(vals) == pytest.approx(lo, rel=1e-4)
    assert max(vals) == pytest.approx(hi, rel=1e-4)
    with pytest.raises(PreconditionError):
        mo.squeeze_ratio((1.0, 1.0), 0.0)


def test_fluctuation_regimes():
    e2, var = mo.energy_variance_fock("invertedJump", 0, rho=1.0)
    assert (e2, var) == (pytest.approx(0.5), pytest.approx(0.5))
    m = md.mode_at(md.SuddenJump(2.0), t=0.7)
    for N in range(4):
        a = mo.energy_variance_fock("invertedJump", N, rho=2.0)
        b = mo.energy_variance_fock("exact", N, mode=m)
        assert a == pytest.approx(b, rel=1e-10)
    assert mo.sigma_ratio_adiabatic(md.revival_u(0.25), 0) == pytest.approx(16.0)
    with pytest.raises(DomainError):
        mo.energy_variance_fock("bogus", 0)


def test_scaled_real():
    s = mo.ScaledReal(-2.5, 800.0)
    assert s.sign == -1
    assert s.log_abs == pytest.approx(800.0 + math.log(2.5))
    m, e = s.normalized()
    assert 1 <= abs(m) < 10 and m < 0
    with pytest.raises(OverflowError):
        float(s)
    assert float(mo.ScaledReal(3.0, 1.0)) == pytest.approx(3 * math.e)
