import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invosc import specfun
from invosc.errors import CapExceededError, DomainError, PoleError

mpmath.mp.dps = 30

orders = st.floats(min_value=-0.99, max_value=0.99).filter(lambda v: abs(v) > 1e-3)
args = st.floats(min_value=1e-3, max_value=60.0)


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


@pytest.mark.parametrize("z", [0.5, 2.0, 20.0])
def test_j_half_order_closed_form(z):
    assert specfun.bessel_j(0.5, z) == pytest.approx(math.sqrt(2 / (math.pi * z)) * math.sin(z), rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("z", [1.0, 5.0])
def test_i_half_order_closed_form(z):
    val = specfun.bessel_i_scaled(0.5, z) * math.exp(z)
    assert val == pytest.approx(math.sqrt(2 / (math.pi * z)) * math.sinh(z), rel=1e-12)


@settings(max_examples=150, deadline=None)
@given(orders, args)
def test_j_matches_mpmath(mu, z):
    ref = float(mpmath.besselj(mu, z))
    # absolute error near zeros of J, relative elsewhere
    assert abs(specfun.bessel_j(mu, z) - ref) <= 1e-11 * max(1.0, abs(ref)) + 1e-12


@settings(max_examples=150, deadline=None)
@given(orders, st.floats(min_value=1e-3, max_value=600.0))
def test_i_scaled_matches_mpmath(mu, z):
    ref = float(mpmath.besseli(mu, z) * mpmath.exp(-z))
    assert rel(specfun.bessel_i_scaled(mu, z), ref) < 1e-11


@settings(max_examples=150, deadline=None)
@given(orders, st.floats(min_value=1e-2, max_value=600.0))
def test_k_scaled_matches_mpmath(mu, z):
    ref = float(mpmath.besselk(mu, z) * mpmath.exp(z))
    assert rel(specfun.bessel_k_scaled(mu, z), ref) < 1e-11


@pytest.mark.parametrize("mu", [-0.75, -0.25, 0.25, 0.75])
@pytest.mark.parametrize("z", [1e-6, 0.1, 3.0])
def test_reduced_forms(mu, z):
    scale = mpmath.power(z / 2, mu)
    assert rel(specfun.bessel_j_reduced(mu, z), float(mpmath.besselj(mu, z) / scale)) < 1e-12
    assert rel(specfun.bessel_i_reduced(mu, z), float(mpmath.besseli(mu, z) / scale)) < 1e-12


def test_integer_negative_order_reflection():
    assert specfun.bessel_j(-1.0, 2.5) == pytest.approx(-specfun.bessel_j(1.0, 2.5), rel=1e-14)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-30, max_value=30), st.floats(min_value=-60, max_value=60))
def test_log_gamma_matches_mpmath(x, y):
    z = complex(x, y)
    if abs(y) < 1e-6 and x <= 0 and abs(x - round(x)) < 1e-6:
        return
    ref = complex(mpmath.loggamma(mpmath.mpc(x, y)))
    got = specfun.log_gamma_complex(z)
    assert abs(got - ref) < 1e-11 * max(1.0, abs(ref))


def test_log_gamma_principal_branch_continuity():
    # imaginary part stays continuous across Re z = 1/2 where the method switches
    lo = specfun.log_gamma_complex(complex(0.4999999, 40.0))
    hi = specfun.log_gamma_complex(complex(0.5000001, 40.0))
    assert abs(lo - hi) < 1e-5


@pytest.mark.parametrize("z", [0.0, -1.0, -7.0])
def test_gamma_poles(z):
    with pytest.raises(PoleError):
        specfun.log_gamma_complex(z)


def test_gamma_abs_sq_half():
    # |Gamma(1/2 + ix)|^2 = pi / cosh(pi x)
    for x in (0.0, 0.7, 5.0):
        assert specfun.gamma_abs_sq(0.5, x) == pytest.approx(math.pi / math.cosh(math.pi * x), rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(
    st.integers(min_value=0, max_value=20),
    st.floats(min_value=-3, max_value=3),
    st.floats(min_value=-10, max_value=10),
    st.sampled_from([0.5, 1.5]),
)
def test_hyp_terminating_matches_mpmath(k, br, bi, c):
    b = complex(br, bi)
    z = complex(1.2, -0.8)
    ref = complex(mpmath.hyp2f1(-k, mpmath.mpc(br, bi), c, mpmath.mpc(z.real, z.imag)))
    # the finite sum is exact up to the largest term
    terms = [abs(complex(mpmath.rf(-k, j) * mpmath.rf(mpmath.mpc(br, bi), j) * mpmath.power(abs(z), j)
                         / (mpmath.rf(c, j) * mpmath.factorial(j)))) for j in range(k + 1)]
    assert abs(specfun.hyp_terminating(k, b, c, z) - ref) <= 1e-13 * max(terms) + 1e-300


def test_hyp_degree_zero_and_cap():
    assert specfun.hyp_terminating(0, 1 + 2j, 0.5, 3.0) == 1.0
    with pytest.raises(CapExceededError):
        specfun.hyp_terminating(specfun.HYP_MAX_DEGREE + 1, 0.25, 0.5, 2.0)
    with pytest.raises(DomainError):
        specfun.hyp_terminating(-1, 0.25, 0.5, 2.0)
    with pytest.raises(DomainError):
        specfun.hyp_terminating(2, 0.25, -1.0, 2.0)


def test_argument_checks():
    with pytest.raises(DomainError):
        specfun.bessel_j(0.3, -1.0)
    with pytest.raises(DomainError):
        specfun.bessel_j(0.3, math.nan)
