r"""Quantum moments, mean energy and energy fluctuations driven by a classical mode.

For a quadratic Hamiltonian the Heisenberg operators are linear in the
initial ones. With the dimensionless initial operators
:math:`X = x_0\sqrt{\omega_0}` and :math:`P = p_0/\sqrt{\omega_0}`,

.. math::
    x(t) = X\,\mathrm{Re}\,\varepsilon + P\,\mathrm{Im}\,\varepsilon, \qquad
    p(t) = X\,\mathrm{Re}\,\dot\varepsilon + P\,\mathrm{Im}\,\dot\varepsilon,

so every first, second and fourth moment at time ``t`` is a fixed polynomial
in the initial moments and the mode. Energies are
:math:`E = (\langle p^2\rangle + \gamma\langle x^2\rangle)/2` with ``hbar = m = 1``.

Quantities that grow like :math:`e^{2y}` after an inverted crossing are
returned as :class:`ScaledReal` (mantissa and natural-log exponent).
"""

import math
from dataclasses import dataclass
from typing import Union

from . import mode as _mode
from . import specfun
from .errors import DomainError, PreconditionError

__all__ = [
    "Fock",
    "Gaussian",
    "InitialState",
    "QuadraticState",
    "ScaledReal",
    "EnergyReport",
    "initial_moments",
    "is_special",
    "propagate_first",
    "propagate_second",
    "mean_energy",
    "universal_invariant",
    "quadratic_forms",
    "mean_energy_from_mode",
    "energy_ratio_from_mode",
    "energy_ratio_exact",
    "energy_ratio_exact_scaled",
    "crossing_ratio",
    "adiabatic_prediction",
    "beta_coefficient",
    "delta_beta",
    "inverted_energy",
    "jump_energy",
    "jump_energy_fock",
    "squeeze_ratio",
    "squeeze_bounds",
    "fock_fourth_moments",
    "energy_variance_fock",
    "sigma_ratio_adiabatic",
    "REGIMES",
]

#: Tolerance on the normalisation identities of the u and v pairs.
PAIR_TOL = 1e-10

REGIMES = ("exact", "adiabaticPre", "adiabaticRevival", "adiabaticInverted", "jump")


@dataclass(frozen=True)
class Fock:
    """Number state ``|N>`` of the initial oscillator."""

    N: int

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N < 0:
            raise DomainError(f"Fock index must be a non-negative integer, got {self.N!r}")


@dataclass(frozen=True)
class Gaussian:
    """Gaussian state given by its covariances and means at t = -tau.

    ``x2``, ``p2`` and ``xp`` are the central moments
    :math:`\\sigma_x`, :math:`\\sigma_p` and
    :math:`\\langle xp+px\\rangle - 2\\langle x\\rangle\\langle p\\rangle`.
    """

    x2: float
    p2: float
    xp: float = 0.0
    x0: float = 0.0
    p0: float = 0.0

    def __post_init__(self):
        if not (self.x2 > 0 and self.p2 > 0):
            raise DomainError("x2 and p2 must be positive")
        if self.x2 * self.p2 - 0.25 * self.xp * self.xp < 0.25 * (1.0 - 1e-12):
            raise DomainError("covariances violate the uncertainty relation")


InitialState = Union[Fock, Gaussian]


def initial_moments(init, omega0):
    """Full second moments and means ``(x2, p2, xp, x0, p0)`` at t = -tau."""
    if isinstance(init, Fock):
        level = init.N + 0.5
        return level / omega0, omega0 * level, 0.0, 0.0, 0.0
    if isinstance(init, Gaussian):
        return (
            init.x2 + init.x0**2,
            init.p2 + init.p0**2,
            init.xp + 2.0 * init.x0 * init.p0,
            init.x0,
            init.p0,
        )
    raise TypeError(f"unsupported initial state {init!r}")


def is_special(init, omega0, rtol=1e-12):
    """True if <p^2> = omega0^2 <x^2> and <xp+px> = 0 initially."""
    x2, p2, xp, _, _ = initial_moments(init, omega0)
    scale = max(p2, omega0 * omega0 * x2)
    return abs(p2 - omega0 * omega0 * x2) <= rtol * scale and abs(xp) <= rtol * omega0 * x2


@dataclass(frozen=True)
class ScaledReal:
    """Real number ``mantissa * exp(exponent)``."""

    mantissa: float
    exponent: float = 0.0

    def __float__(self):
        if self.mantissa != 0.0 and self.exponent + math.log(abs(self.mantissa)) > _mode.OVERFLOW_EXPONENT:
            raise OverflowError(f"value ~exp({self.log_abs:.1f}) is not representable")
        return self.mantissa * math.exp(self.exponent)

    @property
    def sign(self):
        return (self.mantissa > 0) - (self.mantissa < 0)

    @property
    def log_abs(self):
        if self.mantissa == 0.0:
            return -math.inf
        return math.log(abs(self.mantissa)) + self.exponent

    def normalized(self):
        """Equivalent value with ``|mantissa|`` in [1, 10) and a base-10 exponent."""
        if self.mantissa == 0.0:
            return 0.0, 0
        lg = self.log_abs / math.log(10.0)
        e10 = math.floor(lg)
        return self.sign * 10.0 ** (lg - e10), int(e10)


@dataclass(frozen=True)
class QuadraticState:
    """Full second moments ``x2 = <x^2>``, ``p2 = <p^2>``, ``xp = <xp+px>`` and means at ``t``.

    Every second moment is stored divided by ``exp(2 log_scale)`` and every
    mean by ``exp(log_scale)``.
    """

    t: float
    x2: float
    p2: float
    xp: float
    x1: float = 0.0
    p1: float = 0.0
    log_scale: float = 0.0

    def unscaled(self):
        if self.log_scale == 0.0:
            return self
        if self.log_scale > 0.5 * _mode.OVERFLOW_EXPONENT:
            raise OverflowError(f"moments at t={self.t} exceed the representable range")
        w = math.exp(2.0 * self.log_scale)
        r = math.exp(self.log_scale)
        return QuadraticState(self.t, self.x2 * w, self.p2 * w, self.xp * w, self.x1 * r, self.p1 * r)

    def central(self):
        """Covariances (sigma_x, sigma_p, <xp+px> - 2<x><p>) in the same scaling."""
        return (
            self.x2 - self.x1**2,
            self.p2 - self.p1**2,
            self.xp - 2.0 * self.x1 * self.p1,
        )


@dataclass(frozen=True)
class EnergyReport:
    """Mean energy, ratio and variance; energies in units of hbar*omega0."""

    mean_energy: float
    ratio: float
    variance: float
    regime: str

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise DomainError(f"unknown regime {self.regime!r}")
        if self.variance < 0.0:
            raise DomainError("variance must be non-negative")


def propagate_first(x0, p0, mode):
    """Means ``(x(t), p(t))`` from initial means and the mode."""
    w = math.sqrt(mode.omega0)
    e, ed = mode.eps, mode.eps_dot
    X, P = x0 * w, p0 / w
    return X * e.real + P * e.imag, X * ed.real + P * ed.imag


def _kernel(x2, p2, xp, omega0, e, ed):
    """Bilinear propagation of (x2, p2, xp); works for full and central moments alike."""
    X2 = x2 * omega0
    P2 = p2 / omega0
    er, ei, dr, di = e.real, e.imag, ed.real, ed.imag
    return (
        X2 * er * er + P2 * ei * ei + xp * er * ei,
        X2 * dr * dr + P2 * di * di + xp * dr * di,
        2.0 * X2 * er * dr + 2.0 * P2 * ei * di + xp * (dr * ei + di * er),
    )


def propagate_second(init, mode, *, form="general", central=False, scaled=False):
    """Second moments at ``mode.t`` for the initial state ``init``.

    Parameters
    ----------
    init : Fock or Gaussian
    mode : ClassicalMode
    form : {"general", "special"}
        ``"special"`` uses the |eps|^2, |eps_dot|^2, Re(eps_dot eps*) forms,
        valid only when <p^2> = omega0^2 <x^2> and <xp+px> = 0.
    central : bool
        Propagate covariances and means separately and recombine them,
        instead of propagating the full moments in one pass.
    scaled : bool
        Work with the mode divided by ``exp(mode.log_scale)``; required once
        the mode no longer fits in a double.

    Returns
    -------
    QuadraticState
    """
    w0 = mode.omega0
    if scaled:
        e, ed = mode.scaled()
        ls = mode.log_scale
    else:
        e, ed = mode.eps, mode.eps_dot
        ls = 0.0
    x2, p2, xp, x0, p0 = initial_moments(init, w0)
    X, P = x0 * math.sqrt(w0), p0 / math.sqrt(w0)
    x1 = X * e.real + P * e.imag
    p1 = X * ed.real + P * ed.imag

    if form == "special":
        if not is_special(init, w0):
            raise PreconditionError("special-form propagation needs <p^2> = w0^2 <x^2> and <xp+px> = 0")
        X2 = x2 * w0
        q = ed * e.conjugate()
        return QuadraticState(
            mode.t, X2 * abs(e) ** 2, p2 / w0 * abs(ed) ** 2, 2.0 * X2 * q.real, x1, p1, ls
        )
    if form != "general":
        raise DomainError(f"form must be 'general' or 'special', got {form!r}")

    if central:
        sx, sp, sxp = x2 - x0 * x0, p2 - p0 * p0, xp - 2.0 * x0 * p0
        cx, cp, cxp = _kernel(sx, sp, sxp, w0, e, ed)
        return QuadraticState(mode.t, cx + x1 * x1, cp + p1 * p1, cxp + 2.0 * x1 * p1, x1, p1, ls)
    fx, fp, fxp = _kernel(x2, p2, xp, w0, e, ed)
    return QuadraticState(mode.t, fx, fp, fxp, x1, p1, ls)


def mean_energy(state, gamma_at_t):
    """``(<p^2> + gamma <x^2>)/2`` in absolute units (hbar = m = tau = 1)."""
    val = 0.5 * (state.p2 + gamma_at_t * state.x2)
    if state.log_scale:
        return val * math.exp(2.0 * state.log_scale)
    return val


def universal_invariant(state):
    """D = <x^2><p^2> - <xp+px>^2/4, unscaled."""
    d = state.x2 * state.p2 - 0.25 * state.xp * state.xp
    if state.log_scale:
        return d * math.exp(4.0 * state.log_scale)
    return d


def quadratic_forms(mode, scaled=False):
    """A = gamma|eps|^2 + |eps_dot|^2, B and C the real and imaginary parts of gamma eps^2 + eps_dot^2.

    The forms are assembled from the real-basis weights so that no large
    cancelling products are formed explicitly. With ``scaled=True`` the
    returned values are divided by ``exp(2 mode.log_scale)`` and the exponent
    ``2 log_scale`` is returned as a fourth element.
    """
    g = mode.gamma
    a, b = mode.alpha, mode.beta
    eff = g * mode.f * mode.f + mode.fdot * mode.fdot
    ehh = g * mode.h * mode.h + mode.hdot * mode.hdot
    efh = g * mode.f * mode.h + mode.fdot * mode.hdot
    s = mode.log_scale
    d1 = math.exp(-2.0 * s) if s else 1.0
    d2 = d1 * d1
    A = abs(a) ** 2 * eff + 2.0 * (a * b.conjugate()).real * efh * d1 + abs(b) ** 2 * ehh * d2
    w = a * a * eff + 2.0 * a * b * efh * d1 + b * b * ehh * d2
    if scaled:
        return A, w.real, w.imag, 2.0 * s
    if s > 0.5 * _mode.OVERFLOW_EXPONENT:
        raise OverflowError(f"quadratic forms at t={mode.t} overflow; use scaled=True")
    up = math.exp(2.0 * s) if s else 1.0
    return A * up, w.real * up, w.imag * up


def mean_energy_from_mode(init, mode):
    """Mean energy of ``init`` at ``mode.t`` as a :class:`ScaledReal`.

    Uses ``2E = X2 (A+B)/2 + P2 (A-B)/2 + XP C/2`` with the dimensionless
    initial moments ``X2 = omega0 <x^2>``, ``P2 = <p^2>/omega0``,
    ``XP = <xp+px>``, which avoids subtracting the large second moments of
    the inverted regime.
    """
    A, B, C, e = quadratic_forms(mode, scaled=True)
    x2, p2, xp, _, _ = initial_moments(init, mode.omega0)
    X2, P2 = x2 * mode.omega0, p2 / mode.omega0
    return ScaledReal(0.25 * (X2 * (A + B) + P2 * (A - B) + xp * C), e)


def energy_ratio_from_mode(mode):
    """R(t) = (gamma|eps|^2 + |eps_dot|^2)/(2 omega0) as a :class:`ScaledReal`.

    This is the energy ratio for every initial state with <p^2> = omega0^2 <x^2>
    and <xp+px> = 0.
    """
    A, _, _, e = quadratic_forms(mode, scaled=True)
    return ScaledReal(A / (2.0 * mode.omega0), e)


# -- exact ratio for the power-law crossing --------------------------------------


def _check_nu_g(nu, G):
    if not 0.0 < nu < 0.5:
        raise DomainError(f"nu must lie in (0, 1/2), got {nu!r}")
    if not G > 0:
        raise DomainError(f"G must be positive, got {G!r}")


def _k_functions_j(nu, z):
    jn = specfun.bessel_j
    jm1, j0, jmn, j1m = jn(nu - 1.0, z), jn(nu, z), jn(-nu, z), jn(1.0 - nu, z)
    return jm1 * jm1 + j0 * j0, j1m * j1m + jmn * jmn, jm1 * j1m - j0 * jmn


def _weighted_k_small(nu, n, half_g, at, y, sign):
    """|t|^(n+1) K(y) for the three K-functions with the (y/2)^order factors folded in."""
    red = specfun.bessel_j_reduced if sign < 0 else specfun.bessel_i_reduced

    def pair(a, b):
        p = n + 1.0 + 0.5 * (a + b) * (n + 2.0)
        return half_g ** (a + b) * at**p * red(a, y) * red(b, y)

    # the sign turns J-combinations into their modified-Bessel counterparts
    s = -1.0 if sign > 0 else 1.0
    kp = pair(nu - 1.0, nu - 1.0) + s * pair(nu, nu)
    km = pair(1.0 - nu, 1.0 - nu) + s * pair(-nu, -nu)
    k0 = pair(nu - 1.0, 1.0 - nu) - pair(nu, -nu)
    return kp, km, k0


def energy_ratio_exact_scaled(nu, G, t, *, revival=False):
    r"""Exact energy ratio :math:`\mathcal R(t) = E(t)/E(-\tau)` for the power-law crossing.

    .. math::
        \mathcal R = \frac18\left[\frac{g\pi}{\sin\nu\pi}\right]^2 |t|^{n+1}
        \left[K_-(g)K_+(y) + K_+(g)K_-(y) \mp 2K_0(g)K_0(y)\right]

    with Bessel-J combinations before the crossing (and after it when
    ``revival`` is set, where the last sign flips to ``+``) and modified-Bessel
    combinations in the inverted regime.

    Returns
    -------
    ScaledReal
        Exponent ``2y`` in the inverted regime for ``y > 1``, else 0.
    """
    _check_nu_g(nu, G)
    if t < -1.0:
        raise DomainError(f"t must be >= -1, got {t!r}")
    n = 1.0 / nu - 2.0
    g = 2.0 * G * nu
    at = abs(t)
    y = g * at ** (1.0 + 0.5 * n)
    pref = 0.125 * (g * math.pi / math.sin(nu * math.pi)) ** 2
    kp_g, km_g, k0_g = _k_functions_j(nu, g)
    inverted = t > 0.0 and not revival
    mix = 2.0 if (t > 0.0 and revival) else -2.0

    if y <= 1.0:
        kp, km, k0 = _weighted_k_small(nu, n, 0.5 * g, at, y, +1 if inverted else -1)
        return ScaledReal(pref * (km_g * kp + kp_g * km + mix * k0_g * k0), 0.0)

    w = at ** (n + 1.0)
    if not inverted:
        kp, km, k0 = _k_functions_j(nu, y)
        return ScaledReal(pref * w * (km_g * kp + kp_g * km + mix * k0_g * k0), 0.0)

    iv = specfun.bessel_i_scaled
    im1, i0, imn, i1m = iv(nu - 1.0, y), iv(nu, y), iv(-nu, y), iv(1.0 - nu, y)
    kp = (im1 - i0) * (im1 + i0)
    km = (i1m - imn) * (i1m + imn)
    k0 = im1 * i1m - i0 * imn
    return ScaledReal(pref * w * (km_g * kp + kp_g * km + mix * k0_g * k0), 2.0 * y)


def energy_ratio_exact(nu, G, t, *, revival=False):
    """Plain-float version of :func:`energy_ratio_exact_scaled`.

    Raises
    ------
    OverflowError
        If the ratio exceeds ``exp(700)``.
    """
    return float(energy_ratio_exact_scaled(nu, G, t, revival=revival))


def crossing_ratio(nu, G):
    r"""Large-``g`` value of the ratio at the crossing, :math:`\pi g^{2\nu-1}/[2^\nu\Gamma(\nu)\sin\pi\nu]^2`."""
    _check_nu_g(nu, G)
    g = 2.0 * G * nu
    return math.pi * g ** (2.0 * nu - 1.0) / (2.0**nu * math.gamma(nu) * math.sin(math.pi * nu)) ** 2


# -- adiabatic predictions --------------------------------------------------------


def beta_coefficient(u_plus, u_minus):
    """beta = |u+|^2 + |u-|^2."""
    return abs(u_plus) ** 2 + abs(u_minus) ** 2


def delta_beta(u_plus, u_minus, x2, p2, xp, omega0=1.0):
    """Initial-state correction to beta for the revival energy law.

    ``x2``, ``p2``, ``xp`` are the full initial moments. The products
    ``u+ u-`` are taken without complex conjugation; this is the combination
    that multiplies ``gamma eps^2 + eps_dot^2`` in the energy.
    """
    e0 = 0.5 * (p2 + omega0 * omega0 * x2)
    q = u_plus * u_minus
    return ((omega0 * omega0 * x2 - p2) * q.real + omega0 * xp * q.imag) / e0


def adiabatic_prediction(regime, nu, G=None, t=None, *, init=None, u=None):
    """Adiabatic estimate of the energy ratio R(t).

    Parameters
    ----------
    regime : {"pre", "crossing", "revival", "invertedAsymptotic"}
    nu : float
        1/(n+2).
    G : float
        omega0*tau; required for "crossing" and "invertedAsymptotic".
    t : float
        Time; must be negative for "pre" and positive for "revival" and
        "invertedAsymptotic".
    init : Fock or Gaussian, optional
        Initial state for the revival law; adds the Delta-beta correction
        and switches to the phased weights of :func:`invosc.mode.revival_weights`.
    u : (complex, complex), optional
        Overrides the revival weights (u+, u-).

    Returns
    -------
    float, or ScaledReal for "invertedAsymptotic".
    """
    if not 0.0 < nu < 0.5:
        raise DomainError(f"nu must lie in (0, 1/2), got {nu!r}")
    n = 1.0 / nu - 2.0
    if regime == "crossing":
        if G is None:
            raise DomainError("crossing prediction needs G")
        return crossing_ratio(nu, G)
    if t is None:
        raise DomainError(f"regime {regime!r} needs t")
    if regime == "pre":
        if t > 0.0:
            raise DomainError("pre-crossing prediction needs t <= 0")
        return abs(t) ** (0.5 * n)
    if t <= 0.0:
        raise DomainError(f"regime {regime!r} needs t > 0")
    if regime == "revival":
        if init is None:
            up, um = u if u is not None else _mode.revival_u(nu)
            return t ** (0.5 * n) * beta_coefficient(up, um)
        if G is None:
            raise DomainError("the initial-state correction needs G")
        # Delta-beta depends on the phase of u+ u-, so the phased weights are needed
        up, um = u if u is not None else _mode.revival_weights(nu, G)
        x2, p2, xp, _, _ = initial_moments(init, G)
        return t ** (0.5 * n) * (beta_coefficient(up, um) + delta_beta(up, um, x2, p2, xp, G))
    if regime == "invertedAsymptotic":
        if G is None:
            raise DomainError("inverted asymptotics need G")
        g = 2.0 * G * nu
        y = g * t ** (1.0 + 0.5 * n)
        # exponent and sign are exact; the exact ratio exceeds this by cot^2(nu pi/2)
        # at large y, i.e. sin^2 in place of cos^2 would give the true prefactor
        m = (2.0 * nu - 1.0) / (8.0 * g * t * math.cos(0.5 * nu * math.pi) ** 2)
        return ScaledReal(m, 2.0 * y)
    raise DomainError(f"unknown regime {regime!r}")


# -- inverted oscillator energetics -----------------------------------------------


def _check_v(v_plus, v_minus):
    im = (v_plus * v_minus.conjugate()).imag
    if abs(im - 1.0) > PAIR_TOL:
        raise PreconditionError(f"Im(v+ conj(v-)) = {im!r}, expected 1")


def inverted_energy(v_pair, init, kappa, omega0=1.0):
    """Time-independent energy in the constant-kappa regime (absolute units).

    ``v_pair`` must weight the mode normalised at t = -tau, so for the jump
    use the coefficients from :func:`invosc.mode.transition_coefficients`
    (the bare :func:`invosc.mode.jump_v` values suffice for states with
    <p^2> = omega0^2 <x^2>, <xp+px> = 0).
    """
    vp, vm = complex(v_pair[0]), complex(v_pair[1])
    _check_v(vp, vm)
    x2, p2, xp, _, _ = initial_moments(init, omega0)
    return -kappa * (
        x2 * omega0 * vp.real * vm.real
        + p2 / omega0 * vp.imag * vm.imag
        + 0.5 * xp * (vp * vm).imag
    )


def jump_energy(init, rho):
    """Energy right after the jump, (<p^2> - kappa^2 <x^2>)/2 with omega0 = 1.

    ``init`` describes the state at the jump instant. States with
    <p^2> = <x^2> and <xp+px> = 0 are unchanged by the harmonic evolution
    that precedes the jump; other states must be propagated to t = 0 first.
    """
    x2, p2, _, _, _ = initial_moments(init, 1.0)
    return 0.5 * (p2 - rho * rho * x2)


def jump_energy_fock(N, rho):
    """(2N+1)(1 - rho^2)/4, in units of hbar*omega0."""
    return 0.25 * (2 * N + 1) * (1.0 - rho * rho)


# -- squeezing --------------------------------------------------------------------


def _check_u(u_plus, u_minus):
    d = abs(u_plus) ** 2 - abs(u_minus) ** 2
    if abs(d - 1.0) > PAIR_TOL:
        raise PreconditionError(f"|u+|^2 - |u-|^2 = {d!r}, expected 1")


def squeeze_ratio(u_pair, phi):
    """s_t / s_(-tau) = |u+|^2 + |u-|^2 + 2 Re(u+ conj(u-) exp(2i phi))."""
    up, um = complex(u_pair[0]), complex(u_pair[1])
    _check_u(up, um)
    rot = complex(math.cos(2.0 * phi), math.sin(2.0 * phi))
    return beta_coefficient(up, um) + 2.0 * (up * um.conjugate() * rot).real


def squeeze_bounds(u_pair):
    """((|u+| + |u-|)^-2, (|u+| + |u-|)^2)."""
    up, um = complex(u_pair[0]), complex(u_pair[1])
    _check_u(up, um)
    s = abs(up) + abs(um)
    return 1.0 / (s * s), s * s


# -- fluctuations -----------------------------------------------------------------


def fock_fourth_moments(N):
    """(<X^4>, <X^2P^2 + P^2X^2>, <(XP+PX)^2>) for |N> in oscillator units."""
    q = N * N + N
    return 0.75 * (2 * q + 1), 0.5 * (2 * q - 1), 2.0 * (q + 1)


def sigma_ratio_adiabatic(u_pair, N):
    """The closed-form revival ratio 2|u+ u-|^2 (N^2+N+1)/(N^2+N+1/4).

    Note that this is *not* ``variance / mean**2`` of
    :func:`energy_variance_fock`: the mean energy there carries a factor
    beta = |u+|^2 + |u-|^2 that this expression leaves out, so the two differ
    by beta**2.
    """
    up, um = complex(u_pair[0]), complex(u_pair[1])
    _check_u(up, um)
    q = N * N + N
    return 2.0 * abs(up * um) ** 2 * (q + 1) / (q + 0.25)


def _master(N, A, B, C):
    x4, xxpp, xpxp = fock_fourth_moments(N)
    return (2.0 * x4 * (A * A + B * B) + xxpp * (A * A - B * B) + xpxp * C * C) / 16.0


def energy_variance_fock(regime, N, *, u=None, omega=None, rho=None, mode=None):
    """Second moment <E^2> and variance of the energy for an initial Fock state.

    Parameters
    ----------
    regime : {"adiabaticRevival", "invertedJump", "exact"}
    N : int
    u, omega
        Revival weights (u+, u-) and omega(t)/omega0 for "adiabaticRevival".
    rho
        kappa/omega0 for "invertedJump".
    mode : ClassicalMode
        For "exact": fourth moments propagated through the actual mode.

    Returns
    -------
    (e2, variance) in units of (hbar*omega0)^2.
    """
    if not isinstance(N, int) or N < 0:
        raise DomainError(f"N must be a non-negative integer, got {N!r}")
    q = N * N + N
    if regime == "adiabaticRevival":
        up, um = complex(u[0]), complex(u[1])
        _check_u(up, um)
        b = beta_coefficient(up, um)
        pm = abs(up * um) ** 2
        e2 = omega * omega * (b * b * (N + 0.5) ** 2 + 2.0 * pm * (q + 1))
        return e2, 2.0 * omega * omega * pm * (q + 1)
    if regime == "invertedJump":
        r2 = rho * rho
        e2 = (3.0 * (2 * q + 1) * (1.0 + r2 * r2) - 2.0 * r2 * (2 * q - 1)) / 16.0
        return e2, 0.125 * (q + 1) * (1.0 + r2) ** 2
    if regime == "exact":
        w0 = mode.omega0
        A, B, C = quadratic_forms(mode)
        A, B, C = A / w0, B / w0, C / w0
        e2 = _master(N, A, B, C)
        # e2 - <E>^2 collapses to this sum of squares
        return e2, 0.125 * (q + 1) * (B * B + C * C)
    raise DomainError(f"unknown regime {regime!r}")
