r"""Frequency profiles and the complex classical mode :math:`\varepsilon(t)`.

Units: :math:`\tau = \hbar = m = 1`. A power-law crossing is fixed by the
exponent ``n`` and :math:`G = \omega_0\tau` (so :math:`\omega_0 = G`); the
sudden jump lives in units with :math:`\omega_0 = 1` and is fixed by
:math:`\rho = \kappa/\omega_0`. Every profile starts from

.. math::
    \varepsilon(-1) = \omega_0^{-1/2}, \qquad \dot\varepsilon(-1) = i\,\omega_0^{1/2}.

A :class:`ClassicalMode` stores the mode as complex weights on two *real*
solutions of :math:`\ddot\varepsilon + \gamma(t)\varepsilon = 0`,

.. math::
    \varepsilon = \alpha f e^{s} + \beta h e^{-s},

where in the inverted regime ``f`` is the growing and ``h`` the decaying
solution and ``s`` an exponent pulled out to keep the stored numbers finite.
The Wronskian then reduces to :math:`2i\,\mathrm{Im}(\alpha\bar\beta)(\dot f h - f\dot h)`,
which stays accurate even when :math:`|\varepsilon|` is astronomically large.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from . import specfun
from .errors import DomainError

__all__ = [
    "PowerCrossing",
    "SuddenJump",
    "ConstantHarmonic",
    "ConstantInverted",
    "FrequencyProfile",
    "ClassicalMode",
    "TransitionCoefficients",
    "gamma_of_t",
    "coefficients_pre",
    "coefficients_post",
    "transition_coefficients",
    "mode_at",
    "revival_u",
    "revival_weights",
    "jump_v",
    "abs_time_derivative_sign",
    "OVERFLOW_EXPONENT",
]

#: Largest exponent for which unscaled values are exported.
OVERFLOW_EXPONENT = 700.0

# Below this Bessel argument the mode is built from the entire power-series
# factors, which removes the 0*inf products at the crossing.
_SMALL_Y = 1.0


@dataclass(frozen=True)
class PowerCrossing:
    """gamma(t) = G^2 |t|^n before t = 0 and -G^2 t^n after (``revival=False``).

    With ``revival=True`` the stiffness returns to +G^2 t^n after the crossing.
    """

    n: float
    G: float
    revival: bool = False

    def __post_init__(self):
        if not self.n > 0:
            raise DomainError(f"n must be positive, got {self.n!r}")
        if not self.G > 0:
            raise DomainError(f"G must be positive, got {self.G!r}")

    @property
    def nu(self):
        return 1.0 / (self.n + 2.0)

    @property
    def g(self):
        return 2.0 * self.G * self.nu

    @property
    def omega0(self):
        return self.G

    @property
    def breakpoints(self):
        return (0.0,)

    def gamma(self, t):
        w2 = self.G * self.G
        if t <= 0.0:
            return w2 * (-t) ** self.n
        return w2 * t**self.n if self.revival else -w2 * t**self.n

    def y(self, t):
        """Bessel argument g |t|^(1 + n/2)."""
        return self.g * abs(t) ** (1.0 + 0.5 * self.n)


@dataclass(frozen=True)
class SuddenJump:
    """gamma = 1 for t < 0 and -rho^2 for t >= 0 (omega0 = 1)."""

    rho: float

    def __post_init__(self):
        if not self.rho > 0:
            raise DomainError(f"rho must be positive, got {self.rho!r}")

    @property
    def omega0(self):
        return 1.0

    @property
    def kappa(self):
        return self.rho

    @property
    def breakpoints(self):
        return (0.0,)

    def gamma(self, t):
        return 1.0 if t < 0.0 else -self.rho * self.rho


@dataclass(frozen=True)
class ConstantHarmonic:
    """gamma = G^2 for all t."""

    G: float = 1.0

    def __post_init__(self):
        if not self.G > 0:
            raise DomainError(f"G must be positive, got {self.G!r}")

    @property
    def omega0(self):
        return self.G

    @property
    def breakpoints(self):
        return ()

    def gamma(self, t):
        return self.G * self.G


@dataclass(frozen=True)
class ConstantInverted:
    """gamma = -kappa^2 for t >= t_star, mode fixed by the weights v+ and v-.

    The mode is ``(2 kappa)^(-1/2) [v+ e^{kappa (t - t_star)} + v- e^{-kappa (t - t_star)}]``.
    ``kappa_ratio`` is kappa/omega0 with omega0 = 1.
    """

    kappa_ratio: float
    v_plus: complex
    v_minus: complex
    t_star: float = 0.0

    def __post_init__(self):
        if not self.kappa_ratio > 0:
            raise DomainError(f"kappa_ratio must be positive, got {self.kappa_ratio!r}")

    @property
    def omega0(self):
        return 1.0

    @property
    def kappa(self):
        return self.kappa_ratio

    @property
    def breakpoints(self):
        return ()

    def gamma(self, t):
        return -self.kappa_ratio**2


FrequencyProfile = Union[PowerCrossing, SuddenJump, ConstantHarmonic, ConstantInverted]


def gamma_of_t(profile, t):
    """Stiffness gamma(t) of ``profile`` (units of omega0^2)."""
    return profile.gamma(t)


def start_time(profile):
    """Time at which the initial conditions are imposed."""
    if isinstance(profile, ConstantInverted):
        return profile.t_star
    return -1.0


def abs_time_derivative_sign(t):
    """d|t|/dt: -1 before the crossing, +1 after it.

    The crossing instant itself belongs to the pre-crossing branch.
    """
    return -1.0 if t <= 0.0 else 1.0


@dataclass(frozen=True)
class ClassicalMode:
    r"""Mode value at time ``t`` in the two-real-solution representation.

    ``eps = alpha*f*e^s + beta*h*e^-s`` and likewise for the derivative with
    ``fdot``/``hdot``.
    """

    t: float
    gamma: float
    omega0: float
    alpha: complex
    beta: complex
    f: float
    fdot: float
    h: float
    hdot: float
    log_scale: float = 0.0

    def scaled(self):
        """Return ``(eps, eps_dot)`` multiplied by ``exp(-log_scale)``."""
        damp = math.exp(-2.0 * self.log_scale) if self.log_scale else 1.0
        e = self.alpha * self.f + self.beta * self.h * damp
        ed = self.alpha * self.fdot + self.beta * self.hdot * damp
        return e, ed

    def _export(self):
        if self.log_scale > OVERFLOW_EXPONENT:
            raise OverflowError(
                f"mode at t={self.t} has magnitude ~exp({self.log_scale:.1f}); use scaled()"
            )
        up = math.exp(self.log_scale)
        down = math.exp(-self.log_scale)
        e = self.alpha * self.f * up + self.beta * self.h * down
        ed = self.alpha * self.fdot * up + self.beta * self.hdot * down
        return e, ed

    @property
    def eps(self):
        return self._export()[0]

    @property
    def eps_dot(self):
        return self._export()[1]

    @property
    def gamma_at_t(self):
        return self.gamma

    def wronskian(self):
        """eps_dot*conj(eps) - conj(eps_dot)*eps from the real-basis weights."""
        return 2j * (self.alpha * self.beta.conjugate()).imag * (self.fdot * self.h - self.f * self.hdot)

    def wronskian_direct(self):
        """The same bilinear computed from the exported complex values."""
        e, ed = self._export()
        return ed * e.conjugate() - ed.conjugate() * e


@dataclass(frozen=True)
class TransitionCoefficients:
    """Weights of the mode in the Bessel, oscillatory and exponential bases.

    Unused groups are ``None``. For the sudden jump, ``v_plus``/``v_minus``
    include the phase ``exp(i omega0 tau)`` acquired between t = -1 and the jump,
    so that they weight the mode normalised at t = -1.
    """

    a_minus: Optional[complex] = None
    b_minus: Optional[complex] = None
    a_plus: Optional[complex] = None
    b_plus: Optional[complex] = None
    u_plus: Optional[complex] = None
    u_minus: Optional[complex] = None
    v_plus: Optional[complex] = None
    v_minus: Optional[complex] = None


def coefficients_pre(nu, G):
    r"""Bessel weights :math:`A_-, B_-` of the mode before the crossing.

    .. math::
        A_- = c\,[J_{1-\nu}(g) - iJ_{-\nu}(g)], \quad
        B_- = c\,[iJ_\nu(g) + J_{\nu-1}(g)], \quad
        c = \frac{\nu\pi\sqrt{G}}{\sin\nu\pi},\; g = 2G\nu.
    """
    if not 0.0 < nu < 0.5:
        raise DomainError(f"nu must lie in (0, 1/2), got {nu!r}")
    if not G > 0:
        raise DomainError(f"G must be positive, got {G!r}")
    g = 2.0 * G * nu
    c = nu * math.pi * math.sqrt(G) / math.sin(nu * math.pi)
    jn = specfun.bessel_j
    a = c * complex(jn(1.0 - nu, g), -jn(-nu, g))
    b = c * complex(jn(nu - 1.0, g), jn(nu, g))
    return a, b


def coefficients_post(a_minus, b_minus):
    """Continuity at t = 0: ``A+ = -A-`` and ``B+ = B-``."""
    return -a_minus, b_minus


def revival_u(nu):
    """Oscillatory-basis weights after a slow crossing: 1/sin(nu pi), i cot(nu pi).

    These are the large-G limits of the weights up to a common phase, which
    is all that |u+|^2 + |u-|^2 needs; see :func:`revival_weights`.
    """
    if not 0.0 < nu < 0.5:
        raise DomainError(f"nu must lie in (0, 1/2), got {nu!r}")
    s = math.sin(nu * math.pi)
    return complex(1.0 / s), complex(0.0, math.cos(nu * math.pi) / s)


def revival_weights(nu, G):
    """Weights (u+, u-) of the late-time mode (u+ e^{i theta} + u- e^{-i theta})/sqrt(omega).

    Unlike :func:`revival_u` these carry the phase accumulated before the
    crossing, with ``theta`` the integrated frequency since t = 0. The
    magnitudes approach those of :func:`revival_u` as ``G`` grows.
    """
    a_m, b_m = coefficients_pre(nu, G)
    a, b = coefficients_post(a_m, b_m)
    k = 0.5 / math.sqrt(math.pi * nu)
    p1 = cmath.exp(-1j * (0.5 * nu * math.pi + 0.25 * math.pi))
    p2 = cmath.exp(1j * (0.5 * nu * math.pi - 0.25 * math.pi))
    return k * (a * p1 + b * p2), k * (a / p1 + b / p2)


def jump_v(rho):
    """Exponential-basis weights just after a sudden jump to -rho^2 (omega0 = 1)."""
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho!r}")
    r = math.sqrt(rho)
    return complex(r, 1.0 / r) / math.sqrt(2.0), complex(r, -1.0 / r) / math.sqrt(2.0)


def transition_coefficients(profile):
    """All basis weights relevant to ``profile``."""
    if isinstance(profile, PowerCrossing):
        a_m, b_m = coefficients_pre(profile.nu, profile.G)
        a_p, b_p = coefficients_post(a_m, b_m)
        u_p = u_m = None
        if profile.revival:
            u_p, u_m = revival_u(profile.nu)
        return TransitionCoefficients(a_m, b_m, a_p, b_p, u_plus=u_p, u_minus=u_m)
    if isinstance(profile, SuddenJump):
        v_p, v_m = jump_v(profile.rho)
        phase = cmath.exp(1j * profile.omega0)
        return TransitionCoefficients(v_plus=v_p * phase, v_minus=v_m * phase)
    if isinstance(profile, ConstantInverted):
        return TransitionCoefficients(v_plus=complex(profile.v_plus), v_minus=complex(profile.v_minus))
    return TransitionCoefficients()


def _harmonic_mode(t, omega, gamma, omega0, t0=-1.0):
    ph = omega * (t - t0)
    r = 1.0 / math.sqrt(omega)
    q = math.sqrt(omega)
    c, s = math.cos(ph), math.sin(ph)
    return ClassicalMode(t, gamma, omega0, 1.0 + 0j, 1j, r * c, -q * s, r * s, q * c)


def _exponential_mode(t, kappa, v_plus, v_minus, gamma, omega0, t_star):
    s = kappa * (t - t_star)
    r = 1.0 / math.sqrt(2.0 * kappa)
    q = math.sqrt(0.5 * kappa)
    return ClassicalMode(t, gamma, omega0, complex(v_plus), complex(v_minus), r, q, r, -q, log_scale=s)


def _power_mode(profile, coeffs, t):
    nu = profile.nu
    n = profile.n
    g = profile.g
    half_g = 0.5 * g
    gamma = profile.gamma(t)
    omega0 = profile.omega0
    at = abs(t)
    y = profile.y(t)
    sgn = abs_time_derivative_sign(t)

    if t <= 0.0 or profile.revival:
        a, b = (coeffs.a_minus, coeffs.b_minus) if t <= 0.0 else (coeffs.a_plus, coeffs.b_plus)
        if y <= _SMALL_Y:
            jr = specfun.bessel_j_reduced
            f = half_g**nu * at * jr(nu, y)
            fdot = sgn * half_g**nu * jr(nu - 1.0, y) / nu
            h = half_g ** (-nu) * jr(-nu, y)
            hdot = -sgn * half_g ** (2.0 - nu) * at ** (n + 1.0) * jr(1.0 - nu, y) / nu
        else:
            jn = specfun.bessel_j
            root = math.sqrt(at)
            d = y / (2.0 * nu * root)
            f = root * jn(nu, y)
            fdot = sgn * d * jn(nu - 1.0, y)
            h = root * jn(-nu, y)
            hdot = -sgn * d * jn(1.0 - nu, y)
        return ClassicalMode(t, gamma, omega0, a, b, f, fdot, h, hdot)

    # inverted branch: growing part sqrt(t) I_nu, decaying part sqrt(t) (I_-nu - I_nu)
    a, b = coeffs.a_plus, coeffs.b_plus
    alpha = a + b
    if y <= _SMALL_Y:
        ir = specfun.bessel_i_reduced
        f = half_g**nu * at * ir(nu, y)
        fdot = half_g**nu * ir(nu - 1.0, y) / nu
        h = half_g ** (-nu) * ir(-nu, y) - f
        hdot = half_g ** (2.0 - nu) * at ** (n + 1.0) * ir(1.0 - nu, y) / nu - fdot
        return ClassicalMode(t, gamma, omega0, alpha, b, f, fdot, h, hdot)

    iv = specfun.bessel_i_scaled
    kv = specfun.bessel_k_scaled
    c = 2.0 * math.sin(nu * math.pi) / math.pi
    root = math.sqrt(at)
    d = y / (2.0 * nu * root)
    f = root * iv(nu, y)
    fdot = d * iv(nu - 1.0, y)
    h = c * root * kv(nu, y)
    hdot = -c * d * kv(1.0 - nu, y)
    return ClassicalMode(t, gamma, omega0, alpha, b, f, fdot, h, hdot, log_scale=y)


def mode_at(profile, coeffs=None, t=-1.0):
    """Evaluate the classical mode of ``profile`` at time ``t``.

    Parameters
    ----------
    profile : FrequencyProfile
    coeffs : TransitionCoefficients, optional
        Precomputed by :func:`transition_coefficients`; built on demand if omitted.
    t : float
        Time in units of tau; must not precede the start of the profile.
    """
    t0 = start_time(profile)
    if t < t0:
        raise DomainError(f"t={t} precedes the start time {t0} of the profile")
    if coeffs is None:
        coeffs = transition_coefficients(profile)
    gamma = profile.gamma(t)
    if isinstance(profile, ConstantHarmonic):
        return _harmonic_mode(t, profile.G, gamma, profile.omega0)
    if isinstance(profile, SuddenJump):
        if t < 0.0:
            return _harmonic_mode(t, 1.0, gamma, 1.0)
        return _exponential_mode(t, profile.kappa, coeffs.v_plus, coeffs.v_minus, gamma, 1.0, 0.0)
    if isinstance(profile, ConstantInverted):
        return _exponential_mode(
            t, profile.kappa, coeffs.v_plus, coeffs.v_minus, gamma, 1.0, profile.t_star
        )
    if isinstance(profile, PowerCrossing):
        return _power_mode(profile, coeffs, t)
    raise TypeError(f"unsupported profile {profile!r}")


def initial_conditions(profile) -> Tuple[float, complex, complex]:
    """``(t_start, eps, eps_dot)`` used to seed numerical integration."""
    if isinstance(profile, ConstantInverted):
        m = mode_at(profile, t=profile.t_star)
        return profile.t_star, m.eps, m.eps_dot
    w = profile.omega0
    return -1.0, complex(1.0 / math.sqrt(w)), complex(0.0, math.sqrt(w))
