r"""Energy distribution of the inverted oscillator after a sudden jump.

A Fock state ``|n>`` of the oscillator with frequency :math:`\omega_0` is
suddenly exposed to the inverted potential :math:`-\kappa^2 x^2/2`. The
probability density of the scaled energy :math:`\tilde E = E/\kappa` is, with
``n = 2k + p`` (``p`` in {0, 1}), ``a = 1/4 + p/2`` and ``c = 1/2 + p``,

.. math::
    P_n(\tilde E;\rho) = C_n(\rho)\, e^{2\tilde E\Phi(\rho)}
    \left|\Gamma\!\left(a - \tfrac{i\tilde E}{2}\right)
    F\!\left(-k, a - \tfrac{i\tilde E}{2}; c; z(\rho)\right)\right|^2,

where :math:`\rho = \kappa/\omega_0`, :math:`\Phi = \arctan\frac{1-\rho}{1+\rho}`
and :math:`z = 4i\rho/(1+i\rho)^2`. The density is assembled in log space.
"""

import math
from dataclasses import dataclass
from functools import lru_cache, partial
from typing import Optional

import numpy as np
from scipy import optimize

from . import oracle, specfun
from .errors import CapExceededError, DomainError

__all__ = [
    "SpectralParams",
    "SpectralDensity",
    "StructureReport",
    "MAX_INDEX",
    "density",
    "log_density",
    "density_symmetric",
    "density_moments",
    "integration_window",
    "expected_moments",
    "reciprocity_check",
    "structure_report",
]

#: Largest supported Fock index (the hypergeometric degree is n // 2).
MAX_INDEX = 2 * specfun.HYP_MAX_DEGREE

#: Mass allowed outside the integration window on each side.
TAIL_MASS = 1e-13


@dataclass(frozen=True)
class SpectralParams:
    """Fock index ``n`` and frequency ratio ``rho = kappa/omega0``."""

    n: int
    rho: float = 1.0

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise DomainError(f"n must be a non-negative integer, got {self.n!r}")
        if self.n > MAX_INDEX:
            raise CapExceededError(f"n={self.n} exceeds the supported maximum {MAX_INDEX}")
        if not (self.rho > 0 and math.isfinite(self.rho)):
            raise DomainError(f"rho must be positive and finite, got {self.rho!r}")

    @property
    def k(self):
        return int(self.n) // 2

    @property
    def odd(self):
        return int(self.n) % 2 == 1

    @property
    def a(self):
        return 0.75 if self.odd else 0.25

    @property
    def c(self):
        return 1.5 if self.odd else 0.5

    @property
    def phi(self):
        """pi/4 - arctan(rho), written so that phi(1) is exactly 0."""
        return math.atan((1.0 - self.rho) / (1.0 + self.rho))

    @property
    def z(self):
        """4 i rho / (1 + i rho)^2 in expanded form (exactly 2 at rho = 1)."""
        r = self.rho
        d = (1.0 + r * r) ** 2
        return complex(8.0 * r * r / d, 4.0 * r * (1.0 - r * r) / d)

    @property
    def log_prefactor(self):
        k, r = self.k, self.rho
        base = math.lgamma(k + 0.5 + self.odd) - math.lgamma(k + 1.0) - 2.0 * math.log(math.pi)
        if self.odd:
            return base + 3.0 * math.log(2.0) + 1.5 * math.log(r) - 1.5 * math.log1p(r * r)
        return base - math.log(2.0) + 0.5 * math.log(r) - 0.5 * math.log1p(r * r)

    @property
    def tail_power(self):
        """Exponent m of the algebraic factor |E|^m multiplying the exponential tail."""
        return 2 * self.k + 2.0 * self.a - 1.0


def _hyp(params, e):
    b = complex(params.a, -0.5 * e)
    return specfun.hyp_terminating(params.k, b, params.c, params.z)


def log_density(params, e):
    """Natural log of the density; ``-inf`` at exact zeros."""
    f = _hyp(params, e)
    if f == 0:
        return -math.inf
    lg = specfun.log_gamma_complex(complex(params.a, -0.5 * e)).real
    return params.log_prefactor + 2.0 * e * params.phi + 2.0 * lg + 2.0 * math.log(abs(f))


def density(params, e):
    """P_n(E; rho) at scaled energy ``e``."""
    if not math.isfinite(e):
        raise DomainError(f"energy must be finite, got {e!r}")
    return math.exp(log_density(params, e))


def density_symmetric(n, e):
    """P_n(E; 1) from the rho = 1 forms, with real hypergeometric argument 2."""
    p = SpectralParams(n, 1.0)
    k = p.k
    if p.odd:
        pref = 2.0**1.5 * math.gamma(k + 1.5) / (math.pi**2 * math.factorial(k))
    else:
        pref = math.gamma(k + 0.5) / (2.0**1.5 * math.pi**2 * math.factorial(k))
    b = complex(p.a, -0.5 * e)
    f = specfun.hyp_terminating(k, b, p.c, 2.0)
    return pref * specfun.gamma_abs_sq(p.a, -0.5 * e) * abs(f) ** 2


class SpectralDensity:
    """Callable density with an optional memo of recent evaluations."""

    def __init__(self, params, cache_size=0):
        self.params = params
        self.cache_size = cache_size
        fn = partial(density, params)
        self._eval = lru_cache(maxsize=cache_size)(fn) if cache_size else fn

    def __call__(self, e):
        return self._eval(float(e))


def _tail_rate(params, side):
    # exponential decay rate of P on the given side (+1 or -1)
    return 0.5 * math.pi - 2.0 * side * params.phi


def integration_window(params, tail=TAIL_MASS):
    """Interval ``[lo, hi]`` outside of which each tail carries less than ``tail``.

    The bound uses the local decay ``P(E) / (rate - m/|E|)`` of the
    asymptotic form ``|E|^m exp(-rate |E|)``, checked once the algebraic
    factor no longer slows the decay appreciably.
    """
    m = params.tail_power
    edges = []
    for side in (-1, 1):
        rate = _tail_rate(params, side)
        e = side * (params.n + 5.0)
        while True:
            eff = rate - m / abs(e)
            if eff > 0.5 * rate:
                lp = log_density(params, e)
                if lp - math.log(eff) < math.log(tail):
                    break
            e += side * 1.0
            if abs(e) > 2000:
                raise DomainError("density tail does not decay within |E| < 2000")
        edges.append(e)
    return edges[0], edges[1]


def density_moments(params, tol=1e-11):
    """Normalization, mean and second moment of P_n by adaptive quadrature.

    Returns
    -------
    (norm, mean, second)
    """
    lo, hi = integration_window(params)
    step = 4.0
    pts = list(np.arange(math.ceil(lo / step) * step, hi, step))
    out = []
    for power in (0, 1, 2):

        def f(e, p=power):
            return density(params, e) * e**p

        val, _ = oracle.quad_adaptive(f, lo, hi, tol, points=pts)
        out.append(val)
    return tuple(out)


def expected_moments(params):
    """Mean and second moment of E/kappa implied by the Fock-state energetics."""
    N, r = params.n, params.rho
    q = N * N + N
    mean = (2 * N + 1) * (1.0 - r * r) / (4.0 * r)
    e2 = (3.0 * (2 * q + 1) * (1.0 + r**4) - 2.0 * r * r * (2 * q - 1)) / 16.0
    return mean, e2 / (r * r)


def reciprocity_check(n, rho, e):
    """|P_n(E; rho) - P_n(-E; 1/rho)|."""
    return abs(density(SpectralParams(n, rho), e) - density(SpectralParams(n, 1.0 / rho), -e))


@dataclass(frozen=True)
class StructureReport:
    """Zeros, outermost peak and exponential tail of one density.

    ``tail_slope`` is the fitted slope of ``log P - m log|E|`` (``m`` the known
    algebraic power); ``tail_slope_raw`` fits ``log P`` alone.
    """

    zero_count: Optional[int]
    last_max_location: float
    tail_slope: float
    tail_slope_raw: float
    expected_slope: float


def _count_zeros(params):
    k = params.k
    if k == 0:
        return 0
    def g(e):
        f = specfun.hyp_terminating(k, complex(params.a, -0.5 * e), params.c, 2.0)
        return f.real if k % 2 == 0 else f.imag

    grid = np.linspace(0.0, params.n + 5.0, 40 * (k + 1) + 1)[1:]
    vals = [g(e) for e in grid]
    roots = []
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            roots.append(grid[i])
        elif vals[i] * vals[i + 1] < 0.0:
            roots.append(optimize.brentq(g, grid[i], grid[i + 1], xtol=1e-8))
    return len(roots)


def _outermost_peak(params):
    span = params.n + 20.0
    grid = np.linspace(-span, span, int(40 * span) + 1)
    lp = np.array([log_density(params, e) for e in grid])
    peaks = [i for i in range(1, len(grid) - 1) if lp[i] >= lp[i - 1] and lp[i] > lp[i + 1]]
    i = max(peaks, key=lambda j: (abs(grid[j]), grid[j]))
    res = optimize.minimize_scalar(
        lambda e: -log_density(params, e),
        bounds=(grid[i - 1], grid[i + 1]),
        method="bounded",
        options={"xatol": 1e-10},
    )
    return float(res.x)


def structure_report(params, fit_range=(5.0, 20.0), fit_points=61):
    """Zero count (rho = 1 only), outermost peak and tail slope on [n+5, n+20].

    At rho = 1 the hypergeometric factor is real for even k and purely
    imaginary for odd k, so its zeros on E > 0 are sign changes of that
    component.
    """
    zeros = _count_zeros(params) if params.rho == 1.0 else None
    e = np.linspace(params.n + fit_range[0], params.n + fit_range[1], fit_points)
    lp = np.array([log_density(params, v) for v in e])
    raw = np.polyfit(e, lp, 1)[0]
    slope = np.polyfit(e, lp - params.tail_power * np.log(e), 1)[0]
    return StructureReport(
        zeros, _outermost_peak(params), float(slope), float(raw), -_tail_rate(params, 1)
    )
