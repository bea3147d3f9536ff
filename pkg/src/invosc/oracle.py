"""Independent numerical engines used to check the closed forms.

``integrate_mode`` solves the mode equation with a Dormand-Prince 5(4) pair and
PI step control; it knows nothing about Bessel functions. ``quad_adaptive``
is a thin wrapper over QUADPACK (``scipy.integrate.quad``) with a fixed panel
budget and a hard failure on non-convergence.
"""

import math
import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from scipy import integrate as _integrate

from . import mode as _mode
from .errors import DomainError, QuadratureError, StepUnderflowError

__all__ = ["IntegrationResult", "integrate_mode", "quad_adaptive", "MIN_STEP", "QUAD_PANEL_LIMIT"]

MIN_STEP = 1e-14
QUAD_PANEL_LIMIT = 2000
_RESCALE_AT = 1e100

# Dormand-Prince 5(4) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)


@dataclass
class IntegrationResult:
    """Output of :func:`integrate_mode`.

    ``samples`` hold ``(t, eps, eps_dot)`` where the complex values are scaled by
    ``exp(-log_scales[i])``. ``wronskian_drift`` is the largest observed
    ``|W - 2i| / max(1, |eps| |eps_dot|)``; in the unstable regime absolute
    drift is meaningless in double precision, so it is measured against the
    size of the two products that cancel inside ``W``.
    """

    samples: List[Tuple[float, complex, complex]]
    log_scales: List[float]
    wronskian_drift: float
    steps_taken: int
    steps_rejected: int
    tol_achieved: float
    rejected_times: List[float] = field(default_factory=list)

    def eps(self, i):
        return self.samples[i][1] * math.exp(self.log_scales[i])

    def eps_dot(self, i):
        return self.samples[i][2] * math.exp(self.log_scales[i])

    @property
    def times(self):
        return [s[0] for s in self.samples]


def _rhs(gamma, t, y):
    g = gamma(t)
    return (y[2], y[3], -g * y[0], -g * y[1])


def _dp_step(gamma, t, y, h, k1):
    ks = [k1]
    for i in range(1, 7):
        a = _A[i]
        yi = [y[j] + h * sum(a[s] * ks[s][j] for s in range(i)) for j in range(4)]
        ks.append(_rhs(gamma, t + _C[i] * h, yi))
        if i == 6:
            y_new = yi
    err = [h * sum(_E[s] * ks[s][j] for s in range(7)) for j in range(4)]
    return y_new, ks[6], err


def _wronskian_drift(y):
    e = complex(y[0], y[1])
    ed = complex(y[2], y[3])
    w = ed * e.conjugate() - ed.conjugate() * e
    return w, max(1.0, abs(e) * abs(ed))


def integrate_mode(
    profile,
    t0: float,
    t1: float,
    tol: float = 1e-10,
    *,
    t_eval: Optional[Sequence[float]] = None,
    initial: Optional[Tuple[complex, complex]] = None,
    use_breakpoints: bool = True,
    h0: Optional[float] = None,
) -> IntegrationResult:
    """Integrate eps'' + gamma(t) eps = 0 from ``t0`` to ``t1``.

    Parameters
    ----------
    profile : FrequencyProfile
    t0, t1 : float
        Integration window; ``t0`` must not precede the profile's start time.
    tol : float
        Mixed absolute/relative local error target per step, in ``[1e-13, 1e-4]``.
    t_eval : sequence of float, optional
        Output times inside ``[t0, t1]`` (the integrator lands on each exactly).
        Defaults to ``[t0, t1]``.
    initial : (complex, complex), optional
        ``(eps, eps_dot)`` at ``t0``. Defaults to the profile's initial
        conditions, which requires ``t0`` to be the profile's start time.
    use_breakpoints : bool
        Stop and restart exactly at the profile's discontinuities.
    """
    if not 1e-13 <= tol <= 1e-4:
        raise DomainError(f"tol must lie in [1e-13, 1e-4], got {tol!r}")
    start = _mode.start_time(profile)
    if t0 < start:
        raise DomainError(f"t0={t0} precedes profile start {start}")
    if not t1 > t0:
        raise DomainError("t1 must exceed t0")
    if initial is None:
        ts, e0, ed0 = _mode.initial_conditions(profile)
        if t0 != ts:
            raise DomainError("default initial conditions apply only at the profile start time")
    else:
        e0, ed0 = complex(initial[0]), complex(initial[1])

    if t_eval is None:
        t_eval = [t0, t1]
    targets = sorted(set(float(t) for t in t_eval))
    if targets[0] < t0 or targets[-1] > t1:
        raise DomainError("t_eval must lie inside [t0, t1]")
    stops = set(targets)
    stops.add(t1)
    if use_breakpoints:
        stops.update(b for b in profile.breakpoints if t0 < b < t1)
    stops = sorted(s for s in stops if s > t0)
    wanted = set(targets)

    gamma = profile.gamma
    y = [e0.real, e0.imag, ed0.real, ed0.imag]
    t = t0
    log_scale = 0.0
    samples, scales = [], []
    if t0 in wanted:
        samples.append((t0, e0, ed0))
        scales.append(0.0)
    w, size = _wronskian_drift(y)
    drift = abs(w - 2j) / max(size, 2.0)
    steps = rejected = 0
    rejected_times = []
    h = h0 if h0 is not None else min(1e-3, (t1 - t0) / 10.0)
    err_prev = 1e-4
    k1 = _rhs(gamma, t, y)
    worst = 0.0

    for stop in stops:
        while t < stop:
            landing = t + h >= stop - 1e-12 * max(1.0, abs(stop))
            h_try = stop - t if landing else h
            y_new, k7, err = _dp_step(gamma, t, y, h_try, k1)
            norm = max(
                abs(err[j]) / (tol * (1.0 + max(abs(y[j]), abs(y_new[j])))) for j in range(4)
            )
            if norm <= 1.0:
                steps += 1
                worst = max(worst, norm * tol)
                t = stop if landing else t + h_try
                y = y_new
                k1 = k7
                amp = max(abs(v) for v in y)
                if amp > _RESCALE_AT:
                    # carry the growth in an exponent so the state stays representable
                    y = [v / amp for v in y]
                    k1 = tuple(v / amp for v in k1)
                    log_scale += math.log(amp)
                w, size = _wronskian_drift(y)
                target = 2j * math.exp(-2.0 * log_scale)
                drift = max(drift, abs(w - target) / max(size, abs(target)))
                factor = 0.9 * norm ** (-0.7 / 5) * err_prev ** (0.4 / 5) if norm > 0 else 5.0
                err_prev = max(norm, 1e-4)
                h_next = h_try * min(5.0, max(0.2, factor))
                h = max(h, h_next) if landing else h_next
            else:
                rejected += 1
                rejected_times.append(t)
                h = h_try * max(0.2, 0.9 * norm ** (-1 / 5))
                if h < MIN_STEP:
                    raise StepUnderflowError(f"step {h:.3e} below minimum at t={t}")
        if t in wanted:
            samples.append((t, complex(y[0], y[1]), complex(y[2], y[3])))
            scales.append(log_scale)
    return IntegrationResult(samples, scales, drift, steps, rejected, worst, rejected_times)


def quad_adaptive(f, a, b, tol=1e-11, *, rel_tol=1e-12, points=None, limit=QUAD_PANEL_LIMIT):
    """Adaptive Gauss-Kronrod quadrature of ``f`` over ``[a, b]``.

    Returns
    -------
    (value, err_estimate)

    Raises
    ------
    QuadratureError
        If the panel budget ``limit`` is exhausted or QUADPACK reports a failure.
    """
    if not a < b:
        raise DomainError("quadrature requires a < b")
    pts = None
    if points is not None:
        pts = sorted(p for p in points if a < p < b)
    with warnings.catch_warnings():
        warnings.simplefilter("error", _integrate.IntegrationWarning)
        try:
            value, err = _integrate.quad(
                f, a, b, epsabs=tol, epsrel=rel_tol, limit=limit, points=pts or None
            )
        except _integrate.IntegrationWarning as exc:
            raise QuadratureError(str(exc)) from exc
    return value, err
