r"""Scalar special functions for fractional orders and complex gamma arguments.

Bessel functions of order :math:`\mu \in [-1, 1]` are evaluated with the
ascending power series for small arguments and the Hankel asymptotic expansion
for large ones. Modified Bessel functions are only exported in exponentially
scaled form,

.. math::
    \hat I_\mu(z) = e^{-z} I_\mu(z), \qquad \hat K_\mu(z) = e^{z} K_\mu(z),

so that callers never see overflow for large arguments.
"""

import cmath
import math

from .errors import CapExceededError, ConvergenceError, DomainError, PoleError

__all__ = [
    "SERIES_SWITCH",
    "bessel_j",
    "bessel_j_reduced",
    "bessel_i_scaled",
    "bessel_i_reduced",
    "bessel_k_scaled",
    "log_gamma_complex",
    "gamma_complex",
    "gamma_abs_sq",
    "hyp_terminating",
    "HYP_MAX_DEGREE",
]

#: Argument at which Bessel evaluation switches from series to asymptotics.
SERIES_SWITCH = 12.0

#: Largest supported degree ``k`` of the terminating hypergeometric sum.
HYP_MAX_DEGREE = 64

_EPS = 1e-17
_MAX_SERIES_TERMS = 300
_MIN_ASYMPTOTIC_TERMS = 8
_MAX_ASYMPTOTIC_TERMS = 80

# Lanczos approximation, g = 7, nine coefficients.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _rgamma(x):
    """Reciprocal gamma for real ``x``; zero at the poles."""
    if x <= 0.0 and x == math.floor(x):
        return 0.0
    if x > 171.0:
        return math.exp(-math.lgamma(x))
    return 1.0 / math.gamma(x)


def _check_order(order):
    if not math.isfinite(order):
        raise DomainError(f"order must be finite, got {order!r}")


def _check_arg(z):
    if not math.isfinite(z):
        raise DomainError(f"argument must be finite, got {z!r}")
    if z < 0.0:
        raise DomainError(f"argument must be >= 0, got {z!r}")


def _negative_integer(order):
    return order < 0.0 and order == math.floor(order)


def _reduced_series(order, s, sign):
    """Sum of ``(sign*s)**k / (k! Gamma(k+order+1))`` over k >= 0."""
    k0 = 0
    if _negative_integer(order + 1.0) or order + 1.0 == 0.0:
        k0 = int(-(order + 1.0)) + 1
    term = (sign * s) ** k0 * _rgamma(k0 + order + 1.0) / math.factorial(k0)
    terms = [term]
    k = k0
    while True:
        k += 1
        term *= sign * s / (k * (k + order))
        terms.append(term)
        if abs(term) <= _EPS * abs(math.fsum(terms)) and k > s:
            break
        if k - k0 > _MAX_SERIES_TERMS:
            raise ConvergenceError(f"power series for order {order} did not converge at s={s}")
    return math.fsum(terms)


def bessel_j_reduced(order, z):
    r"""Return :math:`J_\mu(z) / (z/2)^\mu` (an entire function of ``z``)."""
    _check_order(order)
    _check_arg(z)
    return _reduced_series(order, 0.25 * z * z, -1.0)


def bessel_i_reduced(order, z):
    r"""Return :math:`I_\mu(z) / (z/2)^\mu`, unscaled; intended for small ``z``."""
    _check_order(order)
    _check_arg(z)
    return _reduced_series(order, 0.25 * z * z, 1.0)


def _hankel_terms(order, z):
    """Terms a_k(order)/z**k of the Hankel expansion, stopped at the smallest."""
    mu4 = 4.0 * order * order
    terms = [1.0]
    term = 1.0
    for k in range(1, _MAX_ASYMPTOTIC_TERMS):
        factor = (mu4 - (2 * k - 1) ** 2) / (8.0 * k * z)
        nxt = term * factor
        if k >= _MIN_ASYMPTOTIC_TERMS and abs(nxt) >= abs(term):
            break
        term = nxt
        terms.append(term)
        if term == 0.0 or abs(term) < _EPS:
            break
    else:
        raise ConvergenceError(f"asymptotic expansion for order {order} did not settle at z={z}")
    return terms


def bessel_j(order, z):
    r"""Bessel function of the first kind :math:`J_\mu(z)` for real ``z >= 0``.

    Parameters
    ----------
    order : float
        Real order, typically in ``[-1, 1]``.
    z : float
        Non-negative argument.

    Returns
    -------
    float
        :math:`J_\mu(z)`. Negative non-integer orders diverge at ``z = 0``
        and return ``inf`` there.
    """
    _check_order(order)
    _check_arg(z)
    if _negative_integer(order):
        m = int(-order)
        return (-1.0) ** m * bessel_j(float(m), z)
    if z == 0.0:
        if order == 0.0:
            return 1.0
        return 0.0 if order > 0.0 else math.inf
    if z <= SERIES_SWITCH:
        return (0.5 * z) ** order * _reduced_series(order, 0.25 * z * z, -1.0)

    terms = _hankel_terms(order, z)
    p = math.fsum(t * (-1.0) ** (k // 2) for k, t in enumerate(terms) if k % 2 == 0)
    q = math.fsum(t * (-1.0) ** (k // 2) for k, t in enumerate(terms) if k % 2 == 1)
    # cos/sin of (z - phase) expanded so that z itself is reduced by libm
    phase = 0.5 * math.pi * order + 0.25 * math.pi
    cz, sz = math.cos(z), math.sin(z)
    cp, sp = math.cos(phase), math.sin(phase)
    cos_chi = cz * cp + sz * sp
    sin_chi = sz * cp - cz * sp
    return math.sqrt(2.0 / (math.pi * z)) * (p * cos_chi - q * sin_chi)


def bessel_i_scaled(order, z):
    r"""Exponentially scaled modified Bessel function :math:`e^{-z} I_\mu(z)`.

    The unscaled value is recovered as ``bessel_i_scaled(order, z) * exp(z)``
    whenever that product is representable.
    """
    _check_order(order)
    _check_arg(z)
    if _negative_integer(order):
        return bessel_i_scaled(-order, z)
    if z == 0.0:
        if order == 0.0:
            return 1.0
        return 0.0 if order > 0.0 else math.inf
    if z <= SERIES_SWITCH:
        return (0.5 * z) ** order * _reduced_series(order, 0.25 * z * z, 1.0) * math.exp(-z)

    terms = _hankel_terms(order, z)
    alternating = math.fsum(t * (-1.0) ** k for k, t in enumerate(terms))
    plain = math.fsum(terms)
    return (alternating - math.sin(math.pi * order) * math.exp(-2.0 * z) * plain) / math.sqrt(
        2.0 * math.pi * z
    )


def bessel_k_scaled(order, z):
    r"""Exponentially scaled Macdonald function :math:`e^{z} K_\mu(z)` for ``z > 0``.

    For moderate ``z`` the integral
    :math:`\int_0^\infty e^{-z(\cosh t - 1)} \cosh(\mu t)\,dt` is summed with
    the trapezoidal rule, which converges geometrically for this analytic,
    rapidly decaying integrand. Large ``z`` uses the Hankel expansion.
    """
    _check_order(order)
    _check_arg(z)
    if z == 0.0:
        return math.inf
    if z > 20.0:
        terms = _hankel_terms(order, z)
        return math.sqrt(0.5 * math.pi / z) * math.fsum(terms)

    h = 0.05
    vals = [0.5]
    k = 0
    while True:
        k += 1
        t = k * h
        v = math.exp(-z * (math.cosh(t) - 1.0)) * math.cosh(order * t)
        vals.append(v)
        if v < 1e-18 * vals[0] and z * (math.cosh(t) - 1.0) > 40.0:
            break
        if k > 20000:
            raise ConvergenceError(f"K_{order}({z}) quadrature did not terminate")
    return h * math.fsum(vals)


def _lanczos_log_gamma(z):
    """log Gamma(z) for Re z >= 1/2 (principal branch)."""
    z = z - 1.0
    x = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        x += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def log_gamma_complex(z):
    r"""Principal branch of :math:`\log\Gamma(z)` for complex ``z``.

    The Lanczos approximation covers ``Re z >= 1/2``. To the left of that line
    the recurrence :math:`\log\Gamma(z) = \log\Gamma(z+m) - \sum_{j<m}\log(z+j)`
    is used; each logarithm has its cut on ``z <= -j`` so the sum stays on the
    principal branch (cut along the non-positive real axis).

    Raises
    ------
    PoleError
        If ``z`` is a non-positive integer.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"argument must be finite, got {z!r}")
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleError(f"gamma has a pole at {z.real}")
    if z.real >= 0.5:
        return _lanczos_log_gamma(z)
    m = int(math.ceil(0.5 - z.real))
    shift = [cmath.log(z + j) for j in range(m)]
    corr = complex(math.fsum(c.real for c in shift), math.fsum(c.imag for c in shift))
    return _lanczos_log_gamma(z + m) - corr


def gamma_complex(z):
    """Gamma function for complex ``z`` via :func:`log_gamma_complex`."""
    return cmath.exp(log_gamma_complex(z))


def gamma_abs_sq(a, x):
    r"""Return :math:`|\Gamma(a + ix)|^2` for ``a > 0``."""
    if not a > 0.0:
        raise DomainError(f"a must be positive, got {a!r}")
    return math.exp(2.0 * log_gamma_complex(complex(a, x)).real)


def hyp_terminating(k, b, c, z):
    r"""Terminating Gauss series :math:`{}_2F_1(-k, b; c; z)` as an exact (k+1)-term sum.

    Terms follow ``t[j+1] = t[j] (j-k)(b+j) z / ((c+j)(j+1))`` and are added with
    exact (``fsum``) summation of real and imaginary parts. Cancellation between
    terms grows with ``k``, which is why the degree is capped at
    :data:`HYP_MAX_DEGREE`.
    """
    if not isinstance(k, int) or k < 0:
        raise DomainError(f"k must be a non-negative integer, got {k!r}")
    if k > HYP_MAX_DEGREE:
        raise CapExceededError(f"k={k} exceeds the supported maximum {HYP_MAX_DEGREE}")
    if c <= 0 and c == math.floor(c):
        raise DomainError(f"c must not be a non-positive integer, got {c!r}")
    b = complex(b)
    z = complex(z)
    term = 1.0 + 0.0j
    terms = [term]
    for j in range(k):
        term = term * (j - k) * (b + j) * z / ((c + j) * (j + 1))
        terms.append(term)
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
