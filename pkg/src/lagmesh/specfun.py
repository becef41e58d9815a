"""Special functions for the Laguerre mesh and the analytic partial-wave kernels.

Everything here is a pure real-valued function: Laguerre polynomials, their
zeros and the associated Gauss quadrature weights, exponential integrals of
non-positive integer order, Legendre functions of both kinds, and spherical
Bessel functions.
"""

import math

import numpy as np

from .errors import NumericalError

__all__ = [
    "laguerre_value",
    "laguerre_weighted",
    "laguerre_zeros",
    "laguerre_weights",
    "exp_integral_nonpos",
    "legendre_p",
    "legendre_q",
    "spherical_bessel_j",
]

_RESCALE = 1e250  # magnitude at which the three-term recurrence is rescaled


def laguerre_value(N: int, x: float) -> float:
    """Evaluate the Laguerre polynomial L_N(x) by upward recurrence.

    The plain recurrence overflows for very large N at x of the order of the
    last zero; use :func:`laguerre_weighted` when the exp(-x/2)-damped value
    is what is actually needed.
    """
    if N < 0:
        raise ValueError(f"polynomial degree must be >= 0, got {N}")
    p_prev = 1.0
    if N == 0:
        return p_prev
    p = 1.0 - x
    for k in range(1, N):
        p_prev, p = p, ((2 * k + 1 - x) * p - k * p_prev) / (k + 1)
    return p


def laguerre_weighted(N: int, x):
    """Evaluate L_N(x) * exp(-x/2), scalar or elementwise on an array.

    The recurrence runs on rescaled iterates with the accumulated magnitude
    kept in log form, so the damped product stays representable for any mesh
    size up to N = 512 and arguments beyond the last zero.
    """
    if N < 0:
        raise ValueError(f"polynomial degree must be >= 0, got {N}")
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr)
    p_prev = np.ones_like(x_arr)
    logscale = np.zeros_like(x_arr)
    if N == 0:
        out = p_prev * np.exp(-x_arr / 2.0)
        return float(out[0]) if scalar else out
    p = 1.0 - x_arr
    for k in range(1, N):
        p_prev, p = p, ((2 * k + 1 - x_arr) * p - k * p_prev) / (k + 1)
        big = np.abs(p) > _RESCALE
        if np.any(big):
            p[big] /= _RESCALE
            p_prev[big] /= _RESCALE
            logscale[big] += math.log(_RESCALE)
    out = p * np.exp(logscale - x_arr / 2.0)
    return float(out[0]) if scalar else out


def _laguerre_pair(N: int, x: float) -> tuple[float, float]:
    """(L_N, L_{N-1}) at x, up to a common positive rescaling factor."""
    p_prev = 1.0
    p = 1.0 - x
    for k in range(1, N):
        p_prev, p = p, ((2 * k + 1 - x) * p - k * p_prev) / (k + 1)
        if abs(p) > _RESCALE:
            p /= _RESCALE
            p_prev /= _RESCALE
    return p, p_prev


def _newton_step(N: int, x: float) -> float:
    """Newton correction for L_N at x; uses x L_N' = N (L_N - L_{N-1})."""
    p, p_prev = _laguerre_pair(N, x)
    return -p * x / (N * (p - p_prev))


def _newton_step_extended(N: int, x) -> np.longdouble:
    """Newton correction with the recurrence run in extended precision.

    Double-precision evaluation leaves the roots wobbling over ~10 ulps; one
    or two extended steps pin them to the last bit.
    """
    x = np.longdouble(x)
    p_prev = np.longdouble(1.0)
    p = np.longdouble(1.0) - x
    for k in range(1, N):
        p_prev, p = p, ((2 * k + 1 - x) * p - k * p_prev) / (k + 1)
        if abs(p) > _RESCALE:
            p /= _RESCALE
            p_prev /= _RESCALE
    return -p * x / (N * (p - p_prev))


def laguerre_zeros(N: int) -> np.ndarray:
    """Zeros of L_N, ascending, polished to machine precision by Newton.

    Initial guesses are the standard asymptotic estimates, each root seeding
    the next; the result is cross-checkable against the tridiagonal
    (Golub-Welsch) construction.
    """
    if not 1 <= N <= 512:
        raise ValueError(f"mesh size must satisfy 1 <= N <= 512, got {N}")
    zeros = np.empty(N)
    z = 0.0
    for i in range(N):
        if i == 0:
            z = 3.0 / (1.0 + 2.4 * N)
        elif i == 1:
            z += 15.0 / (1.0 + 2.5 * N)
        else:
            step = i - 1
            z += ((1.0 + 2.55 * step) / (1.9 * step)) * (z - zeros[i - 2])
        for _ in range(100):
            dz = _newton_step(N, z)
            z += dz
            if abs(dz) <= 1e-11 * z:
                break
        else:
            raise NumericalError(
                f"Laguerre root {i + 1}/{N} did not converge (last at x={z!r})"
            )
        z_ext = np.longdouble(z)
        for _ in range(4):
            dz_ext = _newton_step_extended(N, z_ext)
            z_ext += dz_ext
            if abs(float(dz_ext)) <= 1e-17 * z:
                break
        z = float(z_ext)
        if abs(float(_newton_step_extended(N, z))) > 1e-13 * z:
            raise NumericalError(f"Laguerre root {i + 1}/{N} fails residual check")
        zeros[i] = z
    if np.any(np.diff(zeros) <= 0.0):
        raise NumericalError(f"Laguerre zeros for N={N} are not strictly increasing")
    return zeros


def laguerre_weights(zeros) -> np.ndarray:
    """Gauss-Laguerre weights rescaled by exp(x_i), from the zeros of L_N.

    Computed entirely in the log domain,
        ln w_i = x_i - ln x_i + 2 ln N! - sum_{j != i} ln (x_i - x_j)^2,
    because the direct product over root differences overflows near N = 200.
    The logs are accumulated in extended precision with ln N! taken from the
    exact integer factorial; a double-precision ln N! alone would bias every
    weight by a common relative ~1e-13 at N = 50, visible in eigenvalues.
    """
    x = np.asarray(zeros, dtype=np.longdouble)
    N = x.size
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, np.longdouble(1.0))
    log_factorial = np.log(np.longdouble(math.factorial(N)))
    log_w = x - np.log(x) + 2.0 * log_factorial - np.sum(np.log(diff * diff), axis=1)
    w = np.exp(log_w).astype(float)
    if not np.all(np.isfinite(w)):
        raise NumericalError(f"quadrature weights overflowed for N={N}")
    return w


def exp_integral_nonpos(m: int, z: float) -> float:
    """Exponential integral E_m(z) for integer order m <= 0 and real z != 0.

    Uses the closed-form continuation
        E_{-n}(z) = exp(-z) n! z^{-(n+1)} sum_{k=0}^{n} z^k / k!,
    valid for negative arguments as well.
    """
    if m > 0:
        raise ValueError(f"only non-positive orders are supported, got m={m}")
    if z == 0.0:
        raise ValueError("E_m has a pole at z = 0")
    n = -m
    term = 1.0
    total = 1.0
    for k in range(1, n + 1):
        term *= z / k
        total += term
    return math.exp(-z) * math.factorial(n) * z ** (-(n + 1)) * total


def legendre_p(l: int, t):
    """Legendre polynomial P_l(t) by the Bonnet recurrence (array friendly)."""
    if l < 0:
        raise ValueError(f"degree must be >= 0, got {l}")
    t = np.asarray(t, dtype=float) if not np.isscalar(t) else t
    p_prev = np.ones_like(t) if isinstance(t, np.ndarray) else 1.0
    if l == 0:
        return p_prev
    p = t
    for k in range(1, l):
        p_prev, p = p, ((2 * k + 1) * t * p - k * p_prev) / (k + 1)
    return p


_Q_MAX_DEGREE = 8
_Q_SERIES_CUTOFF = 1.2


def legendre_q(l: int, x: float) -> float:
    """Legendre function of the second kind Q_l(x) on x > 1, for l <= 8.

    Near the logarithmic singularity the closed form
        Q_l = P_l(x) Q_0(x) - sum_{m=1}^{l} P_{m-1}(x) P_{l-m}(x) / m
    is used; for x >= 1.2 it cancels badly and the inverse-power series
        Q_l(x) = sum_{j>=0} c_j x^{-(l+2j+1)}
    takes over. Both branches hold 1e-10 relative accuracy up to l = 8;
    the closed form degrades rapidly beyond that, hence the degree cap.
    """
    if not 0 <= l <= _Q_MAX_DEGREE:
        raise ValueError(f"degree must be in [0, {_Q_MAX_DEGREE}], got {l}")
    if x <= 1.0:
        raise ValueError(f"Q_l requires x > 1, got {x!r}")
    if x < _Q_SERIES_CUTOFF:
        q0 = 0.5 * math.log((x + 1.0) / (x - 1.0))
        p_all = [1.0, x]
        for k in range(1, l):
            p_all.append(((2 * k + 1) * x * p_all[k] - k * p_all[k - 1]) / (k + 1))
        w = sum(p_all[m - 1] * p_all[l - m] / m for m in range(1, l + 1))
        return p_all[l] * q0 - w
    # c_0 = 2^l (l!)^2 / (2l+1)!, then a term-ratio recurrence in u = x^-2.
    c = math.exp(
        l * math.log(2.0) + 2.0 * math.lgamma(l + 1) - math.lgamma(2 * l + 2)
    )
    u = 1.0 / (x * x)
    term = c
    total = c
    j = 0
    while True:
        ratio = (
            (l + 2 * j + 2)
            * (l + 2 * j + 1)
            * (l + j + 1)
            / ((j + 1) * (2 * l + 2 * j + 3) * (2 * l + 2 * j + 2))
        )
        term *= ratio * u
        total += term
        j += 1
        if term < 1e-18 * total or j > 400:
            break
    return total * x ** (-(l + 1))


def spherical_bessel_j(l: int, x):
    """Spherical Bessel function j_l(x) for x >= 0, scalar or array.

    The ascending recurrence is stable only for x >= l; below that the power
    series around the origin is summed instead, which avoids the catastrophic
    cancellation of the trigonometric closed forms at small arguments.
    """
    if l < 0:
        raise ValueError(f"order must be >= 0, got {l}")
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr).astype(float)
    if np.any(x_arr < 0.0):
        raise ValueError("j_l is only evaluated for x >= 0")
    out = np.empty_like(x_arr)
    small = x_arr < l + 1.0
    if np.any(small):
        out[small] = _bessel_series(l, x_arr[small])
    large = ~small
    if np.any(large):
        out[large] = _bessel_recurrence(l, x_arr[large])
    return float(out[0]) if scalar else out


def _bessel_series(l: int, x: np.ndarray) -> np.ndarray:
    # prefactor x^l / (2l+1)!!
    pref = np.ones_like(x)
    for k in range(1, l + 1):
        pref *= x / (2 * k + 1)
    w = -0.5 * x * x
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, 60):
        term *= w / (k * (2 * l + 2 * k + 1))
        total += term
        if np.all(np.abs(term) <= 1e-18 * np.abs(total)):
            break
    return pref * total


def _bessel_recurrence(l: int, x: np.ndarray) -> np.ndarray:
    j_prev = np.sin(x) / x
    if l == 0:
        return j_prev
    j = j_prev / x - np.cos(x) / x
    for k in range(1, l):
        j_prev, j = j, (2 * k + 1) / x * j - j_prev
    return j
