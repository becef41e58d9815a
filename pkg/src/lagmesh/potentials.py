"""Central interactions and their partial-wave kernels in momentum space.

A potential is known through its configuration-space form V(r) and/or the
Fourier transform V_FT(k); the nonlocal kernel entering the radial integral
equation for partial wave l is the Legendre projection

    V_l(p, p') = 2 pi * integral_{-1}^{+1} P_l(t) V_FT(|p - p'|)(t) dt,

with t the cosine of the angle between the two momenta. Gaussian and Yukawa
interactions admit closed forms; anything else goes through an adaptive
Gauss-Legendre quadrature of the same integral.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .errors import ConfigurationError, NumericalError
from .specfun import legendre_p, legendre_q

__all__ = [
    "PartialWaveKernel",
    "GaussianPotential",
    "YukawaPotential",
    "CustomPotential",
    "vft_gaussian",
    "vft_yukawa",
    "partial_wave_gaussian",
    "partial_wave_yukawa",
    "partial_wave_numeric",
]


@dataclass(frozen=True)
class PartialWaveKernel:
    """Symmetric kernel V_l(p, p') for one partial wave."""

    l: int
    evaluate: Callable[[float, float], float]


def vft_gaussian(k: float, a: float, b: float) -> float:
    """Fourier transform of -a exp(-b^2 r^2): -a/(8 pi^{3/2} b^3) exp(-k^2/4b^2)."""
    return -a / (8.0 * math.pi**1.5 * b**3) * math.exp(-(k * k) / (4.0 * b * b))


def vft_yukawa(k: float, a: float, b: float) -> float:
    """Fourier transform of -a exp(-b r)/r: -(a/2 pi^2) / (b^2 + k^2)."""
    return -a / (2.0 * math.pi**2 * (b * b + k * k))


def _tail_series(n: int, z: float) -> float:
    """sum_{j > n} z^j / j!, the Taylor remainder of exp after degree n."""
    term = 1.0
    for k in range(1, n + 1):
        term *= z / k
    total = 0.0
    j = n
    while True:
        j += 1
        term *= z / j
        total += term
        if abs(term) <= 1e-18 * abs(total) or j > n + 200:
            return total


def _partial_sum(n: int, z: float) -> float:
    """sum_{j <= n} z^j / j!."""
    term = 1.0
    total = 1.0
    for k in range(1, n + 1):
        term *= z / k
        total += term
    return total


def _gauss_bracket(n: int, y: float, s: float, parity: float) -> float:
    """exp(-s) * [E_{-n}(-y) + (-1)^l E_{-n}(y)] without overflow or blow-up.

    Written via the Taylor remainder R_n of exp, the combination collapses to
        parity * n! y^{-(n+1)} [e^{y-s} R_n(-y) - e^{-y-s} R_n(y)],
    which cures the small-y cancellation between the two exponential
    integrals; for large y the complementary partial-sum form is used, with
    all exponents folded together (y <= s always, so none can overflow).
    """
    if y < 5.0:
        val = math.exp(y - s) * _tail_series(n, -y) - math.exp(-y - s) * _tail_series(n, y)
    else:
        val = math.exp(-y - s) * _partial_sum(n, y) - math.exp(y - s) * _partial_sum(n, -y)
    return parity * math.factorial(n) * y ** (-(n + 1)) * val


def partial_wave_gaussian(l: int, p: float, q: float, a: float, b: float) -> float:
    """Gaussian kernel V_l(p, p') as a finite combination of exponential
    integrals E_{2k-l} at arguments +-(p p' / 2 b^2).

    The overall sign of the combination is pinned by requiring agreement with
    the direct angular quadrature of the Legendre projection; the analytic
    continuation of E_m to negative arguments leaves it ambiguous otherwise.
    Relative accuracy degrades for l >= 4 when p p'/2b^2 is tiny (cancellation
    between the k-terms); all tested partial waves (l <= 2) stay below 1e-10.
    """
    y = p * q / (2.0 * b * b)
    s = (p * p + q * q) / (4.0 * b * b)
    parity = -1.0 if l % 2 else 1.0
    acc = 0.0
    for k in range(l // 2 + 1):
        coeff = math.comb(l, k) * math.comb(2 * l - 2 * k, l)
        if k % 2:
            coeff = -coeff
        acc += coeff * _gauss_bracket(l - 2 * k, y, s, parity)
    return a / (2 ** (l + 2) * math.sqrt(math.pi) * b**3) * acc


def partial_wave_yukawa(l: int, p: float, q: float, a: float, b: float) -> float:
    """Yukawa kernel V_l(p, p') = -(a / pi p p') Q_l((b^2 + p^2 + p'^2)/(2 p p'))."""
    if b <= 0.0:
        raise ConfigurationError(
            "Yukawa screening mass must be positive; b = 0 puts the Q_l "
            "argument on its logarithmic singularity at p = p'"
        )
    # grouping keeps evaluate(p, q) == evaluate(q, p) bit for bit
    arg = (b * b + (p * p + q * q)) / (2.0 * (p * q))
    return -a / (math.pi * (p * q)) * legendre_q(l, arg)


@lru_cache(maxsize=16)
def _gauss_legendre_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    t, w = np.polynomial.legendre.leggauss(order)
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def partial_wave_numeric(
    l: int,
    p: float,
    q: float,
    v_ft: Callable[[float], float],
    rel_tol: float = 1e-12,
    abs_tol: float = 1e-15,
) -> float:
    """Legendre projection of an arbitrary V_FT by adaptive Gauss-Legendre.

    The quadrature order doubles from 32 until two successive estimates agree
    to ``rel_tol`` (relative) or ``abs_tol`` (absolute); failure past order
    1024 raises.
    """
    previous = None
    order = 32
    while order <= 1024:
        t, w = _gauss_legendre_rule(order)
        k = np.sqrt(p * p + q * q - 2.0 * p * q * t)
        values = np.array([v_ft(kk) for kk in k], dtype=float)
        estimate = 2.0 * math.pi * float(np.dot(w, legendre_p(l, t) * values))
        if previous is not None and abs(estimate - previous) <= max(
            rel_tol * abs(estimate), abs_tol
        ):
            return estimate
        previous = estimate
        order *= 2
    raise NumericalError(
        f"partial-wave integration did not converge for l={l}, p={p!r}, p'={q!r}"
    )


@dataclass(frozen=True)
class GaussianPotential:
    """V(r) = -a exp(-b^2 r^2) with a, b > 0 (attractive, short range)."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0.0 and self.b > 0.0):
            raise ConfigurationError("Gaussian potential requires a > 0 and b > 0")

    def fourier_value(self, k: float) -> float:
        return vft_gaussian(k, self.a, self.b)

    def radial_value(self, r: float) -> float:
        return -self.a * math.exp(-((self.b * r) ** 2))

    def kernel(self, l: int) -> PartialWaveKernel:
        a, b = self.a, self.b
        return PartialWaveKernel(l, lambda p, q: partial_wave_gaussian(l, p, q, a, b))


@dataclass(frozen=True)
class YukawaPotential:
    """V(r) = -a exp(-b r)/r with a, b > 0 (attractive, screened Coulomb)."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0.0 and self.b > 0.0):
            raise ConfigurationError("Yukawa potential requires a > 0 and b > 0")

    def fourier_value(self, k: float) -> float:
        return vft_yukawa(k, self.a, self.b)

    def radial_value(self, r: float) -> float:
        return -self.a * math.exp(-self.b * r) / r

    def kernel(self, l: int) -> PartialWaveKernel:
        a, b = self.a, self.b
        return PartialWaveKernel(l, lambda p, q: partial_wave_yukawa(l, p, q, a, b))


@dataclass(frozen=True)
class CustomPotential:
    """Interaction given by its momentum-space form, radial form optional.

    Radial mean values and the configuration-space cross-check need
    ``radial``; momentum-space solves work from ``fourier`` alone, through
    the numeric partial-wave projection.
    """

    fourier: Callable[[float], float]
    radial: Optional[Callable[[float], float]] = None

    def fourier_value(self, k: float) -> float:
        return self.fourier(k)

    def radial_value(self, r: float) -> float:
        if self.radial is None:
            raise ConfigurationError(
                "radial observables need the configuration-space form of the "
                "potential, which this CustomPotential does not define"
            )
        return self.radial(r)

    def kernel(self, l: int) -> PartialWaveKernel:
        fourier = self.fourier
        return PartialWaveKernel(l, lambda p, q: partial_wave_numeric(l, p, q, fourier))
