"""Wavefunctions and mean values from momentum-space mesh solutions.

Momentum-dependent operators are diagonal on the mesh, so their mean values
collapse to sum_j C_j^2 U(h x_j). Radial operators go through the spectral
calculus of the r^2 matrix: r^2 = -laplacian_p in momentum space, whose mesh
representation P is diagonalized once per (mesh, l); K(r) is then applied as
K(sqrt(.)) on the eigenvalues.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NumericalError
from .linalg import eigh_refined
from .mesh import LaguerreMesh
from .solver import BoundState, ProblemSpec
from .specfun import laguerre_weighted, spherical_bessel_j

__all__ = [
    "RadialOperatorCalculus",
    "second_derivative_matrix",
    "build_position_calculus",
    "wavefunction_momentum",
    "wavefunction_position",
    "expval_momentum",
    "expval_radial",
    "hamiltonian_consistency",
]

_NODE_WINDOW = 1e-10
_CLAMP = 1e-9  # tolerated quadrature leakage of the r^2 spectrum below zero


def second_derivative_matrix(mesh: LaguerreMesh) -> np.ndarray:
    """Mesh matrix of -d^2/dx^2 between regularized Lagrange functions.

    t_ij = (-1)^(i-j) (x_i x_j)^{-1/2} (x_i + x_j) (x_i - x_j)^{-2} off the
    diagonal and (12 x_i^2)^{-1} [4 + (4N + 2) x_i - x_i^2] on it. This is
    the Gauss-quadrature approximation, which behaves better than the exact
    matrix elements of the regularized basis.
    """
    x = mesh.nodes
    n = mesh.size
    idx = np.arange(n)
    signs = np.where((idx[:, None] + idx[None, :]) % 2 == 0, 1.0, -1.0)
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    t = signs * (x[:, None] + x[None, :]) / (np.sqrt(x[:, None] * x[None, :]) * diff * diff)
    np.fill_diagonal(t, (4.0 + (4.0 * n + 2.0) * x - x * x) / (12.0 * x * x))
    return t


@dataclass(frozen=True, eq=False)
class RadialOperatorCalculus:
    """Spectral factorization of the r^2 representation on a momentum mesh.

    ``r_squared = transform @ diag(eigenvalues) @ transform.T`` with an
    orthogonal transform; eigenvalues are clamped to zero inside a 1e-9
    window so that K(sqrt(.)) stays defined against quadrature leakage.
    """

    second_derivative: np.ndarray
    r_squared: np.ndarray
    eigenvalues: np.ndarray
    transform: np.ndarray

    def __post_init__(self):
        for field in (self.second_derivative, self.r_squared, self.eigenvalues, self.transform):
            field.setflags(write=False)


@lru_cache(maxsize=32)
def build_position_calculus(mesh: LaguerreMesh, l: int) -> RadialOperatorCalculus:
    """Assemble and factorize P_ij = h^-2 (t_ij + l(l+1)/x_i^2 delta_ij).

    The mesh scale h carries momentum units, so P carries length^2; its
    spectrum must be nonnegative up to quadrature error. Factorizations are
    cached per (mesh, l) and shared read-only.
    """
    t = second_derivative_matrix(mesh)
    p = t / (mesh.scale * mesh.scale)
    centrifugal = l * (l + 1) / (mesh.nodes * mesh.nodes * mesh.scale * mesh.scale)
    p = p + np.diag(centrifugal)
    eigenvalues, transform = eigh_refined(p)
    if np.any(eigenvalues < -_CLAMP):
        raise NumericalError(
            f"r^2 spectrum dips to {eigenvalues.min():.3e}, below the -1e-9 "
            f"quadrature-consistency bound (N={mesh.size}, l={l})"
        )
    eigenvalues = np.where(eigenvalues < 0.0, 0.0, eigenvalues)
    return RadialOperatorCalculus(
        second_derivative=t,
        r_squared=p,
        eigenvalues=eigenvalues,
        transform=transform,
    )


def wavefunction_momentum(state: BoundState, p):
    """Radial momentum wavefunction of the state, defined for any p >= 0.

    Between mesh points this is the full expansion
    sum_j C_j f_j(p/h) / (sqrt(h) p); at p = 0 the removable limit is used
    (the expansion itself is finite there for every l).
    """
    m = state.mesh
    h = m.scale
    x = np.atleast_1d(np.asarray(p, dtype=float)) / h
    scalar = np.ndim(p) == 0
    nodes = m.nodes
    signs = np.where(np.arange(1, m.size + 1) % 2 == 0, 1.0, -1.0)
    coeff = state.coefficients * signs / np.sqrt(nodes)
    out = np.empty_like(x)
    damped = laguerre_weighted(m.size, x)
    for k, xv in enumerate(x):
        near = np.abs(xv - nodes) < _NODE_WINDOW
        if np.any(near):
            j = int(np.flatnonzero(near)[0])
            denom = xv - nodes
            denom[j] = 1.0
            terms = coeff / denom * damped[k]
            terms[j] = state.coefficients[j] / (math.sqrt(m.weights[j]) * nodes[j])
            out[k] = terms.sum()
        else:
            out[k] = damped[k] * float(np.dot(coeff, 1.0 / (xv - nodes)))
    out /= h**1.5
    return float(out[0]) if scalar else out


def wavefunction_position(state: BoundState, r):
    """Position wavefunction reconstructed by the mesh Fourier formula.

    R(r) = (-1)^l sqrt(2/pi) h^(3/2) sum_i C_i sqrt(l_i) x_i j_l(h x_i r).
    No smoothing is applied: beyond some radius the reconstruction develops
    rapid unphysical oscillations that only a larger mesh pushes outward.
    """
    m = state.mesh
    h = m.scale
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    scalar = np.ndim(r) == 0
    weights = state.coefficients * np.sqrt(m.weights) * m.nodes
    bess = spherical_bessel_j(state.l, np.outer(r_arr, h * m.nodes))
    out = (
        (-1.0 if state.l % 2 else 1.0)
        * math.sqrt(2.0 / math.pi)
        * h**1.5
        * (bess @ weights)
    )
    return float(out[0]) if scalar else out


def expval_momentum(state: BoundState, u) -> float:
    """Mean value of a momentum-dependent operator: sum_j C_j^2 U(h x_j)."""
    m = state.mesh
    values = np.array([u(m.scale * xj) for xj in m.nodes], dtype=float)
    if not np.all(np.isfinite(values)):
        bad = int(np.flatnonzero(~np.isfinite(values))[0])
        raise NumericalError(
            f"momentum observable not finite at node {bad + 1} "
            f"(p={m.scale * m.nodes[bad]!r})"
        )
    return float(np.dot(state.coefficients**2, values))


def expval_radial(state: BoundState, calculus: RadialOperatorCalculus, k) -> float:
    """Mean value of a radial operator through the r^2 spectral calculus.

    K is evaluated at the square roots of the r^2 eigenvalues and rotated
    back: <K> = sum_m K(sqrt(lam_m)) (S^T C)_m^2, using S^-1 = S^T.
    """
    diag = np.array([k(math.sqrt(lam)) for lam in calculus.eigenvalues], dtype=float)
    if not np.all(np.isfinite(diag)):
        bad = int(np.flatnonzero(~np.isfinite(diag))[0])
        raise NumericalError(
            f"radial observable not finite at spectral point "
            f"r={math.sqrt(calculus.eigenvalues[bad])!r}"
        )
    projected = calculus.transform.T @ state.coefficients
    return float(np.dot(diag, projected * projected))


def hamiltonian_consistency(
    state: BoundState, problem: ProblemSpec
) -> tuple[float, float]:
    """(eigenvalue, <T> + <V>) for the state; their gap tracks convergence.

    The two numbers agree only in the converged limit because momentum and
    radial mean values go through different quadrature routes.
    """
    calculus = build_position_calculus(state.mesh, state.l)
    t_mean = expval_momentum(state, problem.kinetic.value)
    v_mean = expval_radial(state, calculus, problem.potential.radial_value)
    return state.energy, t_mean + v_mean
