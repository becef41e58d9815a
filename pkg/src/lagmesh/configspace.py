"""Configuration-space Lagrange-mesh solver (nonrelativistic only).

Independent route used to cross-validate momentum-space results: the same
Laguerre mesh carries the reduced radial Schroedinger equation in r, where
the potential is diagonal and the kinetic matrix reuses the mesh
second-derivative approximation,

    H_ij = (2 mu h_r^2)^-1 (t_ij + l(l+1)/x_i^2 delta_ij) + V(h_r x_i) delta_ij.

Semirelativistic kinematics is deliberately not supported here.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigurationError, NumericalError
from .mesh import LaguerreMesh, build_mesh
from .observables import second_derivative_matrix
from .linalg import eigh_refined
from .solver import BoundState, select_bound_states
from .kinetics import NonrelativisticKinetic
from .specfun import laguerre_weighted

__all__ = [
    "ConfigProblem",
    "assemble_config_hamiltonian",
    "solve_config",
    "expval_radial_config",
    "expval_kinetic_config",
    "reduced_wavefunction",
]


@dataclass(frozen=True)
class ConfigProblem:
    """Radial eigenproblem in configuration space.

    ``scale`` is the mesh scale factor in units of length. Only a reduced
    mass enters; there is no relativistic variant of this solver.
    """

    potential: object
    l: int
    mu: float
    size: int
    scale: float

    def __post_init__(self):
        if not self.mu > 0.0:
            raise ConfigurationError(f"reduced mass must be positive, got {self.mu!r}")
        if self.l < 0:
            raise ValueError(f"partial wave must be >= 0, got {self.l}")

    def mesh(self) -> LaguerreMesh:
        return build_mesh(self.size, self.scale)


def _kinetic_form(mesh: LaguerreMesh, l: int) -> np.ndarray:
    """(t_ij + l(l+1)/x_i^2 delta_ij) / h_r^2, i.e. the q^2 quadratic form."""
    t = second_derivative_matrix(mesh)
    form = t + np.diag(l * (l + 1) / (mesh.nodes * mesh.nodes))
    return form / (mesh.scale * mesh.scale)


def assemble_config_hamiltonian(problem: ConfigProblem) -> np.ndarray:
    m = problem.mesh()
    values = _kinetic_form(m, problem.l) / (2.0 * problem.mu)
    radial = np.array(
        [problem.potential.radial_value(m.scale * x) for x in m.nodes], dtype=float
    )
    if not np.all(np.isfinite(radial)):
        bad = int(np.flatnonzero(~np.isfinite(radial))[0])
        raise NumericalError(
            f"potential not finite at mesh node {bad + 1} "
            f"(r={m.scale * m.nodes[bad]!r})"
        )
    return values + np.diag(radial)


@lru_cache(maxsize=64)
def _solve_config_cached(problem: ConfigProblem):
    energies, vectors = eigh_refined(assemble_config_hamiltonian(problem))
    energies.setflags(write=False)
    vectors.setflags(write=False)
    return energies, vectors


def solve_config(problem: ConfigProblem) -> tuple[np.ndarray, list[BoundState]]:
    """Full spectrum plus the labeled bound states (energy below zero)."""
    energies, vectors = _solve_config_cached(problem)
    kinetic = NonrelativisticKinetic(2.0 * problem.mu, 2.0 * problem.mu)
    states = select_bound_states(energies, vectors, kinetic, problem.mesh(), problem.l)
    return energies, states


def expval_radial_config(state: BoundState, k) -> float:
    """Radial mean value, diagonal in configuration space: sum C_j^2 K(h x_j)."""
    m = state.mesh
    values = np.array([k(m.scale * x) for x in m.nodes], dtype=float)
    return float(np.dot(state.coefficients**2, values))


def expval_kinetic_config(state: BoundState, problem: ConfigProblem) -> float:
    """<q^2> through the second-derivative quadratic form."""
    form = _kinetic_form(state.mesh, problem.l)
    return float(state.coefficients @ form @ state.coefficients)


def reduced_wavefunction(state: BoundState, r):
    """u(r) = r R(r) = sum_j C_j f_j(r / h_r) / sqrt(h_r), any r >= 0."""
    m = state.mesh
    x = np.atleast_1d(np.asarray(r, dtype=float)) / m.scale
    scalar = np.ndim(r) == 0
    out = np.empty_like(x)
    nodes = m.nodes
    signs = np.where(np.arange(1, m.size + 1) % 2 == 0, 1.0, -1.0)
    coeff = state.coefficients * signs / np.sqrt(nodes)
    damped = laguerre_weighted(m.size, x)
    for idx, xv in enumerate(x):
        near = np.abs(xv - nodes) < 1e-10
        if np.any(near):
            j = int(np.flatnonzero(near)[0])
            denom = xv - nodes
            denom[j] = 1.0
            terms = coeff * xv / denom * damped[idx]
            terms[j] = state.coefficients[j] / math.sqrt(m.weights[j])
            out[idx] = terms.sum()
        else:
            out[idx] = damped[idx] * xv * float(np.dot(coeff, 1.0 / (xv - nodes)))
    out /= math.sqrt(m.scale)
    return float(out[0]) if scalar else out
