"""Momentum-space Lagrange-mesh Hamiltonian assembly and bound-state extraction.

On the scaled mesh the radial integral equation becomes the symmetric dense
eigenproblem

    H_ij = T(h^2 x_i^2) delta_ij + h^3 sqrt(l_i l_j) x_i x_j V_l(h x_i, h x_j),

with h the momentum scale, x_i the mesh nodes and l_i the quadrature
weights. Bound states are the eigenpairs whose energy falls inside the
kinetic operator's bound-state window.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NumericalError
from .linalg import eigh_refined
from .mesh import LaguerreMesh, build_mesh

__all__ = [
    "ProblemSpec",
    "HamiltonianMatrix",
    "BoundState",
    "assemble_hamiltonian",
    "solve_spectrum",
    "select_bound_states",
    "solve",
    "solve_full",
    "scale_energy",
    "gaussian_coupling",
    "yukawa_coupling",
]


@dataclass(frozen=True)
class ProblemSpec:
    """One partial-wave eigenproblem: kinetics + potential + mesh settings."""

    kinetic: object
    potential: object
    l: int
    size: int
    scale: float

    def __post_init__(self):
        if self.l < 0:
            raise ValueError(f"partial wave must be >= 0, got {self.l}")

    def mesh(self) -> LaguerreMesh:
        return build_mesh(self.size, self.scale)


@dataclass(frozen=True, eq=False)
class HamiltonianMatrix:
    """Dense symmetric mesh Hamiltonian."""

    order: int
    values: np.ndarray

    def __post_init__(self):
        self.values.setflags(write=False)
        if not np.all(np.isfinite(self.values)):
            raise NumericalError("Hamiltonian contains non-finite entries")


@dataclass(frozen=True, eq=False)
class BoundState:
    """Eigenvalue and normalized expansion coefficients with labels (n, l).

    ``n`` counts radial excitations (rank by energy within the partial
    wave); ``coefficients`` obey sum C_j^2 = 1 with the first nonzero entry
    positive.
    """

    energy: float
    coefficients: np.ndarray
    n: int
    l: int
    mesh: LaguerreMesh

    def __post_init__(self):
        self.coefficients.setflags(write=False)


def assemble_hamiltonian(problem: ProblemSpec) -> HamiltonianMatrix:
    """Build H for the given problem, one kernel call per unordered pair."""
    m = problem.mesh()
    h = m.scale
    x = m.nodes
    sqrt_w = np.sqrt(m.weights)
    kernel = problem.potential.kernel(problem.l)
    n = m.size
    values = np.empty((n, n))
    momenta = h * x
    for i in range(n):
        for j in range(i, n):
            try:
                v = kernel.evaluate(momenta[i], momenta[j])
            except Exception as exc:
                raise NumericalError(
                    f"potential kernel failed at mesh pair (i={i + 1}, j={j + 1}), "
                    f"p={momenta[i]!r}, p'={momenta[j]!r}: {exc}"
                ) from exc
            entry = h**3 * sqrt_w[i] * sqrt_w[j] * x[i] * x[j] * v
            values[i, j] = entry
            values[j, i] = entry
    for i in range(n):
        values[i, i] += problem.kinetic.value(momenta[i])
    return HamiltonianMatrix(order=n, values=values)


def solve_spectrum(hamiltonian: HamiltonianMatrix) -> tuple[np.ndarray, np.ndarray]:
    """All eigenvalues (ascending) and orthonormal eigenvectors of H.

    Exact degeneracies are ordered by the index of the largest-magnitude
    coefficient, so the output is reproducible.
    """
    energies, vectors = eigh_refined(hamiltonian.values)
    order = np.lexsort((np.argmax(np.abs(vectors), axis=0), energies))
    energies = energies[order]
    vectors = vectors[:, order]
    residual = np.abs(hamiltonian.values @ vectors - vectors * energies).max()
    norm = np.linalg.norm(hamiltonian.values, 2)
    if norm > 0.0 and residual > 1e-11 * norm:
        raise NumericalError(
            f"eigensolver residual {residual:.3e} exceeds 1e-11 * ||H|| = {1e-11 * norm:.3e}"
        )
    return energies, vectors


def select_bound_states(
    energies: np.ndarray,
    vectors: np.ndarray,
    kinetic,
    mesh: LaguerreMesh,
    l: int,
) -> list[BoundState]:
    """Keep eigenpairs inside the kinetic bound window, normalized and labeled.

    Returns them in ascending energy; an empty list is a legitimate outcome.
    """
    lower, upper = kinetic.bound_window()
    states = []
    for idx in np.flatnonzero((energies > lower) & (energies < upper)):
        c = vectors[:, idx].copy()
        c /= np.linalg.norm(c)
        first = np.flatnonzero(c)
        if first.size and c[first[0]] < 0.0:
            c = -c
        states.append(
            BoundState(
                energy=float(energies[idx]),
                coefficients=c,
                n=len(states),
                l=l,
                mesh=mesh,
            )
        )
    return states


@lru_cache(maxsize=64)
def _solve_cached(problem: ProblemSpec):
    spectrum, vectors = solve_spectrum(assemble_hamiltonian(problem))
    spectrum.setflags(write=False)
    vectors.setflags(write=False)
    return spectrum, vectors


def solve(problem: ProblemSpec) -> list[BoundState]:
    """Assemble, diagonalize and select the bound states of a problem.

    Full spectra are cached per ProblemSpec, so repeated observable
    evaluations on the same problem are free.
    """
    spectrum, vectors = _solve_cached(problem)
    return select_bound_states(
        spectrum, vectors, problem.kinetic, problem.mesh(), problem.l
    )


def solve_full(problem: ProblemSpec) -> tuple[np.ndarray, np.ndarray]:
    """Cached full spectrum of a problem (all N eigenpairs)."""
    return _solve_cached(problem)


def scale_energy(eps: float, mu: float, b: float) -> float:
    """Physical energy from a dimensionless eigenvalue: E = b^2 eps / (2 mu)."""
    return b * b * eps / (2.0 * mu)


def gaussian_coupling(mu: float, a: float, b: float) -> float:
    """Dimensionless strength g = 2 mu a / b^2 of -a exp(-b^2 r^2)."""
    return 2.0 * mu * a / (b * b)


def yukawa_coupling(mu: float, a: float, b: float) -> float:
    """Dimensionless strength g = 2 mu a / b of -a exp(-b r)/r."""
    return 2.0 * mu * a / b
