"""Two-body bound states on a Gauss-Laguerre Lagrange mesh in momentum space.

The mesh turns the radial momentum-space integral equation into a small dense
symmetric eigenproblem in which any kinetic operator T(p^2) is diagonal;
wavefunctions and observables in both spaces follow from the expansion
coefficients alone. A configuration-space solver on the same mesh provides an
independent cross-check for nonrelativistic problems.
"""

from .configspace import (
    ConfigProblem,
    expval_kinetic_config,
    expval_radial_config,
    reduced_wavefunction,
    solve_config,
)
from .errors import ConfigurationError, NumericalError
from .kinetics import CustomKinetic, NonrelativisticKinetic, SalpeterKinetic
from .mesh import LaguerreMesh, build_mesh, lagrange_function, quadrature
from .observables import (
    RadialOperatorCalculus,
    build_position_calculus,
    expval_momentum,
    expval_radial,
    hamiltonian_consistency,
    second_derivative_matrix,
    wavefunction_momentum,
    wavefunction_position,
)
from .potentials import (
    CustomPotential,
    GaussianPotential,
    PartialWaveKernel,
    YukawaPotential,
)
from .solver import (
    BoundState,
    HamiltonianMatrix,
    ProblemSpec,
    assemble_hamiltonian,
    gaussian_coupling,
    scale_energy,
    select_bound_states,
    solve,
    solve_full,
    solve_spectrum,
    yukawa_coupling,
)

__version__ = "0.1.0"

__all__ = [
    "BoundState",
    "ConfigProblem",
    "ConfigurationError",
    "CustomKinetic",
    "CustomPotential",
    "GaussianPotential",
    "HamiltonianMatrix",
    "LaguerreMesh",
    "NonrelativisticKinetic",
    "NumericalError",
    "PartialWaveKernel",
    "ProblemSpec",
    "RadialOperatorCalculus",
    "SalpeterKinetic",
    "YukawaPotential",
    "assemble_hamiltonian",
    "build_mesh",
    "build_position_calculus",
    "expval_kinetic_config",
    "expval_momentum",
    "expval_radial",
    "expval_radial_config",
    "gaussian_coupling",
    "hamiltonian_consistency",
    "lagrange_function",
    "quadrature",
    "reduced_wavefunction",
    "scale_energy",
    "second_derivative_matrix",
    "select_bound_states",
    "solve",
    "solve_config",
    "solve_full",
    "solve_spectrum",
    "wavefunction_momentum",
    "wavefunction_position",
    "yukawa_coupling",
]
