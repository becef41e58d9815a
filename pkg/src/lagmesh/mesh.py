"""Scaled Gauss-Laguerre Lagrange mesh and regularized Lagrange functions."""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigurationError, NumericalError
from .specfun import laguerre_weighted, laguerre_weights, laguerre_zeros

__all__ = ["LaguerreMesh", "build_mesh", "lagrange_function", "quadrature"]

_NODE_WINDOW = 1e-10  # half-width of the removable-singularity window


@dataclass(frozen=True, eq=False)
class LaguerreMesh:
    """Zeros and weights of the N-point Gauss-Laguerre rule plus a scale.

    ``nodes`` and ``weights`` are dimensionless; ``scale`` maps node i onto
    the physical momentum (or length) scale * nodes[i]. Instances are
    immutable and safe to share.
    """

    size: int
    nodes: np.ndarray
    weights: np.ndarray
    scale: float

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)
        if np.any(self.nodes <= 0.0) or np.any(np.diff(self.nodes) <= 0.0):
            raise NumericalError("mesh nodes must be positive and increasing")
        if np.any(self.weights <= 0.0):
            raise NumericalError("mesh weights must be positive")
        norm = math.fsum(
            w * math.exp(-x) for w, x in zip(self.weights, self.nodes)
        )
        if abs(norm - 1.0) > 1e-12:
            raise NumericalError(
                f"quadrature normalization off by {norm - 1.0:.3e} for N={self.size}"
            )


@lru_cache(maxsize=128)
def _nodes_and_weights(size: int) -> tuple[np.ndarray, np.ndarray]:
    nodes = laguerre_zeros(size)
    weights = laguerre_weights(nodes)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


@lru_cache(maxsize=128)
def build_mesh(size: int, scale: float) -> LaguerreMesh:
    """Construct the N-point mesh with the given physical scale factor."""
    if not isinstance(size, (int, np.integer)) or not 1 <= size <= 512:
        raise ConfigurationError(f"mesh size must be an integer in [1, 512], got {size!r}")
    if not scale > 0.0:
        raise ConfigurationError(f"mesh scale factor must be positive, got {scale!r}")
    nodes, weights = _nodes_and_weights(size)
    return LaguerreMesh(size=size, nodes=nodes, weights=weights, scale=scale)


def lagrange_function(mesh: LaguerreMesh, i: int, x: float) -> float:
    """Regularized Lagrange function f_i(x), with i the 1-based node index.

    f_i(x) = (-1)^i x_i^{-1/2} x (x - x_i)^{-1} L_N(x) exp(-x/2),
    which vanishes at the origin and at every node but x_i, where it takes
    the value weights[i]^{-1/2}. Inside a 1e-10 window around x_i the
    removable singularity is replaced by that limit.
    """
    if not 1 <= i <= mesh.size:
        raise ValueError(f"node index must be in [1, {mesh.size}], got {i}")
    if x < 0.0:
        raise ValueError("Lagrange functions are defined on x >= 0")
    x_i = mesh.nodes[i - 1]
    if abs(x - x_i) < _NODE_WINDOW:
        return 1.0 / math.sqrt(mesh.weights[i - 1])
    sign = -1.0 if i % 2 else 1.0
    return (
        sign
        / math.sqrt(x_i)
        * x
        / (x - x_i)
        * laguerre_weighted(mesh.size, x)
    )


def quadrature(mesh: LaguerreMesh, g) -> float:
    """Gauss quadrature sum_k weights[k] g(nodes[k]).

    Exact whenever g is a polynomial of degree <= 2N-1 times exp(-x).
    """
    values = np.array([g(x) for x in mesh.nodes], dtype=float)
    if not np.all(np.isfinite(values)):
        bad = int(np.flatnonzero(~np.isfinite(values))[0])
        raise NumericalError(
            f"integrand not finite at mesh node {bad + 1} (x={mesh.nodes[bad]!r})"
        )
    return float(np.dot(mesh.weights, values))
