"""Kinetic-energy operators T(p^2), diagonal in momentum space."""

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import ConfigurationError

__all__ = [
    "NonrelativisticKinetic",
    "SalpeterKinetic",
    "CustomKinetic",
    "kinetic_value",
    "bound_window",
]


@dataclass(frozen=True)
class NonrelativisticKinetic:
    """T = p^2 / 2 mu for reduced mass mu = m1 m2 / (m1 + m2).

    Eigenvalues are binding energies, so bound states live below zero.
    """

    m1: float
    m2: float

    def __post_init__(self):
        if not (self.m1 > 0.0 and self.m2 > 0.0):
            raise ConfigurationError("masses must be positive")

    @property
    def mu(self) -> float:
        return self.m1 * self.m2 / (self.m1 + self.m2)

    def value(self, p: float) -> float:
        return p * p / (2.0 * self.mu)

    def bound_window(self) -> tuple[float, float]:
        return (-math.inf, 0.0)


@dataclass(frozen=True)
class SalpeterKinetic:
    """Spinless-Salpeter kinetic term sqrt(p^2+m1^2) + sqrt(p^2+m2^2).

    Eigenvalues are system masses; bound states sit between zero and the
    free threshold m1 + m2.
    """

    m1: float
    m2: float

    def __post_init__(self):
        if not (self.m1 > 0.0 and self.m2 > 0.0):
            raise ConfigurationError("masses must be positive")

    def value(self, p: float) -> float:
        p2 = p * p
        return math.sqrt(p2 + self.m1 * self.m1) + math.sqrt(p2 + self.m2 * self.m2)

    def bound_window(self) -> tuple[float, float]:
        return (0.0, self.m1 + self.m2)


@dataclass(frozen=True)
class CustomKinetic:
    """Arbitrary kinetic operator given as a function of p^2.

    Supports unusual dispersion laws such as momentum-dependent masses,
    T = sqrt(p^2 + m^2(p^2)); no smoothness is assumed. Selecting bound
    states requires an explicit energy window.
    """

    t_of_p2: Callable[[float], float]
    window: Optional[tuple[float, float]] = None

    def value(self, p: float) -> float:
        return self.t_of_p2(p * p)

    def bound_window(self) -> tuple[float, float]:
        if self.window is None:
            raise ConfigurationError(
                "a custom kinetic operator needs an explicit bound-state window"
            )
        return self.window


def kinetic_value(kinetic, p: float) -> float:
    """T evaluated at momentum p (helper mirroring the method)."""
    return kinetic.value(p)


def bound_window(kinetic) -> tuple[float, float]:
    """Open energy interval containing the bound states."""
    return kinetic.bound_window()
