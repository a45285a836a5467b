"""Massive-fermion boundary spectrum: the Bessel eigenvalue condition
e^{i vartheta} K_{1/2 - iE}(m l1) = K_{1/2 + iE}(m l1), its root table, the
counting asymptotics, and the smoothed critical-line zero counter it tracks.

Since K_{1/2 + iE}(x) is the conjugate of K_{1/2 - iE}(x) for real x, the
complex condition collapses to the real root function
G(E) = Im( e^{i vartheta / 2} K_{1/2 - iE}(m l1) ).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from scipy.optimize import brentq

from . import numkit
from .errors import BracketWarning, DomainError


@dataclass(frozen=True)
class BoundaryProblem:
    """Mass-radius product m*l1 and boundary phase vartheta."""

    m_ell1: float = 2 * math.pi
    vartheta: float = math.pi

    def __post_init__(self):
        if self.m_ell1 <= 0:
            raise DomainError("m*l1 must be positive")


@dataclass(frozen=True)
class RootList:
    """Ascending eigenvalue candidates with their equation residuals."""

    roots: tuple[float, ...]
    residuals: tuple[float, ...]

    def count_below(self, E: float) -> int:
        return sum(1 for r in self.roots if r <= E)


def eigen_residual(problem: BoundaryProblem, E: float) -> float:
    """G(E) = Im(e^{i vartheta/2} K_{1/2 - iE}(m l1)); zeros are eigenvalues."""
    k = numkit.bessel_k_complex_order(0.5 - 1j * E, problem.m_ell1)
    if abs(k) < 1e-300:
        warnings.warn(f"|K| vanishes at E={E}; residual sign unreliable",
                      BracketWarning, stacklevel=2)
    return (cmath.exp(0.5j * problem.vartheta) * k).imag


def counting_estimate(problem: BoundaryProblem, E: float) -> float:
    """Asymptotic number of eigenvalues in [0, E] for E >> m*l1:
    (E/pi)(log(2E / m l1) - 1) - vartheta / (2 pi)."""
    if E <= 0:
        raise DomainError("counting window needs E > 0")
    return (E / math.pi) * (math.log(2 * E / problem.m_ell1) - 1) - problem.vartheta / (2 * math.pi)


def solve_spectrum(problem: BoundaryProblem, E_max: float, grid: float | None = None) -> RootList:
    """All roots of G on [0, E_max]: grid sign-change brackets refined by
    Brent bisection to 1e-10. The default grid is a quarter of the asymptotic
    mean spacing at E_max."""
    if E_max <= 0:
        raise DomainError("E_max must be positive")
    mean_spacing = math.pi / max(math.log(2 * E_max / problem.m_ell1), 1.0)
    if grid is None:
        grid = 0.25 * mean_spacing
    if grid > 0.5 * mean_spacing:
        warnings.warn(f"grid {grid} coarser than half the mean spacing {mean_spacing}",
                      BracketWarning, stacklevel=2)
    f = lambda E: eigen_residual(problem, E)
    roots: list[float] = []
    residuals: list[float] = []
    E = 0.0
    fE = f(E)
    if fE == 0.0:
        roots.append(0.0)
        residuals.append(0.0)
    while E < E_max:
        E2 = min(E + grid, E_max)
        fE2 = f(E2)
        if fE * fE2 < 0:
            r = float(brentq(f, E, E2, xtol=1e-10))
            roots.append(r)
            residuals.append(abs(f(r)))
        elif fE2 == 0.0 and E2 < E_max:
            roots.append(E2)
            residuals.append(0.0)
        E, fE = E2, fE2
    return RootList(roots=tuple(roots), residuals=tuple(residuals))


def average_zero_count(t: float) -> float:
    """Smoothed count of critical-line zeros below t: theta(t)/pi + 1."""
    if t <= 0:
        raise DomainError("count window needs t > 0")
    return numkit.smoothed_zero_count(t)
