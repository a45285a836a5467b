"""Single-mirror boundary eigenvalue problem."""

import math

import pytest

from mirrorspec import boundary_spectrum as bs
from mirrorspec.errors import DomainError


def test_residual_symmetry_theta_pi():
    p = bs.BoundaryProblem(vartheta=math.pi)
    for E in (0.5, 3.2, 9.7):
        assert abs(bs.eigen_residual(p, E) - bs.eigen_residual(p, -E)) < 1e-9


def test_residual_antisymmetry_theta_zero():
    p = bs.BoundaryProblem(vartheta=0.0)
    for E in (0.5, 3.2, 9.7):
        assert abs(bs.eigen_residual(p, E) + bs.eigen_residual(p, -E)) < 1e-9


def test_zero_energy_root_iff_theta_zero():
    assert abs(bs.eigen_residual(bs.BoundaryProblem(vartheta=0.0), 0.0)) < 1e-12
    assert abs(bs.eigen_residual(bs.BoundaryProblem(vartheta=math.pi), 0.0)) > 1e-6


def test_solve_spectrum_window():
    p = bs.BoundaryProblem()
    roots = bs.solve_spectrum(p, 15.0)
    assert len(roots.roots) == 3
    assert all(r <= 15.0 for r in roots.roots)
    assert all(abs(res) < 1e-12 for res in roots.residuals)
    # residual really changes sign around each root
    for r in roots.roots:
        assert bs.eigen_residual(p, r - 1e-4) * bs.eigen_residual(p, r + 1e-4) < 0
    assert roots.count_below(10.0) == 1


def test_count_matches_estimate():
    p = bs.BoundaryProblem()
    roots = bs.solve_spectrum(p, 15.0)
    est = bs.counting_estimate(p, 15.0)
    assert abs(len(roots.roots) - est) <= 1.0 + 1e-9


def test_counting_estimate_rejects_nonpositive():
    with pytest.raises(DomainError):
        bs.counting_estimate(bs.BoundaryProblem(), 0.0)


def test_average_zero_count_scaling():
    # under E = t/2 the boundary count tracks the zeta average to O(1)
    t = 60.0
    assert abs(bs.counting_estimate(bs.BoundaryProblem(vartheta=math.pi), t / 2)
               - bs.average_zero_count(t)) < 2.0
