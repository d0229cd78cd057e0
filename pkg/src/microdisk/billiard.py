"""Closed-system spectrum: the dielectric-filled circular billiard.

With a Dirichlet wall at r = R = 1 and uniform interior index n, the
radial solution J_m(n k r) must vanish at the boundary, so the eigenvalues
are kR = j_{m,ell} / n with j_{m,ell} the ell-th positive zero of J_m.
They are real: the closed problem is Hermitian and nothing leaks out.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fieldgrid, specfun
from .errors import DomainError
from .fieldgrid import FieldGrid, GridSpec


@dataclass(frozen=True)
class ModeIndex:
    """Angular quantum number m and 1-based radial quantum number ell."""

    m: int
    ell: int

    def __post_init__(self):
        if not isinstance(self.m, (int, np.integer)) or not 0 <= self.m <= specfun.MAX_ORDER:
            raise DomainError(f"angular order m={self.m} outside [0, {specfun.MAX_ORDER}]")
        if (
            not isinstance(self.ell, (int, np.integer))
            or not 1 <= self.ell <= specfun.MAX_ZERO_INDEX
        ):
            raise DomainError(f"radial index ell={self.ell} outside [1, {specfun.MAX_ZERO_INDEX}]")


@dataclass(frozen=True)
class BilliardEigenvalue:
    mode: ModeIndex
    n: float
    kR: float


def billiard_eigenvalue(mode: ModeIndex, n: float) -> BilliardEigenvalue:
    """Real eigenvalue kR = j_{m,ell} / n of the closed disk billiard.

    n = 1 is the bare (empty) billiard; n < 1 is rejected as unphysical
    for a dielectric interior.
    """
    if not n >= 1.0:
        raise DomainError(f"refractive index must be >= 1, got {n}")
    kR = specfun.bessel_j_zero(mode.m, mode.ell) / n
    return BilliardEigenvalue(mode=mode, n=float(n), kR=kR)


def boundary_residual(eig: BilliardEigenvalue) -> float:
    """|J_m(n kR)| at the wall; zero up to roundoff for a true eigenvalue."""
    return abs(specfun.bessel_j(eig.mode.m, eig.n * eig.kR))


def normal_mode_field(mode: ModeIndex, n: float, spec: GridSpec) -> FieldGrid:
    """Intensity |J_m(n kR r)|^2 inside the disk, exactly zero for r >= 1.

    Peak intensity is normalized to 1.  The angular factor e^{i m phi} is a
    traveling wave of unit modulus, so the map is radially symmetric.
    """
    eig = billiard_eigenvalue(mode, n)
    grid = fieldgrid.sample_radial_mode("interior", mode, eig.n, eig.kR, spec)
    grid.meta["kind"] = "closed"
    return grid
