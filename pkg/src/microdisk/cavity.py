"""Open-system spectrum: TE resonances of the dielectric disk.

Matching an interior J_m(n kR r) to an outgoing H_m^(1)(kR r) under the TE
conditions (continuity of the field, jump n^2 in the normal derivative)
gives the resonance condition F(kR) = 0 with

    F(kR) = n J_m'(n kR) H_m^(1)(kR) - n^2 J_m(n kR) H_m^(1)'(kR).

The product form is analytic in the cut plane Re(kR) > 0 and free of the
spurious poles a logarithmic-derivative ratio would have, so Newton
iteration and argument-principle root counting both behave.

Roots live strictly below the real axis (decaying quasi-normal modes).
Two families occur: narrow resonances that continue the closed-billiard
spectrum (one per radial index ell), and broad low-Q roots with
|Im(kR)| of order one that belong to no (m, ell) ladder.  Radial labels
are therefore assigned by rank of Re(kR) among the roots of the *narrow*
strip Im(kR) in (-FAMILY_WIDTH_CUT, 0], which cleanly separates the
families for the refractive indices this package targets (n >= 2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fieldgrid, specfun
from .billiard import ModeIndex, billiard_eigenvalue
from .errors import (
    BoundaryProximityError,
    BranchError,
    ConvergenceError,
    DomainError,
)
from .fieldgrid import FieldGrid, GridSpec

# Seed offset from the closed-billiard eigenvalue: the observed shift of a
# whispering-gallery resonance is ~0.09 real, ~0.05 imaginary.
SEED_SHIFT = -0.1 - 0.05j

# Newton termination/failure policy.
NEWTON_STEP_TOL = 1e-12
NEWTON_MAX_ITER = 100
RESIDUAL_TOL = 1e-10

# Depth of the narrow strip used for radial-rank labeling (see module doc).
FAMILY_WIDTH_CUT = 0.5

# Default strip for exhaustive root searches.
SEARCH_IM_MIN = -2.0

_MIN_BOUNDARY_ABS = 1e-13
_PHASE_STEP_LIMIT = 0.5
_MAX_CONTOUR_POINTS = 200_000


@dataclass(frozen=True)
class Resonance:
    """A converged quasi-normal mode: complex kR with Im < 0."""

    mode: ModeIndex
    n: float
    kR: complex
    residual: float


@dataclass(frozen=True)
class SearchRegion:
    """Rectangle in the complex kR plane, Re > 0.

    Physical root searches use im_max <= 0 (all quasi-normal modes decay),
    but rectangles reaching into the upper half-plane are accepted; they
    simply contain no roots there.
    """

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not self.re_min > 0:
            raise DomainError(f"re_min must be positive, got {self.re_min}")
        if not (self.re_max > self.re_min and self.im_max > self.im_min):
            raise DomainError("empty search region")


def resonance_determinant(m: int, n: float, kR):
    """TE matching determinant F(kR); zero exactly at a resonance.

    Defined for any n >= 1; at n = 1 it degenerates to the cross-Wronskian
    -W(J_m, H_m^(1)) = -2i/(pi kR), which never vanishes (uniform space has
    no resonances).
    """
    z = np.asarray(kR, dtype=np.complex128)
    if np.any(z == 0):
        raise DomainError("determinant undefined at kR = 0")
    f = n * specfun.bessel_j_deriv(m, n * z) * specfun.hankel1(m, z) - n**2 * specfun.bessel_j(
        m, n * z
    ) * specfun.hankel1_deriv(m, z)
    return complex(f) if np.ndim(kR) == 0 else f


def resonance_determinant_deriv(m: int, n: float, kR):
    """dF/dkR from the cylinder ODE: C'' = -C'/z + (m^2/z^2 - 1) C."""
    z = np.asarray(kR, dtype=np.complex128)
    J = specfun.bessel_j(m, n * z)
    Jp = specfun.bessel_j_deriv(m, n * z)
    H = specfun.hankel1(m, z)
    Hp = specfun.hankel1_deriv(m, z)
    Jpp = -Jp / (n * z) + (m**2 / (n * z) ** 2 - 1) * J
    Hpp = -Hp / z + (m**2 / z**2 - 1) * H
    f = n**2 * Jpp * H + n * Jp * Hp - n**3 * Jp * Hp - n**2 * J * Hpp
    return complex(f) if np.ndim(kR) == 0 else f


def _newton_refine(m: int, n: float, z0: complex) -> complex:
    """Newton iteration on F with a secant fallback for flat derivatives."""
    z = complex(z0)
    z_prev = None
    f_prev = None
    for _ in range(NEWTON_MAX_ITER):
        f = resonance_determinant(m, n, z)
        fp = resonance_determinant_deriv(m, n, z)
        if abs(fp) < 1e-14:
            if z_prev is None or f == f_prev:
                z_prev, f_prev = z, f
                z = z + 1e-6  # nudge off the flat spot
                continue
            step = f * (z - z_prev) / (f - f_prev)
        else:
            step = f / fp
        z_prev, f_prev = z, f
        z = z - step
        if abs(step) < NEWTON_STEP_TOL:
            return z
    raise ConvergenceError(
        f"Newton did not converge for m={m}, n={n} from seed {z0:.6g} "
        f"within {NEWTON_MAX_ITER} iterations"
    )


def find_resonance(
    mode: ModeIndex,
    n: float,
    guess: complex | None = None,
    *,
    check_rank: bool = True,
) -> Resonance:
    """Locate the (m, ell) quasi-normal mode at refractive index n.

    Without a guess, Newton starts from the closed-billiard eigenvalue
    shifted by ``SEED_SHIFT``.  The converged root is validated (fourth
    quadrant, determinant residual below ``RESIDUAL_TOL``) and, unless
    ``check_rank`` is disabled for continuation stepping, its radial label
    is certified by argument-principle counting: the number of narrow-strip
    roots with smaller Re(kR) must equal ell - 1.

    Raises :class:`ConvergenceError` on Newton failure and
    :class:`BranchError` when the root does not belong to the requested
    (m, ell) ladder.
    """
    if not n > 1.0:
        raise DomainError(f"open cavity requires n > 1, got {n}")
    if guess is None:
        guess = billiard_eigenvalue(mode, n).kR + SEED_SHIFT
    root = _newton_refine(mode.m, n, guess)
    residual = abs(resonance_determinant(mode.m, n, root))
    if not (root.real > 0 and root.imag < 0):
        raise BranchError(
            f"converged to kR={root:.6g}, outside the physical quadrant "
            f"(m={mode.m}, ell={mode.ell}, n={n})"
        )
    if residual > RESIDUAL_TOL:
        raise ConvergenceError(
            f"root residual {residual:.3g} exceeds {RESIDUAL_TOL:g} at kR={root:.6g}"
        )
    if check_rank:
        rank = _family_rank(mode.m, n, root)
        if rank != mode.ell:
            raise BranchError(
                f"root kR={root:.6g} has radial rank {rank}, expected ell={mode.ell} "
                f"(m={mode.m}, n={n})"
            )
    return Resonance(mode=mode, n=float(n), kR=root, residual=residual)


def _family_rank(m: int, n: float, kR: complex) -> int:
    """1-based rank of Re(kR) among the narrow-family roots of order m."""
    if kR.imag <= -FAMILY_WIDTH_CUT:
        return -1  # broad root: no radial label
    region = SearchRegion(
        re_min=min(0.05, 0.01 * kR.real),
        re_max=kR.real + 1e-9,
        im_min=-FAMILY_WIDTH_CUT,
        im_max=0.0,
    )
    return count_roots_in_region(m, n, region)


def count_roots_in_region(m: int, n: float, region: SearchRegion) -> int:
    """Number of determinant roots inside the rectangle, by winding number.

    The argument of F is tracked around the boundary with adaptive
    bisection until every phase increment is small; the total change
    divided by 2 pi is the root count (F is analytic for Re kR > 0).  If
    |F| dips below 1e-13 on the contour the rectangle is nudged outward a
    few times before :class:`BoundaryProximityError` is raised.
    """
    for pad in (0.0, 1e-7, 1e-6):
        try:
            return _winding_number(m, n, region, pad)
        except BoundaryProximityError:
            if pad == 1e-6:
                raise
    raise BoundaryProximityError("unreachable")  # pragma: no cover


def _winding_number(m: int, n: float, region: SearchRegion, pad: float) -> int:
    corners = np.array(
        [
            region.re_min - pad + 1j * (region.im_min - pad),
            region.re_max + pad + 1j * (region.im_min - pad),
            region.re_max + pad + 1j * (region.im_max + pad),
            region.re_min - pad + 1j * (region.im_max + pad),
        ]
    )
    if corners[0].real <= 0:
        corners = corners + (pad + region.re_min / 2)  # keep off the cut
    # Initial spacing resolves the fastest oscillation, rate ~ (n + 1) per
    # unit along the contour, well below the pi aliasing limit.
    segments = []
    for a, b in zip(corners, np.roll(corners, -1)):
        count = max(16, int(np.ceil(abs(b - a) * (n + 2.0) / 0.25)))
        segments.append(a + (b - a) * np.arange(count) / count)
    z = np.concatenate(segments + [corners[:1]])
    f = resonance_determinant(m, n, z)
    while True:
        if np.min(np.abs(f)) < _MIN_BOUNDARY_ABS:
            raise BoundaryProximityError(
                f"|F| < {_MIN_BOUNDARY_ABS:g} on the contour (m={m}, n={n})"
            )
        ph = np.angle(f)
        delta = np.diff(ph)
        delta -= 2 * np.pi * np.round(delta / (2 * np.pi))
        bad = np.flatnonzero(np.abs(delta) > _PHASE_STEP_LIMIT)
        if bad.size == 0:
            turns = delta.sum() / (2 * np.pi)
            count = int(np.rint(turns))
            if abs(turns - count) > 0.05:
                raise ConvergenceError(f"winding number did not settle: {turns:.4f}")
            return count
        if z.size + bad.size > _MAX_CONTOUR_POINTS:
            raise ConvergenceError("argument tracking exceeded the contour budget")
        mid = 0.5 * (z[bad] + z[bad + 1])
        f_mid = resonance_determinant(m, n, mid)
        z = np.insert(z, bad + 1, mid)
        f = np.insert(f, bad + 1, f_mid)


def find_family_roots(m: int, n: float, re_max: float | None = None) -> list[complex]:
    """All narrow-family roots with Re(kR) in (0, re_max], ascending.

    Default re_max is m + 10, wide enough for the first handful of radial
    labels at the indices this package sweeps.
    """
    if re_max is None:
        re_max = m + 10.0
    roots: list[complex] = []
    # Walk billiard eigenvalues as seeds; each narrow root shadows one.
    ell = 1
    while ell <= specfun.MAX_ZERO_INDEX:
        seed = specfun.bessel_j_zero(m, ell) / n + SEED_SHIFT
        if seed.real > re_max + 0.5:
            break
        try:
            root = _newton_refine(m, n, seed)
        except ConvergenceError:
            ell += 1
            continue
        if (
            0 < root.real <= re_max
            and -FAMILY_WIDTH_CUT < root.imag < 0
            and all(abs(root - r) > 1e-8 for r in roots)
        ):
            roots.append(root)
        ell += 1
    roots.sort(key=lambda r: r.real)
    return roots


def qnm_fields(res: Resonance, spec: GridSpec) -> tuple[FieldGrid, FieldGrid, FieldGrid]:
    """Interior part, exterior resonance tail, and their pointwise sum.

    The interior grid is identically zero outside the unit disk and the
    tail grid identically zero inside it; amplitudes share the continuity
    normalization of :mod:`microdisk.fieldgrid`, so the two profiles agree
    at the boundary circle.
    """
    interior = fieldgrid.sample_radial_mode("interior", res.mode, res.n, res.kR, spec)
    tail = fieldgrid.sample_radial_mode("tail", res.mode, res.n, res.kR, spec)
    full = FieldGrid(
        spec=spec,
        values=interior.values + tail.values,
        meta={**interior.meta, "kind": "full"},
    )
    return interior, tail, full
