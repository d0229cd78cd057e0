"""Derived spectral quantities: Lamb shift, decay width, Q, barrier data.

Opening the billiard shifts each real eigenvalue down and into the lower
half-plane.  The real-part difference

    L = kR_closed - Re(kR_open)

is the cavity analogue of the Lamb shift; the imaginary part sets the
decay width Gamma = -2 Im(kR) and quality factor Q = Re(kR) / (2 Gamma).

Rewriting the Helmholtz problem in Schrodinger form gives the effective
radial potential

    V_eff(r) = k^2 [1 - n(r)^2] + m^2 / r^2,

an attractive well of depth set by n plus a centrifugal barrier.  The
classical turning points at the boundary bound a trapped band
k_B = m/n < Re(kR) < k_T = m (with R = 1); resonances inside it are
below-barrier (trapped, whispering-gallery-like), those above k_T are
above-barrier.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .billiard import ModeIndex, billiard_eigenvalue
from .cavity import Resonance, find_resonance
from .errors import DomainError, NoBarrierError, ZeroWidthError

BELOW_BARRIER = "below_barrier"
ABOVE_BARRIER = "above_barrier"


@dataclass(frozen=True)
class LambShiftRecord:
    mode: ModeIndex
    n: float
    closed_kR: float
    open_kR_re: float
    L: float


@dataclass(frozen=True)
class BarrierData:
    """Turning points and classification of one resonance.

    ``barrier_class`` and ``v_bottom`` are filled by
    :func:`classify_resonance`; :func:`barrier_bounds` provides the turning
    points alone.  ``sub_bottom`` flags the diagnostic case Re(kR) <= k_B
    (below the well bottom), which no physical disk resonance reaches.
    """

    k_T: float
    k_B: float
    v_bottom: float | None = None
    barrier_class: str | None = None
    sub_bottom: bool = False


def lamb_shift(mode: ModeIndex, n: float, *, resonance: Resonance | None = None) -> LambShiftRecord:
    """Spectral shift between the closed billiard and the open cavity.

    Pass a precomputed ``resonance`` to avoid re-solving (it must match
    ``mode`` and ``n``).
    """
    closed = billiard_eigenvalue(mode, n)
    if resonance is None:
        resonance = find_resonance(mode, n)
    elif resonance.mode != mode or resonance.n != n:
        raise DomainError("resonance does not match the requested mode and index")
    return LambShiftRecord(
        mode=mode,
        n=float(n),
        closed_kR=closed.kR,
        open_kR_re=resonance.kR.real,
        L=closed.kR - resonance.kR.real,
    )


def decay_width_and_q(res: Resonance) -> tuple[float, float]:
    """(Gamma, Q) = (-2 Im kR, Re kR / (2 Gamma)) for a decaying mode."""
    if res.kR.imag == 0.0:
        raise ZeroWidthError("resonance has zero width; no decay rate defined")
    gamma = -2.0 * res.kR.imag
    return gamma, res.kR.real / (2.0 * gamma)


def effective_potential(r, m: int, n: float, k2: float):
    """V_eff(r) = k^2 [1 - n(r)^2] + m^2/r^2 with n(r) = n inside r < 1.

    For r >= 1 the dielectric term vanishes and the value is exactly
    m^2/r^2.  Accepts scalar or array r; r = 0 is singular for m >= 1.
    """
    ra = np.asarray(r, dtype=float)
    if np.any(ra < 0):
        raise DomainError("radius must be non-negative")
    if m >= 1 and np.any(ra == 0):
        raise DomainError("centrifugal term diverges at r = 0 for m >= 1")
    index_sq = np.where(ra < 1.0, n * n, 1.0)
    with np.errstate(divide="ignore"):
        centrifugal = np.where(ra > 0, m * m / np.where(ra > 0, ra, 1.0) ** 2, 0.0)
    v = k2 * (1.0 - index_sq) + centrifugal
    return float(v) if np.ndim(r) == 0 else v


def well_bottom(m: int, n: float, k2: float) -> float:
    """V_eff just inside the boundary: k^2 (1 - n^2) + m^2."""
    return k2 * (1.0 - n * n) + m * m


def barrier_bounds(m: int, n: float) -> BarrierData:
    """Turning points of the trapped band: k_T = m, k_B = m/n (R = 1)."""
    if m < 1:
        raise NoBarrierError("m = 0 carries no centrifugal barrier")
    if not n > 1.0:
        raise DomainError(f"barrier bounds require n > 1, got {n}")
    return BarrierData(k_T=float(m), k_B=m / n)


def classify_resonance(res: Resonance) -> BarrierData:
    """Classify a resonance against its centrifugal barrier.

    below_barrier iff m/n < Re(kR) < m; above_barrier iff Re(kR) >= m
    (the boundary case Re(kR) = m counts as above by convention).  m = 0
    has no barrier and is reported as above_barrier with k_T = k_B = 0.
    """
    m = res.mode.m
    re = res.kR.real
    k_t = float(m)
    k_b = m / res.n
    if re >= k_t:
        cls = ABOVE_BARRIER
    else:
        cls = BELOW_BARRIER
    return BarrierData(
        k_T=k_t,
        k_B=k_b,
        v_bottom=well_bottom(m, res.n, re * re),
        barrier_class=cls,
        sub_bottom=bool(re <= k_b and m >= 1),
    )
