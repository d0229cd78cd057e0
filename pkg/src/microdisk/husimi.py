"""Boundary phase-space (Husimi) maps of disk modes.

The boundary trace psi(s) of a mode is projected onto coherent states
living on the boundary phase space (arc length s in [0, 2 pi), tangential
momentum p = sin chi in [-1, 1]):

    H(s0, p0) = | integral psi(s) conj(xi_{s0,p0}(s)) ds |^2,

where xi is a Gaussian wavepacket of width sigma = (n kR)^(-1/2) carrying
phase at wavenumber n kR p0, periodized over one extra period on each
side.  A traveling wave e^{i m s} then produces a ridge at p = m/(n kR),
uniform in s; total internal reflection confines a mode whose ridge lies
above the critical line p_crit = 1/n.

Maps are max-normalized.  For equal boundary and arc-length resolutions
the transform is evaluated through circular FFT correlation (exactly
equivalent to the direct quadrature up to Gaussian tails below 1e-30 in
the regime n kR >~ 1); otherwise the direct quadrature is used.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import specfun
from .cavity import Resonance
from .errors import DomainError, UndersampledBoundaryError

_WINDOW_OFFSETS = 2.0 * np.pi * np.array([-1.0, 0.0, 1.0])


@dataclass
class HusimiMap:
    """Max-normalized intensity over (s, p) with the critical momentum."""

    s_grid: np.ndarray
    p_grid: np.ndarray
    values: np.ndarray  # shape (len(p_grid), len(s_grid))
    p_crit: float

    def p_marginal(self) -> np.ndarray:
        return self.values.sum(axis=1)

    def ridge_momentum(self) -> float:
        """p at the peak of the s-integrated distribution."""
        return float(self.p_grid[int(np.argmax(self.p_marginal()))])


def critical_momentum(n: float) -> float:
    """Total-internal-reflection threshold p_crit = 1/n."""
    if not n > 1.0:
        raise DomainError(f"critical momentum defined for n > 1, got {n}")
    return 1.0 / n


def coherent_width(n: float, kR_re: float) -> float:
    """Gaussian width sigma = (n kR)^(-1/2) of the boundary wavepacket."""
    return 1.0 / np.sqrt(n * kR_re)


def boundary_trace(m: int, n: float, kR: complex, samples: int) -> np.ndarray:
    """Interior boundary trace J_m(n kR) e^{i m s} on a uniform s grid."""
    if samples < 8 * max(m, 1):
        raise UndersampledBoundaryError(
            f"{samples} boundary samples < 8*m = {8 * m} required for m={m}"
        )
    s = 2.0 * np.pi * np.arange(samples) / samples
    return specfun.bessel_j(m, n * kR) * np.exp(1j * m * s)


def boundary_husimi(
    psi: np.ndarray,
    n: float,
    kR_re: float,
    resolution: tuple[int, int] = (256, 256),
) -> HusimiMap:
    """Husimi map of a boundary wave function sampled uniformly on [0, 2 pi).

    ``psi`` holds the boundary samples, ``kR_re`` the real part of the mode
    wavenumber (sets the wavepacket scale), ``resolution`` the (Ns, Np)
    output grid.  Raises :class:`UndersampledBoundaryError` below 16
    samples; callers that know the angular order should build traces with
    :func:`boundary_trace`, which enforces the 8 samples-per-lobe rule.
    """
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.ndim != 1 or psi.size < 16:
        raise UndersampledBoundaryError(f"need >= 16 boundary samples, got {psi.size}")
    if not kR_re > 0:
        raise DomainError(f"kR_re must be positive, got {kR_re}")
    ns, np_res = resolution
    if ns < 2 or np_res < 2:
        raise DomainError(f"resolution must be >= 2 per axis, got {resolution}")
    kappa = n * kR_re
    sigma = coherent_width(n, kR_re)
    p_grid = np.linspace(-1.0, 1.0, np_res)
    s_grid = 2.0 * np.pi * np.arange(ns) / ns
    if ns == psi.size:
        values = _overlaps_fft(psi, kappa, sigma, p_grid)
    else:
        values = _overlaps_direct(psi, kappa, sigma, s_grid, p_grid)
    values /= values.max()
    return HusimiMap(s_grid=s_grid, p_grid=p_grid, values=values, p_crit=critical_momentum(n))


def _kernel(u: np.ndarray, kappa: float, sigma: float, p: float) -> np.ndarray:
    """conj(coherent state) as a function of u = s - s0, periodized."""
    uu = u[..., None] + _WINDOW_OFFSETS
    return (np.exp(-(uu**2) / (2.0 * sigma**2)) * np.exp(-1j * kappa * p * uu)).sum(axis=-1)


def _overlaps_direct(psi, kappa, sigma, s_grid, p_grid) -> np.ndarray:
    """Reference quadrature, O(Np * Ns * Nb); used for mismatched grids."""
    nb = psi.size
    s = 2.0 * np.pi * np.arange(nb) / nb
    ds = 2.0 * np.pi / nb
    u = s[None, :] - s_grid[:, None]  # (Ns, Nb)
    out = np.empty((p_grid.size, s_grid.size))
    for ip, p in enumerate(p_grid):
        out[ip] = np.abs(_kernel(u, kappa, sigma, p) @ psi * ds) ** 2
    return out


def _overlaps_fft(psi, kappa, sigma, p_grid) -> np.ndarray:
    """Circular-correlation evaluation on the boundary grid itself."""
    nb = psi.size
    s = 2.0 * np.pi * np.arange(nb) / nb
    ds = 2.0 * np.pi / nb
    psi_hat = np.fft.fft(psi)
    out = np.empty((p_grid.size, nb))
    for ip, p in enumerate(p_grid):
        h = _kernel(s, kappa, sigma, p)
        corr = np.fft.ifft(psi_hat * np.conj(np.fft.fft(np.conj(h))))
        out[ip] = np.abs(corr * ds) ** 2
    return out


def mode_husimi(
    res: Resonance,
    resolution: tuple[int, int] = (256, 256),
    boundary_samples: int | None = None,
) -> HusimiMap:
    """Husimi map of a cavity resonance from its interior boundary trace.

    By default the boundary is sampled at the arc-length resolution (or
    denser when 8 samples per angular lobe demand it), which keeps the
    transform on the fast FFT path.
    """
    if boundary_samples is None:
        boundary_samples = max(resolution[0], 8 * res.mode.m)
    psi = boundary_trace(res.mode.m, res.n, res.kR, boundary_samples)
    return boundary_husimi(psi, res.n, res.kR.real, resolution)
