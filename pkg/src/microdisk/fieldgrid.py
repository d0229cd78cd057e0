"""2-D intensity sampling of disk modes and bit-exact serialization.

A mode of the circular cavity factorizes into a radial profile times a
traveling angular factor e^{i m phi} of unit modulus, so the intensity
|psi|^2 depends on radius only.  ``sample_radial_mode`` evaluates the
requested piecewise profile on a square Cartesian window and returns a
:class:`FieldGrid`; writers serialize grids as binary PGM (P5) images or
CSV matrices with deterministic bytes.

Profile kinds:

* ``"interior"`` - A J_m(n kR r) inside the disk (r < 1), zero outside.
  With a real billiard eigenvalue this is the closed normal mode; with a
  complex resonance it is the interior part of the quasi-normal mode.
* ``"tail"``     - B H_m^(1)(kR r) outside (r >= 1), zero inside.
* ``"full"``     - pointwise sum of the two.

The amplitude A normalizes the peak interior intensity to 1 (peak taken
over a dense radial scan of [0, 1], so grids of any resolution share one
scale); B = A J_m(n kR) / H_m^(1)(kR) enforces continuity at r = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .errors import GridError

FIELD_KINDS = ("interior", "tail", "full")

_RADIAL_SCAN_POINTS = 8192


@dataclass(frozen=True)
class GridSpec:
    """Square sampling window [-half_width, half_width]^2."""

    half_width: float = 1.5
    samples_per_axis: int = 512

    def __post_init__(self):
        if not self.half_width > 1.0:
            raise GridError(f"half_width must exceed 1 (the disk radius), got {self.half_width}")
        if self.samples_per_axis < 2:
            raise GridError(f"degenerate grid: {self.samples_per_axis} samples per axis")

    def axis(self) -> np.ndarray:
        ax = np.linspace(-self.half_width, self.half_width, self.samples_per_axis)
        return 0.5 * (ax - ax[::-1])  # bitwise point-symmetric about 0


@dataclass
class FieldGrid:
    """Row-major intensity matrix over a :class:`GridSpec` window.

    ``values[i, j]`` is the intensity at (x = axis[j], y = axis[i]);
    values are non-negative with max <= 1 after normalization.
    """

    spec: GridSpec
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def radii(self) -> np.ndarray:
        ax = self.spec.axis()
        return np.hypot(ax[None, :], ax[:, None])


def interior_amplitude(m: int, n: float, kR: complex) -> float:
    """1 / max_{r in [0,1]} |J_m(n kR r)|, the shared normalization A."""
    r = np.linspace(0.0, 1.0, _RADIAL_SCAN_POINTS)
    peak = float(np.max(np.abs(specfun.bessel_j(m, n * kR * r))))
    if peak == 0.0:
        raise GridError("interior profile vanishes identically")
    return 1.0 / peak


def radial_intensity(kind: str, m: int, n: float, kR: complex, r) -> np.ndarray:
    """Piecewise intensity profile |psi(r)|^2 for the given kind."""
    if kind not in FIELD_KINDS:
        raise GridError(f"unknown field kind {kind!r}; expected one of {FIELD_KINDS}")
    r = np.asarray(r, dtype=float)
    out = np.zeros(r.shape, dtype=float)
    amp = interior_amplitude(m, n, kR)
    inside = r < 1.0
    if kind in ("interior", "full") and np.any(inside):
        out[inside] = np.abs(amp * specfun.bessel_j(m, n * kR * r[inside])) ** 2
    if kind in ("tail", "full"):
        outside = ~inside
        if np.any(outside):
            tail_amp = amp * specfun.bessel_j(m, n * kR) / specfun.hankel1(m, kR)
            out[outside] = np.abs(tail_amp * specfun.hankel1(m, kR * r[outside])) ** 2
    return out


def sample_radial_mode(kind: str, mode, n: float, kR: complex, spec: GridSpec) -> FieldGrid:
    """Sample the piecewise radial profile of a mode over the window.

    ``mode`` carries the angular order (``mode.m``); the angular factor has
    unit modulus, so only radii enter.
    """
    ax = spec.axis()
    r = np.hypot(ax[None, :], ax[:, None])
    values = radial_intensity(kind, mode.m, n, kR, r)
    meta = {
        "kind": kind,
        "m": mode.m,
        "ell": mode.ell,
        "n": n,
        "kR_re": float(np.real(kR)),
        "kR_im": float(np.imag(kR)),
    }
    return FieldGrid(spec=spec, values=values, meta=meta)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def write_pgm(grid: FieldGrid, depth: int = 8) -> bytes:
    """Serialize a normalized grid as a binary PGM (P5) byte stream.

    8-bit uses one byte per sample, 16-bit two bytes big-endian, per the
    netpbm format.  Intensities are clipped to [0, 1] and rounded, so the
    quantization error is at most 1/(2 maxval) per pixel.  Output bytes are
    a pure function of the input grid.
    """
    if depth == 8:
        maxval, dtype = 255, ">u1"
    elif depth == 16:
        maxval, dtype = 65535, ">u2"
    else:
        raise GridError(f"depth must be 8 or 16, got {depth}")
    v = np.clip(grid.values, 0.0, 1.0)
    quantized = np.rint(v * maxval).astype(dtype)
    h, w = quantized.shape
    header = f"P5\n{w} {h}\n{maxval}\n".encode("ascii")
    return header + quantized.tobytes()


def read_pgm(data: bytes) -> tuple[np.ndarray, int]:
    """Parse bytes produced by :func:`write_pgm`; returns (samples, maxval)."""
    if not data.startswith(b"P5"):
        raise GridError("not a binary PGM (P5) stream")
    parts = data.split(b"\n", 3)
    if len(parts) < 4:
        raise GridError("truncated PGM header")
    w, h = (int(t) for t in parts[1].split())
    maxval = int(parts[2])
    dtype = ">u1" if maxval < 256 else ">u2"
    samples = np.frombuffer(parts[3], dtype=dtype, count=w * h).reshape(h, w)
    return samples.astype(np.int64), maxval


def write_csv_matrix(values: np.ndarray) -> bytes:
    """Comma-separated matrix, one row per line, %.9e formatting, LF endings."""
    lines = [",".join(f"{x:.9e}" for x in row) for row in np.atleast_2d(values)]
    return ("\n".join(lines) + "\n").encode("ascii")
