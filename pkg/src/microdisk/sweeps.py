"""Parameter sweeps over mode index and refractive index, with tabular output.

A sweep row aggregates everything derived from one (m, ell, n) point:
closed and open eigenvalues, Lamb shift, decay width, quality factor and
barrier data.  Sweeps over m reseed each mode from its billiard value;
sweeps over n continue each (m, ell) branch from the previous root, with
the radial rank re-certified every tenth step.  Per-point solver failures
are recorded in the row's ``error`` column and the sweep continues.

``emit_csv``/``emit_json`` produce deterministic bytes (%.12e floats, LF
endings); rows are re-validated against the resonance and classification
invariants on emission.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields

import numpy as np

from . import analysis, cavity
from .billiard import ModeIndex, billiard_eigenvalue
from .cavity import Resonance
from .errors import MicrodiskError, NoThresholdError

SWEEP_COLUMNS = (
    "m",
    "ell",
    "n",
    "closed_kR",
    "open_kR_re",
    "open_kR_im",
    "L",
    "gamma",
    "q",
    "k_T",
    "k_B",
    "class",
    "error",
)

MAX_SWEEP_STEP = 0.05
DEFAULT_SWEEP_STEP = 0.02
RANK_RECHECK_EVERY = 10
THRESHOLD_TOL = 0.01


@dataclass
class SweepRow:
    m: int
    ell: int
    n: float
    closed_kR: float
    open_kR_re: float
    open_kR_im: float
    L: float
    gamma: float
    q: float
    k_T: float
    k_B: float
    barrier_class: str
    error: str = ""

    def as_record(self) -> dict:
        rec = {}
        for f, col in zip(fields(self), SWEEP_COLUMNS):
            rec[col] = getattr(self, f.name)
        return rec


@dataclass(frozen=True)
class ThresholdResult:
    """Interior maximum of L(n) and the barrier-top crossing for a branch."""

    m: int
    ell: int
    threshold_n: float
    kT_crossing_n: float | None


def _row_from_resonance(mode: ModeIndex, n: float, res: Resonance) -> SweepRow:
    closed = billiard_eigenvalue(mode, n)
    gamma, q = analysis.decay_width_and_q(res)
    barrier = analysis.classify_resonance(res)
    return SweepRow(
        m=mode.m,
        ell=mode.ell,
        n=float(n),
        closed_kR=closed.kR,
        open_kR_re=res.kR.real,
        open_kR_im=res.kR.imag,
        L=closed.kR - res.kR.real,
        gamma=gamma,
        q=q,
        k_T=barrier.k_T,
        k_B=barrier.k_B,
        barrier_class=barrier.barrier_class,
    )


def _error_row(mode: ModeIndex, n: float, message: str) -> SweepRow:
    closed = billiard_eigenvalue(mode, n)
    nan = math.nan
    return SweepRow(
        m=mode.m,
        ell=mode.ell,
        n=float(n),
        closed_kR=closed.kR,
        open_kR_re=nan,
        open_kR_im=nan,
        L=nan,
        gamma=nan,
        q=nan,
        k_T=nan,
        k_B=nan,
        barrier_class="",
        error=message,
    )


def run_sweep_m(m_lo: int, m_hi: int, *, ell: int = 1, n: float = 3.3) -> list[SweepRow]:
    """One row per m in [m_lo, m_hi], fresh-seeded, sorted by m."""
    if m_lo > m_hi:
        raise ValueError(f"empty m range [{m_lo}, {m_hi}]")
    rows = []
    for m in range(m_lo, m_hi + 1):
        mode = ModeIndex(m=m, ell=ell)
        try:
            res = cavity.find_resonance(mode, n)
            rows.append(_row_from_resonance(mode, n, res))
        except MicrodiskError as exc:
            rows.append(_error_row(mode, n, str(exc)))
    return rows


def refractive_grid(n_lo: float, n_hi: float, step: float) -> np.ndarray:
    """Uniform n grid from n_lo to n_hi inclusive (endpoint appended if needed)."""
    if not (n_lo > 1.0 and n_hi > n_lo and step > 0):
        raise ValueError(f"invalid sweep range [{n_lo}, {n_hi}] step {step}")
    if step > MAX_SWEEP_STEP:
        raise ValueError(f"step {step} exceeds {MAX_SWEEP_STEP} (threshold resolution)")
    count = int(math.floor((n_hi - n_lo) / step + 1e-9)) + 1
    grid = n_lo + step * np.arange(count)
    if grid[-1] < n_hi - 1e-9:
        grid = np.append(grid, n_hi)
    return grid


def _sweep_branch(mode: ModeIndex, grid: np.ndarray) -> list[SweepRow]:
    """Continuation along n for one (m, ell) branch."""
    rows = []
    root: complex | None = None
    for i, n in enumerate(grid):
        n = float(n)
        check = i % RANK_RECHECK_EVERY == 0
        try:
            res = cavity.find_resonance(mode, n, guess=root, check_rank=check)
        except MicrodiskError:
            try:
                # Continuation lost the branch; retry from a fresh seed.
                res = cavity.find_resonance(mode, n, guess=None, check_rank=True)
            except MicrodiskError as exc:
                rows.append(_error_row(mode, n, f"branch lost: {exc}"))
                root = None
                continue
        rows.append(_row_from_resonance(mode, n, res))
        root = res.kR
    return rows


def run_sweep_n(
    m: int,
    ells: tuple[int, ...] | list[int],
    *,
    n_lo: float = 3.3,
    n_hi: float = 6.0,
    step: float = DEFAULT_SWEEP_STEP,
) -> list[SweepRow]:
    """Continuation-seeded n sweep; rows grouped by ell, sorted by n."""
    grid = refractive_grid(n_lo, n_hi, step)
    rows: list[SweepRow] = []
    for ell in sorted(set(int(e) for e in ells)):
        rows.extend(_sweep_branch(ModeIndex(m=m, ell=ell), grid))
    return rows


def find_threshold(
    m: int,
    ell: int,
    *,
    n_lo: float = 3.3,
    n_hi: float = 6.0,
    step: float = DEFAULT_SWEEP_STEP,
) -> ThresholdResult:
    """Locate the interior maximum of L(n) for one branch, to +-0.01 in n.

    The sweep supplies a bracket around the sign change of dL/dn, which is
    then bisected (centered differences with the sweep step).  Also reports
    where Re(kR) crosses the barrier top k_T = m, when it does.  Raises
    :class:`NoThresholdError` when dL/dn keeps one sign on the interval.
    """
    mode = ModeIndex(m=m, ell=ell)
    grid = refractive_grid(n_lo, n_hi, step)
    rows = _sweep_branch(mode, grid)
    bad = [r for r in rows if r.error]
    if bad:
        raise NoThresholdError(f"sweep failed at n={bad[0].n}: {bad[0].error}")
    l_vals = np.array([r.L for r in rows])
    re_vals = np.array([r.open_kR_re for r in rows])
    roots = [complex(r.open_kR_re, r.open_kR_im) for r in rows]

    def solve_at(x: float) -> complex:
        seed = roots[int(np.argmin(np.abs(grid - x)))]
        return cavity.find_resonance(mode, x, guess=seed, check_rank=False).kR

    def shift_slope(x: float) -> float:
        h = step
        lo = billiard_eigenvalue(mode, x - h).kR - solve_at(x - h).real
        hi = billiard_eigenvalue(mode, x + h).kR - solve_at(x + h).real
        return (hi - lo) / (2.0 * h)

    imax = int(np.argmax(l_vals))
    diffs = np.diff(l_vals)
    if imax in (0, len(l_vals) - 1) or not (diffs.max() > 0 > diffs.min()):
        raise NoThresholdError(
            f"L(n) is monotone for m={m}, ell={ell} on [{n_lo}, {n_hi}]; no threshold"
        )
    a, b = float(grid[imax - 1]), float(grid[imax + 1])
    while b - a > THRESHOLD_TOL:
        mid = 0.5 * (a + b)
        if shift_slope(mid) > 0:
            a = mid
        else:
            b = mid
    threshold = 0.5 * (a + b)

    crossing: float | None = None
    sign = re_vals - m
    hits = np.flatnonzero(sign[:-1] * sign[1:] <= 0)
    if hits.size:
        i = int(hits[0])
        lo, hi = float(grid[i]), float(grid[i + 1])
        while hi - lo > 1e-3:
            mid = 0.5 * (lo + hi)
            if (solve_at(mid).real - m) * (solve_at(lo).real - m) <= 0:
                hi = mid
            else:
                lo = mid
        crossing = 0.5 * (lo + hi)
    return ThresholdResult(m=m, ell=ell, threshold_n=threshold, kT_crossing_n=crossing)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _validate_row(row: SweepRow) -> None:
    if row.error:
        return
    if not row.open_kR_im < 0:
        raise MicrodiskError(f"row (m={row.m}, ell={row.ell}, n={row.n}): Im(kR) not negative")
    expected = analysis.ABOVE_BARRIER if row.open_kR_re >= row.m else analysis.BELOW_BARRIER
    if row.barrier_class != expected:
        raise MicrodiskError(
            f"row (m={row.m}, ell={row.ell}, n={row.n}): class {row.barrier_class!r} "
            f"inconsistent with Re(kR)={row.open_kR_re}"
        )
    checks = (
        abs(row.gamma + 2.0 * row.open_kR_im) < 1e-9,
        abs(row.L - (row.closed_kR - row.open_kR_re)) < 1e-9,
        row.m == 0 or abs(row.k_B - row.m / row.n) < 1e-9,
        row.k_T == float(row.m),
    )
    if not all(checks):
        raise MicrodiskError(f"row (m={row.m}, ell={row.ell}, n={row.n}): derived columns drift")


def _format_cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12e}"


def emit_csv(rows: list[SweepRow]) -> bytes:
    """Header plus one line per row; %.12e floats, LF endings, deterministic."""
    lines = [",".join(SWEEP_COLUMNS)]
    for row in rows:
        _validate_row(row)
        rec = row.as_record()
        lines.append(",".join(_format_cell(rec[c]) for c in SWEEP_COLUMNS))
    return ("\n".join(lines) + "\n").encode("ascii")


def emit_json(rows: list[SweepRow]) -> bytes:
    """Array of flat objects mirroring the CSV columns (NaN becomes null)."""
    out = []
    for row in rows:
        _validate_row(row)
        rec = row.as_record()
        for key, value in rec.items():
            if isinstance(value, float) and math.isnan(value):
                rec[key] = None
        out.append(rec)
    return (json.dumps(out, indent=2) + "\n").encode("ascii")


def parse_csv(data: bytes) -> list[dict]:
    """Parse bytes produced by :func:`emit_csv` back into records."""
    lines = data.decode("ascii").strip("\n").split("\n")
    header = lines[0].split(",")
    records = []
    for line in lines[1:]:
        cells = line.split(",")
        rec: dict = {}
        for key, cell in zip(header, cells):
            if key in ("m", "ell"):
                rec[key] = int(cell)
            elif key in ("class", "error"):
                rec[key] = cell
            else:
                rec[key] = float(cell)
        records.append(rec)
    return records
