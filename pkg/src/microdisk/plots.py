"""Matplotlib rendering of sweep tables, field grids and Husimi maps.

The report path of the CLI saves these figures next to the delimited data
files.  PNG output is deterministic: the Agg backend is forced and the
Date metadata key is suppressed.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import analysis
from .fieldgrid import FieldGrid
from .husimi import HusimiMap
from .sweeps import SweepRow, ThresholdResult

plt.rcParams.update(
    {
        "figure.figsize": (6.0, 4.0),
        "figure.dpi": 130,
        "savefig.dpi": 130,
        "font.size": 9,
        "axes.grid": True,
        "grid.alpha": 0.3,
    }
)

_BRANCH_COLORS = ("black", "tab:red", "tab:blue", "tab:green", "tab:orange")


def save_figure(fig, path) -> None:
    fig.savefig(path, metadata={"Date": None})
    plt.close(fig)


def _branches(rows: list[SweepRow]) -> list[tuple[tuple[int, int], list[SweepRow]]]:
    keys: list[tuple[int, int]] = []
    grouped: dict[tuple[int, int], list[SweepRow]] = {}
    for row in rows:
        key = (row.m, row.ell)
        if key not in grouped:
            grouped[key] = []
            keys.append(key)
        grouped[key].append(row)
    return [(k, grouped[k]) for k in keys]


def plot_spectrum_vs_m(rows: list[SweepRow], path) -> None:
    """Closed and open Re(kR) against angular order."""
    ms = [r.m for r in rows]
    fig, ax = plt.subplots()
    ax.plot(ms, [r.closed_kR for r in rows], "o-", color="tab:red", label="closed billiard")
    ax.plot(ms, [r.open_kR_re for r in rows], "s-", color="black", label="open cavity")
    ax.set_xlabel("angular order m")
    ax.set_ylabel("Re(kR)")
    ax.legend()
    save_figure(fig, path)


def plot_width_and_shift_vs_m(rows: list[SweepRow], path) -> None:
    """|Im(kR)| (log scale) and Lamb shift L against angular order."""
    ms = [r.m for r in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8.0, 3.6))
    ax1.semilogy(ms, [abs(r.open_kR_im) for r in rows], "s-", color="black")
    ax1.set_xlabel("angular order m")
    ax1.set_ylabel("|Im(kR)|")
    ax2.plot(ms, [r.L for r in rows], "o-", color="black")
    ax2.set_xlabel("angular order m")
    ax2.set_ylabel("Lamb shift L")
    fig.tight_layout()
    save_figure(fig, path)


def plot_effective_potential(m: int, n: float, k2: float, path, r_max: float = 3.0) -> None:
    """Radial effective potential with the trapped band marked."""
    r = np.linspace(0.02, r_max, 800)
    v = analysis.effective_potential(r, m, n, k2)
    barrier = analysis.barrier_bounds(m, n)
    fig, ax = plt.subplots()
    ax.plot(r, v, color="black", label="V_eff(r)")
    ax.axhline(barrier.k_T**2, ls="--", color="tab:blue", label="barrier top (m/R)^2")
    ax.axhline(k2, color="tab:orange", label="resonance energy Re(kR)^2")
    ax.axhline(barrier.k_B**2, ls=":", color="tab:blue", label="well bottom (m/nR)^2")
    ax.set_xlabel("radius r / R")
    ax.set_ylabel("V_eff")
    ax.set_ylim(min(v.min(), barrier.k_B**2) - 2, max(barrier.k_T**2 * 1.6, k2 * 1.4))
    ax.legend(fontsize=7)
    save_figure(fig, path)


def plot_spectrum_vs_n(rows: list[SweepRow], path, k_top: float | None = None) -> None:
    """Re(kR) of closed (solid) and open (dotted) branches against n."""
    fig, ax = plt.subplots()
    for i, ((m, ell), branch) in enumerate(_branches(rows)):
        color = _BRANCH_COLORS[i % len(_BRANCH_COLORS)]
        ns = [r.n for r in branch]
        ax.plot(ns, [r.closed_kR for r in branch], "-", color=color, label=f"m={m}, ell={ell}")
        ax.plot(ns, [r.open_kR_re for r in branch], ":", color=color)
    if k_top is not None:
        ax.axhline(k_top, color="black", lw=2)
    ax.set_xlabel("refractive index n")
    ax.set_ylabel("Re(kR)")
    ax.legend(fontsize=7)
    save_figure(fig, path)


def plot_width_vs_n(rows: list[SweepRow], path) -> None:
    """|Im(kR)| against n, one curve per branch."""
    fig, ax = plt.subplots()
    for i, ((m, ell), branch) in enumerate(_branches(rows)):
        color = _BRANCH_COLORS[i % len(_BRANCH_COLORS)]
        ax.semilogy(
            [r.n for r in branch],
            [abs(r.open_kR_im) for r in branch],
            color=color,
            label=f"m={m}, ell={ell}",
        )
    ax.set_xlabel("refractive index n")
    ax.set_ylabel("|Im(kR)|")
    ax.legend(fontsize=7)
    save_figure(fig, path)


def plot_shift_vs_n(
    rows: list[SweepRow], path, thresholds: list[ThresholdResult] | None = None
) -> None:
    """Lamb shift against n with optional threshold markers."""
    fig, ax = plt.subplots()
    for i, ((m, ell), branch) in enumerate(_branches(rows)):
        color = _BRANCH_COLORS[i % len(_BRANCH_COLORS)]
        ax.plot([r.n for r in branch], [r.L for r in branch], color=color, label=f"m={m}, ell={ell}")
    for t in thresholds or []:
        ax.axvline(t.threshold_n, ls="--", color="gray", lw=0.8)
    ax.set_xlabel("refractive index n")
    ax.set_ylabel("Lamb shift L")
    ax.legend(fontsize=7)
    save_figure(fig, path)


def plot_inverse_q_vs_n(rows: list[SweepRow], path) -> None:
    """1/Q against n, one curve per branch."""
    fig, ax = plt.subplots()
    for i, ((m, ell), branch) in enumerate(_branches(rows)):
        color = _BRANCH_COLORS[i % len(_BRANCH_COLORS)]
        ax.semilogy(
            [r.n for r in branch],
            [1.0 / r.q for r in branch],
            color=color,
            label=f"m={m}, ell={ell}",
        )
    ax.set_xlabel("refractive index n")
    ax.set_ylabel("1/Q")
    ax.legend(fontsize=7)
    save_figure(fig, path)


def plot_field(grid: FieldGrid, path) -> None:
    """Intensity map of a field grid with the disk boundary overlaid."""
    hw = grid.spec.half_width
    fig, ax = plt.subplots(figsize=(4.4, 4.4))
    ax.imshow(
        grid.values,
        origin="lower",
        extent=(-hw, hw, -hw, hw),
        cmap="inferno",
        vmin=0.0,
        vmax=max(grid.values.max(), 1e-12),
    )
    theta = np.linspace(0, 2 * np.pi, 256)
    ax.plot(np.cos(theta), np.sin(theta), color="white", lw=0.6, alpha=0.7)
    ax.set_xlabel("x / R")
    ax.set_ylabel("y / R")
    ax.grid(False)
    kind = grid.meta.get("kind", "field")
    ax.set_title(f"{kind}: m={grid.meta.get('m')}, ell={grid.meta.get('ell')}", fontsize=9)
    save_figure(fig, path)


def plot_husimi(hmap: HusimiMap, path) -> None:
    """Boundary phase-space map with the critical line of total reflection."""
    fig, ax = plt.subplots()
    ax.imshow(
        hmap.values,
        origin="lower",
        aspect="auto",
        extent=(0.0, 2 * np.pi, hmap.p_grid[0], hmap.p_grid[-1]),
        cmap="inferno",
    )
    ax.axhline(hmap.p_crit, color="white", lw=1.0)
    ax.axhline(-hmap.p_crit, color="white", lw=1.0)
    ax.set_xlabel("arc length s")
    ax.set_ylabel("tangential momentum p")
    ax.grid(False)
    save_figure(fig, path)
