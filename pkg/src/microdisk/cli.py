"""Command-line interface.

One subcommand per result family:

* ``modes``          - closed and/or open eigenvalues of one (m, ell, n).
* ``lamb``           - Lamb shift record of one mode.
* ``sweep-m``        - whispering-gallery sweep over angular order.
* ``sweep-n``        - branch sweep over refractive index.
* ``threshold``      - interior maximum of L(n) per branch.
* ``field``          - intensity grid as PGM image or CSV matrix.
* ``husimi``         - boundary phase-space map as CSV + sidecar metadata.
* ``specfun-check``  - special-function invariant residuals.
* ``report``         - every family above into one directory, with figures.

All configuration is by flags, outputs are written atomically (temp file +
rename), and identical invocations produce byte-identical files.  Exit
code 0 means every requested row succeeded.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import analysis, cavity, fieldgrid, husimi, specfun, sweeps
from .billiard import ModeIndex, billiard_eigenvalue, boundary_residual, normal_mode_field
from .errors import MicrodiskError, NoThresholdError
from .fieldgrid import GridSpec
from .sweeps import _format_cell


def _atomic_write(path: str | Path, data: bytes) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _deliver(data: bytes, out: str | None) -> None:
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        _atomic_write(out, data)


def _table_csv(columns: tuple[str, ...], records: list[dict]) -> bytes:
    lines = [",".join(columns)]
    for rec in records:
        lines.append(",".join("" if rec[c] is None else _format_cell(rec[c]) for c in columns))
    return ("\n".join(lines) + "\n").encode("ascii")


def _table_json(columns: tuple[str, ...], records: list[dict]) -> bytes:
    out = []
    for rec in records:
        clean = {}
        for c in columns:
            v = rec[c]
            clean[c] = None if isinstance(v, float) and math.isnan(v) else v
        out.append(clean)
    return (json.dumps(out, indent=2) + "\n").encode("ascii")


def _emit_table(columns, records, fmt: str, out: str | None) -> None:
    data = _table_json(columns, records) if fmt == "json" else _table_csv(columns, records)
    _deliver(data, out)


def _parse_pair(text: str, name: str, cast=float) -> tuple:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"{name} must be LO:HI, got {text!r}")
    return cast(parts[0]), cast(parts[1])


def _parse_grid(text: str) -> GridSpec:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"--grid must be HW:N, got {text!r}")
    return GridSpec(half_width=float(parts[0]), samples_per_axis=int(parts[1]))


def _parse_n_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"--n-range must be LO:HI:STEP, got {text!r}")
    return float(parts[0]), float(parts[1]), float(parts[2])


def _parse_ells(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--ell must be comma-separated integers: {exc}")


def _parse_resolution(text: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"--resolution must be NS:NP, got {text!r}")
    return int(parts[0]), int(parts[1])


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

_MODES_COLUMNS = ("kind", "m", "ell", "n", "kR_re", "kR_im", "residual")


def cmd_modes(args) -> int:
    mode = ModeIndex(m=args.m, ell=args.ell)
    both = args.closed == args.open  # neither or both flags -> both kinds
    records = []
    if args.closed or both:
        eig = billiard_eigenvalue(mode, args.n)
        records.append(
            {
                "kind": "closed",
                "m": mode.m,
                "ell": mode.ell,
                "n": args.n,
                "kR_re": eig.kR,
                "kR_im": 0.0,
                "residual": boundary_residual(eig),
            }
        )
    if args.open or both:
        res = cavity.find_resonance(mode, args.n)
        records.append(
            {
                "kind": "open",
                "m": mode.m,
                "ell": mode.ell,
                "n": args.n,
                "kR_re": res.kR.real,
                "kR_im": res.kR.imag,
                "residual": res.residual,
            }
        )
    _emit_table(_MODES_COLUMNS, records, args.format, args.out)
    return 0


_LAMB_COLUMNS = ("m", "ell", "n", "closed_kR", "open_kR_re", "L")


def cmd_lamb(args) -> int:
    record = analysis.lamb_shift(ModeIndex(m=args.m, ell=args.ell), args.n)
    rec = {
        "m": record.mode.m,
        "ell": record.mode.ell,
        "n": record.n,
        "closed_kR": record.closed_kR,
        "open_kR_re": record.open_kR_re,
        "L": record.L,
    }
    _emit_table(_LAMB_COLUMNS, [rec], args.format, args.out)
    return 0


def _emit_sweep(rows, args) -> int:
    data = sweeps.emit_json(rows) if args.format == "json" else sweeps.emit_csv(rows)
    _deliver(data, args.out)
    return 1 if any(r.error for r in rows) else 0


def cmd_sweep_m(args) -> int:
    m_lo, m_hi = args.m_range
    rows = sweeps.run_sweep_m(m_lo, m_hi, ell=args.ell, n=args.n)
    status = _emit_sweep(rows, args)
    if args.plot:
        from . import plots

        plots.plot_width_and_shift_vs_m(rows, args.plot)
    return status


def cmd_sweep_n(args) -> int:
    n_lo, n_hi, step = args.n_range
    rows = sweeps.run_sweep_n(args.m, args.ells, n_lo=n_lo, n_hi=n_hi, step=step)
    status = _emit_sweep(rows, args)
    if args.plot:
        from . import plots

        plots.plot_shift_vs_n(rows, args.plot)
    return status


_THRESHOLD_COLUMNS = ("m", "ell", "threshold_n", "kT_crossing_n", "error")


def cmd_threshold(args) -> int:
    n_lo, n_hi, step = args.n_range
    records = []
    failed = False
    for ell in args.ells:
        try:
            t = sweeps.find_threshold(args.m, ell, n_lo=n_lo, n_hi=n_hi, step=step)
            records.append(
                {
                    "m": t.m,
                    "ell": t.ell,
                    "threshold_n": t.threshold_n,
                    "kT_crossing_n": t.kT_crossing_n,
                    "error": "",
                }
            )
        except NoThresholdError as exc:
            failed = True
            records.append(
                {"m": args.m, "ell": ell, "threshold_n": None, "kT_crossing_n": None,
                 "error": str(exc)}
            )
    _emit_table(_THRESHOLD_COLUMNS, records, args.format, args.out)
    return 1 if failed else 0


def _field_grid_for(kind: str, mode: ModeIndex, n: float, spec: GridSpec):
    if kind == "closed":
        return normal_mode_field(mode, n, spec)
    res = cavity.find_resonance(mode, n)
    return fieldgrid.sample_radial_mode(kind, mode, n, res.kR, spec)


def cmd_field(args) -> int:
    mode = ModeIndex(m=args.m, ell=args.ell)
    grid = _field_grid_for(args.kind, mode, args.n, args.grid)
    if args.format == "csv":
        data = fieldgrid.write_csv_matrix(grid.values)
    else:
        data = fieldgrid.write_pgm(grid, depth=args.depth)
    _deliver(data, args.out)
    if args.plot:
        from . import plots

        plots.plot_field(grid, args.plot)
    return 0


def cmd_husimi(args) -> int:
    mode = ModeIndex(m=args.m, ell=args.ell)
    res = cavity.find_resonance(mode, args.n)
    hmap = husimi.mode_husimi(res, resolution=args.resolution, boundary_samples=args.boundary_samples)
    _deliver(fieldgrid.write_csv_matrix(hmap.values), args.out)
    meta = {
        "m": mode.m,
        "ell": mode.ell,
        "n": args.n,
        "kR_re": res.kR.real,
        "kR_im": res.kR.imag,
        "p_crit": hmap.p_crit,
        "s_samples": int(hmap.s_grid.size),
        "p_samples": int(hmap.p_grid.size),
        "p_min": float(hmap.p_grid[0]),
        "p_max": float(hmap.p_grid[-1]),
    }
    sidecar = (json.dumps(meta, indent=2) + "\n").encode("ascii")
    if args.out is None:
        sys.stdout.buffer.write(sidecar)
    else:
        _atomic_write(str(args.out) + ".meta.json", sidecar)
    if args.plot:
        from . import plots

        plots.plot_husimi(hmap, args.plot)
    return 0


_CHECK_COLUMNS = ("check", "m", "max_residual", "samples")


def cmd_specfun_check(args) -> int:
    _emit_table(_CHECK_COLUMNS, specfun.invariant_residuals(), args.format, args.out)
    return 0


def cmd_report(args) -> int:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    from . import plots

    spec = args.grid
    status = 0

    def say(name: str) -> None:
        print(f"report: {name}", file=sys.stderr)

    # Reference mode: closed vs open spectra and field decomposition.
    mode = ModeIndex(m=2, ell=1)
    say("reference mode tables")
    eig = billiard_eigenvalue(mode, args.n)
    res = cavity.find_resonance(mode, args.n)
    records = [
        {"kind": "closed", "m": 2, "ell": 1, "n": args.n, "kR_re": eig.kR, "kR_im": 0.0,
         "residual": boundary_residual(eig)},
        {"kind": "open", "m": 2, "ell": 1, "n": args.n, "kR_re": res.kR.real,
         "kR_im": res.kR.imag, "residual": res.residual},
    ]
    _atomic_write(out / "modes.csv", _table_csv(_MODES_COLUMNS, records))

    say("field grids")
    closed_grid = normal_mode_field(mode, args.n, spec)
    interior, tail, full = cavity.qnm_fields(res, spec)
    for name, grid in (
        ("billiard_mode", closed_grid),
        ("qnm_interior", interior),
        ("qnm_tail", tail),
        ("qnm_full", full),
    ):
        _atomic_write(out / f"{name}.pgm", fieldgrid.write_pgm(grid, depth=args.depth))
        plots.plot_field(grid, out / f"{name}.png")

    say("husimi map")
    hmap = husimi.mode_husimi(res, resolution=args.resolution)
    _atomic_write(out / "husimi_wgm.csv", fieldgrid.write_csv_matrix(hmap.values))
    plots.plot_husimi(hmap, out / "husimi_wgm.png")

    say("sweep over angular order")
    m_rows = sweeps.run_sweep_m(2, 10, ell=1, n=args.n)
    status |= 1 if any(r.error for r in m_rows) else 0
    _atomic_write(out / "wgm_vs_m.csv", sweeps.emit_csv(m_rows))
    plots.plot_spectrum_vs_m(m_rows, out / "spectrum_vs_m.png")
    plots.plot_width_and_shift_vs_m(m_rows, out / "width_and_shift_vs_m.png")

    say("effective potential")
    res3 = cavity.find_resonance(ModeIndex(m=3, ell=1), args.n)
    k2 = res3.kR.real**2
    r = np.linspace(0.02, 3.0, 800)
    v = analysis.effective_potential(r, 3, args.n, k2)
    pot_records = [{"r": float(rr), "v_eff": float(vv)} for rr, vv in zip(r, v)]
    _atomic_write(out / "effective_potential.csv", _table_csv(("r", "v_eff"), pot_records))
    plots.plot_effective_potential(3, args.n, k2, out / "effective_potential.png")

    say("branch sweeps over refractive index")
    l1_rows = []
    for m in (3, 4, 5):
        l1_rows.extend(sweeps.run_sweep_n(m, (1,), step=args.step))
    status |= 1 if any(r.error for r in l1_rows) else 0
    _atomic_write(out / "branches_l1.csv", sweeps.emit_csv(l1_rows))
    plots.plot_spectrum_vs_n(l1_rows, out / "spectrum_vs_n_l1.png")
    plots.plot_width_vs_n(l1_rows, out / "width_vs_n_l1.png")
    plots.plot_shift_vs_n(l1_rows, out / "shift_vs_n_l1.png")

    m4_rows = sweeps.run_sweep_n(4, (1, 2, 3, 4, 5), step=args.step)
    status |= 1 if any(r.error for r in m4_rows) else 0
    _atomic_write(out / "branches_m4.csv", sweeps.emit_csv(m4_rows))
    plots.plot_spectrum_vs_n(m4_rows, out / "spectrum_vs_n_m4.png", k_top=4.0)
    plots.plot_width_vs_n(m4_rows, out / "width_vs_n_m4.png")
    plots.plot_inverse_q_vs_n(m4_rows, out / "inverse_q_vs_n_m4.png")

    say("thresholds")
    thresholds = []
    t_records = []
    for ell in (3, 4, 5):
        t = sweeps.find_threshold(4, ell, step=args.step)
        thresholds.append(t)
        t_records.append(
            {"m": t.m, "ell": t.ell, "threshold_n": t.threshold_n,
             "kT_crossing_n": t.kT_crossing_n, "error": ""}
        )
    _atomic_write(out / "thresholds_m4.csv", _table_csv(_THRESHOLD_COLUMNS, t_records))
    plots.plot_shift_vs_n(m4_rows, out / "shift_vs_n_m4.png", thresholds=thresholds)

    say("specfun residuals")
    _atomic_write(
        out / "specfun_check.csv", _table_csv(_CHECK_COLUMNS, specfun.invariant_residuals())
    )
    return status


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_mode_flags(p, ell_default: int | None = 1) -> None:
    p.add_argument("--m", type=int, required=True, help="angular quantum number")
    if ell_default is not None:
        p.add_argument("--ell", type=int, default=ell_default, help="radial quantum number")
    p.add_argument("--n", type=float, default=3.3, help="refractive index")


def _add_output_flags(p, formats=("csv", "json")) -> None:
    p.add_argument("--out", type=str, default=None, help="output path (stdout when absent)")
    p.add_argument("--format", choices=formats, default=formats[0])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="microdisk",
        description="Spectra, Lamb shift and phase-space maps of the circular "
        "dielectric microcavity (TE polarization, R = 1).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("modes", help="closed and/or open eigenvalues of one mode")
    _add_mode_flags(p)
    p.add_argument("--closed", action="store_true", help="closed billiard only")
    p.add_argument("--open", action="store_true", help="open cavity only")
    _add_output_flags(p)
    p.set_defaults(func=cmd_modes)

    p = sub.add_parser("lamb", help="Lamb shift of one mode")
    _add_mode_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_lamb)

    p = sub.add_parser("sweep-m", help="sweep over angular order at fixed n")
    p.add_argument("--m-range", type=lambda s: _parse_pair(s, "--m-range", int), required=True,
                   help="LO:HI inclusive")
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--n", type=float, default=3.3)
    _add_output_flags(p)
    p.add_argument("--plot", type=str, default=None, help="render width/shift figure to PNG")
    p.set_defaults(func=cmd_sweep_m)

    p = sub.add_parser("sweep-n", help="sweep branches over refractive index")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ell", dest="ells", type=_parse_ells, default=(1,),
                   help="comma-separated radial indices")
    p.add_argument("--n-range", type=_parse_n_range, default=(3.3, 6.0, sweeps.DEFAULT_SWEEP_STEP),
                   help="LO:HI:STEP")
    _add_output_flags(p)
    p.add_argument("--plot", type=str, default=None, help="render Lamb-shift figure to PNG")
    p.set_defaults(func=cmd_sweep_n)

    p = sub.add_parser("threshold", help="interior maximum of L(n) per branch")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--ell", dest="ells", type=_parse_ells, default=(3, 4, 5))
    p.add_argument("--n-range", type=_parse_n_range, default=(3.3, 6.0, sweeps.DEFAULT_SWEEP_STEP))
    _add_output_flags(p)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("field", help="2-D intensity grid of one mode")
    p.add_argument("--kind", choices=("closed", "interior", "tail", "full"), default="full")
    _add_mode_flags(p)
    p.add_argument("--grid", type=_parse_grid, default=GridSpec(), help="HW:N window")
    p.add_argument("--depth", type=int, choices=(8, 16), default=8)
    _add_output_flags(p, formats=("pgm", "csv"))
    p.add_argument("--plot", type=str, default=None, help="render intensity figure to PNG")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("husimi", help="boundary phase-space map of one resonance")
    _add_mode_flags(p)
    p.add_argument("--resolution", type=_parse_resolution, default=(256, 256), help="NS:NP")
    p.add_argument("--boundary-samples", type=int, default=None)
    _add_output_flags(p, formats=("csv",))
    p.add_argument("--plot", type=str, default=None, help="render map figure to PNG")
    p.set_defaults(func=cmd_husimi)

    p = sub.add_parser("specfun-check", help="special-function invariant residuals")
    _add_output_flags(p)
    p.set_defaults(func=cmd_specfun_check)

    p = sub.add_parser("report", help="full result set with figures into a directory")
    p.add_argument("--out-dir", type=str, required=True)
    p.add_argument("--n", type=float, default=3.3)
    p.add_argument("--step", type=float, default=sweeps.DEFAULT_SWEEP_STEP)
    p.add_argument("--grid", type=_parse_grid, default=GridSpec())
    p.add_argument("--depth", type=int, choices=(8, 16), default=8)
    p.add_argument("--resolution", type=_parse_resolution, default=(256, 256))
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MicrodiskError as exc:
        print(f"microdisk: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
