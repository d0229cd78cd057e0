"""Acceptance suite: every release criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line
per criterion.  The sweeps behind the order/shape criteria are shared
through module-scoped fixtures; the whole suite targets well under a
minute on a laptop.
"""

import numpy as np
import pytest

from microdisk import cli, specfun
from microdisk.analysis import barrier_bounds, lamb_shift
from microdisk.billiard import ModeIndex, billiard_eigenvalue, normal_mode_field
from microdisk.cavity import find_resonance, qnm_fields
from microdisk.fieldgrid import GridSpec
from microdisk.husimi import mode_husimi
from microdisk.sweeps import find_threshold, run_sweep_m, run_sweep_n

from oracles import bessel_zero_by_bisection


def report(num: int, desc: str, parts: dict) -> None:
    ok = all(parts.values())
    print(f"ACCEPTANCE {num} {'PASS' if ok else 'FAIL'}: {desc}")
    if not ok:
        pytest.fail(f"criterion {num} failed: {[k for k, v in parts.items() if not v]}")


@pytest.fixture(scope="module")
def wgm21():
    return find_resonance(ModeIndex(2, 1), 3.3)


@pytest.fixture(scope="module")
def wgm_rows():
    return run_sweep_m(2, 10, ell=1, n=3.3)


@pytest.fixture(scope="module")
def m4_rows():
    return run_sweep_n(4, (1, 2, 3, 4, 5), n_lo=3.3, n_hi=6.0, step=0.02)


@pytest.fixture(scope="module")
def l1_rows():
    return {m: run_sweep_n(m, (1,), n_lo=3.3, n_hi=6.0, step=0.02) for m in (3, 4, 5)}


def _strictly_decreasing(xs) -> bool:
    return all(a > b for a, b in zip(xs, xs[1:]))


def _unimodal_interior_max(xs) -> bool:
    peak = int(np.argmax(xs))
    if peak in (0, len(xs) - 1):
        return False
    rising = all(a < b for a, b in zip(xs[: peak + 1], xs[1 : peak + 1]))
    falling = all(a > b for a, b in zip(xs[peak:], xs[peak + 1 :]))
    return rising and falling


def test_criterion_1_reference_mode(wgm21):
    closed = billiard_eigenvalue(ModeIndex(2, 1), 3.3)
    shift = lamb_shift(ModeIndex(2, 1), 3.3, resonance=wgm21)
    report(
        1,
        "reference mode (m=2, ell=1, n=3.3): closed 1.556, open 1.462 - 0.046i, L 0.094",
        {
            "closed_kR": abs(closed.kR - 1.556) <= 0.001,
            "open_re": abs(wgm21.kR.real - 1.462) <= 0.005,
            "open_im": abs(wgm21.kR.imag + 0.046) <= 0.002,
            "lamb_shift": abs(shift.L - 0.094) <= 0.003,
        },
    )


def test_criterion_2_effective_potential_anchors():
    res = find_resonance(ModeIndex(3, 1), 3.3)
    bounds = barrier_bounds(3, 3.3)
    report(
        2,
        "trapped mode (m=3, ell=1, n=3.3): energy 3.42 between k_B^2 0.826 and k_T^2 9",
        {
            "energy": abs(res.kR.real**2 - 3.42) <= 0.03,
            "barrier_top": bounds.k_T**2 == 9.0,
            "barrier_bottom": abs(bounds.k_B**2 - 0.826) <= 0.001,
        },
    )


def test_criterion_3_lamb_shift_table(wgm_rows):
    by_m = {r.m: r.L for r in wgm_rows}
    report(
        3,
        "Lamb shifts at n=3.3, ell=1: L(3)=0.085, L(4)=0.07, L(5)=0.06",
        {
            "L3": abs(by_m[3] - 0.085) <= 0.005,
            "L4": abs(by_m[4] - 0.07) <= 0.005,
            "L5": abs(by_m[5] - 0.06) <= 0.005,
        },
    )


def test_criterion_4_monotonicity_and_thresholds(wgm_rows, m4_rows):
    shifts_by_ell = {
        ell: [r.L for r in m4_rows if r.ell == ell] for ell in (1, 2, 3, 4, 5)
    }
    thresholds = {ell: find_threshold(4, ell, step=0.02).threshold_n for ell in (3, 4, 5)}
    report(
        4,
        "monotone L(m), |Im kR|(m); monotone L(n) for ell<=2; unimodal L(n) with "
        "ordered thresholds for ell=3,4,5",
        {
            "L_vs_m": _strictly_decreasing([r.L for r in wgm_rows]),
            "width_vs_m": _strictly_decreasing([abs(r.open_kR_im) for r in wgm_rows]),
            "L_vs_n_ell1": _strictly_decreasing(shifts_by_ell[1]),
            "L_vs_n_ell2": _strictly_decreasing(shifts_by_ell[2]),
            "unimodal_ell3": _unimodal_interior_max(shifts_by_ell[3]),
            "unimodal_ell4": _unimodal_interior_max(shifts_by_ell[4]),
            "unimodal_ell5": _unimodal_interior_max(shifts_by_ell[5]),
            "threshold_order": thresholds[3] < thresholds[4] < thresholds[5],
        },
    )


def test_criterion_5_barrier_classification(l1_rows):
    trapped = all(
        row.barrier_class == "below_barrier" and row.m / row.n < row.open_kR_re < row.m
        for m in (3, 4, 5)
        for row in l1_rows[m]
    )
    high_radial = find_resonance(ModeIndex(4, 5), 3.3)
    report(
        5,
        "ell=1 branches trapped over n in [3.3, 6]; (m=4, ell=5, n=3.3) above barrier",
        {
            "below_barrier_sweeps": trapped,
            "above_barrier_mode": high_radial.kR.real > 4.0,
        },
    )


def test_criterion_6_special_function_oracles():
    residual_rows = specfun.invariant_residuals()
    worst = max(
        row["max_residual"] for row in residual_rows if row["check"] in ("wronskian", "recurrence")
    )
    zeros_ok = all(
        abs(specfun.bessel_j_zero(m, ell) - bessel_zero_by_bisection(m, ell)) <= 1e-8
        for m in range(11)
        for ell in range(1, 6)
    )
    report(
        6,
        "Wronskian/recurrence residuals < 1e-10; zeros match bisection to 1e-8 (m<=10, ell<=5)",
        {"residuals": worst < 1e-10, "zeros_vs_bisection": zeros_ok},
    )


def test_criterion_7_field_decomposition(wgm21):
    spec = GridSpec(1.5, 128)
    interior, tail, full = qnm_fields(wgm21, spec)
    billiard_grid = normal_mode_field(ModeIndex(2, 1), 3.3, spec)
    outside = interior.radii() >= 1.0
    report(
        7,
        "interior grid zero outside the disk, tail zero inside, billiard mode zero outside",
        {
            "interior_outside": bool(np.all(interior.values[outside] == 0.0)),
            "tail_inside": bool(np.all(tail.values[~outside] == 0.0)),
            "billiard_outside": bool(np.all(billiard_grid.values[outside] == 0.0)),
            "full_is_sum": bool(np.array_equal(full.values, interior.values + tail.values)),
        },
    )


def test_criterion_8_determinism(tmp_path):
    def run_twice(name, *argv):
        payloads = []
        for tag in ("a", "b"):
            out = tmp_path / f"{name}-{tag}"
            assert cli.main([*argv, "--out", str(out)]) == 0
            payloads.append(out.read_bytes())
        return payloads[0] == payloads[1]

    report(
        8,
        "repeated subcommand invocations produce byte-identical output files",
        {
            "sweep_m_csv": run_twice("sweep.csv", "sweep-m", "--m-range", "2:4"),
            "field_pgm": run_twice(
                "field.pgm", "field", "--kind", "full", "--m", "2", "--grid", "1.5:96"
            ),
            "husimi_csv": run_twice("map.csv", "husimi", "--m", "2", "--resolution", "96:96"),
            "sweep_n_json": run_twice(
                "rows.json", "sweep-n", "--m", "4", "--ell", "1",
                "--n-range", "3.3:3.5:0.05", "--format", "json",
            ),
        },
    )


def test_criterion_9_husimi_ridge(wgm21):
    hmap = mode_husimi(wgm21, resolution=(256, 256))
    fine = mode_husimi(wgm21, resolution=(512, 512))
    worst = 0.0
    for j in range(256):
        fine_col = np.interp(hmap.p_grid, fine.p_grid, fine.values[:, 2 * j])
        worst = max(worst, float(np.max(np.abs(fine_col - hmap.values[:, j]))))
    report(
        9,
        "WGM ridge at p = 0.414 above p_crit = 0.303; doubled resolution shifts values <= 1e-3",
        {
            "ridge_position": abs(hmap.ridge_momentum() - 0.414) <= 0.02,
            "above_critical": hmap.ridge_momentum() > 0.303,
            "p_crit_value": abs(hmap.p_crit - 0.303) <= 5e-4,
            "doubling_stability": worst <= 1e-3,
        },
    )
