"""Sweep orchestration, thresholds and tabular serialization."""

import dataclasses
import math

import numpy as np
import pytest

from microdisk import cavity, sweeps
from microdisk.billiard import ModeIndex
from microdisk.cavity import find_resonance
from microdisk.errors import MicrodiskError, NoThresholdError
from microdisk.sweeps import (
    SWEEP_COLUMNS,
    emit_csv,
    emit_json,
    find_threshold,
    parse_csv,
    refractive_grid,
    run_sweep_m,
    run_sweep_n,
)


class TestSweepM:
    def test_rows_complete_and_sorted(self):
        rows = run_sweep_m(2, 5)
        assert [r.m for r in rows] == [2, 3, 4, 5]
        for row in rows:
            assert row.error == ""
            assert row.ell == 1 and row.n == 3.3
            assert row.open_kR_im < 0
            assert row.barrier_class == "below_barrier"

    def test_shift_and_width_shrink(self):
        rows = run_sweep_m(2, 6)
        ls = [r.L for r in rows]
        widths = [abs(r.open_kR_im) for r in rows]
        assert all(a > b for a, b in zip(ls, ls[1:]))
        assert all(a > b for a, b in zip(widths, widths[1:]))

    def test_solver_failure_recorded_per_row(self, monkeypatch):
        real = cavity.find_resonance

        def flaky(mode, n, guess=None, *, check_rank=True):
            if mode.m == 4:
                raise MicrodiskError("synthetic failure")
            return real(mode, n, guess, check_rank=check_rank)

        monkeypatch.setattr(cavity, "find_resonance", flaky)
        rows = run_sweep_m(3, 5)
        errors = {r.m: r.error for r in rows}
        assert errors[3] == "" and errors[5] == ""
        assert "synthetic failure" in errors[4]
        bad = next(r for r in rows if r.m == 4)
        assert math.isnan(bad.open_kR_re) and math.isnan(bad.q)
        assert math.isfinite(bad.closed_kR)

    def test_empty_range_rejected(self):
        with pytest.raises(ValueError):
            run_sweep_m(5, 2)


class TestRefractiveGrid:
    def test_endpoints_included(self):
        grid = refractive_grid(3.3, 3.5, 0.05)
        assert grid[0] == 3.3 and abs(grid[-1] - 3.5) < 1e-12
        assert len(grid) == 5

    def test_ragged_endpoint_appended(self):
        grid = refractive_grid(3.3, 3.42, 0.05)
        assert abs(grid[-1] - 3.42) < 1e-12

    def test_step_cap(self):
        with pytest.raises(ValueError):
            refractive_grid(3.3, 6.0, 0.1)

    def test_bad_range(self):
        with pytest.raises(ValueError):
            refractive_grid(3.3, 3.0, 0.02)


class TestSweepN:
    def test_grouped_and_continuous(self):
        rows = run_sweep_n(4, (2, 1), n_lo=3.3, n_hi=3.6, step=0.05)
        ells = [r.ell for r in rows]
        assert ells == sorted(ells)
        for ell in (1, 2):
            ns = [r.n for r in rows if r.ell == ell]
            assert ns == sorted(ns)

    def test_continuation_matches_fresh_solve(self):
        rows = run_sweep_n(4, (1,), n_lo=3.3, n_hi=3.6, step=0.05)
        for row in rows:
            fresh = find_resonance(ModeIndex(4, 1), row.n)
            assert abs(fresh.kR.real - row.open_kR_re) < 1e-9
            assert abs(fresh.kR.imag - row.open_kR_im) < 1e-9

    def test_trapped_band_for_low_branches(self):
        rows = run_sweep_n(3, (1,), n_lo=3.3, n_hi=3.8, step=0.05)
        for row in rows:
            assert row.k_B < row.open_kR_re < row.k_T

    def test_branch_loss_recorded_and_sweep_continues(self, monkeypatch):
        real = cavity.find_resonance

        def flaky(mode, n, guess=None, *, check_rank=True):
            if abs(n - 3.35) < 1e-9:
                raise MicrodiskError("synthetic wobble")
            return real(mode, n, guess, check_rank=check_rank)

        monkeypatch.setattr(cavity, "find_resonance", flaky)
        rows = run_sweep_n(4, (1,), n_lo=3.3, n_hi=3.5, step=0.05)
        by_n = {round(r.n, 2): r for r in rows}
        assert "branch lost" in by_n[3.35].error
        assert by_n[3.3].error == "" and by_n[3.5].error == ""


class TestThreshold:
    def test_monotone_branch_has_none(self):
        with pytest.raises(NoThresholdError):
            find_threshold(4, 1, n_lo=3.3, n_hi=4.0, step=0.05)

    def test_interior_maximum_located(self):
        t = find_threshold(4, 3, n_lo=3.4, n_hi=4.2, step=0.05)
        assert 3.5 < t.threshold_n < 4.0
        # the barrier-top crossing Re(kR) = 4 happens nearby
        assert t.kT_crossing_n is not None
        assert 3.4 < t.kT_crossing_n < t.threshold_n

    def test_no_crossing_reported_when_always_trapped(self):
        rows = run_sweep_n(4, (1,), n_lo=3.3, n_hi=3.5, step=0.05)
        assert all(r.open_kR_re < 4 for r in rows)


@pytest.fixture(scope="module")
def rows():
    return run_sweep_m(2, 4)


class TestSerialization:

    def test_header_and_order(self, rows):
        data = emit_csv(rows)
        first = data.decode().split("\n")[0]
        assert first == "m,ell,n,closed_kR,open_kR_re,open_kR_im,L,gamma,q,k_T,k_B,class,error"

    def test_empty_table(self):
        assert emit_csv([]) == (",".join(SWEEP_COLUMNS) + "\n").encode()

    def test_round_trip(self, rows):
        data = emit_csv(rows)
        records = parse_csv(data)
        assert len(records) == len(rows)
        for rec, row in zip(records, rows):
            assert rec["m"] == row.m and rec["ell"] == row.ell
            assert rec["class"] == row.barrier_class
            # reparsed floats reproduce the emitted text exactly
            assert f"{rec['open_kR_re']:.12e}" == f"{row.open_kR_re:.12e}"

    def test_deterministic(self, rows):
        assert emit_csv(rows) == emit_csv(rows)

    def test_json_mirrors_csv(self, rows):
        import json

        objs = json.loads(emit_json(rows))
        assert [tuple(o) for o in objs] == [SWEEP_COLUMNS] * len(rows)
        for obj, row in zip(objs, rows):
            assert obj["L"] == row.L

    def test_json_nan_becomes_null(self):
        row = sweeps._error_row(ModeIndex(2, 1), 3.3, "boom")
        import json

        obj = json.loads(emit_json([row]))[0]
        assert obj["open_kR_re"] is None
        assert obj["error"] == "boom"

    def test_validation_catches_tampered_class(self, rows):
        bad = dataclasses.replace(rows[0], barrier_class="above_barrier")
        with pytest.raises(MicrodiskError):
            emit_csv([bad])

    def test_validation_catches_positive_imag(self, rows):
        bad = dataclasses.replace(rows[0], open_kR_im=0.01)
        with pytest.raises(MicrodiskError):
            emit_csv([bad])
