import json
import math

import numpy as np
import pytest

import mbl_lab.harness as harness
from mbl_lab.cli import main as cli_main
from mbl_lab.harness import (
    ConfigError,
    RunConfig,
    derive_seed,
    emit_outputs,
    run_realization,
    run_sweep,
)


def tiny_config(**overrides):
    base = dict(
        n_rows=2,
        n_cols=3,
        model="quasixy",
        h_grid=[1.0, 4.0],
        realizations=3,
        master_seed=99,
        M=8,
        bins=12,
    )
    base.update(overrides)
    return RunConfig(**base)


# -- configuration -----------------------------------------------------------

def test_config_validation():
    with pytest.raises(ConfigError):
        tiny_config(h_grid=[])
    with pytest.raises(ConfigError):
        tiny_config(h_grid=[2.0, 1.0])
    with pytest.raises(ConfigError):
        tiny_config(h_grid=[-1.0, 2.0])
    with pytest.raises(ConfigError):
        tiny_config(M=2)
    with pytest.raises(ConfigError):
        tiny_config(model="banana")
    with pytest.raises(ConfigError):
        tiny_config(realizations=0)
    with pytest.raises(ConfigError):
        tiny_config(M=25)  # exceeds the C(6,3) = 20 block
    with pytest.raises(ConfigError):
        tiny_config(cut_n_a=6)
    with pytest.raises(ConfigError):
        tiny_config(epsilon=1.5)


def test_odd_lattice_uses_smallest_sz_block():
    cfg = tiny_config(n_rows=3, n_cols=3, M=10)
    assert cfg.n_up == 5
    assert tiny_config().n_up == 3


# -- seeding -----------------------------------------------------------------

def test_derived_seeds_are_distinct():
    seeds = {
        derive_seed(20190501, hi, k) for hi in range(25) for k in range(200)
    }
    assert len(seeds) == 25 * 200


def test_derived_seeds_differ_across_masters():
    a = derive_seed(1, 0, 0)
    b = derive_seed(2, 0, 0)
    assert a != b


# -- realizations ------------------------------------------------------------

def test_realization_is_deterministic():
    cfg = tiny_config()
    r1 = run_realization(cfg, 4.0, 1)
    r2 = run_realization(cfg, 4.0, 1)
    assert r1.seed == r2.seed
    assert r1.r_mean == r2.r_mean
    assert np.array_equal(r1.ee_values, r2.ee_values)
    assert np.array_equal(r1.eigenvalues, r2.eigenvalues)


def test_zero_exchange_realization_has_zero_entropy():
    cfg = tiny_config(model="uniform", J=0.0, h_grid=[1.0])
    result = run_realization(cfg, 1.0, 0)
    assert result.ok
    assert np.all(result.ee_values == 0.0)


def test_realizations_use_distinct_disorder():
    cfg = tiny_config()
    r0 = run_realization(cfg, 1.0, 0)
    r1 = run_realization(cfg, 1.0, 1)
    assert not np.array_equal(r0.eigenvalues, r1.eigenvalues)


# -- sweeps ------------------------------------------------------------------

@pytest.fixture(scope="module")
def small_sweep():
    cfg = tiny_config(realizations=5)
    return cfg, run_sweep(cfg)


def test_sweep_shape_and_bookkeeping(small_sweep):
    cfg, result = small_sweep
    assert len(result.summaries) == len(cfg.h_grid)
    for s in result.summaries:
        assert s.n_realizations_ok == cfg.realizations
        assert 0.0 <= s.r_mean <= 1.0
    assert len(result.realizations) == len(cfg.h_grid) * cfg.realizations


def test_sweep_aggregate_matches_seed_replay(small_sweep):
    cfg, result = small_sweep
    from mbl_lab.levelstats import gap_ratios

    for h_index, h in enumerate(cfg.h_grid):
        replayed = [run_realization(cfg, h, k) for k in range(cfg.realizations)]
        means = [gap_ratios(r.eigenvalues).mean() for r in replayed]
        assert result.summaries[h_index].r_mean == pytest.approx(
            float(np.mean(means)), abs=1e-15
        )
        for r, rr in zip(
            [x for x in result.realizations if x.h_index == h_index], replayed
        ):
            assert r.seed == rr.seed


def test_sweep_result_independent_of_worker_count(small_sweep, tmp_path):
    cfg, serial = small_sweep
    pooled = run_sweep(cfg, workers=2)
    emit_outputs(serial, tmp_path / "serial")
    emit_outputs(pooled, tmp_path / "pooled")
    a = (tmp_path / "serial" / "sweep.csv").read_bytes()
    b = (tmp_path / "pooled" / "sweep.csv").read_bytes()
    assert a == b


def test_sweep_aborts_when_failure_quota_exceeded(monkeypatch):
    calls = {"n": 0}
    real = harness.run_realization

    def flaky(config, h, k):
        result = real(config, h, k)
        calls["n"] += 1
        if k == 0:
            return harness.RealizationResult(
                h_index=result.h_index, k=k, seed=result.seed, ok=False, error="boom"
            )
        return result

    monkeypatch.setattr(harness, "run_realization", flaky)
    with pytest.raises(harness.SweepError, match="h=1"):
        run_sweep(tiny_config(realizations=3))


def test_failed_realizations_excluded_but_counted(monkeypatch):
    real = harness.run_realization

    def flaky(config, h, k):
        result = real(config, h, k)
        if k == 0 and result.h_index == 0:
            return harness.RealizationResult(
                h_index=result.h_index, k=k, seed=result.seed, ok=False, error="boom"
            )
        return result

    monkeypatch.setattr(harness, "run_realization", flaky)
    result = run_sweep(tiny_config(realizations=12))
    assert result.summaries[0].n_realizations_ok == 11
    assert result.summaries[1].n_realizations_ok == 12
    failed = [r for r in result.realizations if not r.ok]
    assert len(failed) == 1 and failed[0].error == "boom"


# -- outputs -----------------------------------------------------------------

def test_emit_outputs_files(small_sweep, tmp_path):
    cfg, result = small_sweep
    written = emit_outputs(result, tmp_path / "out")
    names = {p.name for p in written}
    assert "sweep.csv" in names and "manifest.json" in names
    for h in cfg.h_grid:
        assert f"hist_r_h{h:g}.csv" in names
        assert f"hist_S_h{h:g}.csv" in names

    lines = (tmp_path / "out" / "sweep.csv").read_text().strip().splitlines()
    assert lines[0].startswith("h,r_mean,r_stderr,ee_mean_per_site")
    assert len(lines) == 1 + len(cfg.h_grid)

    manifest = json.loads((tmp_path / "out" / "manifest.json").read_text())
    assert manifest["config"]["master_seed"] == cfg.master_seed
    assert manifest["config"]["h_grid"] == cfg.h_grid
    assert len(manifest["realizations"]) == len(result.realizations)
    assert all("seed" in r for r in manifest["realizations"])


def test_emitted_histograms_are_normalized(small_sweep, tmp_path):
    cfg, result = small_sweep
    emit_outputs(result, tmp_path / "out")
    for h in cfg.h_grid:
        data = np.loadtxt(tmp_path / "out" / f"hist_r_h{h:g}.csv", delimiter=",", skiprows=1)
        centers, dens = data[:, 0], data[:, 1]
        width = centers[1] - centers[0]
        assert abs(np.sum(dens * width) - 1.0) < 1e-9


def test_emit_svg_files(small_sweep, tmp_path):
    cfg, result = small_sweep
    written = emit_outputs(result, tmp_path / "svg", svg=True)
    names = {p.name for p in written}
    assert "rbar_vs_h.svg" in names
    assert f"p_r_h{cfg.h_grid[0]:g}.svg" in names


def test_rerun_gives_identical_bytes(tmp_path):
    cfg = tiny_config(realizations=2)
    emit_outputs(run_sweep(cfg), tmp_path / "a")
    emit_outputs(run_sweep(cfg), tmp_path / "b")
    assert (tmp_path / "a" / "sweep.csv").read_bytes() == (
        tmp_path / "b" / "sweep.csv"
    ).read_bytes()


# -- CLI ---------------------------------------------------------------------

def test_cli_sweep_and_refit(tmp_path, capsys):
    out = tmp_path / "run"
    code = cli_main(
        [
            "sweep",
            "--rows", "2", "--cols", "3",
            "--model", "quasixy",
            "--h-grid", "1.0,4.0",
            "--realizations", "15",
            "--states", "12",
            "--bins", "12",
            "--seed", "7",
            "--out", str(out),
        ]
    )
    assert code == 0
    assert (out / "sweep.csv").exists()

    code = cli_main(["fit-brody", "--hist", str(out / "hist_r_h4.csv")])
    assert code == 0
    payload = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert "omega" in payload and "sigma_omega" in payload


def test_cli_degeneracy(tmp_path):
    out = tmp_path / "deg"
    code = cli_main(
        ["degeneracy", "--rows", "2", "--cols", "3", "--n-up", "3", "--out", str(out)]
    )
    assert code == 0
    payload = json.loads((out / "degeneracy_2x3_nup3.json").read_text())
    assert payload["class_count"] == 16
    assert payload["class_size_counts"] == {"1": 14, "3": 2}
    assert payload["fraction_degenerate"] == pytest.approx(0.3)


def test_cli_config_error_exit_code(tmp_path):
    code = cli_main(
        [
            "sweep",
            "--rows", "2", "--cols", "3",
            "--model", "quasixy",
            "--h-grid", "4.0,1.0",  # descending
            "--realizations", "2",
            "--seed", "7",
            "--out", str(tmp_path / "x"),
        ]
    )
    assert code == 2


def test_cli_solver_quota_exit_code(tmp_path, monkeypatch):
    def always_fail(config, h, k):
        return harness.RealizationResult(
            h_index=config.h_grid.index(float(h)), k=k, seed=0, ok=False, error="nope"
        )

    monkeypatch.setattr(harness, "run_realization", always_fail)
    code = cli_main(
        [
            "sweep",
            "--rows", "2", "--cols", "3",
            "--model", "uniform",
            "--h-grid", "1.0",
            "--realizations", "2",
            "--states", "8",
            "--seed", "7",
            "--out", str(tmp_path / "x"),
        ]
    )
    assert code == 3


def test_cli_io_error_exit_code(tmp_path):
    code = cli_main(["fit-brody", "--hist", str(tmp_path / "missing.csv")])
    assert code == 4


def test_smoke_sweep_reproduces_localization_trend():
    cfg = RunConfig(
        n_rows=4,
        n_cols=3,
        model="quasixy",
        h_grid=[0.5, 30.0],
        realizations=20,
        master_seed=20190501,
    )
    result = run_sweep(cfg)
    weak, strong = result.summaries
    assert weak.r_mean > strong.r_mean
    assert weak.brody.omega > 0 > strong.brody.omega
