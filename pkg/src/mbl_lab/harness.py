"""Disorder sweep orchestration: seeding, execution, aggregation, output.

Every (h, realization) cell derives its own RNG seed from the master seed
by integer mixing, so results are a pure function of the configuration and
do not depend on worker count or scheduling. Aggregation reduces completed
cells in (h index, realization index) order.
"""

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .basis import enumerate_block
from .eigensolve import SolverError, interior_window
from .entanglement import Bipartition, entropy, reduced_density
from .hamiltonian import SQRT2, VARIANTS, DisorderModel, assemble
from .lattice import LatticeSpec
from .levelstats import (
    FitError,
    LevelStatsSummary,
    fit_brody,
    gap_ratios,
    histogram_density,
    spectral_average,
)


class ConfigError(ValueError):
    """Invalid run configuration (CLI exit code 2)."""


class SweepError(RuntimeError):
    """Too many failed realizations at some disorder amplitude (exit code 3)."""


class EmitError(OSError):
    """Output write failure; lists whatever was already written (exit code 4)."""

    def __init__(self, message, written):
        super().__init__(message)
        self.written = list(written)


FAILURE_QUOTA = 0.10


@dataclass
class RunConfig:
    n_rows: int
    n_cols: int
    model: str
    h_grid: list
    realizations: int
    master_seed: int
    J: float = 1.0
    c: float = SQRT2
    M: int = 30
    epsilon: float = 0.5
    bins: int = 50
    cut_n_a: int | None = None
    output_dir: str | None = None

    def __post_init__(self):
        self.h_grid = [float(h) for h in self.h_grid]
        self.validate()

    def validate(self):
        if self.n_rows < 1 or self.n_cols < 1:
            raise ConfigError("lattice must be at least 1x1")
        if self.model not in VARIANTS:
            raise ConfigError(f"model must be one of {VARIANTS}, got {self.model!r}")
        if not self.h_grid:
            raise ConfigError("h grid is empty")
        if any(h < 0 for h in self.h_grid) or any(
            b <= a for a, b in zip(self.h_grid, self.h_grid[1:])
        ):
            raise ConfigError("h grid must be ascending and nonnegative")
        if self.realizations < 1:
            raise ConfigError("need at least one realization per h")
        if self.M < 3:
            raise ConfigError("window must hold at least 3 states for gap ratios")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ConfigError("epsilon must lie in [0, 1]")
        if self.bins < 1:
            raise ConfigError("need at least one histogram bin")
        n = self.n_sites
        if self.cut_n_a is not None and not 1 <= self.cut_n_a < n:
            raise ConfigError(f"cut size must lie in 1..{n - 1}")
        if self.M > math.comb(n, self.n_up):
            raise ConfigError(
                f"window of {self.M} states exceeds block dimension {math.comb(n, self.n_up)}"
            )

    @property
    def n_sites(self) -> int:
        return self.n_rows * self.n_cols

    @property
    def n_up(self) -> int:
        # smallest-|Sz| block: N/2 up spins, rounded up when N is odd
        return (self.n_sites + 1) // 2

    @property
    def cut(self) -> Bipartition:
        if self.cut_n_a is None:
            return Bipartition.half(self.n_sites)
        return Bipartition(self.cut_n_a, self.n_sites - self.cut_n_a)


@dataclass
class RealizationResult:
    h_index: int
    k: int
    seed: int
    ok: bool
    r_mean: float = math.nan
    ee_values: np.ndarray | None = None
    eigenvalues: np.ndarray | None = None
    error: str = ""


@dataclass
class SweepResult:
    config: RunConfig
    summaries: list            # one LevelStatsSummary per h, grid order
    realizations: list         # RealizationResult, (h_index, k) order
    started_at: str = ""
    finished_at: str = ""
    wall_seconds: float = 0.0
    code_version: str = __version__


_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, h_index: int, k: int) -> int:
    """Avalanche-mixed 64-bit seed for one (h, realization) cell."""
    v = _splitmix64(master_seed & _MASK64)
    v = _splitmix64(v ^ ((h_index + 1) * 0xD6E8FEB86659FD93 & _MASK64))
    return _splitmix64(v ^ ((k + 1) * 0xA5CB3D4F72917A1B & _MASK64))


def run_realization(config: RunConfig, h: float, k: int) -> RealizationResult:
    """Assemble, solve and measure one disorder realization.

    Draws the disorder from the cell's derived seed, solves the M-state
    window at the configured energy density and returns the per-spectrum
    mean gap ratio, the entanglement entropy of every window state, and
    the window eigenvalues.
    """
    h_index = config.h_grid.index(float(h))
    seed = derive_seed(config.master_seed, h_index, k)
    rng = np.random.default_rng(seed)
    spec = LatticeSpec(config.n_rows, config.n_cols)
    model = DisorderModel.draw(config.model, h, spec.n_sites, rng, c=config.c)
    block = enumerate_block(spec.n_sites, config.n_up)
    H = assemble(spec, block, config.J, model)
    try:
        window = interior_window(H, config.epsilon, config.M)
    except SolverError as exc:
        return RealizationResult(h_index=h_index, k=k, seed=seed, ok=False, error=str(exc))
    cut = config.cut
    ee = np.array(
        [entropy(reduced_density(window.eigenvectors[:, j], block, cut)) for j in range(config.M)]
    )
    r_mean = gap_ratios(window.eigenvalues).mean()
    return RealizationResult(
        h_index=h_index,
        k=k,
        seed=seed,
        ok=True,
        r_mean=r_mean,
        ee_values=ee,
        eigenvalues=window.eigenvalues,
    )


def _cell(args):
    config, h, k = args
    return run_realization(config, h, k)


def run_sweep(config: RunConfig, workers: int | None = None) -> SweepResult:
    """Execute the full grid and aggregate per-h summaries.

    Realizations run independently (optionally in a process pool); the
    reduce happens in (h index, k) order so the result does not depend on
    the worker count. Disorder amplitudes where more than 10% of the
    realizations fail abort the sweep.
    """
    started = time.time()
    started_at = _utc_stamp(started)
    cells = [(config, h, k) for h in config.h_grid for k in range(config.realizations)]
    if workers is not None and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_cell, cells, chunksize=8))
    else:
        results = [_cell(c) for c in cells]
    results.sort(key=lambda r: (r.h_index, r.k))

    summaries = []
    for h_index, h in enumerate(config.h_grid):
        batch = [r for r in results if r.h_index == h_index]
        good = [r for r in batch if r.ok]
        if len(good) < (1.0 - FAILURE_QUOTA) * len(batch) or not good:
            raise SweepError(
                f"{len(batch) - len(good)}/{len(batch)} realizations failed at h={h:g}"
            )
        series = [gap_ratios(r.eigenvalues) for r in good]
        r_mean, r_stderr = spectral_average(series)
        pooled_r = np.concatenate([s.values for s in series])
        hist_r = histogram_density(pooled_r, config.bins, 0.0, 1.0)
        try:
            brody = fit_brody(hist_r)
        except FitError:
            brody = None
        ee_all = np.concatenate([r.ee_values for r in good])
        per_real_ee = np.array([r.ee_values.mean() for r in good])
        n_a = config.cut.n_a
        ee_stderr = (
            float(per_real_ee.std(ddof=1) / math.sqrt(len(good)) / n_a)
            if len(good) > 1
            else 0.0
        )
        hist_s = histogram_density(ee_all, config.bins, 0.0, max(float(ee_all.max()), 1e-9))
        summaries.append(
            LevelStatsSummary(
                h=h,
                r_mean=r_mean,
                r_stderr=r_stderr,
                hist_r=hist_r,
                brody=brody,
                ee_mean_per_site=float(ee_all.mean() / n_a),
                ee_stderr=ee_stderr,
                hist_s=hist_s,
                n_realizations_ok=len(good),
            )
        )
    finished = time.time()
    return SweepResult(
        config=config,
        summaries=summaries,
        realizations=results,
        started_at=started_at,
        finished_at=_utc_stamp(finished),
        wall_seconds=finished - started,
    )


def _utc_stamp(t: float) -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(t))


def _fmt(x) -> str:
    """Shortest decimal that round-trips the float."""
    return repr(float(x))


def emit_outputs(result: SweepResult, out_dir, svg: bool = False) -> list[Path]:
    """Write sweep.csv, per-h histogram CSVs, manifest.json and optional SVGs."""
    out = Path(out_dir)
    written = []
    try:
        out.mkdir(parents=True, exist_ok=True)
        sweep_path = out / "sweep.csv"
        lines = ["h,r_mean,r_stderr,ee_mean_per_site,ee_stderr,brody_omega,brody_sigma,n_realizations_ok"]
        for s in result.summaries:
            omega = s.brody.omega if s.brody else math.nan
            sigma = s.brody.sigma_omega if s.brody else math.nan
            lines.append(
                ",".join(
                    [
                        _fmt(s.h),
                        _fmt(s.r_mean),
                        _fmt(s.r_stderr),
                        _fmt(s.ee_mean_per_site),
                        _fmt(s.ee_stderr),
                        _fmt(omega),
                        _fmt(sigma),
                        str(s.n_realizations_ok),
                    ]
                )
            )
        sweep_path.write_text("\n".join(lines) + "\n")
        written.append(sweep_path)

        for s in result.summaries:
            for tag, hist in (("r", s.hist_r), ("S", s.hist_s)):
                edges, dens = hist
                centers = 0.5 * (edges[:-1] + edges[1:])
                path = out / f"hist_{tag}_h{s.h:g}.csv"
                rows = ["bin_center,density"] + [
                    f"{_fmt(c)},{_fmt(d)}" for c, d in zip(centers, dens)
                ]
                path.write_text("\n".join(rows) + "\n")
                written.append(path)

        manifest = {
            "config": asdict(result.config),
            "code_version": result.code_version,
            "started_at": result.started_at,
            "finished_at": result.finished_at,
            "wall_seconds": result.wall_seconds,
            "realizations": [
                {
                    "h": result.config.h_grid[r.h_index],
                    "h_index": r.h_index,
                    "k": r.k,
                    "seed": r.seed,
                    "ok": r.ok,
                    **({"error": r.error} if not r.ok else {}),
                }
                for r in result.realizations
            ],
        }
        manifest_path = out / "manifest.json"
        manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
        written.append(manifest_path)

        if svg:
            written.extend(_emit_svgs(result, out))
    except OSError as exc:
        raise EmitError(f"output write failed: {exc}", written) from exc
    return written


def _emit_svgs(result: SweepResult, out: Path) -> list[Path]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    from .levelstats import brody_ratio_pdf, reference_r_values

    written = []
    refs = reference_r_values()
    hs = [s.h for s in result.summaries]
    rs = [s.r_mean for s in result.summaries]
    errs = [s.r_stderr for s in result.summaries]

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.errorbar(hs, rs, yerr=errs, marker="o", label="mean gap ratio")
    ax.axhline(refs.goe, ls="--", color="C2", label=f"GOE {refs.goe}")
    ax.axhline(refs.poisson, ls=":", color="C3", label=f"Poisson {refs.poisson:.3f}")
    ax.set_xlabel("disorder amplitude h")
    ax.set_ylabel("r")
    ax.legend()
    fig.tight_layout()
    path = out / "rbar_vs_h.svg"
    fig.savefig(path)
    plt.close(fig)
    written.append(path)

    for s in result.summaries:
        edges, dens = s.hist_r
        centers = 0.5 * (edges[:-1] + edges[1:])
        fig, ax = plt.subplots(figsize=(5, 4))
        ax.bar(centers, dens, width=edges[1] - edges[0], alpha=0.6, label="P(r)")
        if s.brody is not None:
            grid = np.linspace(1e-4, 1.0, 400)
            ax.plot(
                grid,
                brody_ratio_pdf(grid, s.brody.omega),
                "r-",
                label=f"Brody ratio fit, omega={s.brody.omega:.3f}",
            )
        ax.set_xlabel("r")
        ax.set_ylabel("P(r)")
        ax.set_title(f"h = {s.h:g}")
        ax.legend()
        fig.tight_layout()
        path = out / f"p_r_h{s.h:g}.svg"
        fig.savefig(path)
        plt.close(fig)
        written.append(path)
    return written
