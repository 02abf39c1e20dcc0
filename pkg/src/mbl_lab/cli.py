"""Command-line front end.

Exit codes: 0 success, 2 configuration error, 3 solver-failure quota
exceeded, 4 output write failure.
"""

import argparse
import json
import sys

import numpy as np

from .degeneracy import class_size_histogram, degeneracy_classes
from .harness import ConfigError, EmitError, RunConfig, SweepError, emit_outputs, run_sweep
from .hamiltonian import SQRT2
from .lattice import LatticeSpec
from .levelstats import FitError, fit_brody


def _parse_grid(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad h grid {text!r}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mbl-lab")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a disorder sweep and write its data files")
    sweep.add_argument("--rows", type=int, required=True)
    sweep.add_argument("--cols", type=int, required=True)
    sweep.add_argument("--model", choices=["uniform", "quasi1d", "quasixy"], required=True)
    sweep.add_argument("--h-grid", required=True, help='ascending amplitudes, e.g. "0.5,1,2"')
    sweep.add_argument("--realizations", type=int, required=True)
    sweep.add_argument("--states", type=int, default=30, help="window size M")
    sweep.add_argument("--epsilon", type=float, default=0.5)
    sweep.add_argument("--seed", type=int, required=True)
    sweep.add_argument("--bins", type=int, default=50)
    sweep.add_argument("--cut-sites", type=int, default=None, help="sites in subsystem A")
    sweep.add_argument("--j", type=float, default=1.0, help="exchange coupling")
    sweep.add_argument("--c", type=float, default=SQRT2, help="quasi-random wavenumber")
    sweep.add_argument("--workers", type=int, default=None)
    sweep.add_argument("--out", required=True)
    sweep.add_argument("--svg", action="store_true")

    degen = sub.add_parser("degeneracy", help="signature-class report for one block")
    degen.add_argument("--rows", type=int, required=True)
    degen.add_argument("--cols", type=int, required=True)
    degen.add_argument("--n-up", type=int, required=True)
    degen.add_argument("--out", required=True)

    refit = sub.add_parser("fit-brody", help="refit an emitted P(r) histogram")
    refit.add_argument("--hist", required=True)
    return parser


def _cmd_sweep(args) -> int:
    config = RunConfig(
        n_rows=args.rows,
        n_cols=args.cols,
        model=args.model,
        h_grid=_parse_grid(args.h_grid),
        realizations=args.realizations,
        master_seed=args.seed,
        J=args.j,
        c=args.c,
        M=args.states,
        epsilon=args.epsilon,
        bins=args.bins,
        cut_n_a=args.cut_sites,
        output_dir=args.out,
    )
    result = run_sweep(config, workers=args.workers)
    written = emit_outputs(result, args.out, svg=args.svg)
    print(f"wrote {len(written)} files to {args.out}")
    return 0


def _cmd_degeneracy(args) -> int:
    from pathlib import Path

    spec = LatticeSpec(args.rows, args.cols)
    report, _ = degeneracy_classes(spec, args.n_up)
    payload = {
        "n_rows": report.n_rows,
        "n_cols": report.n_cols,
        "n_up": report.n_up,
        "block_dim": sum(report.class_sizes),
        "class_count": report.class_count,
        "class_size_counts": {str(k): v for k, v in class_size_histogram(report).items()},
        "fraction_degenerate": report.fraction_degenerate,
        "largest_class_size": report.largest_class_size,
    }
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"degeneracy_{args.rows}x{args.cols}_nup{args.n_up}.json"
    path.write_text(json.dumps(payload, indent=2) + "\n")
    print(f"wrote {path}")
    return 0


def _cmd_fit_brody(args) -> int:
    data = np.loadtxt(args.hist, delimiter=",", skiprows=1)
    if data.ndim != 2 or data.shape[1] != 2 or data.shape[0] < 2:
        raise ConfigError(f"{args.hist} is not a bin_center,density table")
    centers, densities = data[:, 0], data[:, 1]
    width = centers[1] - centers[0]
    edges = np.concatenate([[centers[0] - width / 2], centers + width / 2])
    fit = fit_brody((np.clip(edges, 0.0, 1.0), densities))
    print(
        json.dumps(
            {
                "omega": fit.omega,
                "sigma_omega": fit.sigma_omega,
                "residual_norm": fit.residual_norm,
            }
        )
    )
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "degeneracy":
            return _cmd_degeneracy(args)
        return _cmd_fit_brody(args)
    except (ConfigError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (SweepError, FitError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 3
    except (EmitError, OSError) as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
