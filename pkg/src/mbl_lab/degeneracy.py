"""Row/column signature classes of the separable quasi-random field.

Because the x/y disorder term is a sum of a row-only and a column-only
field, any two spin configurations with identical row sums and identical
column sums (spins counted as +-1) pick up exactly the same diagonal
energy, for every phase pair. Grouping a magnetization block by this
signature enumerates the exact degeneracy classes of the J = 0 spectrum.
"""

from collections import Counter, defaultdict
from dataclasses import dataclass
from math import comb

import numpy as np

from .basis import enumerate_block
from .hamiltonian import QUASI_XY, DisorderModel, disorder_diagonal
from .lattice import LatticeSpec


@dataclass(frozen=True)
class SpinSignature:
    row_sums: tuple
    col_sums: tuple


@dataclass
class DegeneracyReport:
    n_rows: int
    n_cols: int
    n_up: int
    class_count: int
    class_sizes: list          # descending
    fraction_degenerate: float  # share of states in classes of size >= 2
    largest_class_size: int


def signature(state: int, spec: LatticeSpec) -> SpinSignature:
    """Row and column sums of +-1 spin values for one basis state."""
    n = spec.n_sites
    bits = [(state >> (n - 1 - k)) & 1 for k in range(n)]
    spins = [2 * b - 1 for b in bits]
    rows = tuple(
        sum(spins[r * spec.n_cols : (r + 1) * spec.n_cols]) for r in range(spec.n_rows)
    )
    cols = tuple(
        sum(spins[c :: spec.n_cols][: spec.n_rows]) for c in range(spec.n_cols)
    )
    return SpinSignature(row_sums=rows, col_sums=cols)


def _signature_arrays(states: np.ndarray, spec: LatticeSpec):
    n = spec.n_sites
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    spins = 2 * ((states[:, None] >> shifts[None, :]) & 1) - 1
    grid = spins.reshape(len(states), spec.n_rows, spec.n_cols)
    return grid.sum(axis=2), grid.sum(axis=1)


def degeneracy_classes(spec: LatticeSpec, n_up: int):
    """(DegeneracyReport, classes) grouping the block by signature.

    classes maps each SpinSignature to the list of member bitmasks, in
    block order.
    """
    block = enumerate_block(spec.n_sites, n_up)
    row_sums, col_sums = _signature_arrays(block.states, spec)
    classes = defaultdict(list)
    for k, state in enumerate(block.states):
        key = SpinSignature(tuple(row_sums[k]), tuple(col_sums[k]))
        classes[key].append(int(state))
    sizes = sorted((len(v) for v in classes.values()), reverse=True)
    total = comb(spec.n_sites, n_up)
    assert sum(sizes) == total
    degenerate = sum(s for s in sizes if s >= 2)
    report = DegeneracyReport(
        n_rows=spec.n_rows,
        n_cols=spec.n_cols,
        n_up=n_up,
        class_count=len(sizes),
        class_sizes=sizes,
        fraction_degenerate=degenerate / total,
        largest_class_size=sizes[0],
    )
    return report, dict(classes)


@dataclass
class DiagonalDegeneracyCheck:
    ok: bool
    worst_same_class_spread: float
    min_cross_class_separation: float
    n_near_collisions: int  # distinct-signature pairs closer than the guard


def verify_diagonal_degeneracy(
    spec: LatticeSpec,
    n_up: int,
    phase_draws: int,
    tolerance: float = 1e-10,
    h: float = 1.0,
    c=None,
    seed: int = 0,
) -> DiagonalDegeneracyCheck:
    """Check the signature/energy correspondence over random phase pairs.

    Same-signature diagonal entries must agree within `tolerance` for every
    draw. Distinct signatures are expected to separate by more than
    1e-8*h for generic phases; rarer coincidences are counted, not fatal.
    """
    block = enumerate_block(spec.n_sites, n_up)
    _, classes = degeneracy_classes(spec, n_up)
    members = [np.array([block.rank_index[m] for m in v]) for v in classes.values()]
    rng = np.random.default_rng(seed)
    guard = 1e-8 * max(h, 1e-300)

    worst_spread = 0.0
    min_separation = np.inf
    collisions = 0
    for _ in range(phase_draws):
        kwargs = {} if c is None else {"c": c}
        model = DisorderModel.draw(QUASI_XY, h, spec.n_sites, rng, **kwargs)
        diag = disorder_diagonal(block, spec, model)
        reps = np.empty(len(members))
        for j, idx in enumerate(members):
            vals = diag[idx]
            worst_spread = max(worst_spread, float(vals.max() - vals.min()))
            reps[j] = vals[0]
        reps.sort()
        if len(reps) > 1:
            seps = np.diff(reps)
            min_separation = min(min_separation, float(seps.min()))
            collisions += int(np.count_nonzero(seps < guard))
    return DiagonalDegeneracyCheck(
        ok=worst_spread <= tolerance,
        worst_same_class_spread=worst_spread,
        min_cross_class_separation=float(min_separation),
        n_near_collisions=collisions,
    )


def degenerate_fraction_scan(lattices) -> list[DegeneracyReport]:
    """Degeneracy reports for a list of lattices at their half-filling block.

    Monotonicity of the degenerate fraction with size is a reported
    observation here, not an asserted law.
    """
    out = []
    for spec in lattices:
        n_up = (spec.n_sites + 1) // 2
        report, _ = degeneracy_classes(spec, n_up)
        out.append(report)
    return out


def class_size_histogram(report: DegeneracyReport) -> dict:
    """Multiset of class sizes as {size: count}, for compact serialization."""
    return dict(sorted(Counter(report.class_sizes).items()))
