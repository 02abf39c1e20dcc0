"""Exact-diagonalization laboratory for many-body localization studies.

Builds fixed-magnetization block Hamiltonians for 2D Heisenberg lattices
with uniform or quasi-random disorder fields, solves interior spectral
windows, and measures entanglement entropy, adjacent-gap-ratio statistics
and Brody-parameter fits across disorder sweeps.
"""

__version__ = "0.1.0"

from .basis import BasisBlock, enumerate_block, expand_to_full, flip_pair, rank
from .eigensolve import (
    EigenWindow,
    SolverError,
    dense_spectrum,
    extremal_eigenvalues,
    interior_window,
)
from .entanglement import (
    Bipartition,
    ReducedDensityMatrix,
    ee_symmetry_check,
    entropy,
    reduced_density,
)
from .hamiltonian import (
    DisorderModel,
    SparseHamiltonian,
    assemble,
    build_full_oracle,
    disorder_diagonal,
    interaction_elements,
)
from .harness import (
    ConfigError,
    RunConfig,
    SweepError,
    SweepResult,
    derive_seed,
    emit_outputs,
    run_realization,
    run_sweep,
)
from .lattice import Bond, LatticeSpec, neighbor_pairs, site_coords, site_index
from .levelstats import (
    BrodyFit,
    FitError,
    GapRatioSeries,
    LevelStatsSummary,
    brody_ratio_cdf,
    brody_ratio_pdf,
    brody_spacing_pdf,
    fit_brody,
    gap_ratios,
    histogram_density,
    reference_r_values,
    sample_brody_spacings,
    spectral_average,
)
from .degeneracy import (
    DegeneracyReport,
    SpinSignature,
    degeneracy_classes,
    degenerate_fraction_scan,
    signature,
    verify_diagonal_degeneracy,
)
