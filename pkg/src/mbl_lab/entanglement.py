"""Bipartite von Neumann entanglement entropy of block eigenvectors.

The cut takes subsystem A as the first n_a sites in row-major order, so a
block eigenvector expanded to the full product space reshapes directly
into a 2^n_a x 2^n_b matrix with no qubit permutation.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .basis import BasisBlock, expand_to_full

NORM_TOL = 1e-10
EIG_FLOOR = -1e-12     # below this a reduced density eigenvalue is an error
ENTROPY_CLAMP = 1e-14  # eigenvalues under this are treated as exact zeros


@dataclass(frozen=True)
class Bipartition:
    """Contiguous row-major cut: A = first n_a sites, B = the rest."""

    n_a: int
    n_b: int

    def __post_init__(self):
        if self.n_a < 1 or self.n_b < 1:
            raise ValueError("both subsystems need at least one site")

    @property
    def n_sites(self) -> int:
        return self.n_a + self.n_b

    @classmethod
    def half(cls, n_sites: int) -> "Bipartition":
        n_a = n_sites // 2
        return cls(n_a=n_a, n_b=n_sites - n_a)


@dataclass
class ReducedDensityMatrix:
    matrix: np.ndarray
    eigenvalues: np.ndarray

    @classmethod
    def from_matrix(cls, rho: np.ndarray) -> "ReducedDensityMatrix":
        lam = scipy.linalg.eigvalsh(rho)
        if lam.min(initial=0.0) < EIG_FLOOR:
            raise ValueError(f"density matrix has eigenvalue {lam.min()} below {EIG_FLOOR}")
        lam = np.clip(lam, 0.0, None)
        if abs(np.trace(rho) - 1.0) > NORM_TOL or abs(lam.sum() - 1.0) > NORM_TOL:
            raise ValueError("density matrix trace differs from 1")
        return cls(matrix=rho, eigenvalues=lam)


def _state_matrix(block_vector, block: BasisBlock, cut: Bipartition) -> np.ndarray:
    if cut.n_sites != block.n_sites:
        raise ValueError(f"cut over {cut.n_sites} sites, block over {block.n_sites}")
    v = np.asarray(block_vector, dtype=np.float64)
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"state norm {norm} not 1 within {NORM_TOL}")
    return expand_to_full(v, block).reshape(1 << cut.n_a, 1 << cut.n_b)


def reduced_density(block_vector, block: BasisBlock, cut: Bipartition) -> ReducedDensityMatrix:
    """Trace out B: reshape the expanded state and form M M^T."""
    M = _state_matrix(block_vector, block, cut)
    return ReducedDensityMatrix.from_matrix(M @ M.T)


def entropy_of_eigenvalues(eigenvalues) -> float:
    """-sum lam*ln(lam) with 0*ln(0) = 0."""
    lam = np.asarray(eigenvalues, dtype=np.float64)
    lam = lam[lam > ENTROPY_CLAMP]
    return float(-(lam * np.log(lam)).sum())


def entropy(rho: ReducedDensityMatrix) -> float:
    """Von Neumann entropy in nats; bounded by n_a * ln(2)."""
    return entropy_of_eigenvalues(rho.eigenvalues)


def ee_symmetry_check(block_vector, block: BasisBlock, cut: Bipartition):
    """(S_AB, S_BA) computed independently from M M^T and M^T M."""
    M = _state_matrix(block_vector, block, cut)
    s_ab = entropy(ReducedDensityMatrix.from_matrix(M @ M.T))
    s_ba = entropy(ReducedDensityMatrix.from_matrix(M.T @ M))
    if abs(s_ab - s_ba) >= 1e-9:
        raise AssertionError(f"S_AB={s_ab} and S_BA={s_ba} disagree beyond 1e-9")
    return s_ab, s_ba
