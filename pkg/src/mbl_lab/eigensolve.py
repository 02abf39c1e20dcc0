"""Spectrum extremes, dense spectra, and interior eigenpair windows.

Blocks up to DENSE_THRESHOLD are handled with LAPACK; larger ones use
ARPACK shift-invert targeting, which maps eigenvalues near the shift to
dominant eigenvalues of the inverted operator.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse.linalg
from scipy.sparse.linalg import ArpackNoConvergence

from .hamiltonian import SparseHamiltonian

DENSE_THRESHOLD = 4000
CONVERGENCE_TOL = 1e-10
RESIDUAL_TOL = 1e-8


class SolverError(RuntimeError):
    """Eigensolver failure; carries whatever estimates converged."""

    def __init__(self, message, best_eigenvalues=None):
        super().__init__(message)
        self.best_eigenvalues = best_eigenvalues


@dataclass
class EigenWindow:
    """M eigenpairs nearest a target energy, plus the spectrum extremes."""

    e_min: float
    e_max: float
    target_energy: float
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # column k pairs with eigenvalues[k]

    def validate(self, H: SparseHamiltonian):
        w, V = self.eigenvalues, self.eigenvectors
        if np.any(np.diff(w) < 0):
            raise SolverError("window eigenvalues not sorted ascending", w)
        slack = RESIDUAL_TOL * max(1.0, abs(self.e_min), abs(self.e_max))
        if w[0] < self.e_min - slack or w[-1] > self.e_max + slack:
            raise SolverError("window escapes the [e_min, e_max] range", w)
        resid = H.csr @ V - V * w[None, :]
        scale = np.maximum(1.0, np.abs(w))
        worst = np.linalg.norm(resid, axis=0) / scale
        if np.any(worst > RESIDUAL_TOL):
            raise SolverError(f"eigenpair residual {worst.max():.3e} above {RESIDUAL_TOL}", w)
        gram = V.T @ V - np.eye(V.shape[1])
        if np.abs(gram).max() > RESIDUAL_TOL:
            raise SolverError("window eigenvectors not orthonormal", w)


def target_from_density(e_min: float, e_max: float, epsilon: float) -> float:
    """Energy at normalized spectral position epsilon (0 = top, 1 = bottom)."""
    return e_max - epsilon * (e_max - e_min)


def dense_spectrum(H: SparseHamiltonian):
    """Full ascending eigendecomposition; refuses blocks above the threshold."""
    if H.dim > DENSE_THRESHOLD:
        raise ValueError(
            f"dim {H.dim} exceeds dense threshold {DENSE_THRESHOLD}; use interior_window"
        )
    return scipy.linalg.eigh(H.to_dense())


def extremal_eigenvalues(H: SparseHamiltonian):
    """(e_min, e_max) of the block, accurate to ~1e-8 relative."""
    if H.dim < 2:
        raise ValueError("need dim >= 2 for spectrum extremes")
    if H.dim <= DENSE_THRESHOLD:
        w = scipy.linalg.eigvalsh(H.to_dense())
        return float(w[0]), float(w[-1])
    A = H.csr
    try:
        lo = scipy.sparse.linalg.eigsh(
            A, k=1, which="SA", tol=CONVERGENCE_TOL, return_eigenvectors=False
        )
        hi = scipy.sparse.linalg.eigsh(
            A, k=1, which="LA", tol=CONVERGENCE_TOL, return_eigenvectors=False
        )
    except ArpackNoConvergence as exc:
        raise SolverError(
            "extremal eigenvalue iteration did not converge", exc.eigenvalues
        ) from exc
    return float(lo[0]), float(hi[0])


def interior_window(H: SparseHamiltonian, epsilon: float, M: int) -> EigenWindow:
    """The M eigenpairs closest to the energy at spectral position epsilon.

    Eigenvalues come back ascending; by closeness the selected set is a
    contiguous window of the sorted spectrum.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon}")
    if not 1 <= M <= H.dim:
        raise ValueError(f"window size {M} outside 1..{H.dim}")
    if H.dim <= DENSE_THRESHOLD:
        return _dense_window(H, epsilon, M)
    return _shift_invert_window(H, epsilon, M)


def _dense_window(H, epsilon, M):
    A = H.to_dense()
    w = scipy.linalg.eigvalsh(A)
    e_min, e_max = float(w[0]), float(w[-1])
    target = target_from_density(e_min, e_max, epsilon)
    nearest = np.argsort(np.abs(w - target), kind="stable")[:M]
    i0, i1 = int(nearest.min()), int(nearest.max())
    assert i1 - i0 == M - 1  # closest-M set is contiguous in the sorted spectrum
    wm, Vm = scipy.linalg.eigh(A, subset_by_index=[i0, i1])
    win = EigenWindow(e_min, e_max, target, wm, Vm)
    win.validate(H)
    return win


def _shift_invert_window(H, epsilon, M):
    e_min, e_max = extremal_eigenvalues(H)
    target = target_from_density(e_min, e_max, epsilon)
    A = H.csr.tocsc()
    sigma = target
    last_error = None
    for _ in range(2):
        try:
            # symmetric-pattern minimum-degree ordering keeps LU fill far below
            # the default COLAMD choice on these spin-block matrices
            lu = scipy.sparse.linalg.splu(
                (A - sigma * scipy.sparse.identity(H.dim, format="csc")).tocsc(),
                permc_spec="MMD_AT_PLUS_A",
            )
            op_inv = scipy.sparse.linalg.LinearOperator(
                A.shape, matvec=lu.solve, dtype=np.float64
            )
            w, V = scipy.sparse.linalg.eigsh(
                A,
                k=M,
                sigma=sigma,
                which="LM",
                OPinv=op_inv,
                tol=CONVERGENCE_TOL,
                maxiter=50 * M,
            )
            order = np.argsort(w)
            win = EigenWindow(e_min, e_max, target, w[order], V[:, order])
            win.validate(H)
            return win
        except (RuntimeError, ArpackNoConvergence) as exc:
            last_error = exc
            # factorization can hit a (near-)singular shift; nudge deterministically
            sigma = sigma * (1 + 1e-10) + 1e-12
    best = getattr(last_error, "eigenvalues", None)
    raise SolverError(f"shift-invert failed near sigma={target}: {last_error}", best)
