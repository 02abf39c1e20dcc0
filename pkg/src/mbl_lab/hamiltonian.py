"""Sparse block Hamiltonians for the disordered Heisenberg model.

The exchange term is built element-wise from raising/lowering matrix
elements inside a fixed-magnetization block: aligned neighbors contribute
+J/4 on the diagonal, antialigned ones -J/4 plus a J/2 spin-flip entry to
the partner state. Disorder is one of three on-site fields and lands
purely on the diagonal. hbar = 1 throughout.
"""

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np
import scipy.sparse

from .basis import BasisBlock, site_bit
from .lattice import Bond, LatticeSpec, neighbor_pairs, site_coords

SQRT2 = math.sqrt(2.0)

UNIFORM = "uniform"
QUASI_1D = "quasi1d"
QUASI_XY = "quasixy"
VARIANTS = (UNIFORM, QUASI_1D, QUASI_XY)


@dataclass(frozen=True, eq=False)
class DisorderModel:
    """One realization of an on-site disorder field.

    uniform  : independent per-site fields h_i drawn from [-h, h]
    quasi1d  : h * cos(2*pi*c*n_i + phi) with n_i the 1-based flat site index
    quasixy  : h * [cos(2*pi*c*n_x + phi_prime) + cos(2*pi*c*n_y + phi)]
               with (n_x, n_y) the 1-based row/column of the site; the field
               is a sum of a row-only and a column-only term, which is what
               produces the exact diagonal degeneracies studied here.
    """

    variant: str
    h: float
    c: float = SQRT2
    phi: float | None = None
    phi_prime: float | None = None
    fields: np.ndarray | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown disorder variant {self.variant!r}")
        if self.h < 0:
            raise ValueError(f"disorder amplitude must be >= 0, got {self.h}")
        if self.variant == UNIFORM:
            if self.fields is None:
                raise ValueError("uniform disorder needs drawn per-site fields")
            f = np.asarray(self.fields, dtype=np.float64)
            if f.ndim != 1 or (self.h > 0 and np.abs(f).max(initial=0.0) > self.h * (1 + 1e-12)):
                raise ValueError("uniform fields must be a flat vector within [-h, h]")
            object.__setattr__(self, "fields", f)
        elif self.variant == QUASI_1D:
            if self.phi is None:
                raise ValueError("quasi1d disorder needs a drawn phase phi")
        else:
            if self.phi is None or self.phi_prime is None:
                raise ValueError("quasixy disorder needs drawn phases phi and phi_prime")

    @classmethod
    def uniform(cls, h, fields):
        return cls(variant=UNIFORM, h=h, fields=np.asarray(fields, dtype=np.float64))

    @classmethod
    def quasi_1d(cls, h, phi, c=SQRT2):
        return cls(variant=QUASI_1D, h=h, c=c, phi=phi)

    @classmethod
    def quasi_xy(cls, h, phi, phi_prime, c=SQRT2):
        return cls(variant=QUASI_XY, h=h, c=c, phi=phi, phi_prime=phi_prime)

    @classmethod
    def draw(cls, variant, h, n_sites, rng, c=SQRT2):
        """Draw a fresh realization: phases uniform on [0, pi], fields on [-h, h]."""
        if variant == UNIFORM:
            return cls.uniform(h, rng.uniform(-h, h, n_sites))
        if variant == QUASI_1D:
            return cls.quasi_1d(h, rng.uniform(0.0, math.pi), c=c)
        if variant == QUASI_XY:
            phi = rng.uniform(0.0, math.pi)
            phi_prime = rng.uniform(0.0, math.pi)
            return cls.quasi_xy(h, phi, phi_prime, c=c)
        raise ValueError(f"unknown disorder variant {variant!r}")


def site_fields(model: DisorderModel, spec: LatticeSpec) -> np.ndarray:
    """Per-site field values f_i; the diagonal term is sum_i m_i * f_i."""
    n = spec.n_sites
    if model.variant == UNIFORM:
        if len(model.fields) != n:
            raise ValueError(f"{len(model.fields)} fields for {n} sites")
        return model.fields.copy()
    if model.variant == QUASI_1D:
        idx = np.arange(1, n + 1, dtype=np.float64)
        return model.h * np.cos(2.0 * math.pi * model.c * idx + model.phi)
    rows = np.empty(n)
    cols = np.empty(n)
    for i in range(n):
        rows[i], cols[i] = site_coords(i, spec)
    return model.h * (
        np.cos(2.0 * math.pi * model.c * rows + model.phi_prime)
        + np.cos(2.0 * math.pi * model.c * cols + model.phi)
    )


@dataclass
class SparseHamiltonian:
    """Real symmetric sparse matrix stored as its upper triangle.

    rows/cols/vals hold the triplets with row <= col; every diagonal slot is
    present even when its value is zero. `csr` mirrors the strict upper
    triangle for matrix-vector products and solver consumption.
    """

    dim: int
    rows: np.ndarray
    cols: np.ndarray
    vals: np.ndarray

    def __post_init__(self):
        if np.any(self.rows > self.cols):
            raise ValueError("triplets must satisfy row <= col")
        self._csr = None

    @property
    def csr(self) -> scipy.sparse.csr_matrix:
        if self._csr is None:
            off = self.rows != self.cols
            r = np.concatenate([self.rows, self.cols[off]])
            c = np.concatenate([self.cols, self.rows[off]])
            v = np.concatenate([self.vals, self.vals[off]])
            self._csr = scipy.sparse.csr_matrix(
                (v, (r, c)), shape=(self.dim, self.dim)
            )
        return self._csr

    def to_dense(self) -> np.ndarray:
        return self.csr.toarray()

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return self.csr @ x


def interaction_elements(block: BasisBlock, bonds: list[Bond], J: float):
    """Heisenberg exchange triplets (rows, cols, vals) over the block.

    For each bond (i, j) and basis state: the Ising part contributes
    J*m_i*m_j = +-J/4 on the diagonal; when the two spins differ, the
    raising/lowering pair connects the state to its spin-flipped partner
    with amplitude J/2. Only row <= col entries are emitted, one summed
    diagonal triplet per state.
    """
    dim = block.dim
    n = block.n_sites
    states = block.states
    ascending = states[::-1]

    diag = np.zeros(dim)
    off_rows, off_cols = [], []
    for bond in bonds:
        bi = site_bit(n, bond.i)
        bj = site_bit(n, bond.j)
        up_i = (states & bi) != 0
        up_j = (states & bj) != 0
        same = up_i == up_j
        diag += np.where(same, 0.25 * J, -0.25 * J)
        flippable = np.nonzero(~same)[0]
        if flippable.size == 0:
            continue
        partners = states[flippable] ^ (bi | bj)
        partner_rank = dim - 1 - np.searchsorted(ascending, partners)
        upper = flippable < partner_rank
        off_rows.append(flippable[upper])
        off_cols.append(partner_rank[upper])

    idx = np.arange(dim, dtype=np.int64)
    if off_rows:
        orow = np.concatenate(off_rows)
        ocol = np.concatenate(off_cols)
    else:
        orow = np.empty(0, dtype=np.int64)
        ocol = np.empty(0, dtype=np.int64)
    rows = np.concatenate([idx, orow])
    cols = np.concatenate([idx, ocol])
    vals = np.concatenate([diag, np.full(orow.shape, 0.5 * J)])
    return rows, cols, vals


def disorder_diagonal(block: BasisBlock, spec: LatticeSpec, model: DisorderModel) -> np.ndarray:
    """Diagonal disorder values sum_i m_i * f_i for every basis state."""
    if block.n_sites != spec.n_sites:
        raise ValueError(
            f"block over {block.n_sites} sites does not match {spec.n_rows}x{spec.n_cols} lattice"
        )
    f = site_fields(model, spec)
    n = spec.n_sites
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    bits = (block.states[:, None] >> shifts[None, :]) & 1
    return (bits - 0.5) @ f


def assemble(
    spec: LatticeSpec, block: BasisBlock, J: float, model: DisorderModel
) -> SparseHamiltonian:
    """Exchange plus diagonal disorder as one symmetric sparse matrix."""
    if block.n_sites != spec.n_sites:
        raise ValueError(
            f"block over {block.n_sites} sites does not match {spec.n_rows}x{spec.n_cols} lattice"
        )
    rows, cols, vals = interaction_elements(block, neighbor_pairs(spec), J)
    vals = vals.copy()
    vals[: block.dim] += disorder_diagonal(block, spec, model)
    return SparseHamiltonian(dim=block.dim, rows=rows, cols=cols, vals=vals)


# -- dense tensor-product oracle (small systems only) -----------------------

_ORACLE_MAX_SITES = 8

_SZ = np.diag([-0.5, 0.5])          # basis order (down, up): index 1 = spin up
_SPLUS = np.array([[0.0, 0.0], [1.0, 0.0]])
_SMINUS = _SPLUS.T.copy()
_ID2 = np.eye(2)


def _kron_ops(op_by_site: dict, n: int) -> np.ndarray:
    factors = [op_by_site.get(k, _ID2) for k in range(n)]
    return reduce(np.kron, factors)


def total_sz_operator(n_sites: int) -> np.ndarray:
    """Sum of single-site S^z operators on the full 2^n space."""
    if n_sites > _ORACLE_MAX_SITES:
        raise ValueError(f"dense operators limited to {_ORACLE_MAX_SITES} sites")
    out = np.zeros((1 << n_sites, 1 << n_sites))
    for i in range(n_sites):
        out += _kron_ops({i: _SZ}, n_sites)
    return out


def build_full_oracle(spec: LatticeSpec, J: float, model: DisorderModel) -> np.ndarray:
    """Full 2^N Hamiltonian via explicit Kronecker products.

    Deliberately naive: used only to validate the element-wise block
    assembly on small lattices.
    """
    n = spec.n_sites
    if n > _ORACLE_MAX_SITES:
        raise ValueError(f"oracle limited to {_ORACLE_MAX_SITES} sites, got {n}")
    H = np.zeros((1 << n, 1 << n))
    for bond in neighbor_pairs(spec):
        i, j = bond.i, bond.j
        H += J * _kron_ops({i: _SZ, j: _SZ}, n)
        H += 0.5 * J * _kron_ops({i: _SPLUS, j: _SMINUS}, n)
        H += 0.5 * J * _kron_ops({i: _SMINUS, j: _SPLUS}, n)
    f = site_fields(model, spec)
    for i in range(n):
        H += f[i] * _kron_ops({i: _SZ}, n)
    return H
