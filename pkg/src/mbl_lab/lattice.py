"""Rectangular open-boundary lattice geometry.

Sites are indexed 0..n_sites-1 in row-major order; the human-facing
coordinates (n_x, n_y) = (row, column) are 1-based, matching the usual
spin labels 1..N on lattice sketches.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class LatticeSpec:
    """An n_rows x n_cols rectangle with open boundaries in both directions."""

    n_rows: int
    n_cols: int

    def __post_init__(self):
        if self.n_rows < 1 or self.n_cols < 1:
            raise ValueError(f"lattice must be at least 1x1, got {self.n_rows}x{self.n_cols}")

    @property
    def n_sites(self) -> int:
        return self.n_rows * self.n_cols

    @property
    def n_bonds(self) -> int:
        return self.n_rows * (self.n_cols - 1) + self.n_cols * (self.n_rows - 1)


@dataclass(frozen=True)
class Bond:
    """Nearest-neighbor pair, stored once with i < j."""

    i: int
    j: int

    def __post_init__(self):
        if not self.i < self.j:
            raise ValueError(f"bond requires i < j, got ({self.i}, {self.j})")


def site_index(row: int, col: int, spec: LatticeSpec) -> int:
    """0-based row-major site index of the site at 1-based (row, col)."""
    if not (1 <= row <= spec.n_rows and 1 <= col <= spec.n_cols):
        raise ValueError(
            f"({row}, {col}) outside {spec.n_rows}x{spec.n_cols} lattice"
        )
    return (row - 1) * spec.n_cols + (col - 1)


def site_coords(index: int, spec: LatticeSpec) -> tuple[int, int]:
    """Inverse of site_index: (row, col), both 1-based."""
    if not (0 <= index < spec.n_sites):
        raise ValueError(f"site index {index} outside 0..{spec.n_sites - 1}")
    return index // spec.n_cols + 1, index % spec.n_cols + 1


def neighbor_pairs(spec: LatticeSpec) -> list[Bond]:
    """All nearest-neighbor bonds, each listed once, sorted lexicographically.

    Open boundaries: a site touches its right and lower neighbor only when
    those exist, so the count is n_rows*(n_cols-1) + n_cols*(n_rows-1).
    """
    bonds = []
    for row in range(1, spec.n_rows + 1):
        for col in range(1, spec.n_cols + 1):
            here = site_index(row, col, spec)
            if col < spec.n_cols:
                bonds.append(Bond(here, site_index(row, col + 1, spec)))
            if row < spec.n_rows:
                bonds.append(Bond(here, site_index(row + 1, col, spec)))
    bonds.sort(key=lambda b: (b.i, b.j))
    return bonds
