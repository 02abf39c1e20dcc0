"""Reduced density matrices and bipartite entanglement entropy: the
textbook two-spin cases, then eigenstates of a disordered 12-site block
showing the ergodic-to-localized entropy drop.

Run with: python demos/03_entanglement_entropy.py
"""

import math

import numpy as np

from mbl_lab import (
    Bipartition,
    DisorderModel,
    LatticeSpec,
    assemble,
    ee_symmetry_check,
    enumerate_block,
    entropy,
    interior_window,
    reduced_density,
)

# --- two spins: Bell pair vs product state ---------------------------------
pair_block = enumerate_block(2, 1)
bell = np.array([1.0, 1.0]) / math.sqrt(2.0)
rho = reduced_density(bell, pair_block, Bipartition(1, 1))
print(f"Bell pair: reduced eigenvalues {np.round(rho.eigenvalues, 6)}, "
      f"S = {entropy(rho):.6f} (ln 2 = {math.log(2):.6f})")

up_up = np.array([1.0])
rho = reduced_density(up_up, enumerate_block(2, 2), Bipartition(1, 1))
print(f"product |11>: reduced eigenvalues {np.round(np.sort(rho.eigenvalues), 6)}, "
      f"S = {entropy(rho):.6f}")

s_ab, s_ba = ee_symmetry_check(bell, pair_block, Bipartition(1, 1))
print(f"tracing out either side agrees: S_AB = {s_ab:.6f}, S_BA = {s_ba:.6f}")

# --- mid-spectrum eigenstates, weak vs strong disorder ----------------------
spec = LatticeSpec(4, 3)
block = enumerate_block(12, 6)
cut = Bipartition.half(12)  # first two rows vs last two
print(f"\n4x3 lattice cut into {cut.n_a}|{cut.n_b} sites; S_max = "
      f"{cut.n_a * math.log(2):.3f} nats")

for h in (0.5, 30.0):
    rng = np.random.default_rng(7)
    model = DisorderModel.draw("quasixy", h=h, n_sites=12, rng=rng)
    H = assemble(spec, block, 1.0, model)
    window = interior_window(H, epsilon=0.5, M=30)
    entropies = [
        entropy(reduced_density(window.eigenvectors[:, j], block, cut))
        for j in range(30)
    ]
    print(f"h = {h:4g}: mean S = {np.mean(entropies):.4f}, "
          f"per site {np.mean(entropies) / cut.n_a:.4f}")
