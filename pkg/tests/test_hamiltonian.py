import math

import numpy as np
import pytest

from mbl_lab.basis import enumerate_block
from mbl_lab.hamiltonian import (
    DisorderModel,
    assemble,
    build_full_oracle,
    disorder_diagonal,
    interaction_elements,
    site_fields,
    total_sz_operator,
)
from mbl_lab.lattice import LatticeSpec, neighbor_pairs


def zero_disorder(n_sites):
    return DisorderModel.uniform(0.0, np.zeros(n_sites))


def test_two_spin_sz0_matrix():
    block = enumerate_block(2, 1)
    H = assemble(LatticeSpec(1, 2), block, 1.0, zero_disorder(2))
    assert np.allclose(H.to_dense(), [[-0.25, 0.5], [0.5, -0.25]], atol=1e-15)
    assert np.allclose(np.linalg.eigvalsh(H.to_dense()), [-0.75, 0.25], atol=1e-14)


def test_two_spin_aligned_block_is_pure_diagonal():
    block = enumerate_block(2, 2)
    rows, cols, vals = interaction_elements(block, neighbor_pairs(LatticeSpec(1, 2)), 1.0)
    assert list(rows) == [0] and list(cols) == [0]
    assert vals[0] == 0.25


def test_zero_amplitude_disorder_vanishes():
    spec = LatticeSpec(2, 3)
    block = enumerate_block(6, 3)
    models = [
        zero_disorder(6),
        DisorderModel.quasi_1d(0.0, phi=1.1),
        DisorderModel.quasi_xy(0.0, phi=0.3, phi_prime=2.2),
    ]
    for model in models:
        assert not disorder_diagonal(block, spec, model).any()


def test_quasixy_field_value_at_origin_site():
    # site (1,1) with both phases zero: two equal cosine terms
    model = DisorderModel.quasi_xy(1.0, phi=0.0, phi_prime=0.0)
    f = site_fields(model, LatticeSpec(2, 3))
    expected = 2.0 * math.cos(2.0 * math.pi * math.sqrt(2.0))
    assert abs(f[0] - expected) < 1e-14


def test_quasixy_shared_signature_states_share_diagonal():
    spec = LatticeSpec(2, 3)
    block = enumerate_block(6, 3)
    rng = np.random.default_rng(5)
    for _ in range(25):
        model = DisorderModel.draw("quasixy", 3.0, 6, rng)
        diag = disorder_diagonal(block, spec, model)
        a = block.rank_index[0b100011]
        b = block.rank_index[0b010101]
        assert abs(diag[a] - diag[b]) < 1e-10


def test_assemble_matches_oracle_on_2x2():
    spec = LatticeSpec(2, 2)
    block = enumerate_block(4, 2)
    H = assemble(spec, block, 1.0, zero_disorder(4))
    assert H.dim == 6
    oracle = build_full_oracle(spec, 1.0, zero_disorder(4))
    sub = oracle[np.ix_(block.states, block.states)]
    assert np.abs(H.to_dense() - sub).max() < 1e-12
    assert np.allclose(
        np.linalg.eigvalsh(H.to_dense()), np.linalg.eigvalsh(sub), atol=1e-12
    )


def test_oracle_equivalence_random_draws():
    # 20 random (J, model, phase/field) draws over four lattice shapes
    rng = np.random.default_rng(42)
    lattices = [LatticeSpec(2, 2), LatticeSpec(1, 6), LatticeSpec(2, 3), LatticeSpec(2, 4)]
    variants = ["uniform", "quasi1d", "quasixy"]
    for trial in range(20):
        spec = lattices[trial % 4]
        n = spec.n_sites
        J = rng.uniform(0.25, 2.0)
        h = rng.uniform(0.0, 5.0)
        model = DisorderModel.draw(variants[trial % 3], h, n, rng)
        block = enumerate_block(n, n // 2)
        H = assemble(spec, block, J, model)
        oracle = build_full_oracle(spec, J, model)
        sub = oracle[np.ix_(block.states, block.states)]
        assert np.abs(H.to_dense() - sub).max() < 1e-12


def test_oracle_commutes_with_total_sz():
    rng = np.random.default_rng(9)
    for spec in [LatticeSpec(2, 2), LatticeSpec(2, 3)]:
        model = DisorderModel.draw("quasixy", 2.5, spec.n_sites, rng)
        oracle = build_full_oracle(spec, 1.0, model)
        sz = total_sz_operator(spec.n_sites)
        assert np.abs(oracle @ sz - sz @ oracle).max() < 1e-12


def test_oracle_two_spins_spectrum():
    oracle = build_full_oracle(LatticeSpec(1, 2), 1.0, zero_disorder(2))
    assert np.allclose(np.linalg.eigvalsh(oracle), [-0.75, 0.25, 0.25, 0.25], atol=1e-14)


def test_oracle_refuses_large_lattices():
    with pytest.raises(ValueError):
        build_full_oracle(LatticeSpec(3, 3), 1.0, zero_disorder(9))


def test_zero_exchange_leaves_pure_diagonal():
    spec = LatticeSpec(2, 3)
    block = enumerate_block(6, 3)
    rng = np.random.default_rng(3)
    model = DisorderModel.draw("uniform", 2.0, 6, rng)
    dense = assemble(spec, block, 0.0, model).to_dense()
    assert np.abs(dense - np.diag(np.diag(dense))).max() == 0.0


def test_sparsity_and_symmetry_on_4x3():
    spec = LatticeSpec(4, 3)
    block = enumerate_block(12, 6)
    rng = np.random.default_rng(8)
    model = DisorderModel.draw("quasixy", 4.0, 12, rng)
    H = assemble(spec, block, 1.0, model)
    assert H.dim == 924
    csr = H.csr
    row_counts = np.diff(csr.indptr)
    assert row_counts.max() <= 1 + len(neighbor_pairs(spec))
    assert np.abs((csr - csr.T)).max() == 0.0


def test_block_closure_of_triplets():
    block = enumerate_block(6, 3)
    rows, cols, _ = interaction_elements(block, neighbor_pairs(LatticeSpec(2, 3)), 1.0)
    for r, c in zip(rows, cols):
        assert int(block.states[r]).bit_count() == int(block.states[c]).bit_count()
        assert r <= c


def test_off_diagonal_amplitudes_are_half_J():
    block = enumerate_block(6, 3)
    rows, cols, vals = interaction_elements(block, neighbor_pairs(LatticeSpec(2, 3)), 1.7)
    off = vals[rows != cols]
    assert off.size > 0
    assert np.all(off == 0.5 * 1.7)


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        assemble(LatticeSpec(2, 3), enumerate_block(4, 2), 1.0, zero_disorder(4))


def test_uniform_model_validates_field_bounds():
    with pytest.raises(ValueError):
        DisorderModel.uniform(1.0, [0.5, 1.5])
    with pytest.raises(ValueError):
        DisorderModel(variant="uniform", h=1.0)
    with pytest.raises(ValueError):
        DisorderModel(variant="quasixy", h=1.0, phi=0.2)
    with pytest.raises(ValueError):
        DisorderModel(variant="nope", h=1.0)
