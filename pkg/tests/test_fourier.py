import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupresample import (
    complex_fourier_basis,
    fourier_forward,
    fourier_inverse,
    irreps,
    make_cyclic,
    make_dihedral,
    real_fourier_basis,
    regular_rep,
    spectral_regular_rep,
    subgroup_from_members,
)
from groupresample.io import basis_csv

from conftest import groups_up_to


@pytest.mark.parametrize("G", groups_up_to(24), ids=lambda g: g.label)
def test_irreps_are_homomorphisms(G):
    for ir in irreps(G):
        lhs = ir.matrices[G.mul]  # rho(g h)
        rhs = np.einsum("gij,hjk->ghik", ir.matrices, ir.matrices)
        assert np.allclose(lhs, rhs, atol=1e-12)


def test_cyclic_character_values():
    (_, chi1, chi2, _) = irreps(make_cyclic(4))
    assert np.isclose(chi2.matrices[1, 0, 0], -1)
    assert np.isclose(chi1.matrices[1, 0, 0], 1j)


def test_dihedral_irrep_dims():
    assert sorted(ir.dim for ir in irreps(make_dihedral(4))) == [1, 1, 1, 1, 2]
    assert sorted(ir.dim for ir in irreps(make_dihedral(5))) == [1, 1, 2, 2]


def test_real_basis_row_order_cyclic():
    labels = [lab[0] for lab in real_fourier_basis(make_cyclic(6)).row_labels]
    assert labels == ["const", "freq1", "freq1", "freq2", "freq2", "freq3"]


def test_induced_subgroup_basis_is_unitary():
    G = make_dihedral(14)
    H = subgroup_from_members(G, list(range(0, 14, 2)) + list(range(14, 28, 2)))
    F = real_fourier_basis(H.induced).forward
    assert np.allclose(F @ F.T, np.eye(14), atol=1e-12)


def test_regular_rep_convention():
    G = make_dihedral(3)
    P = regular_rep(G)
    x = np.arange(G.order, dtype=float)
    for g in range(G.order):
        # (P(g) x)(u) = x(g^-1 u)
        expect = x[G.mul[G.inv[g]]]
        assert np.array_equal(P[g] @ x, expect)


@pytest.mark.parametrize("G", [make_cyclic(8), make_dihedral(6)], ids=lambda g: g.label)
def test_spectral_rep_is_block_diagonal(G):
    basis = complex_fourier_basis(G)
    rho = spectral_regular_rep(basis).matrices
    names = np.array([lab[0] for lab in basis.row_labels])
    off = names[:, None] != names[None, :]
    assert np.abs(rho[:, off]).max() <= 1e-12


@given(st.sampled_from(groups_up_to(30)), st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_round_trip(G, seed):
    x = np.random.default_rng(seed).standard_normal(G.order)
    for basis in (real_fourier_basis(G), complex_fourier_basis(G)):
        assert np.allclose(fourier_inverse(basis, fourier_forward(basis, x)), x, atol=1e-12)


def test_length_mismatch():
    basis = real_fourier_basis(make_cyclic(5))
    with pytest.raises(ValueError):
        fourier_forward(basis, np.zeros(4))
    with pytest.raises(ValueError):
        fourier_inverse(basis, np.zeros(6))


def test_basis_csv_interleaves_complex():
    text = basis_csv(complex_fourier_basis(make_cyclic(2)))
    rows = [line.split(",") for line in text.splitlines()]
    assert rows[0][0] == "chi0:0:0"
    assert len(rows[0]) == 1 + 2 * 2
    assert float(rows[1][3]) == pytest.approx(-1 / np.sqrt(2))
