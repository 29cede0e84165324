import numpy as np
import pytest

from groupresample import (
    NonConvergence,
    OptimizerConfig,
    ReynoldsAverager,
    cayley_laplacian,
    cyclic_canonical_M,
    make_cyclic,
    make_dihedral,
    real_fourier_basis,
    sampling_matrix,
    smoothness_weights,
    solve_M,
    spectral_regular_rep,
    subgroup_from_members,
)
from groupresample.optimizer import (
    InfeasibleConstraint,
    Problem,
    equivariance_objective,
    lp_initial_M,
    smooth_objective,
)
from groupresample.sampling import SamplingMatrix


def _problem(G, H, lam=5.0):
    bG, bH = real_fourier_basis(G), real_fourier_basis(H.induced)
    avg = ReynoldsAverager(spectral_regular_rep(bG))
    w = smoothness_weights(bG, cayley_laplacian(G))
    return Problem(bG, bH, sampling_matrix(G, H), avg, w, lam)


@pytest.mark.parametrize("n", [5, 8, 13])
def test_cyclic_laplacian_spectrum(n):
    L = cayley_laplacian(make_cyclic(n))
    k = np.arange(n)
    assert np.allclose(np.sort(np.linalg.eigvalsh(L)), np.sort(2 - 2 * np.cos(2 * np.pi * k / n)))


def test_weights_of_frequency_pairs():
    G = make_cyclic(12)
    w = smoothness_weights(real_fourier_basis(G), cayley_laplacian(G))
    for k in range(1, 6):
        expect = 2 - 2 * np.cos(2 * np.pi * k / 12)
        assert w[2 * k - 1] == pytest.approx(expect)
        assert w[2 * k] == pytest.approx(expect)
    assert w[0] == pytest.approx(0, abs=1e-12)
    assert np.all(np.diff(w[1::2]) > 0)


def test_canonical_smoothness_closed_form():
    G = make_cyclic(16)
    w = smoothness_weights(real_fourier_basis(G), cayley_laplacian(G))
    M = cyclic_canonical_M(16).M
    # sqrt(2) on the first seven diagonal entries, 1 on the eighth
    assert smooth_objective(M, w) == pytest.approx(np.sqrt(2) * w[:7].sum() + w[7])


@pytest.mark.parametrize("G", [make_cyclic(4), make_dihedral(4)], ids=lambda g: g.label)
def test_reynolds_operator_matches_kronecker(G):
    avg = ReynoldsAverager(spectral_regular_rep(real_fourier_basis(G)))
    X = np.random.default_rng(1).standard_normal((G.order, G.order))
    dense = avg.materialize()
    assert np.allclose(avg(X).ravel(), dense @ X.ravel(), atol=1e-12)


def test_reynolds_fixes_identity_and_is_idempotent():
    G = make_dihedral(5)
    avg = ReynoldsAverager(spectral_regular_rep(real_fourier_basis(G)))
    I = np.eye(G.order)
    assert np.allclose(avg(I), I, atol=1e-12)
    X = np.random.default_rng(0).standard_normal((G.order, G.order))
    RX = avg(X)
    assert np.allclose(avg(RX), RX, atol=1e-12)


def test_equivariance_objective_zero_for_equivariant_map():
    G = make_cyclic(30)
    avg = ReynoldsAverager(spectral_regular_rep(real_fourier_basis(G)))
    assert equivariance_objective(cyclic_canonical_M(30).M, avg) <= 1e-24


def test_feasible_parametrisation():
    G = make_dihedral(8)
    H = subgroup_from_members(G, range(0, 16, 2))
    prob = _problem(G, H)
    A = prob.S(prob.basis_G.inverse)
    for seed in range(3):
        c = np.random.default_rng(seed).standard_normal(prob.n_free)
        M = prob.to_M(c)
        assert np.linalg.norm(A @ M - prob.basis_sub.inverse) <= 1e-10
        assert np.allclose(prob.to_c(M), c)


def test_duplicate_samples_are_infeasible():
    G = make_cyclic(6)
    H = subgroup_from_members(G, [0, 2, 4])
    bG = real_fourier_basis(G)
    S = SamplingMatrix(6, (0, 0, 4))
    avg = ReynoldsAverager(spectral_regular_rep(bG))
    with pytest.raises(InfeasibleConstraint):
        Problem(bG, real_fourier_basis(H.induced), S, avg, np.ones(6), 5.0)


def test_lp_start_is_feasible_and_no_rougher_than_canonical():
    G = make_cyclic(30)
    H = subgroup_from_members(G, range(0, 30, 2))
    prob = _problem(G, H)
    M = lp_initial_M(prob)
    A = prob.S(prob.basis_G.inverse)
    assert np.linalg.norm(A @ M - prob.basis_sub.inverse) <= 1e-9
    assert smooth_objective(M, prob.weights) <= smooth_objective(cyclic_canonical_M(30).M, prob.weights) + 1e-9


def test_solve_dihedral_halving():
    G = make_dihedral(8)
    H = subgroup_from_members(G, range(0, 16, 2))
    sol = solve_M(G, H, OptimizerConfig(lam=5.0))
    d = sol.diagnostics
    assert d["constraint_residual"] <= 1e-10
    assert d["converged"]
    assert d["init"] == "lp"


def test_penalty_off_reports_smoothness():
    G = make_cyclic(12)
    H = subgroup_from_members(G, range(0, 12, 3))
    sol = solve_M(G, H, OptimizerConfig(lam=0.0, init="random", seed=0))
    d = sol.diagnostics
    assert d["objective"] == pytest.approx(d["equivariance_objective"])
    assert d["smooth_objective"] > 0
    assert d["equivariance_objective"] <= 1e-12


def test_nonconvergence_raised_on_request():
    G = make_dihedral(10)
    H = subgroup_from_members(G, [0, 5, 10, 15])
    with pytest.raises(NonConvergence) as info:
        solve_M(G, H, OptimizerConfig(init="random", max_iterations=2), raise_on_nonconvergence=True)
    assert info.value.solution.diagnostics["converged"] is False


def test_config_validation():
    with pytest.raises(ValueError):
        OptimizerConfig(lam=-1)
    with pytest.raises(ValueError):
        OptimizerConfig(init="newton")
    with pytest.raises(ValueError):
        OptimizerConfig(init="provided")
