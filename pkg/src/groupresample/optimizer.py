"""Equivariant anti-aliasing: solve for the bandlimit map ``M``.

The objective is

    ||P_hat - Reynolds(P_hat)||_F^2 + lam * sum_ij w_i |M_ij|

with ``P_hat = M (M^T M)^-1 M^T`` (the projector expressed in the Fourier
domain) and ``w`` the Laplacian quadratic form of each basis function.  The
reconstruction constraint ``S F_G^-1 M = F_sub^-1`` is linear, so it is
eliminated: ``M = M_p + Z C`` with ``M_p`` the minimum-norm solution and
``Z`` an orthonormal basis of the null space of ``S F_G^-1``.  Descent then
runs over the free coefficients ``C`` and every iterate is feasible.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .cayley import build_cayley
from .fourier import FourierBasis, SpectralRep, real_fourier_basis, spectral_regular_rep
from .groups import FiniteGroup, GeneratorSpec, SubgroupEmbedding, default_generators
from .sampling import (
    BandlimitSolution,
    SamplingMatrix,
    equivariance_error,
    make_map,
    sampling_matrix,
    solution_from_map,
    spectral_projector,
)

log = logging.getLogger(__name__)

SMOOTH_EPS = 1e-8


class OptimizerError(RuntimeError):
    pass


class InfeasibleConstraint(OptimizerError):
    pass


class NonConvergence(OptimizerError):
    def __init__(self, message: str, solution: BandlimitSolution):
        super().__init__(message)
        self.solution = solution


@dataclass(frozen=True)
class OptimizerConfig:
    lam: float = 5.0
    max_iterations: int = 5000
    constraint_tol: float = 1e-10
    stationarity_tol: float = 1e-6
    seed: int = 0
    init: str = "auto"
    initial_M: np.ndarray | None = field(default=None, repr=False)
    perturbation: float = 1e-3

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError(f"lambda must be >= 0, got {self.lam}")
        if self.constraint_tol <= 0 or self.stationarity_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.init not in ("auto", "canonical", "random", "provided", "lp"):
            raise ValueError(f"unknown init {self.init!r}")
        if self.init == "provided" and self.initial_M is None:
            raise ValueError("init='provided' needs initial_M")


class ReynoldsAverager:
    """Group average of conjugation, ``X -> mean_g rho(g) X rho(g)^-1``.

    Applied as an operator; the ``N^2 x N^2`` tensor is never formed.
    """

    def __init__(self, spectral: SpectralRep):
        self.group = spectral.group
        self.spectral = spectral
        self._rho = spectral.matrices
        self._rho_inv = spectral.matrices[spectral.group.inv]

    def __call__(self, X: np.ndarray) -> np.ndarray:
        return (self._rho @ X @ self._rho_inv).mean(axis=0)

    def materialize(self) -> np.ndarray:
        """Dense ``(1/|G|) sum_g rho(g) kron rho(g^-1)^T``; acts on row-major ``vec``."""
        return np.mean([np.kron(r, ri.T) for r, ri in zip(self._rho, self._rho_inv)], axis=0)


def reynolds_apply(averager: ReynoldsAverager, X: np.ndarray) -> np.ndarray:
    return averager(X)


def equivariance_objective(M: np.ndarray, averager: ReynoldsAverager) -> float:
    P_hat = spectral_projector(M)
    D = P_hat - averager(P_hat)
    return float(np.vdot(D, D).real)


def cayley_laplacian(group: FiniteGroup, generators: GeneratorSpec | None = None) -> np.ndarray:
    generators = generators or default_generators(group)
    graph = build_cayley(group, generators)
    A = np.zeros((group.order, group.order))
    for a, b, _ in graph.edges:
        if a != b:
            A[a, b] = A[b, a] = 1.0
    return np.diag(A.sum(axis=1)) - A


def smoothness_weights(basis: FourierBasis, L: np.ndarray) -> np.ndarray:
    Finv = basis.inverse
    w = np.einsum("ij,ik,kj->j", Finv.conj(), L, Finv).real
    # L is PSD, so negative values are rounding noise
    return np.clip(w, 0.0, None)


def smooth_objective(M: np.ndarray, weights: np.ndarray) -> float:
    return float(weights @ np.abs(M).sum(axis=1))


class Problem:
    """The penalised objective over the free coefficients of a feasible ``M``."""

    def __init__(self, basis_G: FourierBasis, basis_sub: FourierBasis, S: SamplingMatrix,
                 averager: ReynoldsAverager, weights: np.ndarray, lam: float):
        self.basis_G, self.basis_sub, self.S = basis_G, basis_sub, S
        self.averager = averager
        self.weights = weights
        self.lam = lam
        A = S(basis_G.inverse)
        T = basis_sub.inverse
        U, sig, Vt = np.linalg.svd(A)
        m = A.shape[0]
        if sig.size < m or sig[-1] <= 1e-10 * sig[0]:
            raise InfeasibleConstraint(f"S F_G^-1 has rank below {m}")
        self.M_p = Vt[:m].T @ ((U.T @ T) / sig[:, None])
        self.Z = Vt[m:].T
        self.shape = (self.Z.shape[1], m)

    @property
    def n_free(self) -> int:
        return self.shape[0] * self.shape[1]

    def to_M(self, c: np.ndarray) -> np.ndarray:
        return self.M_p + self.Z @ c.reshape(self.shape)

    def to_c(self, M: np.ndarray) -> np.ndarray:
        return (self.Z.T @ (M - self.M_p)).ravel()

    def objective_terms(self, M: np.ndarray) -> tuple[float, float]:
        return equivariance_objective(M, self.averager), smooth_objective(M, self.weights)

    def value_and_grad(self, c: np.ndarray, eps: float = SMOOTH_EPS) -> tuple[float, np.ndarray]:
        M = self.to_M(c)
        K = np.linalg.inv(M.T @ M)
        MK = M @ K
        P = MK @ M.T
        D = P - self.averager(P)
        equi = float(np.sum(D * D))
        # d||D||^2/dP = 2 D (Id - Reynolds is an orthogonal projector); dP/dM pulls back
        # a symmetric G to 2 (I - P) G M K
        grad_M = 4.0 * (D @ MK - P @ (D @ MK))
        root = np.sqrt(M * M + eps * eps)
        w = self.weights[:, None]
        smooth = float(np.sum(w * root))
        grad_M += self.lam * w * (M / root)
        return equi + self.lam * smooth, (self.Z.T @ grad_M).ravel()

    def stationarity(self, M: np.ndarray, zero_tol: float = 1e-7) -> float:
        """Norm of the minimal projected (sub)gradient of the unsmoothed objective."""
        K = np.linalg.inv(M.T @ M)
        MK = M @ K
        P = MK @ M.T
        D = P - self.averager(P)
        g = 4.0 * (D @ MK - P @ (D @ MK))
        lw = self.lam * np.broadcast_to(self.weights[:, None], M.shape)
        zero = (np.abs(M) <= zero_tol) & (lw > 0)
        g = g + np.where(zero, 0.0, lw * np.sign(M))
        Zt = self.Z.T
        base = (Zt @ g).ravel()
        if not zero.any():
            return float(np.linalg.norm(base))
        # choose subgradients u_ij in [-lw_ij, lw_ij] on the zero entries
        rows, cols = np.nonzero(zero)
        m = M.shape[1]
        Amat = np.zeros((self.Z.shape[1] * m, rows.size))
        for k, (i, j) in enumerate(zip(rows, cols)):
            Amat[np.arange(self.Z.shape[1]) * m + j, k] = Zt[:, i]
        bound = lw[rows, cols]
        res = optimize.lsq_linear(Amat, -base, bounds=(-bound, bound), method="bvls")
        return float(np.linalg.norm(Amat @ res.x + base))


def lp_initial_M(problem: Problem) -> np.ndarray:
    """Column-wise weighted-L1 minimisation subject to the constraint (a linear program)."""
    A = problem.S(problem.basis_G.inverse)
    T = problem.basis_sub.inverse
    N = A.shape[1]
    w = problem.weights
    # m = u - v, u, v >= 0; a tiny uniform weight keeps zero-weight rows bounded
    cost = np.concatenate([w, w]) + 1e-9
    A_eq = np.hstack([A, -A])
    out = np.empty((N, T.shape[1]))
    for j in range(T.shape[1]):
        res = optimize.linprog(cost, A_eq=A_eq, b_eq=T[:, j], bounds=(0, None), method="highs")
        if res.status != 0:
            raise InfeasibleConstraint(f"linear program for column {j} failed: {res.message}")
        out[:, j] = res.x[:N] - res.x[N:]
    return out


def _is_cyclic_halving(group: FiniteGroup, subgroup: SubgroupEmbedding) -> bool:
    return (group.kind == "cyclic" and group.order % 2 == 0
            and tuple(subgroup.members) == tuple(range(0, group.order, 2)))


def solve_M(group: FiniteGroup, subgroup: SubgroupEmbedding, config: OptimizerConfig | None = None,
            generators: GeneratorSpec | None = None, raise_on_nonconvergence: bool = False) -> BandlimitSolution:
    config = config or OptimizerConfig()
    t0 = time.perf_counter()
    basis_G = real_fourier_basis(group)
    basis_sub = real_fourier_basis(subgroup.induced)
    S = sampling_matrix(group, subgroup)
    averager = ReynoldsAverager(spectral_regular_rep(basis_G))
    weights = smoothness_weights(basis_G, cayley_laplacian(group, generators))
    problem = Problem(basis_G, basis_sub, S, averager, weights, config.lam)

    init = config.init
    if init == "auto":
        # the LP start is the global minimiser of the smoothness term, so when that
        # minimiser is equivariant the descent stops there at once
        init = "canonical" if _is_cyclic_halving(group, subgroup) else "lp"
    rng = np.random.default_rng(config.seed)
    if init == "canonical":
        from .sampling import cyclic_canonical_M

        if not _is_cyclic_halving(group, subgroup):
            raise ValueError("canonical init needs a cyclic group halved onto its even elements")
        c0 = problem.to_c(cyclic_canonical_M(group.order).M)
    elif init == "provided":
        c0 = problem.to_c(np.asarray(config.initial_M, dtype=float))
    elif init == "lp":
        c0 = problem.to_c(lp_initial_M(problem))
    else:
        c0 = config.perturbation * rng.standard_normal(problem.n_free)

    history = []
    iterations = 0
    c = c0
    if problem.n_free:
        res = optimize.minimize(
            problem.value_and_grad, c0, jac=True, method="L-BFGS-B",
            options={"maxiter": config.max_iterations, "maxfun": 4 * config.max_iterations,
                     "ftol": 1e-15, "gtol": 1e-12, "maxcor": 30},
        )
        c, iterations = res.x, int(res.nit)
        history.append(res.message)
    M = problem.to_M(c)
    equi, smooth = problem.objective_terms(M)
    stat = problem.stationarity(M) if problem.n_free else 0.0
    bmap = make_map(M, basis_G, basis_sub, S)
    sol = solution_from_map(bmap)
    diag = sol.diagnostics
    diag.update(
        group=group.label,
        subgroup=subgroup.label,
        rate=group.order // subgroup.order,
        **{"lambda": config.lam},
        seed=config.seed,
        init=init,
        iterations=iterations,
        equivariance_objective=equi,
        smooth_objective=smooth,
        objective=equi + config.lam * smooth,
        stationarity=stat,
        equivariance_error_of_projector=equivariance_error(sol.projector, group),
        converged=bool(stat <= config.stationarity_tol),
        wall_time=time.perf_counter() - t0,
    )
    if diag["constraint_residual"] > config.constraint_tol:
        raise InfeasibleConstraint(f"constraint residual {diag['constraint_residual']:.3e} above tolerance")
    if not diag["converged"]:
        log.warning("solve_M(%s -> %s): stationarity %.3e above %.1e", group.label, subgroup.label,
                    stat, config.stationarity_tol)
        if raise_on_nonconvergence:
            raise NonConvergence(f"stationarity {stat:.3e} after {iterations} iterations", sol)
    return sol
