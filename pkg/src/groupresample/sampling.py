"""Sampling, bandlimiting and interpolation operators for subgroup subsampling.

Conventions: ``F`` maps signals to coefficients (rows are basis functions),
``F^-1`` maps back.  A bandlimit map ``M`` (``N x M``) satisfies
``S F_G^-1 M = F_sub^-1``; ``B = F_G^-1 M`` spans the bandlimited signals,
``P = B (B^T B)^-1 B^T`` is the anti-aliasing projector and
``I = B F_sub`` interpolates subgroup samples back to the group.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fourier import FourierBasis, real_fourier_basis, regular_rep
from .groups import FiniteGroup, SubgroupEmbedding, make_cyclic, subgroup_from_members


class SamplingError(ValueError):
    pass


class RankDeficientMap(SamplingError):
    """``B^T B`` is singular, so ``B`` does not have full column rank."""

    def __init__(self, null_direction: np.ndarray, sigma_min: float):
        self.null_direction = null_direction
        self.sigma_min = sigma_min
        top = np.argsort(-np.abs(null_direction))[:3]
        super().__init__(
            f"B is rank deficient (smallest singular value {sigma_min:.3e}); "
            f"null direction concentrated on columns {top.tolist()}"
        )


@dataclass(frozen=True, eq=False)
class SamplingMatrix:
    cols: int
    selection: tuple[int, ...]

    @property
    def rows(self) -> int:
        return len(self.selection)

    @property
    def matrix(self) -> np.ndarray:
        S = np.zeros((self.rows, self.cols))
        S[np.arange(self.rows), list(self.selection)] = 1.0
        return S

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(x)[list(self.selection)]


@dataclass(frozen=True, eq=False)
class BandlimitMap:
    M: np.ndarray
    basis_G: FourierBasis = field(repr=False)
    basis_sub: FourierBasis = field(repr=False)
    sampling: SamplingMatrix

    @property
    def B(self) -> np.ndarray:
        return self.basis_G.inverse @ self.M

    def constraint_residual(self) -> float:
        return constraint_residual(self.M, self.basis_G, self.basis_sub, self.sampling)


@dataclass(frozen=True, eq=False)
class BandlimitSolution:
    map: BandlimitMap
    projector: np.ndarray
    interpolator: np.ndarray
    diagnostics: dict = field(default_factory=dict)

    @property
    def sampling(self) -> SamplingMatrix:
        return self.map.sampling


def sampling_matrix(group: FiniteGroup, subgroup: SubgroupEmbedding) -> SamplingMatrix:
    return SamplingMatrix(group.order, tuple(subgroup.members))


def constraint_residual(M, basis_G: FourierBasis, basis_sub: FourierBasis, S: SamplingMatrix) -> float:
    """Frobenius norm of ``S F_G^-1 M - F_sub^-1``."""
    return float(np.linalg.norm(S(basis_G.inverse @ M) - basis_sub.inverse))


def make_map(M, basis_G: FourierBasis, basis_sub: FourierBasis, S: SamplingMatrix) -> BandlimitMap:
    M = np.array(M)
    if M.shape != (basis_G.order, basis_sub.order):
        raise SamplingError(f"M has shape {M.shape}, expected {(basis_G.order, basis_sub.order)}")
    return BandlimitMap(M, basis_G, basis_sub, S)


def cyclic_canonical_M(n: int) -> BandlimitMap:
    """The ideal low-pass map for ``C_n -> C_{n/2}`` in the real ascending-frequency bases.

    This is ``sqrt(2) [I; 0]`` except when ``n/2`` is even: the subgroup's
    alternating (Nyquist) row is already the restriction of the parent's
    frequency-``n/4`` cosine up to a factor 1, so that single entry is 1.
    """
    if n < 2 or n % 2:
        raise SamplingError(f"canonical map needs an even n >= 2, got {n}")
    G = make_cyclic(n)
    H = subgroup_from_members(G, range(0, n, 2))
    h = n // 2
    M = np.zeros((n, h))
    M[:h, :h] = np.sqrt(2) * np.eye(h)
    if h % 2 == 0:
        M[h - 1, h - 1] = 1.0
    return BandlimitMap(M, real_fourier_basis(G), real_fourier_basis(H.induced), sampling_matrix(G, H))


def projector_from_M(bmap: BandlimitMap, rcond: float = 1e-10) -> np.ndarray:
    B = bmap.B
    U, sig, Vt = np.linalg.svd(B, full_matrices=False)
    if sig.size and sig[-1] <= rcond * max(sig[0], 1.0):
        raise RankDeficientMap(Vt[-1], float(sig[-1]))
    # B (B^T B)^-1 B^T == U U^T for the thin SVD of a full-rank B
    P = U @ U.conj().T
    return P.real if np.isrealobj(B) else P


def interpolator_from_M(bmap: BandlimitMap) -> np.ndarray:
    return bmap.B @ bmap.basis_sub.forward


def spectral_projector(M: np.ndarray) -> np.ndarray:
    """``M (M^H M)^-1 M^H``, the projector in the Fourier domain."""
    return M @ np.linalg.solve(M.conj().T @ M, M.conj().T)


def equivariance_error(P: np.ndarray, group: FiniteGroup) -> float:
    """``max_g ||P rho(g) - rho(g) P||_F / ||P||_F`` for the regular representation."""
    norm = np.linalg.norm(P)
    if norm == 0:
        return 0.0
    rho = regular_rep(group)
    worst = max(float(np.linalg.norm(P @ r - r @ P)) for r in rho)
    return worst / norm


def solution_from_map(bmap: BandlimitMap, diagnostics: dict | None = None) -> BandlimitSolution:
    P = projector_from_M(bmap)
    I = interpolator_from_M(bmap)
    diag = {"constraint_residual": bmap.constraint_residual()}
    diag.update(diagnostics or {})
    return BandlimitSolution(bmap, P, I, diag)


def verify_reconstruction(solution: BandlimitSolution, S: SamplingMatrix | None = None,
                          trials: int = 128, seed: int = 0) -> dict:
    """Reconstruction error of anti-aliased and raw subsampling on Gaussian signals.

    Errors are Euclidean norms ``||x_bl - I S y||_2`` where ``x_bl = P x`` and
    ``y`` is either ``x_bl`` (with anti-aliasing, max over trials) or the raw
    ``x`` (without, mean over trials).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    S = S or solution.sampling
    P, I = solution.projector, solution.interpolator
    N = P.shape[0]
    X = np.random.default_rng(seed).standard_normal((N, trials))
    X_bl = P @ X
    with_aa = np.linalg.norm(X_bl - I @ S(X_bl), axis=0)
    without_aa = np.linalg.norm(X_bl - I @ S(X), axis=0)
    return {
        "err_with_aa": float(with_aa.max()),
        "err_without_aa": float(without_aa.mean()),
        "err_with_aa_sq": float((with_aa**2).max()),
        "err_without_aa_sq": float((without_aa**2).mean()),
        "seed": seed,
        "trials": trials,
    }


def filter_response(solution: BandlimitSolution) -> np.ndarray:
    group = solution.map.basis_G.group
    delta = np.zeros(solution.projector.shape[0])
    delta[group.identity] = 1.0
    return solution.projector @ delta
