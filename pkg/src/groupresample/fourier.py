"""Irreducible representations and Fourier bases of cyclic and dihedral groups.

Basis rows are indexed by ``(irrep, m, n)`` labels.  Ordering is fixed:

* ``C_n`` real basis: constant, then ``cos_k, sin_k`` for ``k = 1, 2, ...``,
  then the alternating ``cos`` at ``k = n/2`` when ``n`` is even.
* ``D_2n`` real basis: the one-dimensional irreps (trivial, sign, and for
  even ``n`` the two with ``r -> -1``), then each two-dimensional irrep in
  ascending frequency with its entries taken column by column.

Rows of ``forward`` are the orthonormal basis functions sampled over the
group elements, so ``coeffs = forward @ signal``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groups import FiniteGroup, GroupError, Structure, identify


@dataclass(frozen=True, eq=False)
class Irrep:
    name: str
    dim: int
    matrices: np.ndarray  # (N, dim, dim)
    kind: str = "real"

    def __call__(self, g: int) -> np.ndarray:
        return self.matrices[g]


@dataclass(frozen=True, eq=False)
class FourierBasis:
    group: FiniteGroup
    forward: np.ndarray
    inverse: np.ndarray
    row_labels: tuple[tuple[str, int, int], ...]
    kind: str = "real"

    @property
    def order(self) -> int:
        return self.forward.shape[0]


@dataclass(frozen=True, eq=False)
class SpectralRep:
    group: FiniteGroup
    basis: FourierBasis = field(repr=False)
    matrices: np.ndarray  # (N, N, N), matrices[g] = F P(g) F^-1

    def __call__(self, g: int) -> np.ndarray:
        return self.matrices[g]


def _rot(theta: np.ndarray) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.stack([np.stack([c, -s], -1), np.stack([s, c], -1)], -2)


def _cyclic_irreps(st: Structure) -> list[Irrep]:
    n = st.n
    phase = 2j * np.pi * np.outer(np.arange(n), st.rot) / n
    return [Irrep(f"chi{k}", 1, np.exp(phase[k])[:, None, None], "complex") for k in range(n)]


def _dihedral_irreps(st: Structure) -> list[Irrep]:
    n, flip, rot = st.n, st.flip, st.rot
    N = 2 * n
    one = np.ones(N)
    sgn_s = np.where(flip == 1, -1.0, 1.0)
    sgn_r = np.where(rot % 2 == 1, -1.0, 1.0)
    out = [
        Irrep("trivial", 1, one[:, None, None]),
        Irrep("sign", 1, sgn_s[:, None, None]),
    ]
    if n % 2 == 0:
        out.append(Irrep("rsign", 1, sgn_r[:, None, None]))
        out.append(Irrep("rsign_sign", 1, (sgn_r * sgn_s)[:, None, None]))
    refl = np.diag([1.0, -1.0])
    for k in range(1, (n - 1) // 2 + 1):
        mats = _rot(2 * np.pi * k * rot / n)
        mats[flip == 1] = refl @ mats[flip == 1]
        out.append(Irrep(f"rho{k}", 2, mats))
    return out


def irreps(group: FiniteGroup) -> list[Irrep]:
    st = identify(group)
    return _cyclic_irreps(st) if st.kind == "cyclic" else _dihedral_irreps(st)


def irreps_cyclic(n: int) -> list[Irrep]:
    from .groups import make_cyclic

    return irreps(make_cyclic(n))


def irreps_dihedral(n: int) -> list[Irrep]:
    from .groups import make_dihedral

    return irreps(make_dihedral(n))


def _basis(group: FiniteGroup, rows: list[np.ndarray], labels: list, kind: str) -> FourierBasis:
    F = np.array(rows)
    F.setflags(write=False)
    inv = F.conj().T.copy()
    inv.setflags(write=False)
    return FourierBasis(group, F, inv, tuple(labels), kind)


def real_fourier_basis(group: FiniteGroup) -> FourierBasis:
    try:
        st = identify(group)
    except GroupError as exc:
        raise GroupError(f"unsupported group for a Fourier basis: {exc}") from None
    N = group.order
    rows, labels = [], []
    if st.kind == "cyclic":
        n, m = st.n, st.rot
        rows.append(np.full(N, 1 / np.sqrt(N)))
        labels.append(("const", 0, 0))
        for k in range(1, (n - 1) // 2 + 1):
            rows.append(np.sqrt(2 / N) * np.cos(2 * np.pi * k * m / n))
            labels.append((f"freq{k}", 0, 0))
            rows.append(np.sqrt(2 / N) * np.sin(2 * np.pi * k * m / n))
            labels.append((f"freq{k}", 1, 0))
        if n % 2 == 0 and n > 1:
            rows.append(np.cos(np.pi * m) / np.sqrt(N))
            labels.append((f"freq{n // 2}", 0, 0))
        return _basis(group, rows, labels, "real")
    # dihedral irreps are all of real type, so every entry is kept
    for ir in _dihedral_irreps(st):
        scale = np.sqrt(ir.dim / N)
        for col in range(ir.dim):
            for row in range(ir.dim):
                rows.append(scale * ir.matrices[:, row, col])
                labels.append((ir.name, row, col))
    return _basis(group, rows, labels, "real")


def complex_fourier_basis(group: FiniteGroup) -> FourierBasis:
    try:
        irs = irreps(group)
    except GroupError as exc:
        raise GroupError(f"unsupported group for a Fourier basis: {exc}") from None
    N = group.order
    rows, labels = [], []
    for ir in irs:
        scale = np.sqrt(ir.dim / N)
        for row in range(ir.dim):
            for col in range(ir.dim):
                rows.append(scale * np.conj(ir.matrices[:, row, col]).astype(complex))
                labels.append((ir.name, row, col))
    return _basis(group, rows, labels, "complex")


def fourier_forward(basis: FourierBasis, signal) -> np.ndarray:
    x = np.asarray(signal)
    if x.shape[0] != basis.order:
        raise ValueError(f"signal has length {x.shape[0]}, group has order {basis.order}")
    return basis.forward @ x


def fourier_inverse(basis: FourierBasis, coeffs) -> np.ndarray:
    c = np.asarray(coeffs)
    if c.shape[0] != basis.order:
        raise ValueError(f"coefficients have length {c.shape[0]}, group has order {basis.order}")
    return basis.inverse @ c


def regular_rep(group: FiniteGroup) -> np.ndarray:
    """Permutation matrices with ``(P(g) x)(u) = x(g^-1 u)``, stacked as ``(N, N, N)``."""
    N = group.order
    P = np.zeros((N, N, N))
    for g in range(N):
        # P(g) e_v = e_{g v}
        P[g, group.mul[g], np.arange(N)] = 1.0
    return P


def spectral_regular_rep(basis: FourierBasis, group: FiniteGroup | None = None) -> SpectralRep:
    group = group or basis.group
    P = regular_rep(group)
    mats = basis.forward @ P @ basis.inverse
    if basis.kind == "real":
        mats = mats.real
    mats.setflags(write=False)
    return SpectralRep(group, basis, mats)
