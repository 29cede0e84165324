"""Finite groups stored as index-based multiplication tables.

Elements are the integers ``0..N-1``.  Cyclic groups use addition modulo
``n``; dihedral groups ``D_2n`` use the encoding ``k -> r^k`` for ``k < n``
and ``n + k -> s r^k``.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


class GroupError(ValueError):
    """Raised for invalid group constructions or subgroup requests."""


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mul: np.ndarray
    identity: int
    inv: np.ndarray
    label: str = ""
    kind: str | None = None
    n: int | None = None

    def __post_init__(self):
        mul = np.asarray(self.mul, dtype=np.int64)
        inv = np.asarray(self.inv, dtype=np.int64)
        mul.setflags(write=False)
        inv.setflags(write=False)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "inv", inv)

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label or '?'}, order={self.order})"

    def element_name(self, g: int) -> str:
        """Human readable word for an element (``e``, ``r^3``, ``s r^2``)."""
        if self.kind == "cyclic":
            return "e" if g == 0 else ("r" if g == 1 else f"r^{g}")
        if self.kind == "dihedral":
            n = self.n
            flip, rot = divmod(int(g), n)
            rpart = "" if rot == 0 else ("r" if rot == 1 else f"r^{rot}")
            if flip:
                return "s" + (" " + rpart if rpart else "")
            return rpart or "e"
        return str(int(g))

    def to_spec(self) -> dict:
        if self.kind is None:
            raise GroupError("only cyclic and dihedral groups have a JSON spec")
        return {"kind": self.kind, "n": self.n, "label": self.label}

    def table_csv(self) -> str:
        return "\n".join(",".join(str(int(v)) for v in row) for row in self.mul) + "\n"


@dataclass(frozen=True)
class GeneratorSpec:
    generators: tuple[int, ...]
    orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(int(g) for g in self.generators))
        object.__setattr__(self, "orders", tuple(int(o) for o in self.orders))
        if len(self.generators) != len(self.orders):
            raise GroupError("generators and orders differ in length")

    @classmethod
    def from_elements(cls, group: FiniteGroup, generators: Iterable[int]) -> "GeneratorSpec":
        gens = tuple(int(g) for g in generators)
        return cls(gens, tuple(element_order(group, g) for g in gens))

    def __len__(self) -> int:
        return len(self.generators)


@dataclass(frozen=True, eq=False)
class SubgroupEmbedding:
    parent: FiniteGroup
    members: tuple[int, ...]
    induced: FiniteGroup = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def label(self) -> str:
        return self.induced.label


def _from_table(mul: np.ndarray, label: str, kind: str | None = None, n: int | None = None) -> FiniteGroup:
    N = mul.shape[0]
    identity = int(np.flatnonzero((mul == np.arange(N)[None, :]).all(axis=1))[0])
    inv = np.argmax(mul == identity, axis=1)
    return FiniteGroup(mul, identity, inv, label, kind, n)


def make_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError(f"cyclic group needs n >= 1, got {n}")
    a = np.arange(n)
    return _from_table((a[:, None] + a[None, :]) % n, f"C_{n}", "cyclic", n)


def make_dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n``, ``<s, r | s^2 = r^n = (sr)^2 = e>``."""
    if n < 1:
        raise GroupError(f"dihedral group needs n >= 1, got {n}")
    idx = np.arange(2 * n)
    flip, rot = idx // n, idx % n
    # (s^a r^i)(s^b r^j) = s^(a+b) r^((-1)^b i + j)
    a, i = flip[:, None], rot[:, None]
    b, j = flip[None, :], rot[None, :]
    sign = np.where(b == 1, -1, 1)
    out_flip = (a + b) % 2
    out_rot = (sign * i + j) % n
    return _from_table(out_flip * n + out_rot, f"D_{2 * n}", "dihedral", n)


def group_from_spec(spec: dict) -> FiniteGroup:
    kind, n = spec.get("kind"), spec.get("n")
    if not isinstance(n, int):
        raise GroupError(f"group spec needs integer 'n', got {n!r}")
    if kind == "cyclic":
        g = make_cyclic(n)
    elif kind == "dihedral":
        g = make_dihedral(n)
    else:
        raise GroupError(f"unknown group kind {kind!r}")
    if spec.get("label"):
        g = dataclasses.replace(g, label=spec["label"])
    return g


def load_group(path: str | Path) -> FiniteGroup:
    return group_from_spec(json.loads(Path(path).read_text()))


def default_generators(group: FiniteGroup) -> GeneratorSpec:
    """``{r}`` for ``C_n`` and ``(s, r)`` for ``D_2n``; identity is never included."""
    if group.kind == "cyclic":
        gens = [1] if group.n > 1 else []
    elif group.kind == "dihedral":
        gens = [group.n] + ([1] if group.n > 1 else [])
    else:
        raise GroupError(f"no default generators for {group!r}")
    return GeneratorSpec.from_elements(group, gens)


def power(group: FiniteGroup, g: int, k: int) -> int:
    if k < 0:
        g, k = int(group.inv[g]), -k
    out, base = group.identity, int(g)
    # square-and-multiply; powers of one element commute
    while k:
        if k & 1:
            out = int(group.mul[out, base])
        base = int(group.mul[base, base])
        k >>= 1
    return out


def element_order(group: FiniteGroup, g: int) -> int:
    k, x = 1, int(g)
    while x != group.identity:
        x = int(group.mul[x, g])
        k += 1
    return k


def check_axioms(group: FiniteGroup) -> list[str]:
    """Return a list of violated axioms (empty when the table is a group)."""
    mul, N, e = group.mul, group.order, group.identity
    problems = []
    full = np.arange(N)
    if not all((np.sort(mul, axis=1) == full).all(axis=1)) or not all((np.sort(mul, axis=0).T == full).all(axis=1)):
        problems.append("latin-square")
    if not ((mul[e] == full).all() and (mul[:, e] == full).all()):
        problems.append("identity")
    if not (mul[full, group.inv] == e).all():
        problems.append("inverse")
    # (ab)c == a(bc) for every triple
    if not (mul[mul[:, :, None], full[None, None, :]] == mul[full[:, None, None], mul[None, :, :]]).all():
        problems.append("associativity")
    return problems


def _subgroup_violation(group: FiniteGroup, subset: Sequence[int]) -> str | None:
    members = set(int(x) for x in subset)
    if group.identity not in members:
        return "identity missing"
    for a in members:
        if int(group.inv[a]) not in members:
            return f"inverse of {group.element_name(a)} missing"
    for a in members:
        for b in members:
            if int(group.mul[a, b]) not in members:
                return f"not closed: {group.element_name(a)}*{group.element_name(b)}"
    return None


def is_subgroup(group: FiniteGroup, subset: Sequence[int]) -> bool:
    return _subgroup_violation(group, subset) is None


def induced_subgroup(group: FiniteGroup, members: Iterable[int]) -> SubgroupEmbedding:
    """Embed ``members`` as a group re-indexed ``0..|H|-1`` in the given member order."""
    members = tuple(dict.fromkeys(int(m) for m in members))
    problem = _subgroup_violation(group, members)
    if problem:
        raise GroupError(f"not a subgroup: {problem}")
    pos = np.full(group.order, -1)
    pos[list(members)] = np.arange(len(members))
    idx = np.asarray(members)
    mul = pos[group.mul[np.ix_(idx, idx)]]
    induced = _from_table(mul, "")
    kind, n = _classify(induced)
    label = f"C_{n}" if kind == "cyclic" else (f"D_{2 * n}" if kind == "dihedral" else f"H_{len(members)}")
    induced = FiniteGroup(induced.mul, induced.identity, induced.inv, label)
    return SubgroupEmbedding(group, members, induced)


def subgroup_from_members(group: FiniteGroup, members: Iterable[int]) -> SubgroupEmbedding:
    """Like :func:`induced_subgroup` but sorts members first (canonical order)."""
    return induced_subgroup(group, sorted(set(int(m) for m in members)))


def left_cosets(group: FiniteGroup, subgroup: SubgroupEmbedding) -> list[list[int]]:
    seen = np.zeros(group.order, dtype=bool)
    cells = []
    h = np.asarray(subgroup.members)
    for g in range(group.order):
        if seen[g]:
            continue
        cell = [int(x) for x in group.mul[g, h]]
        seen[cell] = True
        cells.append(cell)
    # H itself comes first
    first = next(i for i, c in enumerate(cells) if group.identity in c)
    cells.insert(0, cells.pop(first))
    return cells


def generated_closure(group: FiniteGroup, elements: Iterable[int]) -> set[int]:
    """Brute-force closure of ``elements`` under multiplication (includes identity)."""
    elements = [int(x) for x in elements]
    out = {group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for s in elements:
                b = int(group.mul[a, s])
                if b not in out:
                    out.add(b)
                    nxt.append(b)
        frontier = nxt
    return out


@dataclass(frozen=True)
class Structure:
    """Isomorphism onto a canonical ``C_n`` or ``D_2n``: ``g = s^flip[g] r^rot[g]``."""

    kind: str
    n: int
    flip: np.ndarray
    rot: np.ndarray


def _classify(group: FiniteGroup) -> tuple[str | None, int]:
    try:
        st = identify(group)
    except GroupError:
        return None, group.order
    return st.kind, st.n


def identify(group: FiniteGroup) -> Structure:
    """Find coordinates exhibiting ``group`` as a cyclic or dihedral group.

    Canonically constructed groups use their own encoding.  For anything else
    (e.g. induced subgroups) the rotation generator is the lowest-index
    element of the right order and the reflection is the lowest-index element
    outside the rotation subgroup.
    """
    N = group.order
    idx = np.arange(N)
    if group.kind == "cyclic":
        return Structure("cyclic", N, np.zeros(N, dtype=int), idx.copy())
    if group.kind == "dihedral":
        n = group.n
        return Structure("dihedral", n, idx // n, idx % n)
    orders = [element_order(group, g) for g in range(N)]
    if N in orders:
        r = orders.index(N)
        rot = np.empty(N, dtype=int)
        x = group.identity
        for k in range(N):
            rot[x] = k
            x = int(group.mul[x, r])
        return Structure("cyclic", N, np.zeros(N, dtype=int), rot)
    if N % 2 or N < 4:
        raise GroupError(f"group of order {N} is neither cyclic nor dihedral")
    n = N // 2
    for r in (g for g in range(N) if orders[g] == n):
        rpow = [group.identity]
        for _ in range(n - 1):
            rpow.append(int(group.mul[rpow[-1], r]))
        rset = set(rpow)
        s = next(g for g in range(N) if g not in rset)
        if orders[s] != 2:
            continue
        if int(group.mul[group.mul[s, r], s]) != int(group.inv[r]):
            continue
        flip = np.empty(N, dtype=int)
        rot = np.empty(N, dtype=int)
        for k, x in enumerate(rpow):
            flip[x], rot[x] = 0, k
            y = int(group.mul[s, x])
            flip[y], rot[y] = 1, k
        return Structure("dihedral", n, flip, rot)
    raise GroupError(f"group of order {N} is neither cyclic nor dihedral")
