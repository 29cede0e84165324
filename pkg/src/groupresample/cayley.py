"""Cayley-graph subsampling of finite groups.

A generator ``s_d`` is subsampled by rate ``R`` by rewiring every
``a -> a s_d`` edge to ``a -> a s_d^R`` and keeping the vertices reachable
from the identity.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .groups import (
    FiniteGroup,
    GeneratorSpec,
    SubgroupEmbedding,
    element_order,
    induced_subgroup,
    power,
)

ORDER_NOT_DIVISIBLE = "order-not-divisible"
POWER_REGENERATED = "discarded-power-regenerated"


class CayleyError(ValueError):
    pass


class NoCompliantGenerator(CayleyError):
    """No generator can be subsampled by the requested prime factor."""

    def __init__(self, factor: int, reasons: dict[str, str]):
        self.factor = factor
        self.reasons = reasons
        detail = ", ".join(f"{g}: {r}" for g, r in reasons.items()) or "no generators"
        super().__init__(f"no compliant generator for factor {factor} ({detail})")


@dataclass(frozen=True, eq=False)
class CayleyGraph:
    group: FiniteGroup
    generators: GeneratorSpec
    edges: tuple[tuple[int, int, int], ...]

    def successors(self, a: int) -> list[int]:
        return [int(self.group.mul[a, s]) for s in self.generators.generators]

    def to_dot(self, name: str = "cayley") -> str:
        palette = ["red", "blue", "darkgreen", "orange", "purple", "brown"]
        lines = [f"digraph {name} {{"]
        for v in range(self.group.order):
            lines.append(f'  {v} [label="{self.group.element_name(v)}"];')
        for a, b, i in self.edges:
            lines.append(f'  {a} -> {b} [color={palette[i % len(palette)]}, label="{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _reachable(group: FiniteGroup, steps: list[int]) -> list[int]:
    """BFS from the identity along right multiplication by each of ``steps``."""
    visited = np.zeros(group.order, dtype=bool)
    visited[group.identity] = True
    order = [group.identity]
    queue = deque(order)
    while queue:
        a = queue.popleft()
        for s in steps:
            b = int(group.mul[a, s])
            if not visited[b]:
                visited[b] = True
                order.append(b)
                queue.append(b)
    return order


def build_cayley(group: FiniteGroup, generators: GeneratorSpec) -> CayleyGraph:
    gens = list(generators.generators)
    if len(_reachable(group, gens)) != group.order:
        raise CayleyError(f"generators {gens} do not generate {group.label}")
    edges = tuple(
        (a, int(group.mul[a, s]), i) for a in range(group.order) for i, s in enumerate(gens)
    )
    return CayleyGraph(group, generators, edges)


def _rewired(group: FiniteGroup, generators: GeneratorSpec, s_d: int, R: int) -> list[int]:
    if s_d not in generators.generators:
        raise CayleyError(f"element {s_d} is not one of the generators {generators.generators}")
    s_pow = power(group, s_d, R)
    return [s_pow if s == s_d else s for s in generators.generators]


def subsample_along(group: FiniteGroup, generators: GeneratorSpec, s_d: int, R: int) -> set[int]:
    """Vertex set reachable from ``e`` once ``s_d`` edges are replaced by ``s_d^R`` edges."""
    if R < 1:
        raise CayleyError(f"rate must be >= 1, got {R}")
    return set(_reachable(group, _rewired(group, generators, s_d, R)))


@dataclass(frozen=True)
class Compliance:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_compliance(group: FiniteGroup, generators: GeneratorSpec, s_d: int, R: int) -> Compliance:
    o_d = element_order(group, s_d)
    if o_d % R:
        return Compliance(False, ORDER_NOT_DIVISIBLE)
    reached = set(_reachable(group, _rewired(group, generators, s_d, R)))
    for k in range(1, o_d):
        if k % R and power(group, s_d, k) in reached:
            return Compliance(False, POWER_REGENERATED)
    return Compliance(True)


def prime_factorize(R: int) -> list[int]:
    if R < 1:
        raise CayleyError(f"rate must be >= 1, got {R}")
    out, p = [], 2
    while p * p <= R:
        while R % p == 0:
            out.append(p)
            R //= p
        p += 1
    if R > 1:
        out.append(R)
    return sorted(out, reverse=True)


@dataclass(frozen=True)
class SamplingStep:
    generator: int
    word: str
    rate: int
    members: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class SamplingPlan:
    parent: FiniteGroup
    steps: tuple[SamplingStep, ...]
    result: SubgroupEmbedding
    per_step_subgroups: tuple[SubgroupEmbedding, ...] = field(repr=False)

    @property
    def rate(self) -> int:
        return int(np.prod([s.rate for s in self.steps], dtype=int))

    def to_json(self) -> dict:
        return {
            "group": self.parent.label,
            "subgroup": self.result.label,
            "rate": self.rate,
            "steps": [
                {"generator": s.word, "element": s.generator, "rate": s.rate, "members": list(s.members)}
                for s in self.steps
            ],
            "members": list(self.result.members),
        }


def _word(name: str, exp: int) -> str:
    if exp == 1:
        return name
    return f"{name}^{exp}" if name.isalpha() else f"({name})^{exp}"


def general_subsample(group: FiniteGroup, generators: GeneratorSpec, R: int) -> SamplingPlan:
    """Subsample ``group`` by total rate ``R``, one prime factor at a time.

    Each factor (largest first) goes to the compliant generator of maximum
    order; ties go to the lowest generator index.
    """
    gens = list(generators.generators)
    orders = list(generators.orders)
    # word of each current generator as (original generator index, exponent)
    words = [(i, 1) for i in range(len(gens))]
    names = [group.element_name(g) for g in gens]
    steps, subgroups = [], []
    members = tuple(range(group.order))
    for factor in prime_factorize(R):
        current = GeneratorSpec(tuple(gens), tuple(orders))
        best, reasons = None, {}
        for j, g in enumerate(gens):
            verdict = check_compliance(group, current, g, factor)
            if not verdict:
                reasons[group.element_name(g)] = verdict.reason
            elif best is None or orders[j] > orders[best]:
                best = j
        if best is None:
            raise NoCompliantGenerator(factor, reasons)
        s_d = gens[best]
        reached = subsample_along(group, current, s_d, factor)
        members = tuple(sorted(reached))
        subgroups.append(induced_subgroup(group, members))
        orig, exp = words[best]
        word = _word(names[orig], exp)
        steps.append(SamplingStep(s_d, word, factor, members))
        gens[best] = power(group, s_d, factor)
        orders[best] //= factor
        words[best] = (orig, exp * factor)
        if orders[best] == 1:
            # identity is never kept as a generator
            del gens[best], orders[best], words[best]
    result = subgroups[-1] if subgroups else induced_subgroup(group, members)
    return SamplingPlan(group, tuple(steps), result, tuple(subgroups))
