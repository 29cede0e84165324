"""Experiment plumbing shared by the CLI and the tests."""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cayley import general_subsample
from .fourier import real_fourier_basis, spectral_regular_rep
from .groups import (
    FiniteGroup,
    GroupError,
    SubgroupEmbedding,
    default_generators,
    group_from_spec,
    subgroup_from_members,
)
from .io import fmt, read_matrix_csv, write_json, write_matrix_csv
from .optimizer import OptimizerConfig, ReynoldsAverager, equivariance_objective, solve_M
from .sampling import (
    BandlimitSolution,
    cyclic_canonical_M,
    equivariance_error,
    make_map,
    sampling_matrix,
    solution_from_map,
    verify_reconstruction,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExperimentSpec:
    kind: str
    n: int
    rate: int | None = None
    members: tuple[int, ...] | None = None
    lam: float = 5.0
    seed: int = 0
    trials: int = 128
    out: str | None = None

    def __post_init__(self):
        if (self.rate is None) == (self.members is None):
            raise ValueError("give exactly one of rate or members")
        if self.rate is not None and self.rate < 1:
            raise ValueError(f"rate must be >= 1, got {self.rate}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")

    def group(self) -> FiniteGroup:
        return group_from_spec({"kind": self.kind, "n": self.n})

    def subgroup(self, group: FiniteGroup | None = None) -> SubgroupEmbedding:
        group = group or self.group()
        if self.members is not None:
            return subgroup_from_members(group, self.members)
        return general_subsample(group, default_generators(group), self.rate).result


@dataclass(frozen=True)
class ReportRow:
    group: str
    subgroup: str
    rate: int
    err_with_aa: float
    err_without_aa: float
    equivariance_error: float
    wall_time: float

    def __post_init__(self):
        for name in ("err_with_aa", "err_without_aa", "equivariance_error", "wall_time"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v >= 0):
                raise ValueError(f"{name} must be finite and nonnegative, got {v}")


# (kind, n, expected subgroup label, rate, explicit members or None)
REFERENCE_PAIRS: tuple[tuple[str, int, str, int, tuple[int, ...] | None], ...] = (
    ("dihedral", 14, "D_14", 2, None),
    ("dihedral", 14, "C_14", 2, tuple(range(14))),
    ("dihedral", 14, "C_7", 4, tuple(range(0, 14, 2))),
    ("dihedral", 10, "D_10", 2, None),
    ("dihedral", 10, "C_10", 2, tuple(range(10))),
    ("dihedral", 10, "D_4", 5, None),
    ("cyclic", 30, "C_15", 2, None),
    ("cyclic", 30, "C_5", 6, None),
)


class PipelineFailure(RuntimeError):
    def __init__(self, row: str, cause: Exception):
        super().__init__(f"row {row}: {cause}")
        self.row = row
        self.cause = cause


def reference_pairs() -> list[tuple[FiniteGroup, SubgroupEmbedding]]:
    pairs = []
    for kind, n, label, rate, members in REFERENCE_PAIRS:
        G = group_from_spec({"kind": kind, "n": n})
        if members is None:
            H = general_subsample(G, default_generators(G), rate).result
        else:
            H = subgroup_from_members(G, members)
        if H.label != label or G.order // H.order != rate:
            raise GroupError(f"{G.label} rate {rate} gave {H.label}, expected {label}")
        pairs.append((G, H))
    return pairs


def run_table1(seed: int = 0, trials: int = 128, lam: float = 5.0) -> list[ReportRow]:
    rows = []
    for G, H in reference_pairs():
        name = f"{G.label}->{H.label}"
        t0 = time.perf_counter()
        try:
            sol = solve_M(G, H, OptimizerConfig(lam=lam, seed=seed), raise_on_nonconvergence=True)
            errs = verify_reconstruction(sol, trials=trials, seed=seed)
        except Exception as exc:  # reported with the failing row attached
            raise PipelineFailure(name, exc) from exc
        rows.append(ReportRow(G.label, H.label, G.order // H.order, errs["err_with_aa"],
                              errs["err_without_aa"], sol.diagnostics["equivariance_error_of_projector"],
                              time.perf_counter() - t0))
        log.info("%s done in %.2fs", name, rows[-1].wall_time)
    return rows


REPORT_COLUMNS = ("group", "subgroup", "rate", "err_with_aa", "err_without_aa", "equivariance_error",
                  "seed", "trials")


def report_csv(rows: list[ReportRow], seed: int, trials: int) -> str:
    """CSV text; wall time is left out so reruns are byte-identical."""
    lines = [",".join(REPORT_COLUMNS)]
    for r in rows:
        lines.append(",".join([r.group, r.subgroup, str(r.rate), fmt(r.err_with_aa), fmt(r.err_without_aa),
                               fmt(r.equivariance_error), str(seed), str(trials)]))
    return "\n".join(lines) + "\n"


def canonical_solution(group: FiniteGroup, subgroup: SubgroupEmbedding) -> BandlimitSolution:
    if group.kind != "cyclic" or tuple(subgroup.members) != tuple(range(0, group.order, 2)):
        raise ValueError("the canonical map needs a cyclic group of even order subsampled by 2")
    bmap = cyclic_canonical_M(group.order)
    sol = solution_from_map(bmap)
    averager = ReynoldsAverager(spectral_regular_rep(bmap.basis_G))
    sol.diagnostics.update(
        group=group.label, subgroup=subgroup.label, rate=2, init="canonical", iterations=0,
        equivariance_objective=equivariance_objective(bmap.M, averager),
        equivariance_error_of_projector=equivariance_error(sol.projector, group),
    )
    return sol


SOLUTION_KEYS = ("group", "subgroup", "rate", "lambda", "seed", "init", "iterations", "converged",
                 "constraint_residual", "equivariance_objective", "smooth_objective", "objective",
                 "stationarity", "equivariance_error_of_projector")


def save_solution(out: str | Path, sol: BandlimitSolution, group: FiniteGroup,
                  subgroup: SubgroupEmbedding) -> dict:
    """Write ``M.csv``, ``P.csv`` and ``solution.json``; returns the JSON payload."""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    write_matrix_csv(out / "M.csv", sol.map.M)
    write_matrix_csv(out / "P.csv", sol.projector)
    payload = {k: sol.diagnostics[k] for k in SOLUTION_KEYS if k in sol.diagnostics}
    payload["parent"] = group.to_spec()
    payload["members"] = list(subgroup.members)
    write_json(out / "solution.json", payload)
    return payload


def load_solution(path: str | Path) -> tuple[FiniteGroup, SubgroupEmbedding, BandlimitSolution]:
    path = Path(path)
    meta = json.loads((path / "solution.json").read_text())
    G = group_from_spec(meta["parent"])
    H = subgroup_from_members(G, meta["members"])
    M = read_matrix_csv(path / "M.csv")
    bmap = make_map(M, real_fourier_basis(G), real_fourier_basis(H.induced), sampling_matrix(G, H))
    return G, H, solution_from_map(bmap, meta)
