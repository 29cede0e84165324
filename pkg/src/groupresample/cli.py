"""Command line interface: ``groupresample <command> [options]``.

Exit codes are 0 on success, 2 for usage errors, 3 when a subsampling plan
or constraint is infeasible, and 4 when the optimiser does not converge.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .cayley import CayleyError, NoCompliantGenerator, build_cayley, general_subsample
from .fourier import irreps
from .groups import GroupError, default_generators, group_from_spec
from .harness import (
    ExperimentSpec,
    PipelineFailure,
    canonical_solution,
    load_solution,
    report_csv,
    run_table1,
    save_solution,
)
from .io import dumps_json, fmt, response_svg
from .optimizer import InfeasibleConstraint, NonConvergence, OptimizerConfig, solve_M
from .sampling import SamplingError, filter_response

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_NONCONVERGED = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _members(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"members must be comma-separated integers, got {text!r}") from None


def _add_group(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", choices=("cyclic", "dihedral"), required=True)
    p.add_argument("--n", type=int, required=True,
                   help="C_n has n elements; D_2n has 2n elements (n rotations)")


def _add_subgroup(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--rate", type=int, help="total subsampling rate")
    g.add_argument("--members", type=_members, help="explicit subgroup as comma-separated element indices")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="groupresample", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group-info", help="print a group summary, optionally export its Cayley graph")
    _add_group(p)
    p.add_argument("--dot", help="write the Cayley graph as Graphviz DOT")

    p = sub.add_parser("subsample", help="plan a subsampling by a given rate and print it as JSON")
    _add_group(p)
    p.add_argument("--rate", type=int, required=True)
    p.add_argument("--out", help="also write the plan to this file")
    p.add_argument("--dot", help="write the parent Cayley graph as Graphviz DOT")

    p = sub.add_parser("solve-aa", help="solve for the anti-aliasing map and write M, P and diagnostics")
    _add_group(p)
    _add_subgroup(p)
    p.add_argument("--lambda", dest="lam", type=float, default=5.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--canonical", action="store_true", help="use the ideal low-pass map (cyclic, rate 2)")
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("report-table1", help="run the eight reference subsampling pairs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=128)
    p.add_argument("--lambda", dest="lam", type=float, default=5.0)
    p.add_argument("--out", help="CSV path (stdout if omitted)")

    p = sub.add_parser("filter-response", help="response of the anti-aliasing projector to a unit impulse")
    p.add_argument("--solution", help="directory written by solve-aa")
    p.add_argument("--kind", choices=("cyclic", "dihedral"))
    p.add_argument("--n", type=int)
    _add_subgroup(p, required=False)
    p.add_argument("--lambda", dest="lam", type=float, default=5.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--canonical", action="store_true")
    p.add_argument("--out", help="CSV path (stdout if omitted)")
    p.add_argument("--svg", help="write an SVG bar chart over the element layout")
    return parser


def _group(args):
    try:
        return group_from_spec({"kind": args.kind, "n": args.n})
    except GroupError as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_group_info(args) -> int:
    G = _group(args)
    gens = default_generators(G)
    gen_txt = ", ".join(f"{G.element_name(g)}({o})" for g, o in zip(gens.generators, gens.orders)) or "none"
    dims = sorted(ir.dim for ir in irreps(G))
    print(f"order {G.order}; generators {gen_txt}; irrep dims {','.join(map(str, dims))}")
    if args.dot:
        Path(args.dot).write_text(build_cayley(G, gens).to_dot())
    return EXIT_OK


def cmd_subsample(args) -> int:
    G = _group(args)
    if args.rate < 1:
        raise UsageError(f"rate must be >= 1, got {args.rate}")
    gens = default_generators(G)
    plan = general_subsample(G, gens, args.rate)
    text = dumps_json(plan.to_json())
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(text)
    if args.dot:
        Path(args.dot).write_text(build_cayley(G, gens).to_dot())
    return EXIT_OK


def _spec(args) -> ExperimentSpec:
    try:
        return ExperimentSpec(args.kind, args.n, args.rate, args.members, args.lam, args.seed,
                              out=getattr(args, "out", None))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _solve(args):
    spec = _spec(args)
    G = _group(args)
    try:
        H = spec.subgroup(G)
    except GroupError as exc:
        raise UsageError(str(exc)) from None
    if args.canonical:
        try:
            return G, H, canonical_solution(G, H)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    config = OptimizerConfig(lam=args.lam, seed=args.seed)
    return G, H, solve_M(G, H, config, raise_on_nonconvergence=True)


def cmd_solve_aa(args) -> int:
    G, H, sol = _solve(args)
    payload = save_solution(args.out, sol, G, H)
    sys.stdout.write(dumps_json(payload))
    return EXIT_OK


def cmd_report_table1(args) -> int:
    if args.trials < 1:
        raise UsageError("trials must be >= 1")
    rows = run_table1(seed=args.seed, trials=args.trials, lam=args.lam)
    _emit(report_csv(rows, args.seed, args.trials), args.out)
    return EXIT_OK


def cmd_filter_response(args) -> int:
    if args.solution:
        path = Path(args.solution)
        if not (path / "solution.json").is_file() or not (path / "M.csv").is_file():
            raise UsageError(f"no solution files in {path}")
        G, _, sol = load_solution(path)
    else:
        if args.kind is None or args.n is None or (args.rate is None and args.members is None):
            raise UsageError("give --solution, or --kind, --n and --rate/--members")
        G, _, sol = _solve(args)
    values = filter_response(sol)
    lines = ["index,word,value"]
    lines += [f"{g},{G.element_name(g)},{fmt(v)}" for g, v in enumerate(values)]
    _emit("\n".join(lines) + "\n", args.out)
    if args.svg:
        Path(args.svg).write_text(response_svg(G, values))
    return EXIT_OK


COMMANDS = {
    "group-info": cmd_group_info,
    "subsample": cmd_subsample,
    "solve-aa": cmd_solve_aa,
    "report-table1": cmd_report_table1,
    "filter-response": cmd_filter_response,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"groupresample: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PipelineFailure as exc:
        print(f"groupresample: {exc}", file=sys.stderr)
        cause = exc.cause
        if isinstance(cause, NonConvergence):
            return EXIT_NONCONVERGED
        if isinstance(cause, (NoCompliantGenerator, InfeasibleConstraint, CayleyError, GroupError)):
            return EXIT_INFEASIBLE
        raise
    except NoCompliantGenerator as exc:
        print(f"groupresample: {exc}", file=sys.stderr)
        print(dumps_json({"factor": exc.factor, "reasons": exc.reasons}), end="", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (InfeasibleConstraint, SamplingError, CayleyError) as exc:
        print(f"groupresample: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except NonConvergence as exc:
        print(f"groupresample: optimiser did not converge: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED


if __name__ == "__main__":
    sys.exit(main())
