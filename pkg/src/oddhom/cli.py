"""Command-line entry point: ``oddhom <subcommand> ...``.

Exit status: 0 on success, 1 when the computation ends in a failure outcome
(structure failure, exhausted search budget, no threshold), 2 on usage errors.
``bound-grid`` always exits 0 once the sweep completes; the certificate verdict
is the ``holds`` field of its JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds
from .coloring import hom_find, outcome_tag, outcome_to_dict
from .cycles import odd_girth
from .decomposition import StructureFailure, decompose, default_long_threshold
from .errors import InvalidInputError, InvalidParameterError
from .experiments import ExperimentConfig, run_experiment
from .graph import Graph, generate_gnp
from .oracle import BUDGET_EXCEEDED, DEFAULT_BUDGET, FOUND, circular_chromatic, hom_search, \
    odd_cycle_target


def _emit(obj, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


def _add_graph_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", type=Path, help="graph file ('n m' header, then 'u v' lines)")
    p.add_argument("--n", type=int, help="vertex count for a sampled G(n, c/n)")
    p.add_argument("--c", type=float, help="density c for a sampled G(n, c/n)")


def _load_graph(args, parser) -> Graph:
    if args.input is not None:
        return Graph.read(args.input)
    if args.n is None or args.c is None:
        parser.error("give --input FILE or both --n and --c")
    return generate_gnp(args.n, args.c, args.seed)


def cmd_gen(args, parser) -> int:
    g = generate_gnp(args.n, args.c, args.seed)
    if args.out:
        g.write(args.out)
    elif not args.json:
        sys.stdout.write(g.to_text())
        return 0
    _emit({"n": g.n, "m": g.m, "seed": args.seed, "out": str(args.out) if args.out else None},
          args.json, f"wrote G({g.n}, {args.c}/n) with {g.m} edges to {args.out}")
    return 0


def cmd_odd_girth(args, parser) -> int:
    g = _load_graph(args, parser)
    res = odd_girth(g)
    text = "none" if res.length is None else str(res.length)
    _emit({"odd_girth": res.length, "cycle": list(res.cycle) if res.cycle else None},
          args.json, text)
    return 0


def cmd_hom_find(args, parser) -> int:
    g = _load_graph(args, parser)
    out = hom_find(g, args.ell, args.long_threshold)
    d = outcome_to_dict(out)
    if args.out:
        Path(args.out).write_text(json.dumps(d, sort_keys=True) + "\n")
        d = {k: v for k, v in d.items() if k != "coloring"}
    # the outcome is tagged JSON with or without --json
    print(json.dumps(d, sort_keys=True))
    return 1 if outcome_tag(out) == "StructureFailure" else 0


def cmd_oracle(args, parser) -> int:
    g = _load_graph(args, parser)
    h = Graph.read(args.target) if args.target else odd_cycle_target(args.ell)
    res = hom_search(g, h, args.budget)
    _emit({"status": res.status, "mapping": list(res.mapping) if res.mapping else None,
           "nodes": res.nodes}, args.json, res.status)
    return 1 if res.status == BUDGET_EXCEEDED else 0


def cmd_chi_c(args, parser) -> int:
    g = _load_graph(args, parser)
    res = circular_chromatic(g, args.p_max, args.budget)
    text = f"{res.p}/{res.q}" if res.status == FOUND else res.status
    _emit({"status": res.status, "p": res.p, "q": res.q,
           "frontier": list(res.frontier) if res.frontier else None}, args.json, text)
    return 0 if res.status == FOUND else 1


def cmd_decompose(args, parser) -> int:
    g = _load_graph(args, parser)
    lt = args.long_threshold if args.long_threshold is not None else default_long_threshold(g.n)
    d = decompose(g, args.k, lt)
    if isinstance(d, StructureFailure):
        print(json.dumps({"outcome": "StructureFailure", **d.to_dict()}, sort_keys=True))
        return 1
    payload = d.to_dict()
    if args.out:
        Path(args.out).write_text(json.dumps(payload, sort_keys=True) + "\n")
    print(json.dumps({"outcome": "Decomposition", "k": d.k, "removed": len(d.removed),
                      "M1": d.tags.count("M1"), "M2": d.tags.count("M2"),
                      **({} if args.out else {"decomposition": payload})}, sort_keys=True))
    return 0


def cmd_bound_grid(args, parser) -> int:
    region = bounds.Region(args.min_class, args.max_ind_set)
    report = bounds.grid_search(args.c, args.delta, region, lipschitz_L=args.lipschitz,
                                cap_B=args.cap_b)
    cert = bounds.certify_bound(report, args.rho)
    d = bounds.grid_report_dict(report, cert)
    if args.out:
        Path(args.out).write_text(json.dumps(d, indent=2, sort_keys=True) + "\n")
    print(json.dumps(d, sort_keys=True))
    return 0


def cmd_bipartite_threshold(args, parser) -> int:
    beta = bounds.bipartite_threshold(args.c)
    L = bounds.ell_c_bound(beta)
    _emit({"c": args.c, "beta_star": beta, "odd_cycle_bound": L},
          args.json, "no threshold" if beta is None else f"beta* = {beta:.12f}, no hom to C_L for odd L >= {L}")
    return 0 if beta is not None else 1


def cmd_experiment(args, parser) -> int:
    text = args.config.read_text() if args.config else ""
    cfg = ExperimentConfig.from_text(
        text, n=args.n, c=args.c, ell=args.ell, trials=args.trials, seed=args.seed,
        oracle=True if args.oracle else None, workers=args.workers,
        timing=True if args.timing else None)
    report, _ = run_experiment(cfg, args.out_dir)
    print(json.dumps(report.to_dict(), sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oddhom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = add("gen", cmd_gen, "sample G(n, c/n) and write it as a graph file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--out", type=Path)

    p = add("odd-girth", cmd_odd_girth, "shortest odd cycle")
    _add_graph_source(p)

    p = add("hom-find", cmd_hom_find, "homomorphism to C_{2l+1} or a short odd cycle")
    _add_graph_source(p)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--long-threshold", type=int)
    p.add_argument("--out", type=Path, help="write the full tagged outcome here")

    p = add("oracle", cmd_oracle, "exact backtracking homomorphism search")
    _add_graph_source(p)
    p.add_argument("--ell", type=int, default=2, help="target C_{2l+1} (ignored with --target)")
    p.add_argument("--target", type=Path, help="target graph file")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = add("chi-c", cmd_chi_c, "exact circular chromatic number of a small graph")
    _add_graph_source(p)
    p.add_argument("--p-max", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = add("decompose", cmd_decompose, "forest + separated removed edges")
    _add_graph_source(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--long-threshold", type=int)
    p.add_argument("--out", type=Path)

    p = add("bound-grid", cmd_bound_grid, "grid maximisation of the C_5 partition rate")
    p.add_argument("--c", type=float, default=4.0)
    p.add_argument("--delta", type=float, default=0.0008)
    p.add_argument("--rho", type=float, default=1.0)
    p.add_argument("--lipschitz", type=float, default=bounds.GRADIENT_BOUND)
    p.add_argument("--cap-b", type=float, default=1.0)
    p.add_argument("--min-class", type=float, default=0.06)
    p.add_argument("--max-ind-set", type=float, default=0.6)
    p.add_argument("--out", type=Path)

    p = add("bipartite-threshold", cmd_bipartite_threshold,
            "beta above which induced bipartite subgraphs vanish")
    p.add_argument("--c", type=float, required=True)

    p = add("experiment", cmd_experiment, "Monte-Carlo trials of hom-find")
    p.add_argument("--config", type=Path, help="key=value file; flags override it")
    p.add_argument("--n", type=int)
    p.add_argument("--c", type=float)
    p.add_argument("--ell", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--timing", action="store_true")
    p.add_argument("--workers", type=int)
    p.add_argument("--out-dir", type=Path)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (InvalidParameterError, InvalidInputError, OSError) as exc:
        print(f"oddhom {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
