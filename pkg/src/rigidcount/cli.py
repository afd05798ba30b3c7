"""Command line entry point: ``rigidcount <command> GRAPH [options]``.

GRAPH is a file with one ``u v`` edge per line or a JSON object with an
``edges`` list, ``-`` for stdin, or ``@NAME`` for a graph of the built-in
catalog. Reports are JSON with sorted keys, so equal inputs give equal bytes.

Exit codes: 0 success, 2 parse error, 3 precondition (not minimally rigid, not
a calligraph), 4 oracle resource limit, 5 symbolic check inconclusive,
6 a verification failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from typing import List, Optional

from . import catalog
from .classes import Engine, InconsistencyError, ResourceError
from .graph import GraphError, MarkedGraph, is_calligraph, laman_defect, parse_graph

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_RESOURCE = 4
EXIT_INCONCLUSIVE = 5
EXIT_FAILED = 6


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def load_graph(spec: str) -> MarkedGraph:
    if spec.startswith("@"):
        try:
            return catalog.get(spec[1:])
        except KeyError:
            raise CliError(f"unknown catalog graph {spec[1:]!r}; known: {', '.join(catalog.names())}", EXIT_PARSE)
    try:
        text = sys.stdin.read() if spec == "-" else open(spec).read()
    except OSError as exc:
        raise CliError(f"cannot read {spec}: {exc.strerror}", EXIT_PARSE)
    try:
        return parse_graph(text)
    except GraphError as exc:
        raise CliError(f"{spec}: {exc}", EXIT_PARSE)


def require_rigid(g: MarkedGraph) -> None:
    why = laman_defect(g)
    if why:
        raise CliError(f"not minimally rigid: {why}", EXIT_PRECONDITION)


def require_calligraph(g: MarkedGraph) -> None:
    if 0 not in g.vertices:
        raise CliError("not a calligraph: vertex 0 is missing", EXIT_PRECONDITION)
    if not is_calligraph(g):
        raise CliError("not a calligraph: gluing C_v does not give a minimally rigid graph", EXIT_PRECONDITION)


def make_engine(args) -> Engine:
    cache = os.environ.get("RIGIDCOUNT_CACHE") or args.cache
    return Engine(
        max_oracle_vertices=args.max_oracle_vertices,
        seed=args.seed,
        budget=args.budget,
        trace=bool(args.trace),
        cache_path=cache,
        jobs=args.jobs,
    )


def _finish(engine: Engine, args, node) -> None:
    if engine.cache_path:
        engine.save_cache()
    if args.trace and node is not None:
        with open(args.trace, "w") as fh:
            json.dump(node.to_json(), fh, indent=1, sort_keys=True)
            fh.write("\n")


def parse_degrees(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise CliError(f"--degrees expects comma separated integers, got {text!r}", EXIT_PARSE)


# -- commands -------------------------------------------------------------------------

def cmd_count(args) -> dict:
    g = load_graph(args.graph)
    require_rigid(g)
    engine = make_engine(args)
    res = engine.get_nor(g)
    _finish(engine, args, res.trace)
    return {"command": "count", "count": res.count, "oracle_calls": engine.oracle_calls}


def cmd_class(args) -> dict:
    g = load_graph(args.graph)
    require_calligraph(g)
    engine = make_engine(args)
    node = engine.class_trace(g)
    _finish(engine, args, node if args.trace else None)
    return {"command": "class", "class": list(node.value), "oracle_calls": engine.oracle_calls}


def cmd_invariants(args) -> dict:
    from .invariants import report

    g = load_graph(args.graph)
    require_calligraph(g)
    engine = make_engine(args)
    cls = engine.get_class(g)
    others = []
    for spec in args.with_ or []:
        h = load_graph(spec)
        require_calligraph(h)
        from .invariants import multiplicity_status

        hc = engine.get_class(h)
        st = multiplicity_status(h, hc)
        if not st.known:
            raise CliError(f"coupler multiplicity of {spec} is unknown", EXIT_PRECONDITION)
        others.append((spec, hc, st.m))
    try:
        rep = report(g, cls, args.n, parse_degrees(args.degrees), args.equal_degrees, args.n_sing, others)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION)
    _finish(engine, args, None)
    out = rep.to_json()
    out["command"] = "invariants"
    out["thin"] = rep.multiplicity.reason == "thin"
    out["survivors"] = [p.to_json()["parts"] for p in rep.survivors]
    return out


def cmd_centric(args) -> dict:
    from .basepoints import Inconclusive, check_centric, series_report

    g = load_graph(args.graph)
    require_calligraph(g)
    verdict = check_centric(g, budget=args.budget)
    out = verdict.to_json()
    out["command"] = "centric"
    try:
        out["series"] = series_report(g, budget=args.budget).to_json()
    except Inconclusive as exc:
        out["series"] = {"status": "inconclusive", "reason": str(exc)}
    if verdict.status == "inconclusive":
        out["exit"] = EXIT_INCONCLUSIVE
    return out


def cmd_oracle(args) -> dict:
    from .oracle import OracleBudgetExceeded, OracleError, count_realizations_oracle

    g = load_graph(args.graph)
    require_rigid(g)
    try:
        n = count_realizations_oracle(g, seed=args.seed, budget=args.budget)
    except OracleBudgetExceeded as exc:
        raise CliError(f"oracle budget exceeded: {exc}", EXIT_RESOURCE)
    except OracleError as exc:
        raise CliError(f"oracle failed: {exc}", EXIT_FAILED)
    return {"command": "oracle", "count": n, "seed": args.seed}


def parse_signs(text: str, g: MarkedGraph):
    from .graph import _edge

    tau = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            edge, s = item.split(":")
            u, w = edge.split("-")
            tau[_edge(int(u), int(w))] = {"+": 1, "-": -1, "1": 1, "-1": -1}[s.strip()]
        except (ValueError, KeyError):
            raise CliError(f"bad sign item {item!r}; use u-v:+ or u-v:-", EXIT_PARSE)
    out = {}
    for e in g.sorted_edges():
        if e != (1, 2):
            out[e] = tau.get(e, 1)
    return out


def cmd_walks(args) -> dict:
    from .walks import WalkError, initial_walks, parse_walk, random_labeling, verify_labeling

    g = load_graph(args.graph)
    require_calligraph(g)
    if args.signs is not None:
        tau = parse_signs(args.signs, g)
    elif args.labeling_seed is not None:
        tau = random_labeling(g, random.Random(args.labeling_seed))
    elif args.graph == "@W":
        tau = dict(catalog.W_SIGNS)
    else:
        tau = {e: 1 for e in g.sorted_edges() if e != (1, 2)}
    L = None
    if args.initial:
        try:
            L = frozenset(parse_walk(w) for w in args.initial.split(","))
        except ValueError as exc:
            raise CliError(f"bad initial walk set: {exc}", EXIT_PARSE)
    try:
        rep = verify_labeling(g, tau, L if L is not None else initial_walks(g))
    except WalkError as exc:
        raise CliError(f"walk calculus: {exc}", EXIT_FAILED)
    rep["command"] = "walks"
    rep["labeling"] = {f"{u}-{w}": s for (u, w), s in sorted(tau.items())}
    if not rep["ok"]:
        rep["exit"] = EXIT_FAILED
    return rep


COMMANDS = {
    "count": cmd_count,
    "class": cmd_class,
    "invariants": cmd_invariants,
    "centric": cmd_centric,
    "oracle": cmd_oracle,
    "walks": cmd_walks,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for length sampling")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for oracle leaves")
    common.add_argument("--cache", help="persistent cache file (RIGIDCOUNT_CACHE overrides)")
    common.add_argument("--trace", metavar="FILE", help="write the execution tree as JSON")
    common.add_argument("--max-oracle-vertices", type=int, default=7)
    common.add_argument("--budget", type=int, default=None, help="Groebner step budget")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="rigidcount", description="Count realizations of minimally rigid graphs.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name, parents=[common])
        s.add_argument("graph", help="edge-list or JSON file, '-' for stdin, @NAME for the catalog")
        if name == "invariants":
            s.add_argument("--n", type=int, help="number of coupler curve components")
            s.add_argument("--degrees", help="comma separated degrees of the components")
            s.add_argument("--equal-degrees", action="store_true")
            s.add_argument("--n-sing", type=int, default=0, help="singular points per component, lower bound")
            s.add_argument("--with", dest="with_", action="append", metavar="GRAPH",
                           help="calligraph to intersect coupler curves with")
        if name == "walks":
            s.add_argument("--signs", help="labeling as u-v:+,u-v:- (unlisted edges are +)")
            s.add_argument("--labeling-seed", type=int, help="draw a random labeling")
            s.add_argument("--initial", help="initial walk set, comma separated, e.g. 03,06,32")
    return p


def _text(report: dict) -> str:
    lines = []
    for k in sorted(report):
        v = report[k]
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True)
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    for name in ("jobs", "max_oracle_vertices"):
        if getattr(args, name) < 1:
            parser.error(f"--{name.replace('_', '-')} must be positive")
    try:
        report = COMMANDS[args.command](args)
    except CliError as exc:
        print(f"rigidcount: {exc}", file=sys.stderr)
        return exc.code
    except ResourceError as exc:
        print(f"rigidcount: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InconsistencyError as exc:
        print(f"rigidcount: inconsistency: {exc}", file=sys.stderr)
        return EXIT_FAILED
    code = report.pop("exit", EXIT_OK)
    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        print(_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
