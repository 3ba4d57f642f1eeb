"""Command-line surface: parse, aut, theta, orient, contract, families, verify.

Exit codes: 0 success, 1 usage or input errors, 2 violations found by
``verify`` (or a failed family check).
"""

from __future__ import annotations

import argparse
import random
import sys

from . import perms
from .automorphisms import (
    as_automorphism,
    automorphism_cycle_data,
    enumerate_automorphisms,
)
from .corpus import CorpusSpec, render_report, sweep_theorem, write_report
from .families import Family, eq1_check, family_instances, verify_family
from .graphs import Graph, GraphError, format_graph, contract_edge, contract_edge_orbit, parse_graph
from .limits import SizeLimitExceeded
from .orientation import (
    ThetaHom,
    or_orbits_bruteforce,
    orientability,
    random_arrows,
    theta_k,
    theta_parity,
    theta_s,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


_THETA_BY_FLAG = {
    "k": ThetaHom.KONTSEVICH,
    "s": ThetaHom.SHOIKHET,
    "parity": ThetaHom.VERTEX_PARITY,
}


def _read_graphs(path: str) -> list[Graph]:
    """One graph per file or per non-empty line."""
    with open(path, "r", encoding="ascii") as handle:
        lines = [line for line in handle.read().splitlines() if line.strip()]
    if not lines:
        raise GraphError(f"no graph found in {path}")
    return [parse_graph(line) for line in lines]


def _fmt_sign(x: int) -> str:
    return f"{x:+d}"


def _cmd_parse(args) -> int:
    for g in _read_graphs(args.file):
        print(format_graph(g))
    return 0


def _cmd_aut(args) -> int:
    for g in _read_graphs(args.file):
        auts = enumerate_automorphisms(g)
        print(f"graph: {format_graph(g)}")
        print(f"|Aut| = {len(auts)}")
        for a in auts:
            data = automorphism_cycle_data(g, a)
            print(
                f"  {perms.format_perm(a.perm)}"
                f"  halfedge_cycles={','.join(map(str, data.half_edges))}"
                f" edge_cycles={','.join(map(str, data.edges))}"
                f" vertex_cycles={','.join(map(str, data.vertices))}"
            )
    return 0


def _cmd_theta(args) -> int:
    import json

    for g in _read_graphs(args.file):
        auts = enumerate_automorphisms(g)
        rows = []
        for a in auts:
            tk, ts, tp = theta_k(g, a), theta_s(g, a), theta_parity(g, a)
            rows.append((a, tk, ts, tp, tk == ts))
        if args.format == "json":
            payload = {
                "graph": format_graph(g),
                "rows": [
                    {
                        "perm": list(a.perm),
                        "theta_k": tk,
                        "theta_s": ts,
                        "theta_parity": tp,
                        "agree": agree,
                    }
                    for a, tk, ts, tp, agree in rows
                ],
            }
            print(json.dumps(payload, indent=2, sort_keys=True))
        else:
            print(f"graph: {format_graph(g)}")
            print(f"{'perm':<{max(6, 2 * g.half_edge_count + 2)}} theta_k theta_s parity agree")
            for a, tk, ts, tp, agree in rows:
                print(
                    f"{perms.format_perm(a.perm):<{max(6, 2 * g.half_edge_count + 2)}} "
                    f"{_fmt_sign(tk):>7} {_fmt_sign(ts):>7} {_fmt_sign(tp):>6} "
                    f"{'yes' if agree else 'NO'}"
                )
        if args.arrangements:
            rng = random.Random(args.seed)
            stable = all(
                theta_s(g, a, random_arrows(g, rng)) == ts
                for a, _, ts, _, _ in rows
                for _ in range(args.arrangements)
            )
            print(f"arrangement_invariance={'ok' if stable else 'VIOLATED'}"
                  f" ({args.arrangements} samples)")
    return 0


def _cmd_orient(args) -> int:
    theta = _THETA_BY_FLAG[args.theta]
    for g in _read_graphs(args.file):
        report = orientability(g, theta, bruteforce=args.bruteforce)
        line = f"theta={theta.name} verdict={report.verdict.name}"
        if report.witness is not None:
            line += f" witness={perms.format_perm(report.witness.perm)}"
        print(line)
        if args.bruteforce:
            count, z2_free, _ = or_orbits_bruteforce(g, theta)
            print(f"orbits={count} z2_free={'true' if z2_free else 'false'}")
    return 0


def _cmd_contract(args) -> int:
    for g in _read_graphs(args.file):
        if args.phi is not None:
            phi = perms.parse_perm(args.phi)
            contracted, induced, _ = contract_edge_orbit(g, phi, args.edge)
            print(format_graph(contracted))
            print(f"induced: {perms.format_perm(induced)}")
        else:
            contracted, _ = contract_edge(g, args.edge)
            print(format_graph(contracted))
    return 0


def _cmd_families(args) -> int:
    wanted = tuple(Family) if args.family is None else (Family(args.family),)
    failures = 0
    for inst in family_instances(args.max_n, wanted):
        p = inst.params
        print(f"family={p.family.value} n={p.n} c={p.c} m={p.m}")
        print(f"  graph: {format_graph(inst.graph)}")
        print(f"  psi:   {perms.format_perm(inst.psi.perm)}")
        problems = verify_family(inst)
        if problems:
            failures += len(problems)
            for problem in problems:
                print(f"  check FAILED: {problem}")
        else:
            print("  checks: ok")
        total = 0
        equal = 0
        for e in range(len(inst.graph.edges)):
            for k in range(1, 2**p.n + 1):
                phi = as_automorphism(inst.graph, perms.power(inst.psi.perm, k))
                result = eq1_check(inst.graph, phi, e)
                total += 1
                equal += result.equal
        print(f"  contraction identity: {equal}/{total} equal")
        if equal != total:
            failures += total - equal
    return 2 if failures else 0


def _cmd_verify(args) -> int:
    spec = CorpusSpec(
        max_edges=args.max_edges,
        allow_loops=args.allow_loops,
        connected_only=args.connected_only,
    )
    report = sweep_theorem(spec)
    if args.out:
        write_report(report, args.out, args.format)
        print(f"report written to {args.out}")
    else:
        sys.stdout.write(render_report(report, args.format).decode("ascii"))
    totals = report.totals
    print(
        f"graphs={totals['graphs']} automorphisms={totals['automorphisms']}"
        f" violations={totals['violations']}",
        file=sys.stderr,
    )
    return 2 if report.violations else 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="orientkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="normalize and reprint a graph file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("aut", help="automorphism group with induced cycle data")
    p.add_argument("file")
    p.set_defaults(func=_cmd_aut)

    p = sub.add_parser("theta", help="theta table per automorphism")
    p.add_argument("file")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--arrangements", type=int, default=0,
                   help="also recheck theta_s under N random arrow arrangements")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_theta)

    p = sub.add_parser("orient", help="orientability verdict")
    p.add_argument("file")
    p.add_argument("--theta", choices=sorted(_THETA_BY_FLAG), default="k")
    p.add_argument("--bruteforce", action="store_true",
                   help="also run the enumeration-pair orbit oracle")
    p.set_defaults(func=_cmd_orient)

    p = sub.add_parser("contract", help="contract an edge or a whole orbit")
    p.add_argument("file")
    p.add_argument("--edge", type=int, required=True)
    p.add_argument("--phi", help="automorphism image list, e.g. [1,0]; contracts the orbit")
    p.set_defaults(func=_cmd_contract)

    p = sub.add_parser("families", help="build classified instances and check them")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--family", choices=[f.value for f in Family])
    p.set_defaults(func=_cmd_families)

    p = sub.add_parser("verify", help="exhaustive theta-agreement sweep")
    p.add_argument("--max-edges", type=int, default=3)
    p.add_argument("--allow-loops", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--connected-only", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify)

    return parser


def cli_main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 1
    except (GraphError, SizeLimitExceeded, ValueError, IndexError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


def main(argv: list[str] | None = None) -> int:
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
