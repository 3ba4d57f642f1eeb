"""Small-graph corpus enumeration, the theta-agreement sweep, report output.

The corpus for e edges is generated from the standard edge partition
{(0,1), (2,3), ...} (every perfect matching of the half-edges is a
relabeling of it) by running over all vertex partitions of the half-edge
set, filtering by the loop/connectivity flags and deduplicating by
canonical form. Emission order is the byte order of the canonical forms,
so two runs with the same spec produce identical reports.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .automorphisms import Automorphism, enumerate_automorphisms, induced_actions
from .graphs import Graph, canonical_graph, format_graph
from .limits import check_half_edges
from . import perms
from .orientation import theta_k, theta_s


class ReportWriteError(RuntimeError):
    pass


@dataclass(frozen=True)
class CorpusSpec:
    max_edges: int
    allow_loops: bool = True
    connected_only: bool = True
    max_half_edges: int | None = None


@dataclass(frozen=True)
class SweepRow:
    canon: str
    vertex_count: int
    edge_count: int
    betti: int
    aut_order: int
    orientable_k: bool
    orientable_s: bool
    agree: bool


@dataclass(frozen=True)
class Violation:
    canon: str
    perm: tuple[int, ...]
    theta_k: int
    theta_s: int


@dataclass(frozen=True)
class SweepReport:
    spec: CorpusSpec
    rows: tuple[SweepRow, ...]
    violations: tuple[Violation, ...]
    totals: dict = field(hash=False)


def _set_partitions(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All partitions of 0..n-1 into non-empty blocks.

    Blocks come out in first-occurrence order with members ascending, which
    is already the graph normal form.
    """
    if n == 0:
        yield ()
        return
    blocks: list[list[int]] = []

    def place(i: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if i == n:
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(i)
            yield from place(i + 1)
            b.pop()
        blocks.append([i])
        yield from place(i + 1)
        blocks.pop()

    yield from place(0)


def enumerate_graphs(spec: CorpusSpec) -> Iterator[Graph]:
    """All isomorphism classes with at most ``spec.max_edges`` edges.

    Each class is emitted once, as its canonical representative, in byte
    order of the canonical forms. The empty graph belongs to the corpus
    only when ``connected_only`` is off (connectedness requires a vertex).
    """
    if spec.max_edges < 0:
        raise ValueError("max_edges must be >= 0")
    check_half_edges(2 * spec.max_edges, spec.max_half_edges)
    seen: dict[bytes, Graph] = {}
    for ne in range(spec.max_edges + 1):
        count = 2 * ne
        edges = tuple((2 * i, 2 * i + 1) for i in range(ne))
        for blocks in _set_partitions(count):
            g = Graph(edges=edges, vertices=blocks)
            if not spec.allow_loops and any(g.is_loop(e) for e in range(ne)):
                continue
            if spec.connected_only and not g.is_connected():
                continue
            rep = canonical_graph(g, spec.max_half_edges)
            seen.setdefault(format_graph(rep).encode("ascii"), rep)
    for key in sorted(seen):
        yield seen[key]


ThetaFn = Callable[[Graph, Automorphism], int]


def sweep_theorem(
    spec: CorpusSpec,
    theta_k_fn: ThetaFn = theta_k,
    theta_s_fn: ThetaFn = theta_s,
) -> SweepReport:
    """Evaluate both homomorphisms on every automorphism of every corpus
    graph and record agreement plus orientability verdicts.

    The theta implementations are injectable so tests can confirm the sweep
    detects a doctored sign convention.
    """
    rows = []
    violations = []
    total_auts = 0
    for g in enumerate_graphs(spec):
        canon = format_graph(g)
        auts = enumerate_automorphisms(g, spec.max_half_edges)
        total_auts += len(auts)
        identity_sigma = perms.identity(len(g.vertices))
        orientable_k = True
        orientable_s = True
        agree = True
        for a in auts:
            tk = theta_k_fn(g, a)
            ts = theta_s_fn(g, a)
            if tk != ts:
                agree = False
                violations.append(Violation(canon, a.perm, tk, ts))
            if induced_actions(g, a).vertex_perm == identity_sigma:
                if tk == -1:
                    orientable_k = False
                if ts == -1:
                    orientable_s = False
        rows.append(
            SweepRow(
                canon=canon,
                vertex_count=len(g.vertices),
                edge_count=len(g.edges),
                betti=g.first_betti(),
                aut_order=len(auts),
                orientable_k=orientable_k,
                orientable_s=orientable_s,
                agree=agree,
            )
        )
    totals = {
        "graphs": len(rows),
        "automorphisms": total_auts,
        "violations": len(violations),
    }
    return SweepReport(spec, tuple(rows), tuple(violations), totals)


def report_to_dict(report: SweepReport) -> dict:
    return {
        "spec": {
            "max_edges": report.spec.max_edges,
            "allow_loops": report.spec.allow_loops,
            "connected_only": report.spec.connected_only,
            "max_half_edges": report.spec.max_half_edges,
        },
        "rows": [
            {
                "canon": r.canon,
                "v": r.vertex_count,
                "e": r.edge_count,
                "b1": r.betti,
                "aut": r.aut_order,
                "orientable_k": r.orientable_k,
                "orientable_s": r.orientable_s,
                "agree": r.agree,
            }
            for r in report.rows
        ],
        "violations": [
            {"canon": v.canon, "perm": list(v.perm), "theta_k": v.theta_k, "theta_s": v.theta_s}
            for v in report.violations
        ],
        "totals": report.totals,
    }


_CSV_COLUMNS = ("canon", "v", "e", "b1", "aut", "orientable_k", "orientable_s", "agree")


def render_report(report: SweepReport, fmt: str) -> bytes:
    """Bit-stable rendering: sorted keys, fixed bool formatting, LF endings."""
    if fmt == "json":
        text = json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"
        return text.encode("ascii")
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(_CSV_COLUMNS)
        for row in report_to_dict(report)["rows"]:
            writer.writerow(
                [str(row[col]).lower() if isinstance(row[col], bool) else row[col]
                 for col in _CSV_COLUMNS]
            )
        return out.getvalue().encode("ascii")
    raise ValueError(f"unknown report format {fmt!r}")


def write_report(report: SweepReport, path: str, fmt: str = "json") -> None:
    data = render_report(report, fmt)
    try:
        with open(path, "wb") as handle:
            handle.write(data)
    except OSError as err:
        raise ReportWriteError(f"cannot write report to {path}: {err}") from err
