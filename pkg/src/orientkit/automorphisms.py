"""Automorphism groups of half-edge graphs and their induced actions."""

from __future__ import annotations

from dataclasses import dataclass

from . import perms
from .graphs import (
    Graph,
    NotAnAutomorphism,
    induced_edge_perm,
    induced_vertex_perm,
    preserves_partitions,
)
from .limits import check_half_edges
from .perms import Perm


@dataclass(frozen=True)
class Automorphism:
    """A half-edge permutation preserving both partitions of its graph."""

    graph: Graph
    perm: Perm


@dataclass(frozen=True)
class InducedActions:
    """The edge and vertex permutations induced by one automorphism."""

    edge_perm: Perm
    vertex_perm: Perm


@dataclass(frozen=True)
class CycleData:
    """Cycle-length multisets of the half-edge, edge and vertex actions."""

    half_edges: tuple[int, ...]
    edges: tuple[int, ...]
    vertices: tuple[int, ...]


def is_automorphism(g: Graph, p: Perm) -> bool:
    """True iff p preserves the edge and vertex partitions blockwise."""
    if len(p) != g.half_edge_count:
        raise ValueError(f"domain mismatch: permutation on {len(p)} points, graph has "
                         f"{g.half_edge_count} half-edges")
    return preserves_partitions(g, p)


def as_automorphism(g: Graph, p: Perm) -> Automorphism:
    """Wrap a raw permutation, raising ``NotAnAutomorphism`` if it fails the check."""
    if not is_automorphism(g, p):
        raise NotAnAutomorphism(f"{perms.format_perm(p)} does not preserve the partitions")
    return Automorphism(g, tuple(p))


def identity_automorphism(g: Graph) -> Automorphism:
    return Automorphism(g, perms.identity(g.half_edge_count))


def enumerate_automorphisms(g: Graph, max_half_edges: int | None = None) -> list[Automorphism]:
    """The full group Aut(g), in lexicographic order of the image lists.

    Backtracking over half-edge images: a candidate must sit in a vertex
    block compatible with the partial map and share the (vertex valence,
    vertex loop count, on-a-loop) signature of its preimage. Raises
    ``SizeLimitExceeded`` above the half-edge cap.
    """
    check_half_edges(g.half_edge_count, max_half_edges)
    n = g.half_edge_count
    if n == 0:
        return [Automorphism(g, ())]

    partner = g.partner
    vertex_of = g.vertex_of
    nv = len(g.vertices)
    vsig = [(len(g.vertices[v]), g.loop_count(v)) for v in range(nv)]
    hsig = [(vsig[vertex_of[h]], vertex_of[h] == vertex_of[partner[h]]) for h in range(n)]

    img = [-1] * n
    used = [False] * n
    vimg = [-1] * nv
    vtaken = [False] * nv
    found: list[Perm] = []

    def extend(h: int) -> None:
        if h == n:
            found.append(tuple(img))
            return
        hv = vertex_of[h]
        p = partner[h]
        if img[p] >= 0:
            cands: tuple[int, ...] | range = (partner[img[p]],)
        elif vimg[hv] >= 0:
            cands = g.vertices[vimg[hv]]
        else:
            cands = range(n)
        for x in cands:
            if used[x] or hsig[x] != hsig[h]:
                continue
            xv = vertex_of[x]
            if vimg[hv] >= 0:
                if xv != vimg[hv]:
                    continue
            elif vtaken[xv]:
                continue
            img[h] = x
            used[x] = True
            fresh = vimg[hv] < 0
            if fresh:
                vimg[hv] = xv
                vtaken[xv] = True
            extend(h + 1)
            if fresh:
                vimg[hv] = -1
                vtaken[xv] = False
            img[h] = -1
            used[x] = False

    extend(0)
    found.sort()
    return [Automorphism(g, p) for p in found]


def induced_actions(g: Graph, a: Automorphism) -> InducedActions:
    """The permutations of edge ids and vertex ids induced by ``a``."""
    return InducedActions(
        edge_perm=induced_edge_perm(g, a.perm),
        vertex_perm=induced_vertex_perm(g, a.perm),
    )


def automorphism_cycle_data(g: Graph, a: Automorphism) -> CycleData:
    acts = induced_actions(g, a)
    return CycleData(
        half_edges=tuple(perms.cycle_lengths(a.perm)),
        edges=tuple(perms.cycle_lengths(acts.edge_perm)),
        vertices=tuple(perms.cycle_lengths(acts.vertex_perm)),
    )
