"""Orientation homomorphisms Aut(g) -> {+1,-1} and orientability verdicts.

Three homomorphisms are provided:

* Kontsevich: sign of the induced edge permutation times the sign of the
  determinant of the induced map on the cycle space.
* Shoikhet: sign of the induced vertex permutation times the product over
  edges of arrow-agreement signs.
* vertex parity: sign of the induced vertex permutation alone.

All linear algebra is exact (Python integers and fractions); floating
point is never used, since a sign is the entire answer. Theta values are
computed with the default arrow arrangement and the default spanning
forest; independence from both choices is a tested property, not a
recomputation.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import prod

from .automorphisms import Automorphism, enumerate_automorphisms, induced_actions
from .graphs import Graph
from .limits import SizeLimitExceeded
from . import perms
from .perms import Perm

Arrows = tuple[int, ...]  # tails by edge id; the arrow on e runs tail -> partner
IntMatrix = tuple[tuple[int, ...], ...]


class SingularBasisError(RuntimeError):
    """Cycle basis failed to span an image cycle; indicates an internal bug."""


class ThetaHom(Enum):
    """Selector for one of the supported orientation homomorphisms."""

    KONTSEVICH = "k"
    SHOIKHET = "s"
    VERTEX_PARITY = "parity"

    def evaluate(self, g: Graph, a: Automorphism) -> int:
        if self is ThetaHom.KONTSEVICH:
            return theta_k(g, a)
        if self is ThetaHom.SHOIKHET:
            return theta_s(g, a)
        return theta_parity(g, a)


class Verdict(Enum):
    ORIENTABLE = "orientable"
    NON_ORIENTABLE = "non-orientable"


@dataclass(frozen=True)
class OrientationReport:
    theta: ThetaHom
    verdict: Verdict
    witness: Automorphism | None
    orbit_count: int | None
    per_automorphism_theta: tuple[tuple[Automorphism, int], ...]


def default_arrows(g: Graph) -> Arrows:
    """One arrow per edge, tail at the smaller half-edge id."""
    return tuple(a for a, _ in g.edges)


def random_arrows(g: Graph, rng) -> Arrows:
    return tuple(pair[rng.randrange(2)] for pair in g.edges)


def epsilon_map(g: Graph, arrows: Arrows, a: Automorphism) -> tuple[int, ...]:
    """Arrow-agreement signs by edge id.

    For each edge e, the arrow carried over from the preimage edge is
    compared with the arrow already sitting on e: matching tails give +1,
    opposite tails -1.
    """
    eps = [0] * len(g.edges)
    for f in range(len(g.edges)):
        moved_tail = a.perm[arrows[f]]
        e = g.edge_of[moved_tail]
        eps[e] = 1 if moved_tail == arrows[e] else -1
    return tuple(eps)


def theta_s(g: Graph, a: Automorphism, arrows: Arrows | None = None) -> int:
    """Shoikhet homomorphism: sign(vertex action) * product of epsilon signs."""
    if arrows is None:
        arrows = default_arrows(g)
    acts = induced_actions(g, a)
    return perms.sign(acts.vertex_perm) * prod(epsilon_map(g, arrows, a))


def theta_parity(g: Graph, a: Automorphism) -> int:
    """Parity of the induced vertex permutation."""
    return perms.sign(induced_actions(g, a).vertex_perm)


@lru_cache(maxsize=1024)
def cycle_basis(g: Graph, arrows: Arrows, vertex_order: tuple[int, ...] | None = None) -> IntMatrix:
    """Fundamental-cycle matrix: |E| rows, one column per non-tree edge.

    A spanning forest is grown by BFS; roots are taken in ``vertex_order``
    (default: ascending vertex id, i.e. rooted at the vertex holding the
    lowest half-edge of each component) and edges are scanned in id order,
    so the default forest is deterministic. Each non-tree edge contributes
    the cycle that follows its arrow tail-to-head and returns through the
    forest, with entries in {-1, 0, +1}.
    """
    ne = len(g.edges)
    nv = len(g.vertices)
    order = vertex_order if vertex_order is not None else tuple(range(nv))
    incident: list[list[int]] = [[] for _ in range(nv)]
    for e, (x, y) in enumerate(g.edges):
        incident[g.vertex_of[x]].append(e)
        if g.vertex_of[y] != g.vertex_of[x]:
            incident[g.vertex_of[y]].append(e)

    visited = [False] * nv
    parent: dict[int, tuple[int, int]] = {}  # child vertex -> (parent vertex, edge)
    tree = [False] * ne
    for root in order:
        if visited[root]:
            continue
        visited[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for e in incident[u]:
                t = arrows[e]
                h = g.partner[t]
                tv, hv = g.vertex_of[t], g.vertex_of[h]
                other = hv if tv == u else tv
                if other != u and not visited[other]:
                    visited[other] = True
                    tree[e] = True
                    parent[other] = (u, e)
                    queue.append(other)

    def ancestors(v: int) -> list[int]:
        chain = [v]
        while chain[-1] in parent:
            chain.append(parent[chain[-1]][0])
        return chain

    def add_path(col: list[int], v: int, stop: int, sign_up: int) -> None:
        # Walk v upward to ``stop``; sign_up applies to steps taken child->parent.
        while v != stop:
            p, e = parent[v]
            t = arrows[e]
            along = g.vertex_of[t] == v  # arrow points child -> parent
            col[e] += sign_up if along else -sign_up
            v = p

    columns = []
    for e in range(ne):
        if tree[e]:
            continue
        col = [0] * ne
        col[e] = 1
        t = arrows[e]
        h = g.partner[t]
        u, v = g.vertex_of[t], g.vertex_of[h]
        if u != v:
            anc_u = ancestors(u)
            in_u = set(anc_u)
            lca = next(x for x in ancestors(v) if x in in_u)
            add_path(col, v, lca, 1)
            add_path(col, u, lca, -1)
        columns.append(col)
    return tuple(tuple(columns[j][i] for j in range(len(columns))) for i in range(ne))


def signed_edge_matrix(g: Graph, arrows: Arrows, a: Automorphism) -> IntMatrix:
    """The |E| x |E| signed permutation matrix of the edge action.

    Entry [image edge, source edge] is the arrow-agreement sign at the
    image; its determinant equals sign(edge action) times the product of
    the epsilon signs.
    """
    ne = len(g.edges)
    pi = induced_actions(g, a).edge_perm
    eps = epsilon_map(g, arrows, a)
    rows = [[0] * ne for _ in range(ne)]
    for f in range(ne):
        rows[pi[f]][f] = eps[pi[f]]
    return tuple(tuple(r) for r in rows)


def _solve_exact(basis: IntMatrix, image: IntMatrix, k: int) -> IntMatrix:
    """Solve basis @ X = image for the k x k integer matrix X, exactly."""
    m = len(basis)
    aug = [
        [Fraction(basis[i][j]) for j in range(k)] + [Fraction(image[i][j]) for j in range(k)]
        for i in range(m)
    ]
    row = 0
    for col in range(k):
        piv = next((r for r in range(row, m) if aug[r][col]), None)
        if piv is None:
            raise SingularBasisError("cycle basis lost column rank")
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for r in range(m):
            if r != row and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[row])]
        row += 1
    for r in range(k, m):
        if any(aug[r][k:]):
            raise SingularBasisError("image cycle falls outside the cycle space")
    out = []
    for i in range(k):
        row_vals = []
        for j in range(k):
            x = aug[i][k + j]
            if x.denominator != 1:
                raise SingularBasisError(f"non-integer basis coefficient {x}")
            row_vals.append(int(x))
        out.append(tuple(row_vals))
    return tuple(out)


def induced_cycle_matrix(
    g: Graph,
    arrows: Arrows,
    a: Automorphism,
    vertex_order: tuple[int, ...] | None = None,
) -> IntMatrix:
    """Matrix of the automorphism's action on the cycle space, in the
    fundamental-cycle basis. Always integral with determinant +-1."""
    basis = cycle_basis(g, arrows, vertex_order)
    k = len(basis[0]) if basis else 0
    if k == 0:
        return ()
    sp = signed_edge_matrix(g, arrows, a)
    ne = len(g.edges)
    image = tuple(
        tuple(sum(sp[i][f] * basis[f][j] for f in range(ne)) for j in range(k))
        for i in range(ne)
    )
    return _solve_exact(basis, image, k)


def det_sign(matrix) -> int:
    """Exact sign of the determinant via fraction-free elimination.

    Accepts any square nested sequence of integers; the 0 x 0 matrix has
    determinant +1 (empty product).
    """
    a = [[int(x) for x in row] for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    swaps = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if a[r][k]), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            swaps = -swaps
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return swaps * (0 if d == 0 else (1 if d > 0 else -1))


def theta_k(
    g: Graph,
    a: Automorphism,
    arrows: Arrows | None = None,
    vertex_order: tuple[int, ...] | None = None,
) -> int:
    """Kontsevich homomorphism: sign(edge action) * sign(det of cycle action)."""
    if arrows is None:
        arrows = default_arrows(g)
    pi = induced_actions(g, a).edge_perm
    return perms.sign(pi) * det_sign(induced_cycle_matrix(g, arrows, a, vertex_order))


# --- orientability --------------------------------------------------------


def orientability(
    g: Graph,
    theta: ThetaHom,
    bruteforce: bool = False,
    max_half_edges: int | None = None,
) -> OrientationReport:
    """Fast orientability verdict for the chosen homomorphism.

    The graph is non-orientable exactly when some automorphism fixes every
    vertex yet evaluates to -1: such an automorphism glues the two signs of
    every vertex enumeration. The first witness in automorphism order is
    reported. With ``bruteforce=True`` the orbit count of the independent
    enumeration-pair computation is attached to the report.
    """
    auts = enumerate_automorphisms(g, max_half_edges)
    values = tuple((a, theta.evaluate(g, a)) for a in auts)
    identity_sigma = perms.identity(len(g.vertices))
    witness = None
    for a, value in values:
        if value == -1 and induced_actions(g, a).vertex_perm == identity_sigma:
            witness = a
            break
    verdict = Verdict.NON_ORIENTABLE if witness is not None else Verdict.ORIENTABLE
    orbit_count = None
    if bruteforce:
        orbit_count, _, _ = or_orbits_bruteforce(g, theta, max_half_edges)
    return OrientationReport(theta, verdict, witness, orbit_count, values)


def or_orbits_bruteforce(
    g: Graph,
    theta: ThetaHom,
    max_half_edges: int | None = None,
) -> tuple[int, bool, tuple[tuple[tuple[Perm, int], ...], ...]]:
    """Orbits of (vertex enumeration, sign) pairs under the twisted action.

    Enumerates every pair (tau, eps) with tau a bijection from vertex ids to
    1..|V| and eps in {+1,-1}; an automorphism acts by relabeling tau along
    its vertex action and multiplying eps by its theta value. Returns the
    orbit count, whether the global sign flip acts freely on orbits, and
    the orbits themselves. This is the slow oracle for ``orientability``.
    """
    nv = len(g.vertices)
    if nv > 8:
        raise SizeLimitExceeded(f"brute-force orbit search limited to 8 vertices, got {nv}")
    auts = enumerate_automorphisms(g, max_half_edges)
    actions = [
        (induced_actions(g, a).vertex_perm, theta.evaluate(g, a)) for a in auts
    ]

    taus = list(itertools.permutations(range(1, nv + 1)))
    pairs = [(tau, eps) for tau in taus for eps in (1, -1)]
    index = {pair: i for i, pair in enumerate(pairs)}
    parent = list(range(len(pairs)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for sigma, value in actions:
        for tau, eps in pairs:
            moved = [0] * nv
            for v in range(nv):
                moved[sigma[v]] = tau[v]
            union(index[(tau, eps)], index[(tuple(moved), value * eps)])

    orbits: dict[int, list[tuple[Perm, int]]] = {}
    for pair in pairs:
        orbits.setdefault(find(index[pair]), []).append(pair)
    orbit_list = tuple(tuple(sorted(members)) for _, members in sorted(orbits.items()))
    z2_free = True
    for members in orbit_list:
        member_set = set(members)
        if any((tau, -eps) in member_set for tau, eps in members):
            z2_free = False
            break
    return len(orbit_list), z2_free, orbit_list
