import itertools
import random
from fractions import Fraction
from math import prod

import pytest

from orientkit import perms
from orientkit.automorphisms import as_automorphism, enumerate_automorphisms, induced_actions
from orientkit.graphs import validate
from orientkit.orientation import (
    ThetaHom,
    Verdict,
    cycle_basis,
    default_arrows,
    det_sign,
    epsilon_map,
    induced_cycle_matrix,
    or_orbits_bruteforce,
    orientability,
    random_arrows,
    signed_edge_matrix,
    theta_k,
    theta_parity,
    theta_s,
)

from conftest import complete_graph


def det_bruteforce(matrix):
    """Independent determinant oracle: signed permutation expansion."""
    n = len(matrix)
    total = 0
    for p in itertools.permutations(range(n)):
        inversions = sum(
            1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j]
        )
        term = -1 if inversions % 2 else 1
        for i in range(n):
            term *= matrix[i][p[i]]
        total += term
    return total


def incidence_boundary(g, arrows, column):
    """Net flow of a cycle column at each vertex; must vanish everywhere."""
    flow = [0] * len(g.vertices)
    for e, coeff in enumerate(column):
        tail = arrows[e]
        head = g.partner[tail]
        flow[g.vertex_of[tail]] -= coeff
        flow[g.vertex_of[head]] += coeff
    return flow


def column_rank(matrix):
    rows = [[Fraction(x) for x in row] for row in matrix]
    cols = len(rows[0]) if rows else 0
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][c]
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


class TestArrowsAndEpsilon:
    def test_default_arrows(self, loop, triangle):
        assert default_arrows(loop) == (0,)
        assert default_arrows(triangle) == (0, 2, 4)
        assert default_arrows(validate(0, [], [])) == ()

    def test_epsilon_examples(self, loop, triangle):
        rho = as_automorphism(triangle, (2, 3, 4, 5, 0, 1))
        assert epsilon_map(triangle, default_arrows(triangle), rho) == (1, 1, 1)
        refl = as_automorphism(triangle, (5, 4, 3, 2, 1, 0))
        assert epsilon_map(triangle, default_arrows(triangle), refl) == (-1, -1, -1)
        swap = as_automorphism(loop, (1, 0))
        assert epsilon_map(loop, default_arrows(loop), swap) == (-1,)
        ident = as_automorphism(triangle, perms.identity(6))
        assert epsilon_map(triangle, default_arrows(triangle), ident) == (1, 1, 1)


class TestThetaS:
    def test_examples(self, loop, triangle, double_edge):
        assert theta_s(loop, as_automorphism(loop, (1, 0))) == -1
        assert theta_s(triangle, as_automorphism(triangle, (5, 4, 3, 2, 1, 0))) == 1
        assert theta_s(double_edge, as_automorphism(double_edge, (1, 0, 3, 2))) == -1

    def test_arrangement_invariance_exhaustive(self, corpus3):
        for g, auts in corpus3:
            for a in auts:
                reference = theta_s(g, a)
                for tails in itertools.product(*g.edges):
                    assert theta_s(g, a, tails) == reference


class TestCycleBasis:
    def test_shapes_and_values(self, loop, single_edge, triangle, double_edge):
        assert cycle_basis(single_edge, default_arrows(single_edge)) == ((),)
        assert cycle_basis(loop, default_arrows(loop)) == ((1,),)
        assert cycle_basis(triangle, default_arrows(triangle)) == ((1,), (1,), (1,))
        assert cycle_basis(double_edge, default_arrows(double_edge)) == ((-1,), (1,))

    def test_columns_are_cycles_of_full_rank(self, corpus3):
        for g, _ in corpus3:
            arrows = default_arrows(g)
            basis = cycle_basis(g, arrows)
            k = len(basis[0]) if basis else 0
            assert k == g.first_betti()
            for j in range(k):
                column = [basis[i][j] for i in range(len(g.edges))]
                assert incidence_boundary(g, arrows, column) == [0] * len(g.vertices)
            if k:
                assert column_rank(basis) == k


class TestInducedCycleMatrix:
    def test_examples(self, triangle, double_edge):
        ident = as_automorphism(triangle, perms.identity(6))
        assert induced_cycle_matrix(triangle, default_arrows(triangle), ident) == ((1,),)
        refl = as_automorphism(triangle, (5, 4, 3, 2, 1, 0))
        assert induced_cycle_matrix(triangle, default_arrows(triangle), refl) == ((-1,),)
        edge_swap = as_automorphism(double_edge, (2, 3, 0, 1))
        assert induced_cycle_matrix(double_edge, default_arrows(double_edge), edge_swap) == ((-1,),)

    def test_identity_gives_identity_matrix(self, corpus3):
        for g, _ in corpus3:
            ident = as_automorphism(g, perms.identity(g.half_edge_count))
            k = g.first_betti()
            expected = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
            assert induced_cycle_matrix(g, default_arrows(g), ident) == expected

    def test_always_unimodular(self, corpus3):
        for g, auts in corpus3:
            arrows = default_arrows(g)
            for a in auts:
                m = induced_cycle_matrix(g, arrows, a)
                assert det_sign(m) in (-1, 1)


class TestDetSign:
    def test_small_cases(self):
        assert det_sign(()) == 1
        assert det_sign(((-1,),)) == -1
        assert det_sign(((1, 0), (0, 1))) == 1
        assert det_sign(((0, 1), (1, 0))) == -1
        assert det_sign(((2, 4), (1, 2))) == 0

    def test_cyclic_permutation_matrices(self):
        for n in range(1, 7):
            m = [[1 if i == (j + 1) % n else 0 for j in range(n)] for i in range(n)]
            expected = 1 if (n - 1) % 2 == 0 else -1
            assert det_sign(m) == expected
            assert det_bruteforce(m) == expected

    def test_against_bruteforce_random(self):
        rng = random.Random(1707)
        for _ in range(200):
            n = rng.randrange(0, 5)
            m = [[rng.randrange(-4, 5) for _ in range(n)] for _ in range(n)]
            d = det_bruteforce(m)
            assert det_sign(m) == (0 if d == 0 else (1 if d > 0 else -1))


class TestThetaK:
    def test_examples(self, loop, triangle):
        assert theta_k(loop, as_automorphism(loop, (1, 0))) == -1
        assert theta_k(triangle, as_automorphism(triangle, (5, 4, 3, 2, 1, 0))) == 1
        assert theta_k(triangle, as_automorphism(triangle, (2, 3, 4, 5, 0, 1))) == 1

    def test_spanning_forest_invariance_exhaustive(self, corpus3):
        for g, auts in corpus3:
            orders = list(itertools.permutations(range(len(g.vertices))))
            for a in auts:
                reference = theta_k(g, a)
                for order in orders:
                    assert theta_k(g, a, vertex_order=order) == reference

    def test_arrangement_invariance(self, corpus3):
        rng = random.Random(99)
        for g, auts in corpus3:
            for a in auts:
                reference = theta_k(g, a)
                for _ in range(20):
                    assert theta_k(g, a, arrows=random_arrows(g, rng)) == reference


def test_theta_parity_examples(triangle):
    k4 = complete_graph(4)
    transposition = next(
        a
        for a in enumerate_automorphisms(k4)
        if perms.cycle_lengths(induced_actions(k4, a).vertex_perm) == [1, 1, 2]
    )
    assert theta_parity(k4, transposition) == -1
    assert theta_parity(k4, as_automorphism(k4, perms.identity(12))) == 1
    assert theta_parity(triangle, as_automorphism(triangle, (2, 3, 4, 5, 0, 1))) == 1


def test_homomorphism_laws(corpus3):
    for g, auts in corpus3:
        for theta in ThetaHom:
            table = {a.perm: theta.evaluate(g, a) for a in auts}
            for a in auts:
                for b in auts:
                    combined = perms.compose(a.perm, b.perm)
                    assert table[combined] == table[a.perm] * table[b.perm]


class TestOrientability:
    def test_loop_non_orientable_both_ways(self, loop):
        for theta in (ThetaHom.SHOIKHET, ThetaHom.KONTSEVICH):
            report = orientability(loop, theta)
            assert report.verdict is Verdict.NON_ORIENTABLE
            assert report.witness is not None
            assert report.witness.perm == (1, 0)
            sigma = induced_actions(loop, report.witness).vertex_perm
            assert sigma == perms.identity(1)

    def test_triangle_orientable(self, triangle):
        report = orientability(triangle, ThetaHom.KONTSEVICH)
        assert report.verdict is Verdict.ORIENTABLE
        assert report.witness is None
        assert len(report.per_automorphism_theta) == 6

    def test_simplex_skeleton_orientable(self):
        report = orientability(complete_graph(4), ThetaHom.VERTEX_PARITY)
        assert report.verdict is Verdict.ORIENTABLE

    def test_bruteforce_attaches_orbit_count(self, loop):
        report = orientability(loop, ThetaHom.SHOIKHET, bruteforce=True)
        assert report.orbit_count == 1


class TestOrOrbits:
    def test_examples(self, loop, single_edge):
        count, free, _ = or_orbits_bruteforce(complete_graph(4), ThetaHom.VERTEX_PARITY)
        assert (count, free) == (2, True)
        count, free, _ = or_orbits_bruteforce(loop, ThetaHom.SHOIKHET)
        assert (count, free) == (1, False)
        count, free, _ = or_orbits_bruteforce(single_edge, ThetaHom.SHOIKHET)
        assert (count, free) == (2, True)

    def test_matches_fast_criterion(self, corpus3):
        for g, _ in corpus3:
            for theta in ThetaHom:
                _, free, _ = or_orbits_bruteforce(g, theta)
                verdict = orientability(g, theta).verdict
                assert free == (verdict is Verdict.ORIENTABLE)

    def test_size_guard(self):
        from orientkit.limits import SizeLimitExceeded

        wide = validate(
            18,
            [(2 * i, 2 * i + 1) for i in range(9)],
            [(h,) for h in range(18)],
        )
        with pytest.raises(SizeLimitExceeded):
            or_orbits_bruteforce(wide, ThetaHom.VERTEX_PARITY)


def test_signed_edge_matrix_identity(corpus3):
    for g, auts in corpus3:
        arrows = default_arrows(g)
        for a in auts:
            matrix = signed_edge_matrix(g, arrows, a)
            pi = induced_actions(g, a).edge_perm
            expected = perms.sign(pi) * prod(epsilon_map(g, arrows, a))
            assert det_sign(matrix) == expected
            if len(g.edges) <= 4:
                d = det_bruteforce(matrix)
                assert (0 if d == 0 else (1 if d > 0 else -1)) == expected


def test_empty_graph_thetas():
    empty = validate(0, [], [])
    ident = as_automorphism(empty, ())
    assert theta_k(empty, ident) == 1
    assert theta_s(empty, ident) == 1
    assert theta_parity(empty, ident) == 1


def test_theta_agreement_needs_connectedness():
    # Two disjoint edges swapped: one edge transposition (odd) against two
    # vertex transpositions (even), with trivial cycle space and epsilons.
    # The agreement theorem is a statement about connected graphs only.
    two_edges = validate(4, [(0, 1), (2, 3)], [(0,), (1,), (2,), (3,)])
    swap = as_automorphism(two_edges, (2, 3, 0, 1))
    assert theta_k(two_edges, swap) == -1
    assert theta_s(two_edges, swap) == 1
