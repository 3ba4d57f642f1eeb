import pytest

from orientkit import CorpusSpec, enumerate_automorphisms, enumerate_graphs, parse_graph, validate


@pytest.fixture(scope="session")
def loop():
    return parse_graph("halfedges=2; edges=(0 1); vertices={0 1}")


@pytest.fixture(scope="session")
def single_edge():
    return parse_graph("halfedges=2; edges=(0 1); vertices={0}{1}")


@pytest.fixture(scope="session")
def triangle():
    return parse_graph("halfedges=6; edges=(0 1)(2 3)(4 5); vertices={5 0}{1 2}{3 4}")


@pytest.fixture(scope="session")
def double_edge():
    return parse_graph("halfedges=4; edges=(0 1)(2 3); vertices={0 2}{1 3}")


def graph_from_vertex_pairs(pairs, num_vertices):
    """Build a half-edge graph from a multigraph edge list; (u, u) is a loop."""
    edges = [(2 * i, 2 * i + 1) for i in range(len(pairs))]
    blocks = [[] for _ in range(num_vertices)]
    for i, (u, v) in enumerate(pairs):
        blocks[u].append(2 * i)
        blocks[v].append(2 * i + 1)
    return validate(2 * len(pairs), edges, blocks)


def complete_graph(m):
    pairs = [(u, v) for u in range(m) for v in range(u + 1, m)]
    return graph_from_vertex_pairs(pairs, m)


def flower(k):
    """k loops on a single vertex."""
    return graph_from_vertex_pairs([(0, 0)] * k, 1)


def relabel(g, images):
    """Apply a half-edge bijection and renormalize."""
    edges = [(images[a], images[b]) for a, b in g.edges]
    blocks = [[images[h] for h in block] for block in g.vertices]
    return validate(g.half_edge_count, edges, blocks)


@pytest.fixture(scope="session")
def corpus3():
    """Connected corpus with loops at |E| <= 3, with automorphism groups."""
    return [(g, enumerate_automorphisms(g)) for g in enumerate_graphs(CorpusSpec(3))]


@pytest.fixture(scope="session")
def corpus5():
    """Connected corpus with loops at |E| <= 5, with automorphism groups."""
    return [(g, enumerate_automorphisms(g)) for g in enumerate_graphs(CorpusSpec(5))]
