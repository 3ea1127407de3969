import itertools
import random

import pytest
from hypothesis import given, strategies as st

from symmlab import graphs


def test_petersen_basics():
    g = graphs.petersen_graph()
    bs = graphs.basics(g)
    assert bs["regular"] and bs["valency"] == 3
    assert bs["girth"] == 5 and bs["diameter"] == 2
    assert bs["connected"] and not bs["bipartite"]


def test_cube_bipartite():
    bs = graphs.basics(graphs.cube_graph())
    assert bs["bipartite"] and bs["girth"] == 4 and bs["diameter"] == 3


def test_line_graph_of_petersen():
    lg = graphs.line_graph(graphs.petersen_graph())
    assert lg.n == 15 and graphs.basics(lg)["valency"] == 4


def test_line_of_k33_locally_2k2():
    g = graphs.line_graph(graphs.complete_bipartite(3, 3))
    assert g.n == 9
    for v in range(g.n):
        local = graphs.local_subgraph(g, v)
        comps = [c for c in _components(local)]
        assert len(comps) == 2 and all(len(c) == 2 for c in comps)


def _components(g):
    seen, out = set(), []
    for s in range(g.n):
        if s in seen:
            continue
        comp, frontier = {s}, [s]
        while frontier:
            v = frontier.pop()
            for w in g.neighbors(v):
                if w not in comp:
                    comp.add(w)
                    frontier.append(w)
        seen |= comp
        out.append(comp)
    return out


def test_clique_graph_line_graph_duality():
    # For locally 2K_n graphs the two functors are mutually inverse.
    from symmlab.autgrp import are_isomorphic
    for base in (graphs.complete_bipartite(3, 3), graphs.petersen_graph()):
        g = graphs.line_graph(base)
        sigma = graphs.clique_graph(g, cap=100)
        assert are_isomorphic(sigma, base)
        assert are_isomorphic(graphs.line_graph(sigma), g)


def test_clique_graph_counts():
    g = graphs.line_graph(graphs.complete_bipartite(3, 3))
    sigma = graphs.clique_graph(g, cap=100)
    assert sigma.n == 6 and graphs.basics(sigma)["valency"] == 3


def test_triangle_counts():
    assert graphs.count_triangles(graphs.complete_graph(5)) == 10
    assert graphs.count_triangles(graphs.complete_bipartite(3, 3)) == 0
    assert graphs.count_triangles(
        graphs.line_graph(graphs.complete_bipartite(3, 3))) == 6


def test_induced_subgraph_matches_bruteforce():
    rng = random.Random(3)
    for _ in range(25):
        n = rng.randrange(4, 12)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.4]
        g = graphs.Graph(n, edges)
        vs = sorted(rng.sample(range(n), rng.randrange(1, n)))
        sub = g.induced_subgraph(vs)
        want = sorted((vs.index(u), vs.index(v)) for u, v in edges
                      if u in vs and v in vs)
        assert sub.edges() == want


def test_s_arc_enumeration():
    g = graphs.cycle_graph(5)
    arcs = graphs.enumerate_shapes(g, "s-arc", s=3).items
    assert len(arcs) == 10  # n*d*(d-1)^2 = 5*2*1


def test_rejects_loops_and_range():
    with pytest.raises(graphs.GraphError):
        graphs.Graph(3, [(0, 0)])
    with pytest.raises(graphs.GraphError):
        graphs.Graph(3, [(0, 5)])


def test_json_round_trip():
    g = graphs.petersen_graph()
    h = graphs.from_json(graphs.to_json(g))
    assert h == g


@given(st.integers(3, 8))
def test_complete_graph_clique_graph(n):
    g = graphs.complete_graph(n)
    assert graphs.maximal_cliques(g, cap=50) == [tuple(range(n))]


@given(st.integers(2, 6), st.integers(2, 6))
def test_complete_bipartite_counts(a, b):
    g = graphs.complete_bipartite(a, b)
    assert g.m == a * b
    assert graphs.basics(g)["bipartite"]
