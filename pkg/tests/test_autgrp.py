import random

from symmlab import graphs
from symmlab.autgrp import (are_isomorphic, automorphism_group,
                            canonical_form, is_automorphism)


def test_known_automorphism_orders():
    assert automorphism_group(graphs.petersen_graph()).order == 120
    assert automorphism_group(graphs.complete_graph(5)).order == 120
    assert automorphism_group(graphs.cycle_graph(6)).order == 12
    assert automorphism_group(graphs.complete_bipartite(3, 3)).order == 72
    assert automorphism_group(graphs.cube_graph()).order == 48


def test_generators_are_automorphisms():
    g = graphs.petersen_graph()
    A = automorphism_group(g)
    for x in A.generators:
        assert is_automorphism(g, x)


def test_canonical_form_stability():
    rng = random.Random(11)
    for g in (graphs.petersen_graph(), graphs.cube_graph(),
              graphs.line_graph(graphs.complete_bipartite(3, 3))):
        cert = canonical_form(g)
        for _ in range(20):
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert canonical_form(g.relabel(perm)) == cert


def test_are_isomorphic():
    g = graphs.petersen_graph()
    perm = list(range(10))
    random.Random(5).shuffle(perm)
    assert are_isomorphic(g, g.relabel(perm))
    assert not are_isomorphic(g, graphs.cycle_graph(10))
    # both cubic on 6 vertices, but the prism has triangles and K33 does not
    prism = graphs.Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3),
                             (0, 3), (1, 4), (2, 5)])
    assert not are_isomorphic(graphs.complete_bipartite(3, 3), prism)


def test_seeded_search_agrees():
    g = graphs.cube_graph()
    plain = automorphism_group(g)
    seeded = automorphism_group(g, seed_gens=list(plain.generators))
    assert plain.order == seeded.order == 48
