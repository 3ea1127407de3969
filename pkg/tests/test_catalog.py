import json

import pytest

from symmlab import catalog, classify, fpaut, graphs
from symmlab.perms import Permutation, build_chain


@pytest.fixture(scope="module")
def e63():
    entry = catalog.catalog("example-6.3")
    real, note = catalog.realize_entry(entry)
    return entry, real


def test_all_entries_load():
    for name in catalog.ENTRY_NAMES:
        entry = catalog.catalog(name)
        assert entry.presentation.ngens >= 2
        assert entry.expected["group_order"] > 1
        assert set(entry.a_gens).isdisjoint(entry.b_gens)


def test_unknown_entry():
    with pytest.raises(catalog.CatalogError):
        catalog.catalog("nosuch")


def test_construction_ii_parametric_matches_stored():
    src = catalog.construction_ii_source(2)
    from symmlab.words import parse_presentation
    pres = parse_presentation(src)
    stored = catalog.catalog("construction-II", n=2).presentation
    assert pres.generator_names == stored.generator_names
    assert [r.syllables for r in pres.relators] == \
        [r.syllables for r in stored.relators]


def test_construction_ii_requires_n_at_least_2():
    with pytest.raises(catalog.CatalogError):
        catalog.catalog("construction-II", n=1)


def test_example_63_connection_set(e63):
    entry, real = e63
    A, B, S = catalog.connection_set(entry, real)
    assert len(A) == len(B) == 5
    assert A & B == {0}
    assert len(S) == 8
    assert len(real.closure(A | B)) == 125


def test_example_63_fast_pipeline(e63):
    entry, _ = e63
    rep = catalog.lemma_5_6_pipeline(entry, tier="fast")
    assert rep["ok"], rep["discrepancies"]
    stages = {s["stage"]: s for s in rep["stages"]}
    assert stages["sigma"]["vertices"] == 50
    assert stages["auths"]["order"] == 32


def test_example_63_aut_search(e63):
    entry, real = e63
    res = catalog.aut_fixing_set_search(entry, real)
    assert res.order == 32
    # every reported lift really is a graph automorphism fixing S setwise
    _, _, S = catalog.connection_set(entry, real)
    gamma = graphs.cayley_graph(real, S)
    from symmlab.autgrp import is_automorphism
    for lift in res.lifts[:4]:
        perm = Permutation([int(v) for v in lift])
        assert is_automorphism(gamma, perm)
        assert perm.images[0] == 0
        assert {int(perm.images[s]) for s in S} == set(S)


def test_prop_1_4_examples():
    _, B, rep = catalog.prop_1_4_build(3, 2, 2)
    assert rep["two_arc_transitive"] and rep["three_arc_transitive"]
    assert rep["b_u1_order"] == 4 and rep["b_u1_orbits_on_u"] == 2
    assert not rep["divergence"]


def test_prop_1_4_preconditions():
    with pytest.raises(catalog.CatalogError, match="gcd"):
        catalog.prop_1_4_build(2, 2, 2)
    with pytest.raises(catalog.CatalogError, match="prime"):
        catalog.prop_1_4_build(2, 6, 9)
    with pytest.raises(catalog.CatalogError, match="divide"):
        catalog.prop_1_4_build(2, 6, 7)


def test_field_model_is_a_field():
    pows, _ = catalog._field_powers(2, 6)
    assert len(pows) == 63 and len(set(pows)) == 63
    pows, _ = catalog._field_powers(3, 2)
    assert len(pows) == 8


def test_lemma_5_2_check_k33():
    g = graphs.complete_bipartite(3, 3)
    rot_u = Permutation([1, 2, 0, 3, 4, 5])
    rot_w = Permutation([0, 1, 2, 4, 5, 3])
    G = build_chain([rot_u, rot_w], 6)
    assert G.order == 9
    assert catalog.lemma_5_2_check(g, G) == "true"


def test_lemma_5_2_check_k44():
    g = graphs.complete_bipartite(4, 4)
    rot_u = Permutation([1, 2, 3, 0, 4, 5, 6, 7])
    rot_w = Permutation([0, 1, 2, 3, 5, 6, 7, 4])
    G = build_chain([rot_u, rot_w], 8)
    assert catalog.lemma_5_2_check(g, G) == "true"


def test_lemma_5_2_check_inapplicable():
    g = graphs.cycle_graph(6)
    G = build_chain([Permutation([1, 2, 3, 4, 5, 0])], 6)
    assert catalog.lemma_5_2_check(g, G) == "inapplicable"


def test_construction_ii_claims_small():
    rep = catalog.construction_ii_claims(n=2)
    assert rep["ok"]
    assert rep["claim1_automorphism"] and rep["claim2_rejected"]
    assert rep["claim2_failing_relator"]


def test_sidecar_provenance_present():
    for name in catalog.ENTRY_NAMES:
        entry = catalog.catalog(name)
        for key in entry.expected:
            assert key in entry.provenance
