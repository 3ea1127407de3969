import numpy as np
import pytest

from symmlab import catalog, fpaut
from symmlab.coset import regular_representation
from symmlab.words import parse_presentation


@pytest.fixture(scope="module")
def e63_real():
    entry = catalog.catalog("example-6.3")
    real, _ = catalog.realize_entry(entry)
    return entry, real


def test_basis_words_cover_group(e63_real):
    _, real = e63_real
    bwords, discovery = fpaut.basis_words(real, [0, 1])
    assert len(discovery) == real.n - 1


def test_identity_candidate_accepted(e63_real):
    _, real = e63_real
    basis = [0, 1]
    bwords, discovery = fpaut.basis_words(real, basis)
    images = [real.generator_element(i) for i in basis]
    gen_images = fpaut.complete_images(real, basis, images, bwords)
    assert fpaut.images_satisfy_relators(real, gen_images)
    arr = fpaut.endomorphism_array(real, basis, images, discovery)
    assert np.array_equal(arr, np.arange(real.n))


def test_brute_force_search_order(e63_real):
    entry, real = e63_real
    res = fpaut.brute_force_search(
        real,
        [real.presentation.gen_index(g) for g in entry.a_gens],
        [real.presentation.gen_index(g) for g in entry.b_gens])
    assert res.order == 32
    assert res.lift_group.order == 32
    # the S-action is faithful: same order on the connection set
    assert res.s_action.order == 32


def test_lifts_are_multiplicative(e63_real):
    _, real = e63_real
    entry = catalog.catalog("example-6.3")
    res = fpaut.brute_force_search(
        real,
        [real.presentation.gen_index(g) for g in entry.a_gens],
        [real.presentation.gen_index(g) for g in entry.b_gens])
    lift = np.asarray(res.lifts[1])
    for x in range(0, real.n, 17):
        for y in range(0, real.n, 13):
            assert lift[real.mult(x, y)] == \
                real.mult(int(lift[x]), int(lift[y]))


def test_bilinear_matches_brute_on_small():
    # elementary abelian model where both strategies apply
    entry = catalog.catalog("example-6.5")
    real, _ = catalog.realize_entry(entry)
    res = fpaut.bilinear_search(
        real,
        [real.presentation.gen_index(g) for g in entry.a_gens],
        [real.presentation.gen_index(g) for g in entry.b_gens],
        [real.presentation.gen_index(g) for g in entry.z_gens])
    assert res.order == 294
