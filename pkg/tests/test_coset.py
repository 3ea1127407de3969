import random

import pytest

from symmlab.coset import regular_representation, todd_coxeter
from symmlab.words import parse_presentation


D8 = "group d8\ngens a b\nrel a^4\nrel b^2\nrel b*a*b = a^-1\n"
Q8 = "group q8\ngens a b\nrel a^4\nrel a^2 = b^2\nrel b^-1*a*b = a^-1\n"
S3 = "group s3\ngens a b\nrel a^3\nrel b^2\nrel (a*b)^2\n"


@pytest.mark.parametrize("src,order", [(D8, 8), (Q8, 8), (S3, 6)])
@pytest.mark.parametrize("strategy", ["hlt", "felsch"])
def test_small_group_orders(src, order, strategy):
    ct = todd_coxeter(parse_presentation(src), strategy=strategy)
    assert ct.status == "complete"
    assert ct.n == order


def test_subgroup_index():
    pres = parse_presentation(S3)
    ct = todd_coxeter(pres, subgroup_words=[pres.word("b")])
    assert ct.n == 3  # index of <b> in S3


def test_overflow_reported_not_raised():
    pres = parse_presentation("group z\ngens a\n")  # infinite cyclic
    ct = todd_coxeter(pres, max_cosets=100)
    assert ct.status == "overflow"


def test_relator_order_independence():
    rng = random.Random(7)
    lines = D8.strip().splitlines()
    head = [ln for ln in lines if not ln.startswith("rel")]
    rels = [ln for ln in lines if ln.startswith("rel")]
    for _ in range(6):
        rng.shuffle(rels)
        ct = todd_coxeter(parse_presentation("\n".join(head + rels) + "\n"))
        assert ct.status == "complete" and ct.n == 8


def test_realization_arithmetic():
    pres = parse_presentation(Q8)
    real, _ = regular_representation(pres)
    assert real.n == 8
    a = real.generator_element(0)
    b = real.generator_element(1)
    assert real.element_order(a) == 4
    assert real.element_order(real.mult(a, a)) == 2
    # a^2 = b^2 is the unique central involution
    assert real.mult(a, a) == real.mult(b, b)
    # [a, b] = a^-2 in Q8
    assert real.commutator(a, b) == real.inv(real.mult(a, a))


def test_realization_regular_group():
    pres = parse_presentation(D8)
    real, _ = regular_representation(pres)
    assert real.group.order == 8
    assert real.group.is_regular()
    # right and left multiplications commute
    import numpy as np
    r = real.right_mult_perm(real.generator_element(0))
    l = real.left_mult_perm(real.generator_element(1))
    assert np.array_equal(l[r], r[l])


def test_closure_and_words():
    pres = parse_presentation(D8)
    real, _ = regular_representation(pres)
    a = real.generator_element(0)
    assert len(real.closure([a])) == 4
    for x in range(real.n):
        assert real.element_of_word(real.word_for(x)) == x
