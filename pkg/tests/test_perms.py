import itertools
import random

import pytest

from symmlab.perms import (
    Permutation,
    PermGroup,
    build_chain,
    is_isomorphic_small,
    regular_group,
)


def sym(n):
    return PermGroup([
        Permutation.from_cycles(n, [(0, 1)]),
        Permutation.from_cycles(n, [tuple(range(n))]),
    ])


def cyclic(n):
    return PermGroup([Permutation.from_cycles(n, [tuple(range(n))])])


def brute_force_elements(gens, degree):
    ident = Permutation.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return seen


class TestPermutation:
    def test_composition_order(self):
        # x^(p*q) = (x^p)^q
        p = Permutation.from_cycles(3, [(0, 1)])
        q = Permutation.from_cycles(3, [(1, 2)])
        assert (p * q)(0) == q(p(0)) == 2

    def test_inverse(self):
        rng = random.Random(1)
        for _ in range(20):
            img = list(range(8))
            rng.shuffle(img)
            p = Permutation(img)
            assert (p * p.inverse()).is_identity()

    def test_power_and_order(self):
        c = Permutation.from_cycles(6, [(0, 1, 2), (3, 4)])
        assert c.order() == 6
        assert (c ** 6).is_identity()
        assert c ** -1 == c.inverse()

    def test_cycles_roundtrip(self):
        p = Permutation.from_cycles(5, [(0, 3, 1)])
        assert p.cycles() == [(0, 3, 1)]
        assert p.cycle_string() == "(0 3 1)"


class TestChain:
    def test_s4_order(self):
        assert sym(4).order == 24

    def test_orders_vs_exhaustive(self):
        rng = random.Random(5)
        for trial in range(15):
            degree = rng.randint(4, 7)
            gens = []
            for _ in range(2):
                img = list(range(degree))
                rng.shuffle(img)
                gens.append(Permutation(img))
            grp = build_chain(gens, degree)
            assert grp.order == len(brute_force_elements(gens, degree))

    def test_membership(self):
        g = sym(5)
        rng = random.Random(2)
        for _ in range(20):
            x = g.random_element(rng)
            assert x in g
        a5_gens = [Permutation.from_cycles(5, [(0, 1, 2)]),
                   Permutation.from_cycles(5, [(0, 1, 2, 3, 4)])]
        a5 = build_chain(a5_gens, 5)
        assert a5.order == 60
        assert Permutation.from_cycles(5, [(0, 1)]) not in a5

    def test_elements_iteration(self):
        g = sym(4)
        elts = list(g.elements())
        assert len(elts) == 24
        assert len(set(elts)) == 24

    def test_trivial_group(self):
        t = PermGroup([], 5)
        assert t.order == 1
        assert list(t.elements())[0].is_identity()


class TestOrbitsStabilizers:
    def test_orbit(self):
        c5 = cyclic(5)
        assert c5.orbit(0) == [0, 1, 2, 3, 4]
        t = PermGroup([], 6)
        assert t.orbit(3) == [3]
        with pytest.raises(ValueError):
            c5.orbit(9)

    def test_orbit_stabilizer_random_subgroups_of_s8(self):
        rng = random.Random(11)
        full = list(sym(8).elements())
        for _ in range(50):
            gens = [rng.choice(full) for _ in range(2)]
            grp = build_chain(gens, 8)
            for pt in range(8):
                orb = grp.orbit(pt)
                stab = grp.point_stabilizer(pt)
                assert grp.order == len(orb) * stab.order

    def test_point_stabilizer_s4(self):
        stab = sym(4).point_stabilizer(0)
        assert stab.order == 6
        assert all(g(0) == 0 for g in stab.generators)

    def test_pointwise_stabilizer(self):
        stab = sym(5).pointwise_stabilizer([0, 1])
        assert stab.order == 6

    def test_setwise_stabilizer_vs_bruteforce(self):
        rng = random.Random(3)
        grp = sym(6)
        for size in (2, 3):
            pts = rng.sample(range(6), size)
            stab = grp.setwise_stabilizer(pts)
            expected = [g for g in grp.elements()
                        if {g(p) for p in pts} == set(pts)]
            assert stab.order == len(expected)
            for g in stab.generators:
                assert {g(p) for p in pts} == set(pts)

    def test_setwise_full_domain(self):
        g = sym(4)
        assert g.setwise_stabilizer(range(4)) is g
        with pytest.raises(ValueError):
            g.setwise_stabilizer([])

    def test_induced_action_singletons(self):
        g = sym(4)
        image, kernel = g.induced_action([[0], [1], [2], [3]])
        assert image.order == 24
        assert kernel.order == 1

    def test_induced_action_blocks(self):
        # C_2 x C_2 acting on two blocks of size 2
        a = Permutation.from_cycles(4, [(0, 1)])
        b = Permutation.from_cycles(4, [(2, 3)])
        g = PermGroup([a, b])
        image, kernel = g.induced_action([[0, 1], [2, 3]])
        assert image.order == 1
        assert kernel.order == 4
        swap = Permutation.from_cycles(4, [(0, 2), (1, 3)])
        g2 = PermGroup([a, b, swap])
        image2, kernel2 = g2.induced_action([[0, 1], [2, 3]])
        assert image2.order == 2
        assert kernel2.order == 4


class TestTupleOrbits:
    def test_singleton(self):
        g = sym(4)
        assert g.orbits_on_tuples([(0, 1)]) == [sorted(g.orbit_of_tuple((0, 1)) & {(0, 1)})]

    def test_class_sizes_divide_order(self):
        g = build_chain([Permutation.from_cycles(6, [(0, 1, 2, 3, 4, 5)]),
                         Permutation.from_cycles(6, [(1, 5), (2, 4)])], 6)
        tuples = list(itertools.permutations(range(6), 2))
        for cls in g.orbits_on_tuples(tuples):
            assert g.order % len(cls) == 0


class TestStructure:
    def test_solvability(self):
        assert cyclic(7).is_solvable()
        assert sym(4).is_solvable()
        assert not sym(5).is_solvable()
        a5 = build_chain([Permutation.from_cycles(5, [(0, 1, 2)]),
                          Permutation.from_cycles(5, [(0, 1, 2, 3, 4)])], 5)
        assert not a5.is_solvable()

    def test_derived_series_vs_exhaustive(self):
        # derived subgroup of S_4 is A_4, then V_4, then 1
        d1 = sym(4).derived_subgroup()
        assert d1.order == 12
        d2 = d1.derived_subgroup()
        assert d2.order == 4
        d3 = d2.derived_subgroup()
        assert d3.order == 1
        assert sym(4).derived_length() == 3

    def test_abelian_invariants(self):
        c6 = cyclic(6)
        assert c6.abelian_invariants() == [6]
        v4 = PermGroup([Permutation.from_cycles(4, [(0, 1)]),
                        Permutation.from_cycles(4, [(2, 3)])])
        assert v4.abelian_invariants() == [2, 2]
        assert sym(4).abelian_invariants() == [2]

    def test_fingerprint_c4(self):
        fp = cyclic(4).fingerprint()
        assert fp["order"] == 4
        assert fp["element_orders"] == {1: 1, 2: 1, 4: 2}
        assert fp["center_order"] == 4
        assert fp["abelian_invariants"] == [4]
        assert fp["derived_length"] == 1

    def test_sylow(self):
        syl = sym(4).sylow_subgroup(2)
        assert syl.order == 8
        syl3 = sym(4).sylow_subgroup(3)
        assert syl3.order == 3


class TestIsomorphism:
    def test_c4_vs_v4(self):
        v4 = PermGroup([Permutation.from_cycles(4, [(0, 1)]),
                        Permutation.from_cycles(4, [(2, 3)])])
        assert not is_isomorphic_small(cyclic(4), v4)

    def test_c4_relabelled(self):
        other = PermGroup([Permutation.from_cycles(8, [(0, 2, 4, 6)])])
        assert is_isomorphic_small(cyclic(4), other)

    def test_s3_vs_c6(self):
        assert not is_isomorphic_small(sym(3), cyclic(6))
        d3 = PermGroup([Permutation.from_cycles(3, [(0, 1, 2)]),
                        Permutation.from_cycles(3, [(0, 1)])])
        assert is_isomorphic_small(sym(3), d3)

    def test_cap(self):
        with pytest.raises(ValueError):
            is_isomorphic_small(sym(6), sym(6))


class TestRegularGroup:
    def test_regular_cyclic(self):
        g = regular_group([Permutation.from_cycles(6, [(0, 1, 2, 3, 4, 5)])], 6)
        assert g.order == 6
        assert g.is_regular()
        assert Permutation.from_cycles(6, [(0, 1)]) not in g

    def test_regular_membership(self):
        # regular rep of S_3 on 6 points via explicit multiplication table
        elems = list(itertools.permutations(range(3)))
        idx = {e: i for i, e in enumerate(elems)}

        def mult(x, y):  # apply x then y
            return tuple(y[x[i]] for i in range(3))

        gens = []
        for s in [(1, 0, 2), (1, 2, 0)]:
            gens.append(Permutation([idx[mult(e, s)] for e in elems]))
        g = regular_group(gens, 6)
        assert g.order == 6
        assert g.is_semiregular()
        for x in elems:
            p = Permutation([idx[mult(e, x)] for e in elems])
            assert p in g
