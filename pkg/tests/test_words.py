import pytest
from hypothesis import given, strategies as st

from symmlab.words import (FinitePresentation, PresentationError, Word,
                           parse_presentation)


SRC = """\
group demo
gens a b
rel a^4
rel b^2
rel b*a*b = a^-1   # dihedral
"""


def test_parse_round_trip():
    pres = parse_presentation(SRC)
    assert pres.name == "demo"
    assert pres.generator_names == ["a", "b"]
    assert len(pres.relators) == 3
    again = parse_presentation(pres.display())
    assert [r.syllables for r in again.relators] == \
        [r.syllables for r in pres.relators]


def test_equation_becomes_relator():
    pres = parse_presentation("group g\ngens a b\nrel a*b = b*a\n")
    (rel,) = pres.relators
    # a·b·(b·a)^-1 = a·b·a^-1·b^-1
    assert rel.syllables == ((0, 1), (1, 1), (0, -1), (1, -1))


def test_commutator_convention():
    # [x, y] = x^-1 y^-1 x y
    x, y = Word.generator(0), Word.generator(1)
    assert x.commutator(y).syllables == ((0, -1), (1, -1), (0, 1), (1, 1))
    pres = parse_presentation("group g\ngens x y\nrel [x,y]\n")
    assert pres.relators[0].syllables == ((0, -1), (1, -1), (0, 1), (1, 1))


def test_error_reports_line():
    with pytest.raises(PresentationError) as err:
        parse_presentation("group g\ngens a\nrel a*\nrel a^2\n")
    assert err.value.line == 3


def test_rel_before_gens_rejected():
    with pytest.raises(PresentationError):
        parse_presentation("group g\nrel a^2\ngens a\n")


def test_unknown_generator_rejected():
    with pytest.raises(PresentationError):
        parse_presentation("group g\ngens a\nrel q^2\n")


def test_duplicate_generator_rejected():
    with pytest.raises(PresentationError):
        parse_presentation("group g\ngens a a\n")


def test_word_inverse_and_power():
    pres = parse_presentation("group g\ngens a b\n")
    w = pres.word("a*b^2")
    assert (w * w.inverse()).is_empty()
    assert (w ** 3).length() == 9
    assert (w ** -1).syllables == w.inverse().syllables


syllable = st.tuples(st.integers(0, 3), st.integers(-4, 4))


@given(st.lists(syllable, max_size=20))
def test_reduction_is_normal(syls):
    w = Word.from_syllables(tuple(syls))
    for (g1, e1), (g2, e2) in zip(w.syllables, w.syllables[1:]):
        assert g1 != g2
    assert all(e != 0 for _, e in w.syllables)
    # reducing again changes nothing
    assert Word.from_syllables(w.syllables).syllables == w.syllables


@given(st.lists(syllable, max_size=12), st.lists(syllable, max_size=12))
def test_letters_respect_concatenation(s1, s2):
    w1, w2 = Word.from_syllables(tuple(s1)), Word.from_syllables(tuple(s2))
    prod = w1 * w2
    # free reduction of concatenated letter strings matches
    assert Word.from_letters(w1.letters() + w2.letters()).syllables \
        == prod.syllables
