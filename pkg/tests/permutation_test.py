import pytest

from hofree.exceptions import InvalidPartitionedPermutationError, ParseError, SizeMismatchError
from hofree.permutation import (Permutation, enumerate_snc, gamma_of_profile, is_connected, is_noncrossing,
                                kreweras_complement, noncrossing_predicates)


def test_composition_applies_right_factor_first():
    p = Permutation.parse('(1,2)', 3)
    q = Permutation.parse('(2,3)', 3)
    assert (p * q)(1) == p(q(1)) == 2
    assert (p * q) == Permutation.parse('(1,2,3)')


def test_parse_and_str():
    p = Permutation.parse('(1, 3)(2)')
    assert p.n == 3
    assert p.images == (3, 2, 1)
    assert str(p) == '(1,3)(2)'
    assert Permutation.parse('id', 4).is_identity()


@pytest.mark.parametrize('text', ['(1,2', '(1,1)', '(a,b)', '1,2'])
def test_parse_rejects_malformed(text):
    with pytest.raises(ParseError):
        Permutation.parse(text)


def test_parse_identity_needs_size():
    with pytest.raises(ParseError):
        Permutation.parse('()')


def test_images_must_be_bijection():
    with pytest.raises(InvalidPartitionedPermutationError):
        Permutation([1, 1, 2])


def test_size_mismatch():
    with pytest.raises(SizeMismatchError):
        Permutation.identity(2) * Permutation.identity(3)


def test_length_and_cycle_type():
    p = Permutation.parse('(1,2,3)(4,5)(6)')
    assert p.cycle_type() == (3, 2, 1)
    assert p.cycle_count() == 3
    assert p.length() == 3
    assert p.inverse() * p == Permutation.identity(6)


def test_restrict_requires_invariant_block():
    p = Permutation.parse('(1,3)(2,4)')
    assert p.restrict([2, 4]) == Permutation.parse('(1,2)')
    with pytest.raises(InvalidPartitionedPermutationError):
        p.restrict([1, 2])


def test_gamma_of_profile():
    assert gamma_of_profile((2, 3)) == Permutation.parse('(1,2)(3,4,5)')


def test_kreweras_complement_of_identity_is_gamma():
    gamma = gamma_of_profile((4,))
    assert kreweras_complement(Permutation.identity(4), gamma) == gamma


def test_disc_noncrossing_counts_are_catalan():
    assert [len(enumerate_snc((n,))) for n in range(1, 6)] == [1, 2, 5, 14, 42]


def test_annular_noncrossing_counts():
    assert len(enumerate_snc((1, 1))) == 1
    assert len(enumerate_snc((1, 2))) == 4
    assert len(enumerate_snc((2, 2))) == 18


def test_noncrossing_predicates():
    p = Permutation.parse('(1,3)(2,4)')
    flags = noncrossing_predicates(p, (2, 2))
    assert flags.is_connected
    assert not flags.is_disc_noncrossing
    assert flags.is_annular_noncrossing == is_noncrossing(p, (2, 2))
    assert not is_connected(Permutation.identity(4), (2, 2))
