import pytest

from hofree.exceptions import BoundExceededError, InvalidPartitionedPermutationError, PreconditionError
from hofree.partition import SetPartition
from hofree.permutation import Permutation, enumerate_snc
from hofree.ps import (ZERO, PartitionedPermutation, classify, direct_product, enumerate_ps, factorizations2,
                       factorizations2_bruteforce, factorizations_disc_tunnel, pp_disc, pp_full,
                       pp_identity, pp_multiply, ps_nc, split_product)


def test_blocks_must_be_invariant():
    with pytest.raises(InvalidPartitionedPermutationError):
        PartitionedPermutation(SetPartition.parse('{1}{2}'), Permutation.parse('(1,2)'))


def test_length():
    a = pp_full((2, 2))
    assert a.length() == 2 * 3 - 2
    assert pp_identity(3).length() == 0
    assert pp_disc(Permutation.parse('(1,2,3)')).length() == 2


def test_ps_sizes():
    assert [len(enumerate_ps(n)) for n in range(1, 5)] == [1, 3, 13, 73]


def test_enumeration_bound():
    with pytest.raises(BoundExceededError):
        enumerate_ps(9)
    with pytest.raises(PreconditionError):
        enumerate_ps(3, bound=2)


def test_multiply_geodesic_or_zero():
    t = pp_disc(Permutation.parse('(1,2)'))
    u = PartitionedPermutation(SetPartition.full(2), Permutation.identity(2))
    assert pp_multiply(t, pp_identity(2)) == t
    assert pp_multiply(t, t) == u
    assert pp_multiply(u, u) is ZERO
    assert not ZERO


@pytest.mark.parametrize('target', [pp_full((3,)), pp_full((2, 1)), pp_full((1, 1)),
                                    PartitionedPermutation(SetPartition.parse('{1,2}{3}'),
                                                           Permutation.parse('(1,2)(3)'))])
def test_factorizations_match_bruteforce(target):
    assert sorted(map(str, factorizations2(target))) == sorted(map(str, factorizations2_bruteforce(target)))


def test_factorizations_are_geodesic():
    target = pp_full((2, 2))
    for a, b in factorizations2(target):
        assert pp_multiply(a, b) == target


def test_ps_nc_of_disc_target_is_nc():
    gamma = Permutation.parse('(1,2,3,4)')
    assert len(ps_nc(SetPartition.full(4), gamma)) == 14
    assert all(a.is_disc() for a in ps_nc(SetPartition.full(4), gamma))


def test_disc_tunnel_families_cover_two_circles():
    families = factorizations_disc_tunnel((2, 2))
    assert len(families['a']) == len(enumerate_snc((2, 2))) == 18
    assert len(families['b']) == len(families['c'])
    pairs = {(str(a), str(b)) for family in families.values() for a, b in family}
    direct = {(str(a), str(b)) for a, b in factorizations2(pp_full((2, 2)))}
    assert pairs <= direct


def test_classify():
    gamma = Permutation.parse('(1,2,3)')
    flags = classify(pp_disc(Permutation.parse('(1,2)(3)')), gamma)
    assert flags.is_disc
    assert flags.gamma_planar


def test_split_product_inverts_direct_product():
    p1, p2 = Permutation.parse('(1,2)'), Permutation.parse('(1,3)(2)')
    assert split_product(direct_product(p1, p2), 2) == (p1, p2)
    with pytest.raises(PreconditionError):
        split_product(Permutation.parse('(1,3)(2)'), 2)


def test_dict_round_trip():
    a = pp_full((2, 1))
    assert PartitionedPermutation.from_dict(a.to_dict()) == a
