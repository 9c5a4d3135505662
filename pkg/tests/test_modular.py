from fractions import Fraction as F

import pytest

from hopfdual.exact import ONE
from hopfdual.groups import cyclic
from hopfdual.hopf import group_algebra, sweedler_h4
from hopfdual.modular import ModularPair, dualize_pair, enumerate_pairs, tensor_pair, verify_pair


def test_cz2_restricted_candidates_give_two_pairs(corpus):
    h = corpus["cz2"].group
    found = enumerate_pairs(h)
    assert [p.key() for p in found] == [p.key() for p in corpus["cz2"].expected_pairs()]
    assert len(found) == 2
    assert {tuple(sorted(p.sigma.items())) for p in found} == {((0, ONE),), ((1, ONE),)}
    assert all(p.delta == {0: ONE, 1: ONE} for p in found)


def test_cz2_full_candidate_set():
    # with the sign character allowed, (g, sgn) fails normalisation but (1, sgn) survives
    h = group_algebra(cyclic(2))
    assert len(enumerate_pairs(h)) == 3


@pytest.mark.parametrize("name,count", [("cz3", 1), ("cz4", 4), ("cs3", 2), ("fz2", 3), ("fs3", 2), ("h4", 0)])
def test_pair_counts_match_oracle(corpus, pairs, name, count):
    assert len(pairs[name]) == count == corpus[name].expected["pair_count"]


def test_sweedler_has_no_pair():
    h = sweedler_h4()
    rep = verify_pair(h, {1: ONE}, {0: ONE, 1: -ONE})
    assert not rep.ok


def test_dualization(corpus, pairs):
    for name, ps in pairs.items():
        d = corpus[name].group.dual()
        for p in ps:
            q = dualize_pair(p)
            assert verify_pair(d, q.sigma, q.delta).ok, name


def test_tensor_pair(corpus, pairs):
    h1, h2 = corpus["cz2"].group, corpus["fz2"].group
    h, p = tensor_pair(h1, pairs["cz2"][1], h2, pairs["fz2"][0])
    assert verify_pair(h, p.sigma, p.delta).ok


def test_witness_on_failure(corpus):
    h = corpus["cz4"].group
    rep = verify_pair(h, {1: ONE}, {i: ONE for i in range(4)})
    assert not rep.ok
    assert rep.failures()[0].name


def test_pair_key_is_hashable():
    p = ModularPair({0: ONE}, {0: F(1), 1: F(1)})
    assert hash(p.key()) == hash(ModularPair({0: ONE}, {0: ONE, 1: ONE}).key())
