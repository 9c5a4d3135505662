import pytest

from hopfdual.exact import SparseMatrix
from hopfdual.forms import AydForms, FormSpaces, YdForms
from hopfdual.halgebra import crossed_product
from hopfdual.modular import dualize_pair, enumerate_pairs
from hopfdual.xcomplex import Quotient, build_plain_x, build_x, green_julg_coinvariants, green_julg_invariants


def test_quotient_projection():
    q = Quotient(3, [{0: 1, 1: -1}])
    assert q.dim == 2
    assert q.project({0: 1}) == q.project({1: 1})
    assert (q.q() @ q.lift()) == SparseMatrix.identity(2)


def test_x_complex_needs_degree_two(corpus):
    e = corpus["cz2"]
    with pytest.raises(ValueError):
        build_x(AydForms(FormSpaces(e.group, e.algebras["trivial"], 1)))


@pytest.mark.parametrize("name,akey", [("cz3", "translation"), ("h4", "swap"), ("cs3", "swap")])
def test_paracomplex_law(corpus, name, akey):
    e = corpus[name]
    x = build_x(AydForms(FormSpaces(e.group, e.algebras[akey], 2)))
    assert x.paracomplex_check().ok


def test_plain_x_is_a_complex(corpus):
    B = crossed_product(corpus["cz2"].algebras["translation"])
    px = build_plain_x(B)
    assert (px.del1 @ px.del0).is_zero() and (px.del0 @ px.del1).is_zero()


@pytest.mark.parametrize("name,akey", [("cz2", "translation"), ("fz2", "graded"), ("cz4", "swap")])
def test_invariants_for_unimodular_dual_pairs(corpus, name, akey):
    e = corpus[name]
    k = e.group.dual()
    B = crossed_product(e.algebras[akey])
    plain = build_plain_x(B)
    for q in enumerate_pairs(k):
        if q.sigma != k.one:
            continue
        rep = green_julg_invariants(YdForms(FormSpaces(k, B, 2), q.sigma, q.delta), plain)
        assert rep.ok, str(rep)


def test_invariants_with_nontrivial_sigma_are_not_honest(corpus):
    # with sigma != 1 the invariant part keeps a nontrivial T
    e = corpus["cz4"]
    k = e.group.dual()
    B = crossed_product(e.algebras["trivial"])
    q = next(q for q in enumerate_pairs(k) if q.sigma != k.one)
    rep = green_julg_invariants(YdForms(FormSpaces(k, B, 2), q.sigma, q.delta))
    assert not rep["T = id in degree 0"].ok


@pytest.mark.parametrize("name,akey", [("cz2", "translation"), ("cs3", "swap"), ("fz2", "graded")])
def test_twisted_coinvariants(corpus, pairs, name, akey):
    e = corpus[name]
    h = e.group
    k = h.dual()
    B = crossed_product(e.algebras[akey])
    plain = build_plain_x(B)
    for p in pairs[name]:
        if p.sigma != h.one:
            continue
        dp = dualize_pair(p)
        rep = green_julg_coinvariants(YdForms(FormSpaces(k, B, 2), dp.sigma, dp.delta),
                                      h.dual_vec_compose_S(p.delta), plain)
        assert rep.ok, str(rep)
