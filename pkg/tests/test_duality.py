import pytest

from hopfdual.duality import DualityComparison, tau, tau_checks, twisted_fourier
from hopfdual.exact import SparseMatrix
from hopfdual.halgebra import crossed_product
from hopfdual.modular import dualize_pair


@pytest.mark.parametrize("name", ["cz2", "cz4", "cs3", "fz2", "fs3"])
def test_twisted_fourier(corpus, pairs, name):
    h = corpus[name].group
    for p in pairs[name]:
        rep = twisted_fourier(h, p.sigma, p.delta).checks()
        assert rep.ok, str(rep)


def test_tau_is_a_yd_chain_map(corpus, pairs):
    e = corpus["cz4"]
    h = e.group
    A = e.algebras["swap"]
    for p in pairs["cz4"]:
        q = dualize_pair(p)
        dm = tau(h.dual(), q.sigma, q.delta, A, 1)
        assert tau_checks(dm).ok


def test_tau_rejects_non_pair(corpus):
    e = corpus["cz4"]
    h = e.group
    with pytest.raises(ValueError):
        tau(h.dual(), {0: 1, 1: 1, 2: 1, 3: 1}, {1: 1}, e.algebras["swap"], 1)


@pytest.mark.parametrize("name,akey", [("cz2", "translation"), ("cz4", "swap"), ("fz2", "graded"),
                                       ("fs3", "graded")])
def test_duality_degrees_zero_and_one(corpus, pairs, name, akey):
    e = corpus[name]
    for p in pairs[name]:
        cmp = DualityComparison(e.group, p.sigma, p.delta, e.algebras[akey], 1)
        for n in (0, 1):
            v = cmp.check(n)
            assert v.equal, (p, n, v.witness)


def test_duality_degree_two_small(corpus, pairs):
    e = corpus["cz2"]
    p = pairs["cz2"][1]
    cmp = DualityComparison(e.group, p.sigma, p.delta, e.algebras["trivial"], 2)
    assert cmp.check(2).equal


def test_symmetry_in_place_of_its_inverse_fails(corpus, pairs):
    # translation on Z3 makes T of order three, so T and T^-1 differ
    e = corpus["cz3"]
    p = pairs["cz3"][0]
    cmp = DualityComparison(e.group, p.sigma, p.delta, e.algebras["translation"], 1)
    n = 1
    assert cmp.ayd_A.T(n) != cmp.ayd_A.T_inverse(n)
    comp = cmp.tau_hd[n] @ cmp.tau_h[n]
    wrong = cmp.ayd_A.T(n) @ cmp.yd_A.lambda_map(n) @ comp @ cmp.yd_B.lambda_inverse(n)
    assert wrong != cmp.rhs(n)
    assert cmp.lhs(n) == cmp.rhs(n)


def test_gamma_is_square(corpus, pairs):
    e = corpus["cz2"]
    p = pairs["cz2"][0]
    cmp = DualityComparison(e.group, p.sigma, p.delta, e.algebras["translation"], 0)
    B = crossed_product(crossed_product(e.algebras["translation"]))
    assert cmp.gamma.shape == (B.dim, B.dim)
    assert cmp.gamma.inverse() @ cmp.gamma == SparseMatrix.identity(B.dim)
