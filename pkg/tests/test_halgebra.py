import pytest

from hopfdual.exact import ONE, SparseTensor
from hopfdual.halgebra import (ModuleAlgebra, center, crossed_product, double_crossed_product, kernel_algebra,
                               regular_algebra, stabilisation, takesaki_takai_checks, trace_form_rank,
                               translation_algebra, validate_algebra)


def test_corpus_algebras_validate(corpus):
    for e in corpus.values():
        for A in e.algebras.values():
            assert validate_algebra(A).ok, (e.name, A.name)


def test_translation_crossed_product_is_a_matrix_algebra(corpus):
    # C^G >| C[G] is M_|G|: center one-dimensional and semisimple
    A = translation_algebra(corpus["cz3"].group)
    B = crossed_product(A)
    assert B.dim == 9 and validate_algebra(B).ok
    assert len(center(B)) == 1
    assert trace_form_rank(B) == 9


def test_kernel_algebra_is_full_matrix_algebra(corpus):
    h = corpus["h4"].group
    K = kernel_algebra(h)
    assert validate_algebra(K).ok
    assert len(center(K)) == 1 and trace_form_rank(K) == 16
    # (r (x) f)(s (x) g) = f(s) r (x) g
    n = h.dim
    assert K.mul({1 * n + 2: ONE}, {2 * n + 3: ONE}) == {1 * n + 3: ONE}
    assert K.mul({1 * n + 2: ONE}, {1 * n + 3: ONE}) == {}


def test_double_crossed_product_and_stabilisation(corpus):
    A = corpus["cz2"].algebras["translation"]
    assert validate_algebra(double_crossed_product(A)).ok
    assert validate_algebra(stabilisation(A)).ok


@pytest.mark.parametrize("name,akey", [("cz2", "trivial"), ("cz2", "translation"), ("cz4", "swap"),
                                       ("fz2", "graded")])
def test_takesaki_takai(corpus, pairs, name, akey):
    e = corpus[name]
    for p in pairs[name]:
        rep = takesaki_takai_checks(e.algebras[akey], p.sigma, p.delta)
        assert rep.ok, str(rep)


def test_regular_adjoint_action_on_group_algebra(corpus):
    assert validate_algebra(regular_algebra(corpus["cs3"].group)).ok


def test_non_equivariant_product_is_rejected(corpus):
    h = corpus["cz2"].group
    # g sends both idempotents to d0, which is not an algebra map
    act = SparseTensor((2, 2, 2), {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 0): 1, (1, 1, 0): 1})
    mult = SparseTensor((2, 2, 2), {(0, 0, 0): 1, (1, 1, 1): 1})
    A = ModuleAlgebra("bad", h, 2, mult, act, unit=[1, 1])
    rep = validate_algebra(A)
    assert not rep.ok and rep.failures()[0].witness is not None
