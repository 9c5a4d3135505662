import pytest

from hopfdual.exact import ONE, SparseMatrix
from hopfdual.forms import AydForms, FormSpaces, YdForms, build_forms, lambda_checks
from hopfdual.yd import check_ayd, check_yd


def test_dimensions(corpus):
    e = corpus["cz3"]
    sp = FormSpaces(e.group, e.algebras["translation"], 2)
    assert [sp.dim(n) for n in range(3)] == [9, 36, 108]
    for n in range(3):
        for i in (0, 5, sp.dim(n) - 1):
            assert sp.encode(n, sp.decode(n, i)) == i


def test_spaces_reject_foreign_algebra(corpus):
    with pytest.raises(ValueError):
        FormSpaces(corpus["cz3"].group, corpus["cz2"].algebras["trivial"], 1)


@pytest.mark.parametrize("name,akey", [("cz2", "trivial"), ("cz2", "translation"), ("cz4", "trivial"),
                                       ("cz4", "translation"), ("h4", "trivial"), ("h4", "swap")])
def test_paramixed_ayd(corpus, name, akey):
    e = corpus[name]
    ayd = AydForms(FormSpaces(e.group, e.algebras[akey], 3))
    rep = ayd.paramixed_check()
    assert rep.ok, str(rep)
    for n in range(2):
        assert check_ayd(ayd.module(n)).ok


def test_symmetry_is_nontrivial_on_sweedler(corpus):
    e = corpus["h4"]
    ayd = AydForms(FormSpaces(e.group, e.algebras["swap"], 2))
    assert ayd.T(1) != SparseMatrix.identity(ayd.dim(1))


@pytest.mark.parametrize("name,akey", [("h4", "swap"), ("fs3", "graded"), ("cs3", "swap")])
def test_symmetry_inverse(corpus, name, akey):
    e = corpus[name]
    ayd = AydForms(FormSpaces(e.group, e.algebras[akey], 2))
    for n in range(3):
        assert ayd.T(n) @ ayd.T_inverse(n) == SparseMatrix.identity(ayd.dim(n))


@pytest.mark.parametrize("name,akey", [("cz4", "swap"), ("fz2", "graded"), ("fs3", "graded")])
def test_yd_picture_and_lambda(corpus, pairs, name, akey):
    e = corpus[name]
    for p in pairs[name]:
        ayd, yd = build_forms(e.group, e.algebras[akey], p, 2)
        assert yd.paramixed_check().ok
        for n in range(2):
            assert check_yd(yd.module(n)).ok
        rep = lambda_checks(ayd, yd, 2)
        assert rep.ok, str(rep)


class _OtherTwist(YdForms):
    """Reads the twisted face as ``(g S^-1(p)) <- sigma`` instead."""

    def _twist(self, g, p):
        hd = self.hd
        return hd.rhit(hd.mul({g: ONE}, hd.Sinv(p)), self.sigma)


def test_other_twist_reading_breaks_lambda(corpus, pairs):
    # only a pair with sigma != 1 over a noncommutative dual can tell the readings apart
    e = corpus["fs3"]
    p = next(q for q in pairs["fs3"] if q.sigma != e.group.one)
    sp = FormSpaces(e.group, e.algebras["graded"], 2)
    good = lambda_checks(AydForms(sp), YdForms(sp, p.sigma, p.delta), 2)
    bad = lambda_checks(AydForms(sp), _OtherTwist(sp, p.sigma, p.delta), 2)
    assert good.ok
    assert not bad.ok
