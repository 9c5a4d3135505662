import pytest

from hopfdual.exact import SparseMatrix
from hopfdual.forms import AydForms, FormSpaces
from hopfdual.yd import (ayd_to_yd, character_module, check_ayd, check_module, check_yd, conversion_checks,
                         is_morphism, symmetry_T, trivial_module, yd_to_ayd)

GROUPS = ["cz2", "cz3", "cz4", "cs3", "fz2", "fs3"]


@pytest.mark.parametrize("name", GROUPS)
def test_character_module_converts(corpus, pairs, name):
    h = corpus[name].group
    for p in pairs[name]:
        m = character_module(h, p.sigma, p.delta)
        assert check_module(m).ok
        assert check_ayd(m).ok
        assert conversion_checks(m, p.sigma, p.delta).ok


def test_trivial_module_on_sweedler(corpus):
    # C with counit actions is always YD; it is AYD only when (1, eps) is a modular pair
    m = trivial_module(corpus["h4"].group)
    assert check_yd(m).ok
    assert not check_ayd(m).ok
    assert check_ayd(trivial_module(corpus["cs3"].group)).ok


@pytest.mark.parametrize("name,akey", [("cz4", "swap"), ("fs3", "graded"), ("cs3", "swap")])
def test_form_modules_convert_round_trip(corpus, pairs, name, akey):
    e = corpus[name]
    ayd = AydForms(FormSpaces(e.group, e.algebras[akey], 1))
    for p in pairs[name]:
        for n in (0, 1):
            m = ayd.module(n)
            y = ayd_to_yd(m, p.sigma, p.delta)
            assert check_yd(y).ok
            back = yd_to_ayd(y, p.sigma, p.delta)
            assert back.h_action == m.h_action and back.hd_action == m.hd_action


def test_symmetry_is_a_module_map(corpus):
    e = corpus["h4"]
    m = AydForms(FormSpaces(e.group, e.algebras["swap"], 1)).module(1)
    T = symmetry_T(m)
    assert is_morphism(T, m, m)
    assert T != SparseMatrix.identity(m.dim)


def test_sweedler_forms_are_ayd_not_yd(corpus):
    # S^2 != id on H4, so the anti-twisted law and the plain law differ
    e = corpus["h4"]
    m = AydForms(FormSpaces(e.group, e.algebras["swap"], 1)).module(1)
    assert check_ayd(m).ok
    assert not check_yd(m).ok
