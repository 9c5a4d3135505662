from fractions import Fraction as F

import pytest

from hopfdual.exact import ONE
from hopfdual.groups import cyclic, symmetric3
from hopfdual.hopf import (FiniteQuantumGroup, bidual_check, dual_normalization_checks, function_algebra,
                           group_algebra, solve_integrals, sweedler_h4, tensor_product, validate)


@pytest.mark.parametrize("make", [lambda: group_algebra(cyclic(3)), lambda: function_algebra(symmetric3()),
                                  sweedler_h4])
def test_constructors_validate(make):
    h = make()
    assert validate(h).ok
    assert validate(h.dual()).ok
    assert bidual_check(h).ok
    assert all(c.ok for c in dual_normalization_checks(h))


def test_broken_antipode_reports_witness():
    h = sweedler_h4()
    anti = [row[:] for row in h.antipode]
    anti[2][3], anti[3][2] = -anti[2][3], -anti[3][2]   # S(x) = gx, S(gx) = -x: wrong sign
    bad = FiniteQuantumGroup("bad", h.basis, [1, 0, 0, 0], h.mult, h.comult, h.counit, anti)
    rep = validate(bad)
    assert not rep.ok
    fail = rep.failures()[0]
    assert "antipode" in fail.name and fail.witness is not None


def test_integrals_of_sweedler():
    h = sweedler_h4()
    phi, psi = solve_integrals(h)
    # left integral supported on gx, right integral on x, up to the normalisation
    assert set(phi) == {3} and set(psi) == {2}
    assert h.modular_element() == {1: ONE}
    assert not h.is_involutive


def test_group_algebra_is_unimodular():
    h = group_algebra(symmetric3())
    assert h.modular_element() == h.one
    assert h.is_involutive and not h.is_commutative and h.is_cocommutative


def test_dual_is_function_algebra():
    h = group_algebra(cyclic(4))
    d = h.dual()
    assert d.is_commutative
    assert d.dual() is h
    # the dual unit is the counit
    assert d.unit_vec == {i: ONE for i in range(4)}


def test_hit_actions():
    h = sweedler_h4()
    d = h.dual()
    eps = {i: c for i, c in enumerate(h.counit) if c}
    x = {2: ONE}
    assert h.lhit(eps, x) == x and h.rhit(x, eps) == x
    # Delta(x) = x (x) 1 + g (x) x, so only the right hit sees chi(g) = -1
    chi = {0: ONE, 1: -ONE}
    assert h.lhit(chi, x) == x
    assert h.rhit(x, chi) == {2: -ONE}
    assert d.is_character({0: ONE}) and h.is_grouplike({1: ONE})


def test_tensor_product_valid():
    h = tensor_product(group_algebra(cyclic(2)), sweedler_h4())
    assert h.dim == 8 and validate(h).ok
    assert h.phi == {3: F(h.phi[3])}
