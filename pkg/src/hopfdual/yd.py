"""Anti-Yetter-Drinfeld and Yetter-Drinfeld modules over a finite quantum group."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Mapping, Sequence

from .exact import ONE, ZERO, SparseMatrix, vaccum
from .hopf import Check, FiniteQuantumGroup, ValidationReport


@dataclass
class BiModule:
    """A space with an action of ``host`` and of its dual, one matrix per basis element."""
    host: FiniteQuantumGroup
    dim: int
    h_action: list      # SparseMatrix per basis element of host
    hd_action: list     # SparseMatrix per basis element of host.dual()
    name: str = "M"

    def act_h(self, x: Mapping) -> SparseMatrix:
        return _combine(self.h_action, x, self.dim)

    def act_hd(self, f: Mapping) -> SparseMatrix:
        return _combine(self.hd_action, f, self.dim)

    def flipped(self) -> "BiModule":
        """The same data viewed over the dual quantum group."""
        return BiModule(self.host.dual(), self.dim, self.hd_action, self.h_action, self.name + "^")


def _combine(mats: Sequence[SparseMatrix], x: Mapping, dim: int) -> SparseMatrix:
    out = SparseMatrix.zero(dim, dim)
    for i, c in x.items():
        out = out + mats[i].scale(c)
    return out


def check_module(m: BiModule) -> ValidationReport:
    rep = ValidationReport(f"{m.name} module axioms")
    for label, q, mats in (("H", m.host, m.h_action), ("Hhat", m.host.dual(), m.hd_action)):
        n = q.dim
        rep.checks.append(Check(f"{label} acts unitally", _combine(mats, q.one, m.dim) == SparseMatrix.identity(m.dim)))
        bad = next(((x, y) for x, y in product(range(n), repeat=2)
                    if _combine(mats, q.mul({x: ONE}, {y: ONE}), m.dim) != mats[x] @ mats[y]), None)
        rep.checks.append(Check(f"{label} action is multiplicative", bad is None, bad))
    return rep


def _compat(m: BiModule, anti: bool) -> ValidationReport:
    h = m.host
    hd = h.dual()
    n = h.dim
    rep = ValidationReport(f"{m.name} {'AYD' if anti else 'YD'} compatibility")
    for t in range(n):
        terms = h.comul_basis(t, 3)
        for f in range(n):
            lhs = m.h_action[t] @ m.hd_action[f]
            rhs = SparseMatrix.zero(m.dim, m.dim)
            for (t1, t2, t3), c in terms.items():
                left = h.S_power({t1: ONE}, 2) if anti else {t1: ONE}
                g = hd.rhit(hd.lhit(left, {f: ONE}), h.Sinv({t3: ONE}))
                if g:
                    rhs = rhs + (m.act_hd(g) @ m.h_action[t2]).scale(c)
            if lhs != rhs:
                col = lhs.first_difference(rhs)
                rep.checks.append(Check("compatibility", False, (t, f, col)))
                return rep
    rep.checks.append(Check("compatibility", True))
    return rep


def check_ayd(m: BiModule) -> ValidationReport:
    """``t.(f.m) = (S^2(t(1)) -> f <- S^-1(t(3))).(t(2).m)`` on all basis triples."""
    return _compat(m, anti=True)


def check_yd(m: BiModule) -> ValidationReport:
    """``t.(f.m) = (t(1) -> f <- S^-1(t(3))).(t(2).m)`` on all basis triples."""
    return _compat(m, anti=False)


def _convert(m: BiModule, sigma: Mapping, delta: Mapping, forward: bool) -> BiModule:
    h = m.host
    hd = h.dual()
    n = h.dim
    # forward: t.m -> delta^-1(t(1)) t(2).m, f.m -> sigma(f(2)) f(1).m; backward uses the inverses
    ch = h.dual_vec_compose_S(delta) if forward else dict(delta)
    gl = h.S(sigma) if forward else dict(sigma)
    h_new = []
    for t in range(n):
        x: dict = {}
        for t1, t2, c in h._ct[t]:
            v = ch.get(t1)
            if v:
                vaccum(x, {t2: ONE}, c * v)
        h_new.append(m.act_h(x))
    hd_new = []
    for f in range(n):
        x = {}
        for f1, f2, c in hd._ct[f]:
            v = gl.get(f2)
            if v:
                vaccum(x, {f1: ONE}, c * v)
        hd_new.append(m.act_hd(x))
    return BiModule(h, m.dim, h_new, hd_new, m.name)


def ayd_to_yd(m: BiModule, sigma: Mapping, delta: Mapping) -> BiModule:
    return _convert(m, sigma, delta, True)


def yd_to_ayd(m: BiModule, sigma: Mapping, delta: Mapping) -> BiModule:
    return _convert(m, sigma, delta, False)


def character_module(h: FiniteQuantumGroup, sigma: Mapping, delta: Mapping) -> BiModule:
    """The ground field with ``t.1 = delta(t)`` and ``f.1 = f(sigma^-1)``."""
    sinv = h.S(sigma)
    h_act = [SparseMatrix(1, 1, [{0: delta[t]} if delta.get(t) else {}]) for t in range(h.dim)]
    hd_act = [SparseMatrix(1, 1, [{0: sinv[f]} if sinv.get(f) else {}]) for f in range(h.dim)]
    return BiModule(h, 1, h_act, hd_act, "C(sigma,delta)")


def trivial_module(h: FiniteQuantumGroup) -> BiModule:
    """Both actions by the counit."""
    hd = h.dual()
    h_act = [SparseMatrix(1, 1, [{0: h.counit[t]} if h.counit[t] else {}]) for t in range(h.dim)]
    hd_act = [SparseMatrix(1, 1, [{0: hd.counit[f]} if hd.counit[f] else {}]) for f in range(h.dim)]
    return BiModule(h, 1, h_act, hd_act, "C")


def symmetry_T(m: BiModule) -> SparseMatrix:
    """``T(m) = sum_i S^-1(e_i).(e^i.m)``: the dual action read as a coaction, then twisted back.

    On forms this is ``t (x) w -> t(2) (x) S^-1(t(1)).w``.
    """
    h = m.host
    out = SparseMatrix.zero(m.dim, m.dim)
    for i in range(h.dim):
        out = out + m.act_h(h.Sinv({i: ONE})) @ m.hd_action[i]
    return out


def is_morphism(phi: SparseMatrix, src: BiModule, dst: BiModule) -> bool:
    """``phi`` intertwines both actions."""
    return (all(phi @ a == b @ phi for a, b in zip(src.h_action, dst.h_action))
            and all(phi @ a == b @ phi for a, b in zip(src.hd_action, dst.hd_action)))


def conversion_checks(m: BiModule, sigma: Mapping, delta: Mapping) -> ValidationReport:
    """An AYD module converts to a YD module and converts back to exactly the same matrices."""
    rep = ValidationReport(f"{m.name} AYD/YD conversion")
    add = rep.checks.append
    add(Check("input is AYD", check_ayd(m).ok))
    y = ayd_to_yd(m, sigma, delta)
    r = check_yd(y)
    add(Check("output is YD", r.ok, r.failures()[0].witness if not r.ok else None))
    back = yd_to_ayd(y, sigma, delta)
    same = back.h_action == m.h_action and back.hd_action == m.hd_action
    add(Check("round trip is the identity", same))
    return rep
