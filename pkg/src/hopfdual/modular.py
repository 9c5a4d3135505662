"""Modular pairs: verification, enumeration, duality and tensor products."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .exact import ONE, ZERO, vscale, vsparse
from .hopf import Check, FiniteQuantumGroup, ValidationReport, tensor_product, tensor_vec


@dataclass
class ModularPair:
    sigma: dict
    delta: dict

    def key(self) -> tuple:
        return tuple(sorted(self.sigma.items())), tuple(sorted(self.delta.items()))


def _conj(h: FiniteQuantumGroup, sigma: Mapping, x: Mapping, sinv: Mapping) -> dict:
    return h.mul(h.mul(sigma, x), sinv)


def verify_pair(h: FiniteQuantumGroup, sigma: Mapping, delta: Mapping) -> ValidationReport:
    """Check the group-like and character conditions, then axioms (a) to (d) on every basis element."""
    sigma, delta = vsparse(sigma), vsparse(delta)
    rep = ValidationReport(f"pair on {h.name}")
    add = rep.checks.append
    n = h.dim
    gl = h.is_grouplike(sigma)
    ch = h.is_character(delta)
    add(Check("sigma is group-like", gl))
    add(Check("delta is a character", ch))
    if not (gl and ch):
        return rep
    E = [{i: ONE} for i in range(n)]
    sinv = h.S(sigma)
    dinv = h.dual_vec_compose_S(delta)
    phi = h.phi
    s2inv = h.mul(sinv, sinv)

    def first(name, it):
        for w in it:
            add(Check(name, False, w))
            return
        add(Check(name, True))

    first("invariance", (t for t in range(n) if h._left_slice(phi, t) != vscale(s2inv, phi.get(t, ZERO))))

    def twist(x, left, right):
        return h.rhit(h.lhit(left, x), right)

    def kms_fail(r, t):
        lhs = h.pair(phi, h.mul(E[r], E[t]))
        rhs = h.pair(phi, h.mul(E[t], twist(_conj(h, sigma, E[r], sinv), delta, delta)))
        return lhs != rhs
    first("weak KMS", ((r, t) for r, t in product(range(n), repeat=2) if kms_fail(r, t)))
    first("involutivity",
          (t for t in range(n) if h.S_power(E[t], 2) != twist(_conj(h, sigma, E[t], sinv), dinv, delta)))
    add(Check("normalisation", h.pair(delta, sigma) == 1))
    return rep


def enumerate_pairs(h: FiniteQuantumGroup, grouplike_candidates: Sequence | None = None,
                    character_candidates: Sequence | None = None) -> list[ModularPair]:
    gls = [vsparse(v) for v in (grouplike_candidates if grouplike_candidates is not None
                                else h.grouplike_candidates)]
    chs = [vsparse(v) for v in (character_candidates if character_candidates is not None
                                else h.character_candidates)]
    return [ModularPair(s, d) for s in gls for d in chs if verify_pair(h, s, d).ok]


def dualize_pair(pair: ModularPair) -> ModularPair:
    """``(delta, sigma)`` for the dual: the coordinates are reused verbatim."""
    return ModularPair(dict(pair.delta), dict(pair.sigma))


def tensor_pair(h1: FiniteQuantumGroup, p1: ModularPair, h2: FiniteQuantumGroup, p2: ModularPair):
    h = tensor_product(h1, h2)
    return h, ModularPair(tensor_vec(p1.sigma, p2.sigma, h2.dim), tensor_vec(p1.delta, p2.delta, h2.dim))


# identities derived from the axioms; t, r, s in H and f, g in the dual
DERIVED_IDENTITIES = [
    ("S2 on H", "S2(t) == sigma * (delta^-1 .> t <. delta) * sigma^-1"),
    ("S^-2 on H", "Sinv2(t) == sigma^-1 * (delta .> t <. delta^-1) * sigma"),
    ("S on H", "S(t) == sigma * (delta^-1 .> Sinv(t) <. delta) * sigma^-1"),
    ("S^-1 on H", "Sinv(t) == sigma^-1 * (delta .> S(t) <. delta^-1) * sigma"),
    ("S2 on Hhat", "S2(f) == delta * (sigma^-1 .> f <. sigma) * delta^-1"),
    ("S^-2 on Hhat", "Sinv2(f) == delta^-1 * (sigma .> f <. sigma^-1) * delta"),
    ("S on Hhat", "S(f) == delta * (sigma^-1 .> Sinv(f) <. sigma) * delta^-1"),
    ("S^-1 on Hhat", "Sinv(f) == delta^-1 * (sigma .> S(f) <. sigma^-1) * delta"),
    ("psi twisted trace (rt)", "psi(r t) == psi((delta^-1 .> (sigma t sigma^-1) <. delta^-1) * r)"),
    ("psi twisted trace (tr)", "psi(t r) == psi(r * (delta .> (sigma^-1 t sigma) <. delta))"),
    ("phihat modular element", "phihat(f(1)) * f(2) == delta^-2 * phihat(f)"),
    ("phihat on Gr products", "phihat(Gr(s) Gr(t)) == psi(t Sinv(s))"),
    ("phihat on Gr products, second form", "phihat(Gr(s) Gr(t)) == psi(s S(t) sigma^2)"),
    ("phihat twisted trace", "phihat(f g) == phihat(g * (sigma .> (delta f delta^-1) <. sigma))"),
]


def derived_identity_suite(h: FiniteQuantumGroup, pair: ModularPair, order: str = "greedy") -> list:
    """``[(name, source, Verdict)]`` for every identity in DERIVED_IDENTITIES."""
    from .dsl.compiler import DslEnv, check_identity
    env = DslEnv(h, pair.sigma, pair.delta)
    out = []
    for name, src in DERIVED_IDENTITIES:
        lhs, rhs = src.split("==")
        out.append((name, src, check_identity(lhs, rhs, env, order)))
    return out


def grouplike_search(h: FiniteQuantumGroup, support: Sequence[int]) -> list[dict]:
    """Group-likes that are basis vectors among ``support`` (a best-effort helper)."""
    out = []
    for i in support:
        v = {i: ONE}
        if h.is_grouplike(v):
            out.append(v)
    return out
