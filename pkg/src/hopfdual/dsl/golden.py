"""Golden formulas: DSL sources paired with direct implementations of the same tensors.

Each reference is written against the element-level methods of the
quantum group, the algebra constructions and the form complexes, never
through the compiler. A case passes when the compiled tensor equals the
reference exactly under both contraction orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable

from ..exact import ONE, ZERO, SparseTensor, vdot
from ..halgebra import crossed_product, kernel_algebra
from .compiler import DslEnv, compile_expr


@dataclass
class GoldenCase:
    name: str
    source: str
    reference: Callable      # DslEnv -> SparseTensor
    needs_pair: bool = False
    needs_algebra: bool = False


def _tensor(in_dims, out_dims, fn) -> SparseTensor:
    """``fn(*inputs)`` returns ``{output index tuple: value}``."""
    ent = {}
    for idx in product(*(range(d) for d in in_dims)):
        for out, v in fn(*idx).items():
            if v:
                ent[idx + out] = v
    return SparseTensor(tuple(in_dims) + tuple(out_dims), ent)


def _vec(v):
    return {(k,): c for k, c in v.items()}


def _comultiplication(env):
    h = env.h
    return _tensor([h.dim], [h.dim, h.dim], lambda t: h.comul({t: ONE}))


def _antipode_axiom(env):
    h = env.h
    return _tensor([h.dim], [h.dim], lambda t: _vec({k: h.counit[t] * c for k, c in h.one.items()}))


def _left_invariance(env):
    h = env.h
    return _tensor([h.dim], [h.dim], lambda t: _vec({k: h.phi.get(t, ZERO) * c for k, c in h.one.items()}))


def _left_hit(env):
    h = env.h
    return _tensor([h.dim, h.dim], [h.dim], lambda f, t: _vec(h.lhit({f: ONE}, {t: ONE})))


def _right_hit(env):
    h = env.h
    return _tensor([h.dim, h.dim], [h.dim], lambda t, f: _vec(h.rhit({t: ONE}, {f: ONE})))


def _pairing(env):
    h = env.h
    return _tensor([h.dim, h.dim], [], lambda f, t: {(): ONE if f == t else ZERO})


def _s_squared(env):
    h = env.h
    return _tensor([h.dim], [h.dim], lambda t: _vec(h.S(h.S({t: ONE}))))


def _sigma_conjugation(env):
    h = env.h
    sinv = h.S(env.sigma)
    return _tensor([h.dim], [h.dim], lambda t: _vec(h.mul(h.mul(env.sigma, {t: ONE}), sinv)))


def _delta_twist(env):
    h = env.h
    dinv = h.dual_vec_compose_S(env.delta)
    return _tensor([h.dim], [h.dim], lambda t: _vec(h.rhit(h.lhit(env.delta, {t: ONE}), dinv)))


def _left_fourier(env):
    h = env.h
    return _tensor([h.dim], [h.dim],
                   lambda t: {(r,): vdot(h.phi, h.mul({r: ONE}, {t: ONE})) for r in range(h.dim)})


def _twisted_fourier(env):
    # Fhat(f)(x) = psihat(S^-1(f) (sigma -> x) delta), x a basis functional of H^
    h, hd = env.h, env.hd

    def col(f):
        sf = hd.Sinv({f: ONE})
        return {(x,): vdot(hd.psi, hd.mul(sf, hd.mul(hd.lhit(env.sigma, {x: ONE}), env.delta)))
                for x in range(h.dim)}
    return _tensor([h.dim], [h.dim], col)


def _lambda_outer(env):
    # Ghat_l(u) has coordinate psihat(e_r u) on e_r
    h, hd = env.h, env.hd

    def col(f):
        u = hd.mul(hd.lhit(env.sigma, {f: ONE}), env.delta)
        return {(r,): vdot(hd.psi, hd.mul({r: ONE}, u)) for r in range(h.dim)}
    return _tensor([h.dim], [h.dim], col)


def _action(env):
    A, h = env.algebra, env.h
    return _tensor([h.dim, A.dim], [A.dim], lambda t, a: _vec(A.act({t: ONE}, {a: ONE})))


def _coaction(env):
    A = env.algebra
    return _tensor([A.dim], [A.dim, env.h.dim], lambda a: A.coact(a))


def _crossed_product(env):
    A, h = env.algebra, env.h
    B = crossed_product(A)
    n = h.dim

    def fn(a, r, b, t):
        prod = B.mul({a * n + r: ONE}, {b * n + t: ONE})
        return {divmod(k, n): v for k, v in prod.items()}
    return _tensor([A.dim, n, A.dim, n], [A.dim, n], fn)


def _kernel_algebra(env):
    h = env.h
    K = kernel_algebra(h)
    n = h.dim

    def fn(f, s, r, g):
        prod = K.mul({r * n + f: ONE}, {s * n + g: ONE})
        return {divmod(k, n): v for k, v in prod.items()}
    return _tensor([n, n, n, n], [n, n], fn)


def _forms_matrix(env, build):
    from ..forms import FormSpaces
    sp = FormSpaces(env.h, env.algebra, 0)
    m = build(sp)
    n, d = env.h.dim, env.algebra.dim

    def fn(x, a):
        return {sp.decode(0, i): v for i, v in m.cols[sp.encode(0, (x, a))].items()}
    return n, d, fn


def _symmetry_zero_forms(env):
    from ..forms import AydForms
    n, d, fn = _forms_matrix(env, lambda sp: AydForms(sp).T(0))
    return _tensor([n, d], [n, d], fn)


def _yd_action_zero_forms(env):
    from ..forms import FormSpaces, YdForms
    sp = FormSpaces(env.h, env.algebra, 0)
    yd = YdForms(sp, env.sigma, env.delta)
    n, d = env.h.dim, env.algebra.dim
    mats = [yd.act_h(0, r) for r in range(n)]

    def fn(r, g, a):
        return {sp.decode(0, i): v for i, v in mats[r].cols[sp.encode(0, (g, a))].items()}
    return _tensor([n, n, d], [n, d], fn)


CASES = [
    GoldenCase("comultiplication", "t(1) @ t(2)", _comultiplication),
    GoldenCase("antipode axiom", "S(t(1)) t(2)", _antipode_axiom),
    GoldenCase("left invariance of phi", "t(1) phi(t(2))", _left_invariance),
    GoldenCase("left hit action", "f .> t", _left_hit),
    GoldenCase("right hit action", "t <. f", _right_hit),
    GoldenCase("duality pairing", "f(t)", _pairing),
    GoldenCase("square of the antipode", "S2(t)", _s_squared),
    GoldenCase("conjugation by sigma", "sigma t sigma^-1", _sigma_conjugation, needs_pair=True),
    GoldenCase("two-sided character twist", "delta .> t <. delta^-1", _delta_twist, needs_pair=True),
    GoldenCase("left Fourier transform", "Fl(t)", _left_fourier),
    GoldenCase("twisted Fourier transform", "Fhat(f)", _twisted_fourier, needs_pair=True),
    GoldenCase("outer factor of lambda", "Glhat((sigma .> f) delta)", _lambda_outer, needs_pair=True),
    GoldenCase("module action", "act(t, a)", _action, needs_algebra=True),
    GoldenCase("coaction of the dual", "a(0) @ a(1)", _coaction, needs_algebra=True),
    GoldenCase("crossed product", "a act(r(1), b) @ r(2) t", _crossed_product, needs_algebra=True),
    GoldenCase("kernel algebra", "f(s) r @ g", _kernel_algebra),
    GoldenCase("symmetry on zero-forms", "t(2) @ act(Sinv(t(1)), a)", _symmetry_zero_forms,
               needs_algebra=True),
    GoldenCase("YD action on zero-forms",
               "r(1) .> g <. Sinv(r(4)) @ delta(r(3)) act(r(2), a)", _yd_action_zero_forms,
               needs_pair=True, needs_algebra=True),
]


@dataclass
class GoldenResult:
    name: str
    source: str
    equal: bool
    order_invariant: bool
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.equal and self.order_invariant


def run_case(case: GoldenCase, env: DslEnv) -> GoldenResult:
    plan = compile_expr(case.source, env)
    got = plan.evaluate("greedy")
    other = plan.evaluate("reverse")
    ref = case.reference(env)
    diff = got - ref if got.shape == ref.shape else None
    equal = diff is not None and diff.is_zero()
    witness = None
    if diff is None:
        witness = ("shape", got.shape, ref.shape)
    elif not equal:
        witness = min(diff.entries)
    return GoldenResult(case.name, case.source, equal, got == other, witness)


def run_golden(env: DslEnv) -> list[GoldenResult]:
    """Every case the environment can bind (pair and algebra permitting)."""
    out = []
    for case in CASES:
        if case.needs_pair and env.sigma is None:
            continue
        if case.needs_algebra and (env.algebra is None or env.algebra.host is not env.h):
            continue
        out.append(run_case(case, env))
    return out
