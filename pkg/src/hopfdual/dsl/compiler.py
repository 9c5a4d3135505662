"""Typed compilation of Sweedler expressions into tensor networks.

Every sum is expanded into monomials first. A monomial becomes a network:
one node per structure tensor (products, iterated coproducts, antipodes,
integrals, actions, hit actions, constant vectors) and one edge per basis
index. Pairings are Kronecker nodes. Evaluation contracts the network to a
tensor indexed by the input variables (in order of first appearance)
followed by the output tensor positions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..exact import ONE, ZERO, SparseTensor, contract
from ..hopf import FiniteQuantumGroup
from .syntax import (Apply, Call, Const, DslSyntaxError, Hit, Mul, Neg, Node, Num, Sum, Tensor, Var,
                     parse)

H, HH, A, AP, C = "H", "Hhat", "A", "A+", "C"
DUAL = {H: HH, HH: H}

_DEFAULT_TAGS = {**{c: H for c in "rstxyuvwpq"}, **{c: HH for c in "fghk"}, **{c: A for c in "abc"}}


class DslTypeError(TypeError):
    pass


class DslEnv:
    """Bindings for compilation: a quantum group, an optional modular pair and H-algebra.

    ``algebra.host`` may be ``h`` or ``h.dual()``; its coaction legs live in
    the other one.
    """

    def __init__(self, h: FiniteQuantumGroup, sigma: Mapping | None = None, delta: Mapping | None = None,
                 algebra=None, types: Mapping[str, str] | None = None):
        self.h = h
        self.hd = h.dual()
        self.sigma = dict(sigma) if sigma is not None else None
        self.delta = dict(delta) if delta is not None else None
        self.algebra = algebra
        self.types = dict(types or {})
        if algebra is not None:
            if algebra.host is self.h:
                self.host_type = H
            elif algebra.host is self.hd:
                self.host_type = HH
            else:
                raise DslTypeError("the algebra must be acted on by the quantum group or its dual")
        self._cache: dict = {}

    def with_types(self, **types: str) -> "DslEnv":
        env = DslEnv(self.h, self.sigma, self.delta, self.algebra, {**self.types, **types})
        env._cache = self._cache
        return env

    # -- spaces -------------------------------------------------------------

    def var_type(self, name: str) -> str:
        if name in self.types:
            return self.types[name]
        t = _DEFAULT_TAGS.get(name[0])
        if t is None:
            raise DslTypeError(f"cannot infer the space of variable {name!r}; pass a tag")
        return t

    def qg(self, t: str) -> FiniteQuantumGroup:
        if t == H:
            return self.h
        if t == HH:
            return self.hd
        raise DslTypeError(f"{t} is not a quantum group")

    def alg(self, t: str):
        if self.algebra is None:
            raise DslTypeError("no algebra bound")
        return self.algebra if t == A else self.algebra.plus

    def dim(self, t: str) -> int:
        if t in (H, HH):
            return self.h.dim
        if t == A:
            return self.alg(A).dim
        if t == AP:
            return self.alg(AP).dim
        raise DslTypeError(f"unknown space {t}")

    def basis_names(self, t: str) -> tuple:
        if t in (H, HH):
            return self.qg(t).basis
        return self.alg(t).basis

    # -- cached structure tensors -----------------------------------------------

    def _memo(self, key, fn):
        v = self._cache.get(key)
        if v is None:
            v = self._cache[key] = fn()
        return v

    def mult(self, t: str) -> SparseTensor:
        if t in (H, HH):
            return self.qg(t).mult
        return self.alg(t).mult

    def comul_tensor(self, t: str, legs: int) -> SparseTensor:
        q = self.qg(t)
        n = q.dim

        def build():
            ent = {}
            for i in range(n):
                for idx, c in q.comul_basis(i, legs).items():
                    ent[(i,) + idx] = c
            return SparseTensor._trusted((n,) * (legs + 1), ent)
        return self._memo(("comul", t, legs), build)

    def coact_tensor(self, t: str, legs: int) -> SparseTensor:
        """``[a, a(0), a(1), ..., a(legs)]``, left-nested in the dual legs."""
        alg = self.alg(t)
        ct = DUAL[self.host_type]

        def build():
            base = alg.coact_tensor
            if legs == 1:
                return base
            return contract(base, self.comul_tensor(ct, legs), [(2, 0)])
        return self._memo(("coact", t, legs), build)

    def vec_tensor(self, t: str, v: Mapping) -> SparseTensor:
        return SparseTensor._trusted((self.dim(t),), {(i,): c for i, c in v.items() if c})

    def vec_legs(self, t: str, v: Mapping, legs: int) -> SparseTensor:
        if legs == 1:
            return self.vec_tensor(t, v)
        return contract(self.vec_tensor(t, v), self.comul_tensor(t, legs), [(0, 0)])

    def matrix_tensor(self, key, n_in: int, n_out: int, columns) -> SparseTensor:
        """``[in, out]`` from a list of sparse column vectors."""
        def build():
            ent = {}
            for j in range(n_in):
                for i, c in columns(j).items():
                    if c:
                        ent[(j, i)] = c
            return SparseTensor._trusted((n_in, n_out), ent)
        return self._memo(key, build)

    def antipode_tensor(self, t: str, power: int) -> SparseTensor:
        q = self.qg(t)
        return self.matrix_tensor(("S", t, power), q.dim, q.dim, lambda j: q.S_power({j: ONE}, power))

    def hit_tensor(self, t: str, side: str) -> SparseTensor:
        """Left: ``[actor, target, out]`` with ``actor -> b = b(1) actor(b(2))``.
        Right: ``[target, actor, out]`` with ``b <- actor = actor(b(1)) b(2)``."""
        q = self.qg(t)

        def build():
            ent = {}
            for (b, x, y), c in q.comult.entries.items():
                if side == "left":
                    ent[(y, b, x)] = c
                else:
                    ent[(b, x, y)] = c
            return SparseTensor._trusted((q.dim,) * 3, ent)
        return self._memo(("hit", t, side), build)

    def pairing_tensor(self, n: int) -> SparseTensor:
        return self._memo(("kron", n), lambda: SparseTensor._trusted((n, n), {(i, i): ONE for i in range(n)}))

    def inclusion_tensor(self) -> SparseTensor:
        d = self.dim(A)
        return self._memo(("incl",), lambda: SparseTensor._trusted((d, d + 1), {(i, i): ONE for i in range(d)}))

    def require_pair(self):
        if self.sigma is None or self.delta is None:
            raise DslTypeError("sigma/delta used but no modular pair is bound")

    def constant(self, name: str, power: int) -> tuple[str, dict]:
        h, hd = self.h, self.hd
        if name in ("sigma", "delta"):
            self.require_pair()
            q, base, t = (h, self.sigma, H) if name == "sigma" else (hd, self.delta, HH)
            x = q.S(base) if power < 0 else base
            out = q.one
            for _ in range(abs(power)):
                out = q.mul(out, x)
            return t, out
        if name == "Psihat":
            return H, hd.psi
        if name == "Phihat":
            return H, hd.phi
        if name == "Psi":
            return HH, h.psi
        if name == "Phi":
            return HH, h.phi
        raise DslTypeError(f"unknown constant {name}")

    def twisted_fourier(self, which: str) -> SparseTensor:
        """``Fhat: H^ -> H`` and ``F: H -> H^`` as ``[in, out]`` tensors."""
        self.require_pair()
        from ..duality import twisted_fourier_columns
        q = self.hd if which == "Fhat" else self.h
        return self.matrix_tensor(("tw", which), q.dim, q.dim,
                                  lambda j: twisted_fourier_columns(self.h, self.sigma, self.delta, which)[j])


# ---------------------------------------------------------------------------
# expansion into monomials

def expand(node: Node) -> list[tuple[Fraction, Node | None]]:
    """Distribute sums; ``None`` stands for the scalar 1."""
    if isinstance(node, Num):
        return [(node.value, None)]
    if isinstance(node, (Var, Const)):
        return [(ONE, node)]
    if isinstance(node, Neg):
        return [(-c, m) for c, m in expand(node.arg)]
    if isinstance(node, Sum):
        out = []
        for sign, t in node.terms:
            out.extend((sign * c, m) for c, m in expand(t))
        return out
    if isinstance(node, Mul):
        acc: list = [(ONE, ())]
        for f in node.factors:
            acc = [(c * d, fs + ((m,) if m is not None else ())) for c, fs in acc for d, m in expand(f)]
        return [(c, _mk_mul(fs)) for c, fs in acc]
    if isinstance(node, Call):
        combos = _product([expand(a) for a in node.args])
        return [(c, Call(node.fn, tuple(_scalar_or(m) for m in ms))) for c, ms in combos]
    if isinstance(node, Apply):
        combos = _product([expand(node.head), expand(node.arg)])
        out = []
        for c, (hd, arg) in combos:
            if hd is None:
                out.append((c, arg))
            else:
                out.append((c, Apply(hd, _scalar_or(arg))))
        return out
    if isinstance(node, Hit):
        parts = list(node.left) + [node.target] + list(node.right)
        combos = _product([expand(p) for p in parts])
        k = len(node.left)
        return [(c, Hit(tuple(_scalar_or(m) for m in ms[:k]), _scalar_or(ms[k]),
                        tuple(_scalar_or(m) for m in ms[k + 1:]))) for c, ms in combos]
    if isinstance(node, Tensor):
        combos = _product([expand(p) for p in node.parts])
        return [(c, Tensor(tuple(_scalar_or(m) for m in ms))) for c, ms in combos]
    raise TypeError(f"unexpected node {node!r}")


_ONE_NODE = Num(ONE)


def _scalar_or(m):
    return _ONE_NODE if m is None else m


def _mk_mul(fs: tuple):
    if not fs:
        return None
    return fs[0] if len(fs) == 1 else Mul(fs)


def _product(lists):
    acc = [(ONE, ())]
    for lst in lists:
        acc = [(c * d, ms + (m,)) for c, ms in acc for d, m in lst]
    return acc


def variables(node: Node) -> list[str]:
    """Variable names in order of first appearance."""
    out: list = []

    def walk(n):
        if isinstance(n, Var):
            if n.name not in out:
                out.append(n.name)
        elif isinstance(n, (Num, Const)) or n is None:
            return
        elif isinstance(n, Neg):
            walk(n.arg)
        elif isinstance(n, Sum):
            for _, t in n.terms:
                walk(t)
        elif isinstance(n, (Mul,)):
            for f in n.factors:
                walk(f)
        elif isinstance(n, Tensor):
            for f in n.parts:
                walk(f)
        elif isinstance(n, Call):
            for f in n.args:
                walk(f)
        elif isinstance(n, Apply):
            walk(n.head)
            walk(n.arg)
        elif isinstance(n, Hit):
            for f in n.left:
                walk(f)
            walk(n.target)
            for f in n.right:
                walk(f)
    walk(node)
    return out


# ---------------------------------------------------------------------------
# type inference

_FN_SIG = {
    "phi": (H, C), "psi": (H, C), "phihat": (HH, C), "psihat": (HH, C),
    "Fl": (H, HH), "Fr": (H, HH), "Gl": (H, HH), "Gr": (H, HH),
    "Flhat": (HH, H), "Frhat": (HH, H), "Glhat": (HH, H), "Grhat": (HH, H),
    "Fhat": (HH, H), "F": (H, HH),
}


def _join(a: str | None, b: str | None, what: str) -> str | None:
    if a is None:
        return b
    if b is None or a == b:
        return a
    if {a, b} == {A, AP}:
        return AP
    raise DslTypeError(f"{what}: cannot combine {a} with {b}")


def infer(node: Node, env: DslEnv):
    """Type of a monomial (a list for tensors); None when only context can decide."""
    if node is None or isinstance(node, Num):
        return C
    if isinstance(node, Var):
        t = env.var_type(node.name)
        if node.leg is None or t in (H, HH):
            return t
        if t not in (A, AP):
            raise DslTypeError(f"legs on {node.name} of type {t}")
        return t if node.leg == 0 else DUAL[env.host_type]
    if isinstance(node, Const):
        if node.name == "unit":
            return None
        return env.constant(node.name, node.power)[0] if node.name not in ("sigma", "delta") else \
            (H if node.name == "sigma" else HH)
    if isinstance(node, Call):
        fn = node.fn
        if fn in ("S", "Sinv", "S2", "Sinv2"):
            return infer(node.args[0], env)
        if fn == "epsilon" or fn == "ev":
            return C
        if fn in _FN_SIG:
            return _FN_SIG[fn][1]
        if fn == "m":
            return _join(infer(node.args[0], env), infer(node.args[1], env), "m")
        if fn == "act":
            return infer(node.args[1], env)
    if isinstance(node, Apply):
        th, ta = infer(node.head, env), infer(node.arg, env)
        if th == C:
            return ta
        if ta == C:
            return th
        if th is not None and ta is not None and DUAL.get(th) == ta:
            return C
        return _join(th, ta, "product")
    if isinstance(node, Mul):
        t = None
        for f in node.factors:
            tf = infer(f, env)
            if tf != C:
                t = _join(t, tf, "product")
        all_scalar = all(infer(f, env) == C for f in node.factors)
        return C if all_scalar else t
    if isinstance(node, Hit):
        return infer(node.target, env)
    if isinstance(node, Tensor):
        return [infer(p, env) for p in node.parts]
    raise DslTypeError(f"cannot type {node!r}")


# ---------------------------------------------------------------------------
# networks

@dataclass
class Network:
    nodes: list = field(default_factory=list)   # (tensor, edges)
    dims: dict = field(default_factory=dict)    # edge -> dim
    inputs: list = field(default_factory=list)
    outputs: list = field(default_factory=list)
    coef: Fraction = ONE

    def edge(self, dim: int) -> int:
        e = len(self.dims)
        self.dims[e] = dim
        return e

    def add(self, tensor: SparseTensor, edges: Sequence[int]):
        for e, d in zip(edges, tensor.shape):
            if self.dims[e] != d:
                raise DslTypeError(f"edge {e} joins dimensions {self.dims[e]} and {d}")
        self.nodes.append((tensor, list(edges)))


class _MonomialCompiler:
    def __init__(self, env: DslEnv, var_order: list[str], expect):
        self.env = env
        self.net = Network()
        self.var_order = var_order
        self.expect = expect
        self.legs: dict = {}      # (name, leg) -> edge
        self.const_legs: dict = {}

    def build(self, node: Node) -> Network:
        env, net = self.env, self.net
        usage: dict = {}
        _collect_usage(node, usage)
        missing = [v for v in self.var_order if v not in usage]
        if missing:
            raise DslTypeError(f"a term does not use variable(s) {', '.join(missing)}")
        for v in self.var_order:
            t = env.var_type(v)
            e_in = net.edge(env.dim(t))
            net.inputs.append(e_in)
            legs = usage[v]
            if legs == ["bare"]:
                e = net.edge(env.dim(t))
                net.add(env.pairing_tensor(env.dim(t)), [e_in, e])
                self.legs[(v, None)] = e
                continue
            if "bare" in legs:
                raise DslTypeError(f"variable {v} is used both with and without legs")
            if len(set(legs)) != len(legs):
                raise DslTypeError(f"a Sweedler leg of {v} is used twice in one term")
            top = max(legs)
            if t in (H, HH):
                if 0 in legs:
                    raise DslTypeError(f"coproduct legs of {v} start at 1")
                es = [net.edge(env.dim(t)) for _ in range(top)]
                net.add(env.comul_tensor(t, top) if top > 1 else env.pairing_tensor(env.dim(t)), [e_in] + es)
                for k, e in enumerate(es, start=1):
                    if k in legs:
                        self.legs[(v, k)] = e
                    else:
                        net.add(env.vec_tensor(t, dict(enumerate(env.qg(t).counit))), [e])
            else:
                if 0 not in legs:
                    raise DslTypeError(f"coaction leg {v}(0) must be used")
                ct = DUAL[env.host_type]
                top = max(top, 1)
                es = [net.edge(env.dim(t))] + [net.edge(env.dim(ct)) for _ in range(top)]
                net.add(env.coact_tensor(t, top), [e_in] + es)
                for k, e in enumerate(es):
                    if k in legs:
                        self.legs[(v, k)] = e
                    else:
                        net.add(env.vec_tensor(ct, dict(enumerate(env.qg(ct).counit))), [e])
        # constants with legs
        cusage: dict = {}
        _collect_const_legs(node, cusage)
        for (name, power), legs in cusage.items():
            if len(set(legs)) != len(legs):
                raise DslTypeError(f"a Sweedler leg of {name} is used twice in one term")
            t, vec = env.constant(name, power)
            top = max(legs)
            es = [net.edge(env.dim(t)) for _ in range(top)]
            net.add(env.vec_legs(t, vec, top), es)
            for k, e in enumerate(es, start=1):
                if k in legs:
                    self.const_legs[(name, power, k)] = e
                else:
                    net.add(env.vec_tensor(t, dict(enumerate(env.qg(t).counit))), [e])
        if isinstance(node, Tensor):
            expects = self.expect if isinstance(self.expect, list) else [None] * len(node.parts)
            outs = [self.val(p, x) for p, x in zip(node.parts, expects)]
        else:
            outs = [self.val(node, self.expect if not isinstance(self.expect, list) else None)]
        net.outputs = [(e, t) for e, t in outs if t != C]
        return net

    # value of a subterm: (edge or None, type)
    def val(self, node: Node, expect=None):
        env, net = self.env, self.net
        if node is None:
            return None, C
        if isinstance(node, Num):
            net.coef *= node.value
            return None, C
        if isinstance(node, Var):
            t = infer(node, env)
            return self.legs[(node.name, node.leg)], t
        if isinstance(node, Const):
            if node.name == "unit":
                t = expect
                if t is None or t == C:
                    raise DslTypeError("cannot infer the space of 'unit' here")
                one = env.qg(t).one if t in (H, HH) else env.alg(t).unit
                if one is None:
                    raise DslTypeError(f"{t} has no unit")
                e = net.edge(env.dim(t))
                net.add(env.vec_tensor(t, one), [e])
                return e, t
            t, vec = env.constant(node.name, node.power)
            if node.leg is not None:
                return self.const_legs[(node.name, node.power, node.leg)], t
            e = net.edge(env.dim(t))
            net.add(env.vec_tensor(t, vec), [e])
            return e, t
        if isinstance(node, Call):
            return self.call(node, expect)
        if isinstance(node, Apply):
            th, ta = infer(node.head, env), infer(node.arg, env)
            if th == C or ta == C:
                self.val(node.head if th == C else node.arg, C)
                return self.val(node.arg if th == C else node.head, expect)
            if th is None and ta is None:
                th = ta = expect
            if th is None:
                th = ta if ta in (A, AP) or ta == expect else DUAL.get(ta)
            if ta is None:
                ta = th if th in (A, AP) or th == expect else DUAL.get(th)
            if DUAL.get(th) == ta:
                eh, _ = self.val(node.head, th)
                ea, _ = self.val(node.arg, ta)
                net.add(env.pairing_tensor(env.dim(th)), [eh, ea])
                return None, C
            return self.product([node.head, node.arg], expect)
        if isinstance(node, Mul):
            return self.product(list(node.factors), expect)
        if isinstance(node, Hit):
            t = infer(node.target, env) or expect
            if t not in (H, HH):
                raise DslTypeError("hit actions need a target in H or Hhat")
            e, _ = self.val(node.target, t)
            for actor in reversed(node.left):
                ea, ta = self.val(actor, DUAL[t])
                if ta != DUAL[t]:
                    raise DslTypeError(f"hit actor of type {ta} on a target in {t}")
                out = net.edge(env.dim(t))
                net.add(env.hit_tensor(t, "left"), [ea, e, out])
                e = out
            for actor in node.right:
                ea, ta = self.val(actor, DUAL[t])
                if ta != DUAL[t]:
                    raise DslTypeError(f"hit actor of type {ta} on a target in {t}")
                out = net.edge(env.dim(t))
                net.add(env.hit_tensor(t, "right"), [e, ea, out])
                e = out
            return e, t
        if isinstance(node, Tensor):
            raise DslTypeError("'@' may only separate top-level tensor positions")
        raise DslTypeError(f"cannot compile {node!r}")

    def coerce(self, e, t, want):
        if t == want or want is None:
            return e, t
        if t == A and want == AP:
            out = self.net.edge(self.env.dim(AP))
            self.net.add(self.env.inclusion_tensor(), [e, out])
            return out, AP
        raise DslTypeError(f"expected {want}, found {t}")

    def product(self, factors: list, expect):
        env, net = self.env, self.net
        types = [infer(f, env) for f in factors]
        t = None
        for tf in types:
            if tf != C:
                t = _join(t, tf, "product")
        if all(tf == C for tf in types):
            for f in factors:
                self.val(f, C)
            return None, C
        if t is None:
            t = expect
        if t is None:
            raise DslTypeError("cannot infer the space of a product of units")
        if expect == AP and t == A:
            t = AP
        acc = None
        for f, tf in zip(factors, types):
            if tf == C:
                self.val(f, C)
                continue
            e, tf2 = self.val(f, t)
            e, _ = self.coerce(e, tf2, t)
            if acc is None:
                acc = e
            else:
                out = net.edge(env.dim(t))
                net.add(env.mult(t), [acc, e, out])
                acc = out
        return acc, t

    def call(self, node: Call, expect):
        env, net = self.env, self.net
        fn, args = node.fn, node.args
        if fn in ("S", "Sinv", "S2", "Sinv2"):
            e, t = self.val(args[0], expect)
            if t not in (H, HH):
                raise DslTypeError(f"{fn} needs an argument in H or Hhat, found {t}")
            power = {"S": 1, "Sinv": -1, "S2": 2, "Sinv2": -2}[fn]
            out = net.edge(env.dim(t))
            net.add(env.antipode_tensor(t, power), [e, out])
            return out, t
        if fn == "epsilon":
            t = infer(args[0], env) or expect
            e, t = self.val(args[0], t)
            if t not in (H, HH):
                raise DslTypeError("epsilon needs an argument in H or Hhat")
            net.add(env.vec_tensor(t, dict(enumerate(env.qg(t).counit))), [e])
            return None, C
        if fn in ("phi", "psi", "phihat", "psihat"):
            want, _ = _FN_SIG[fn]
            e, t = self.val(args[0], want)
            if t != want:
                raise DslTypeError(f"{fn} needs an argument in {want}, found {t}")
            q = env.h if want == H else env.hd
            vec = q.phi if fn in ("phi", "phihat") else q.psi
            net.add(env.vec_tensor(want, vec), [e])
            return None, C
        if fn in ("Fl", "Fr", "Gl", "Gr", "Flhat", "Frhat", "Glhat", "Grhat"):
            want, res = _FN_SIG[fn]
            e, t = self.val(args[0], want)
            if t != want:
                raise DslTypeError(f"{fn} needs an argument in {want}, found {t}")
            q = env.h if want == H else env.hd
            kind = fn[:2]
            m = q.fourier(kind)
            tensor = env.matrix_tensor(("fourier", fn), q.dim, q.dim,
                                       lambda j, m=m: {r: m[r][j] for r in range(q.dim) if m[r][j]})
            out = net.edge(env.dim(res))
            net.add(tensor, [e, out])
            return out, res
        if fn in ("Fhat", "F"):
            want, res = _FN_SIG[fn]
            e, t = self.val(args[0], want)
            if t != want:
                raise DslTypeError(f"{fn} needs an argument in {want}, found {t}")
            out = net.edge(env.dim(res))
            net.add(env.twisted_fourier(fn), [e, out])
            return out, res
        if fn == "m":
            return self.product(list(args), expect)
        if fn == "act":
            ta = infer(args[1], env) or expect
            if ta not in (A, AP):
                raise DslTypeError("act needs an algebra element as second argument")
            ex, tx = self.val(args[0], env.host_type)
            if tx != env.host_type:
                raise DslTypeError(f"act needs an element of {env.host_type}, found {tx}")
            ea, ta = self.val(args[1], ta)
            out = net.edge(env.dim(ta))
            net.add(env.alg(ta).act_tensor, [ex, ea, out])
            return out, ta
        if fn == "ev":
            t0, t1 = infer(args[0], env), infer(args[1], env)
            t0 = t0 or DUAL.get(t1)
            t1 = t1 or DUAL.get(t0)
            if DUAL.get(t0) != t1:
                raise DslTypeError(f"ev pairs H with Hhat, found {t0} and {t1}")
            e0, _ = self.val(args[0], t0)
            e1, _ = self.val(args[1], t1)
            net.add(env.pairing_tensor(env.dim(t0)), [e0, e1])
            return None, C
        raise DslTypeError(f"unknown function {fn}")


def _collect_usage(node, usage: dict):
    if isinstance(node, Var):
        usage.setdefault(node.name, []).append("bare" if node.leg is None else node.leg)
        return
    for child in _children(node):
        _collect_usage(child, usage)


def _collect_const_legs(node, usage: dict):
    if isinstance(node, Const) and node.leg is not None:
        usage.setdefault((node.name, node.power), []).append(node.leg)
        return
    for child in _children(node):
        _collect_const_legs(child, usage)


def _children(node):
    if isinstance(node, Mul):
        return node.factors
    if isinstance(node, Tensor):
        return node.parts
    if isinstance(node, Call):
        return node.args
    if isinstance(node, Apply):
        return (node.head, node.arg)
    if isinstance(node, Hit):
        return node.left + (node.target,) + node.right
    if isinstance(node, Neg):
        return (node.arg,)
    if isinstance(node, Sum):
        return tuple(t for _, t in node.terms)
    return ()


# ---------------------------------------------------------------------------
# contraction

def contract_network(net: Network, order: str = "greedy") -> SparseTensor:
    """Contract to a tensor over ``inputs + outputs``.

    ``greedy`` always merges the pair of nodes whose result has the smallest
    dense size (ties by node ids); ``reverse`` folds nodes from the highest id
    down, a deliberately different order used to test order independence.
    """
    dims = net.dims
    free = set(net.inputs) | {e for e, _ in net.outputs}
    live = {i: (t, list(es)) for i, (t, es) in enumerate(net.nodes)}
    live = {i: _trace(t, es, free) for i, (t, es) in live.items()}
    next_id = len(net.nodes)

    def result_edges(a, b):
        ea, eb = live[a][1], live[b][1]
        shared = set(ea) & set(eb)
        return [e for e in ea if e not in shared] + [e for e in eb if e not in shared], shared

    while len(live) > 1:
        ids = sorted(live)
        if order == "greedy":
            best = None
            for x in range(len(ids)):
                ex = set(live[ids[x]][1])
                for y in range(x + 1, len(ids)):
                    if not ex & set(live[ids[y]][1]):
                        continue
                    edges, _ = result_edges(ids[x], ids[y])
                    size = 1
                    for e in edges:
                        size *= dims[e]
                    key = (size, ids[x], ids[y])
                    if best is None or key < best:
                        best = key
            if best is None:
                # disconnected pieces: outer product of the two smallest
                sizes = sorted((live[i][0].nnz, i) for i in ids)
                a, b = sorted((sizes[0][1], sizes[1][1]))
            else:
                _, a, b = best
        else:
            a = ids[-1]
            ea = set(live[a][1])
            nbrs = [i for i in ids[:-1] if ea & set(live[i][1])]
            b = nbrs[-1] if nbrs else ids[-2]
        (ta, ea), (tb, eb) = live.pop(a), live.pop(b)
        shared = [e for e in ea if e in set(eb)]
        axes = [(ea.index(e), eb.index(e)) for e in shared]
        t = contract(ta, tb, axes)
        edges = [e for e in ea if e not in shared] + [e for e in eb if e not in shared]
        live[next_id] = (t, edges)
        next_id += 1
    (t, edges), = live.values()
    want = list(net.inputs) + [e for e, _ in net.outputs]
    if sorted(edges) != sorted(want):
        raise DslTypeError("network has dangling edges")
    t = t.transpose([edges.index(e) for e in want])
    return t.scale(net.coef) if net.coef != 1 else t


def _trace(t: SparseTensor, es: list, free: set):
    """Sum over repeated edges within one node."""
    seen: dict = {}
    for k, e in enumerate(es):
        seen.setdefault(e, []).append(k)
    reps = [ks for ks in seen.values() if len(ks) > 1]
    if not reps:
        return t, es
    keep = [k for k in range(len(es)) if not any(k in ks for ks in reps)]
    out: dict = {}
    for idx, v in t.entries.items():
        if all(len({idx[k] for k in ks}) == 1 for ks in reps):
            key = tuple(idx[k] for k in keep)
            out[key] = out.get(key, ZERO) + v
    shape = tuple(t.shape[k] for k in keep)
    return SparseTensor._trusted(shape, {k: v for k, v in out.items() if v}), [es[k] for k in keep]


# ---------------------------------------------------------------------------
# public plan objects

@dataclass
class ContractionPlan:
    """Compiled expression: one network per monomial plus the signature."""
    source: Node
    inputs: list            # [(name, type)]
    outputs: list           # output types
    terms: list             # [Network]
    env: DslEnv = field(repr=False, default=None)

    @property
    def shape(self) -> tuple:
        return tuple(self.env.dim(t) for _, t in self.inputs) + tuple(self.env.dim(t) for t in self.outputs)

    def evaluate(self, order: str = "greedy") -> SparseTensor:
        total = SparseTensor.zeros(self.shape)
        for net in self.terms:
            t = contract_network(net, order)
            if t.shape != self.shape:
                # a term landing in A where the sum lives in A+
                t = SparseTensor._trusted(self.shape, t.entries)
            total = total + t
        return total


def compile_expr(expr: Node | str, env: DslEnv, expect=None, var_order: list[str] | None = None) -> ContractionPlan:
    node = parse(expr) if isinstance(expr, str) else expr
    order = var_order if var_order is not None else variables(node)
    monos = [(c, m) for c, m in expand(node) if c]
    if not monos:
        monos = [(ZERO, m) for c, m in expand(node)][:1]
    out_types = None
    for _, m in monos:
        t = infer(m, env)
        ts = t if isinstance(t, list) else [t]
        if out_types is None:
            out_types = list(ts)
        elif len(out_types) != len(ts):
            raise DslTypeError("terms of a sum have different numbers of tensor positions")
        else:
            out_types = [_join(a, b, "sum") for a, b in zip(out_types, ts)]
    if expect is not None:
        ex = expect if isinstance(expect, list) else [expect]
        out_types = [_join(a, b, "expected type") if a is not None else b for a, b in zip(out_types, ex)]
    if any(t is None for t in out_types):
        raise DslTypeError("cannot infer the output space")
    terms = []
    for c, m in monos:
        comp = _MonomialCompiler(env, order, out_types if isinstance(m, Tensor) else out_types[0])
        net = comp.build(m)
        net.coef *= c
        # coerce A outputs to A+ where the sum lives in A+
        produced = [t for _, t in net.outputs]
        if len(produced) != len([t for t in out_types if t != C]):
            raise DslTypeError("terms of a sum have different output spaces")
        terms.append(net)
    inputs = [(v, env.var_type(v)) for v in order]
    return ContractionPlan(node, inputs, [t for t in out_types if t != C], terms, env)


def evaluate(plan: ContractionPlan, order: str = "greedy") -> SparseTensor:
    return plan.evaluate(order)


# ---------------------------------------------------------------------------
# identities

@dataclass
class Verdict:
    equal: bool
    witness: dict | None = None
    lhs: Fraction | None = None
    rhs: Fraction | None = None

    def __bool__(self):
        return self.equal

    def __str__(self):
        if self.equal:
            return "Equal"
        return f"NotEqual at {self.witness} (lhs {self.lhs}, rhs {self.rhs})"


def check_identity(lhs: Node | str, rhs: Node | str, env: DslEnv, order: str = "greedy") -> Verdict:
    lnode = parse(lhs) if isinstance(lhs, str) else lhs
    rnode = parse(rhs) if isinstance(rhs, str) else rhs
    lv, rv = variables(lnode), variables(rnode)
    if set(lv) != set(rv):
        raise DslTypeError(f"sides use different variables: {sorted(lv)} vs {sorted(rv)}")
    lt, rt = _side_types(lnode, env), _side_types(rnode, env)
    if len(lt) != len(rt):
        raise DslTypeError("sides have different numbers of tensor positions")
    types = [_join(a, b, "identity") for a, b in zip(lt, rt)]
    lp = compile_expr(lnode, env, types if len(types) != 1 else types[0], lv)
    rp = compile_expr(rnode, env, types if len(types) != 1 else types[0], lv)
    if lp.outputs != rp.outputs:
        raise DslTypeError(f"sides land in different spaces: {lp.outputs} vs {rp.outputs}")
    a, b = lp.evaluate(order), rp.evaluate(order)
    diff = a - b
    if diff.is_zero():
        return Verdict(True)
    idx = min(diff.entries)
    names = [n for n, _ in lp.inputs] + [f"out{k}" for k in range(len(lp.outputs))]
    spaces = [t for _, t in lp.inputs] + lp.outputs
    witness = {n: env.basis_names(t)[i] for n, t, i in zip(names, spaces, idx)}
    return Verdict(False, witness, a[idx], b[idx])


def _side_types(node: Node, env: DslEnv) -> list:
    ts = None
    for c, m in expand(node):
        t = infer(m, env)
        t = t if isinstance(t, list) else [t]
        ts = t if ts is None else [_join(x, y, "sum") for x, y in zip(ts, t)]
    return [t for t in ts] if ts else []
