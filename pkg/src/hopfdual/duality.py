"""Twisted Fourier transforms, the duality map, the trace map and the comparison harness."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import TYPE_CHECKING, Mapping

from .exact import ONE, ZERO, SparseMatrix, vaccum, vdot
from .halgebra import ModuleAlgebra, crossed_product, stabilisation, takesaki_takai
from .hopf import Check, FiniteQuantumGroup, ValidationReport
from .modular import verify_pair

if TYPE_CHECKING:
    from .forms import FormSpaces, YdForms


_TW_CACHE: dict = {}


def twisted_fourier_columns(h: FiniteQuantumGroup, sigma: Mapping, delta: Mapping, which: str) -> list[dict]:
    """Columns of ``Fhat: H^ -> H`` or ``F: H -> H^``.

    ``Fhat(f)(x) = psihat(S^-1(f) (sigma -> x) delta)`` and
    ``F(t)(r) = psi(S^-1(t) (delta -> r) sigma)``.
    """
    key = (id(h), tuple(sorted(sigma.items())), tuple(sorted(delta.items())), which)
    hit = _TW_CACHE.get(key)
    if hit is not None and hit[0] is h:
        return hit[1]
    hd = h.dual()
    if which == "Fhat":
        q, left, right = hd, dict(sigma), dict(delta)
    else:
        q, left, right = h, dict(delta), dict(sigma)
    n = q.dim
    integral = q.psi
    shifted = [q.mul(q.lhit(left, {x: ONE}), right) for x in range(n)]
    cols = []
    for f in range(n):
        sf = q.Sinv({f: ONE})
        col = {}
        for x in range(n):
            v = vdot(integral, q.mul(sf, shifted[x]))
            if v:
                col[x] = v
        cols.append(col)
    _TW_CACHE[key] = (h, cols)
    return cols


# ---------------------------------------------------------------------------
# twisted Fourier transforms

@dataclass
class TwistedFourier:
    """``Fhat: H^ -> H`` and ``F: H -> H^`` for a modular pair, as matrices."""
    h: FiniteQuantumGroup
    sigma: dict
    delta: dict
    Fhat: SparseMatrix
    F: SparseMatrix

    def checks(self) -> ValidationReport:
        return twisted_fourier_checks(self)


def twisted_fourier(h: FiniteQuantumGroup, sigma: Mapping, delta: Mapping) -> TwistedFourier:
    n = h.dim
    cols_hat = twisted_fourier_columns(h, sigma, delta, "Fhat")
    cols = twisted_fourier_columns(h, sigma, delta, "F")
    return TwistedFourier(h, dict(sigma), dict(delta), SparseMatrix(n, n, cols_hat), SparseMatrix(n, n, cols))


FOURIER_PRODUCT_RULE = "f * F(t) == f(Psihat(2) sigma) * F(t(1)) * psi(Psihat(1) Sinv(t(2)))"


def twisted_fourier_checks(tf: TwistedFourier) -> ValidationReport:
    """Invertibility of both transforms, the inversion rule and the product rule on every basis element."""
    from .dsl.compiler import DslEnv, check_identity
    from .forms import lambda_outer
    h, hd = tf.h, tf.h.dual()
    n = h.dim
    rep = ValidationReport(f"twisted Fourier on {h.name}")
    add = rep.checks.append
    add(Check("Fhat invertible", tf.Fhat.rank() == n))
    add(Check("F invertible", tf.F.rank() == n))
    # inversion: Ghat_l(sigma -> F(t) delta) = t, i.e. lambda undoes F
    comp = lambda_outer(h, tf.sigma, tf.delta) @ tf.F
    add(Check("Ghat_l(sigma -> F(t) delta) = t", comp == SparseMatrix.identity(n), comp.first_difference(
        SparseMatrix.identity(n))))
    # product rule through the DSL; f * F(t) is the YD product in the dual
    env = DslEnv(h, tf.sigma, tf.delta)
    lhs, rhs = FOURIER_PRODUCT_RULE.split("==")
    v = check_identity(lhs, rhs, env)
    add(Check("f . F(t) = f(psihat(2) sigma) F(t(1)) psi(psihat(1) S^-1(t(2)))", v.equal, v.witness))
    return rep


# ---------------------------------------------------------------------------
# the duality map

def tau_source(n: int) -> str:
    """Sweedler source of the duality map in degree ``n``; ``g^j`` carries legs ``1..j+2``."""
    lead = " ".join([f"f({n + 3})"] + [f"g{j}({j + 2})" for j in range(n + 1)]) + " (sigma .> S(f(1)))"
    parts = [f"Fhat({lead})"]
    for i in range(n + 1):
        gs = " ".join(f"g{j}({j - i + 1})" for j in range(i, n + 1))
        parts.append(f"act(f({i + 2}) Sinv({gs}), a{i})")
    return " @ ".join(parts)


def tau_var_order(n: int) -> list[str]:
    out = ["f"]
    for i in range(n + 1):
        out += [f"g{i}", f"a{i}"]
    return out


@dataclass
class DualityMap:
    """Per-degree matrices of ``tau: Omega^yd_K(A >| K^) -> Omega^yd_{K^}(A)``."""
    source: "YdForms"
    target: "YdForms"
    mats: list

    def __getitem__(self, n: int) -> SparseMatrix:
        return self.mats[n]


def tau(k: FiniteQuantumGroup, sigma: Mapping, delta: Mapping, A: ModuleAlgebra, N: int = 1,
        cross: ModuleAlgebra | None = None, order: str = "greedy") -> DualityMap:
    """Assemble the duality map for the quantum group ``k`` and an algebra ``A`` over its dual.

    ``(sigma, delta)`` is a pair for ``k``; the target carries the dual pair.
    ``cross`` may pass a prebuilt ``A >| k^`` so that bases are shared.
    """
    from .dsl.compiler import DslEnv, compile_expr
    from .forms import FormSpaces, YdForms
    kd = k.dual()
    if A.host is not kd:
        raise ValueError("the algebra must be acted on by the dual quantum group")
    if not verify_pair(k, sigma, delta).ok:
        raise ValueError("the pair does not verify")
    B = cross if cross is not None else crossed_product(A)
    src = YdForms(FormSpaces(k, B, N), sigma, delta)
    dst = YdForms(FormSpaces(kd, A, N), delta, sigma)
    nk, dA = k.dim, A.dim
    mats = []
    for n in range(N + 1):
        types = {"f": "Hhat", **{f"g{j}": "Hhat" for j in range(n + 1)},
                 **{f"a{j}": "A" for j in range(n + 1)}}
        if n > 0:
            types["a0"] = "A+"
        env = DslEnv(k, sigma, delta, algebra=A, types=types)
        plan = compile_expr(tau_source(n), env, var_order=tau_var_order(n))
        tensor = plan.evaluate(order)
        cols: dict = {}
        for key, v in tensor.entries.items():
            f = key[0]
            ins = key[1:2 * n + 3]
            out = key[2 * n + 3:]
            c0 = ins[1] * nk + ins[0]
            if n > 0 and ins[1] == dA:
                c0 = None  # handled by the unit column below
            src_tup = (f, ins[1] * nk + ins[0] if c0 is not None else ("u", ins[0]),
                       *[ins[2 * j + 1] * nk + ins[2 * j] for j in range(1, n + 1)])
            cols.setdefault(src_tup, {})
            row = dst.sp.encode(n, tuple(out))
            cols[src_tup][row] = cols[src_tup].get(row, ZERO) + v
        unit_k = kd.unit_vec
        columns = [dict() for _ in range(src.dim(n))]
        for tup, col in cols.items():
            if isinstance(tup[1], tuple):
                w = unit_k.get(tup[1][1])
                if not w:
                    continue
                idx = src.sp.encode(n, (tup[0], src.sp.u, *tup[2:]))
                vaccum(columns[idx], col, w)
            else:
                vaccum(columns[src.sp.encode(n, tup)], col)
        mats.append(SparseMatrix(dst.dim(n), src.dim(n), [{i: x for i, x in c.items() if x} for c in columns]))
    return DualityMap(src, dst, mats)


def tau_checks(dm: DualityMap, max_degree: int | None = None) -> ValidationReport:
    """YD-linearity, compatibility with every face, with d, and with B."""
    src, dst = dm.source, dm.target
    N = len(dm.mats) - 1 if max_degree is None else max_degree
    rep = ValidationReport("duality map")
    add = rep.checks.append
    k = src.h
    for n in range(N + 1):
        tn = dm[n]
        # the target lives over the dual: its H^-action is the source's H-action and vice versa
        ok_h = all(tn @ src.act_h(n, x) == dst.act_hd(n, x) @ tn for x in range(k.dim))
        ok_hd = all(tn @ src.act_hd(n, f) == dst.act_h(n, f) @ tn for f in range(k.dim))
        add(Check(f"H-linear in degree {n}", ok_h))
        add(Check(f"Hhat-linear in degree {n}", ok_hd))
        for j in range(n + 1 if n > 0 else 0):
            lhs = dm[n - 1] @ src.face(n, j)
            rhs = dst.face(n, j) @ tn
            add(Check(f"face {j} in degree {n}", lhs == rhs, lhs.first_difference(rhs)))
        if n < N:
            lhs = dm[n + 1] @ src.d(n)
            rhs = dst.d(n) @ tn
            add(Check(f"d in degree {n}", lhs == rhs, lhs.first_difference(rhs)))
            lhs = dm[n + 1] @ src.Bop(n)
            rhs = dst.Bop(n) @ tn
            add(Check(f"B in degree {n}", lhs == rhs, lhs.first_difference(rhs)))
    return rep


# ---------------------------------------------------------------------------
# trace map, forms functor, comparison harness

def forms_map(phi: SparseMatrix, src: "FormSpaces", dst: "FormSpaces", n: int) -> SparseMatrix:
    """``t (x) b0 db1 ... dbn -> t (x) phi(b0) dphi(b1) ... dphi(bn)`` for a unital algebra map ``phi``."""
    cols_phi = phi.cols

    def fn(tup):
        x, b0, *rest = tup
        parts = [{dst.u: ONE} if (n > 0 and b0 == src.u) else cols_phi[b0]]
        parts += [cols_phi[b] for b in rest]
        out: dict = {}
        for combo in product(*(p.items() for p in parts)):
            v = ONE
            for _, c in combo:
                v *= c
            out[(x, *(i for i, _ in combo))] = v
        return out
    return src.matrix(n, n, fn) if src is dst else _cross_matrix(src, dst, n, fn)


def _cross_matrix(src, dst, n, fn) -> SparseMatrix:
    return SparseMatrix.from_function(dst.dim(n), src.dim(n),
                                      lambda i: dst.to_vec(n, fn(src.decode(n, i))))


def trace_map(h: FiniteQuantumGroup, A: ModuleAlgebra, n: int, stab: ModuleAlgebra | None = None,
              src: "FormSpaces | None" = None, dst: "FormSpaces | None" = None) -> SparseMatrix:
    """``tr_A: Omega^n_H(A (x) K_H) -> Omega^n_H(A)`` in the AYD picture.

    ``t (x) (a0,r0,g0) d(a1,r1,g1) ... -> t(2) (x) g^n(t(1) r0) g0(r1) ... g^(n-1)(rn) a0 da1 ...``;
    the formal unit counts as ``1 (x) sum_i e_i (x) e^i``.
    """
    from .forms import FormSpaces
    K = stab if stab is not None else stabilisation(A)
    src = src or FormSpaces(h, K, n)
    dst = dst or FormSpaces(h, A, n)
    nh = h.dim

    def split(c):
        a, rem = divmod(c, nh * nh)
        r, g = divmod(rem, nh)
        return a, r, g

    def fn(tup):
        t, c0, *rest = tup
        cs = [split(c) for c in rest]
        if n > 0 and c0 == src.u:
            # 1+ = 1 (x) sum_i e_i (x) e^i: g^n(t(1) r^1) g^1(r^2) ... and a0 = 1+
            a0 = dst.u
            chain = ONE
            for j in range(1, n):
                chain *= ONE if cs[j - 1][2] == cs[j][1] else ZERO
            if not chain:
                return {}
            last_g, first_r = cs[-1][2], cs[0][1]
            out: dict = {}
            for t1, t2, c in h._ct[t]:
                v = h._mt.get((t1, first_r), {}).get(last_g)
                if v:
                    key = (t2, a0, *(a for a, _, _ in cs))
                    out[key] = out.get(key, ZERO) + c * v
            return out
        a0, r0, g0 = split(c0)
        seq_r = [r0] + [r for _, r, _ in cs]
        seq_g = [g0] + [g for _, _, g in cs]
        for j in range(n):
            if seq_g[j] != seq_r[j + 1]:
                return {}
        out = {}
        for t1, t2, c in h._ct[t]:
            v = h._mt.get((t1, r0), {}).get(seq_g[n])
            if v:
                key = (t2, a0, *(a for a, _, _ in cs))
                out[key] = out.get(key, ZERO) + c * v
        return out
    return _cross_matrix(src, dst, n, fn)


@dataclass
class ComparisonVerdict:
    degree: int
    equal: bool
    witness: object = None
    detail: str = ""

    def __bool__(self):
        return self.equal


class DualityComparison:
    """Both composites of the degree-local duality statement, built once per (h, pair, A)."""

    def __init__(self, h: FiniteQuantumGroup, sigma: Mapping, delta: Mapping, A: ModuleAlgebra, N: int = 1):
        from .forms import AydForms, FormSpaces, YdForms
        if A.host is not h:
            raise ValueError("the algebra must be an algebra over the quantum group")
        hd = h.dual()
        self.h, self.A, self.N = h, A, N
        self.sigma, self.delta = dict(sigma), dict(delta)
        A1 = crossed_product(A)
        B = crossed_product(A1)
        self.B = B
        self.tau_h = tau(h, sigma, delta, A1, N)
        self.tau_hd = tau(hd, delta, sigma, A, N, cross=A1)
        self.yd_B = self.tau_h.source
        self.sp_A = self.tau_hd.target.sp
        self.ayd_A = AydForms(self.sp_A)
        self.yd_A = self.tau_hd.target
        self.K = stabilisation(A)
        self.sp_K = FormSpaces(h, self.K, N)
        self.gamma = takesaki_takai(A, sigma, delta)

    def lhs(self, n: int) -> SparseMatrix:
        """``lambda T^-1 tau_Hhat tau_H lambda^-1`` on the AYD picture of ``A >| H >| H^``."""
        comp = self.tau_hd[n] @ self.tau_h[n]
        return self.ayd_A.T_inverse(n) @ self.yd_A.lambda_map(n) @ comp @ self.yd_B.lambda_inverse(n)

    def rhs(self, n: int) -> SparseMatrix:
        """``tr_A`` after the forms map of the Takesaki-Takai isomorphism."""
        om = forms_map(self.gamma, self.yd_B.sp, self.sp_K, n)
        return trace_map(self.h, self.A, n, self.K, self.sp_K, self.sp_A) @ om

    def check(self, n: int) -> ComparisonVerdict:
        lhs, rhs = self.lhs(n), self.rhs(n)
        col = lhs.first_difference(rhs)
        if col is None:
            return ComparisonVerdict(n, True)
        return ComparisonVerdict(n, False, self.yd_B.sp.decode(n, col), "columns differ")


def compare_duality(h: FiniteQuantumGroup, pair, A: ModuleAlgebra, degree: int) -> ComparisonVerdict:
    return DualityComparison(h, pair.sigma, pair.delta, A, degree).check(degree)
