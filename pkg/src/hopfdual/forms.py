"""Truncated equivariant differential forms in both pictures.

Degree ``n`` has basis tuples ``(x, a0, a1, ..., an)``: ``x`` runs over the
quantum group (AYD picture) or its dual (YD picture), ``a0`` over ``A`` in
degree 0 and over ``A+`` (unit last) otherwise, and ``a1..an`` over ``A``.
Indices are mixed radix with ``x`` most significant.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from itertools import product
from typing import Mapping

from .exact import ONE, ZERO, SparseMatrix, vaccum
from .halgebra import ModuleAlgebra
from .hopf import Check, FiniteQuantumGroup, ValidationReport
from .yd import BiModule


class FormSpaces:
    """Bookkeeping shared by both pictures."""

    def __init__(self, h: FiniteQuantumGroup, A: ModuleAlgebra, N: int):
        if A.host is not h:
            raise ValueError("the algebra must be an algebra over the given quantum group")
        self.h = h
        self.hd = h.dual()
        self.A = A
        self.Ap = A.plus
        self.N = N
        self.n = h.dim
        self.d = A.dim
        self.u = A.dim  # unit of A+

    def a0_dim(self, deg: int) -> int:
        return self.d if deg == 0 else self.d + 1

    def dim(self, deg: int) -> int:
        return self.n * self.a0_dim(deg) * self.d ** deg

    def encode(self, deg: int, tup: tuple) -> int:
        x, a0, *rest = tup
        i = x * self.a0_dim(deg) + a0
        for a in rest:
            i = i * self.d + a
        return i

    def decode(self, deg: int, i: int) -> tuple:
        rest = []
        for _ in range(deg):
            i, a = divmod(i, self.d)
            rest.append(a)
        x, a0 = divmod(i, self.a0_dim(deg))
        return (x, a0) + tuple(reversed(rest))

    def to_vec(self, deg: int, elems: Mapping) -> dict:
        return {self.encode(deg, k): v for k, v in elems.items() if v}

    def matrix(self, src: int, dst: int, fn) -> SparseMatrix:
        """Matrix of a map given on basis tuples by ``fn(tup) -> {tup: c}``."""
        return SparseMatrix.from_function(self.dim(dst), self.dim(src),
                                          lambda i: self.to_vec(dst, fn(self.decode(src, i))))

    # -- Omega(A) helpers ------------------------------------------------------

    def amul(self, a: int, b: int) -> dict:
        """Product in A+."""
        return self.Ap._mt.get((a, b), {})

    @lru_cache(maxsize=None)
    def act_omega(self, x: int, omega: tuple) -> tuple:
        """``e_x . (a0 da1 ... dan)`` as a tuple of ``(omega', c)`` pairs; ``a0`` lives in A+."""
        h = self.h
        k = len(omega)
        if k == 0:
            return (((), h.counit[x]),) if h.counit[x] else ()
        out: dict = {}
        for legs, c in h.comul_basis(x, k).items():
            parts = [self.Ap.act_basis(l, a) for l, a in zip(legs, omega)]
            if not all(parts):
                continue
            for combo in product(*(p.items() for p in parts)):
                key = tuple(b for b, _ in combo)
                v = c
                for _, w in combo:
                    v *= w
                out[key] = out.get(key, ZERO) + v
        return tuple((k2, v) for k2, v in out.items() if v)

    def act_omega_vec(self, y: Mapping, omega: tuple) -> dict:
        out: dict = {}
        for x, c in y.items():
            for k, v in self.act_omega(x, omega):
                out[k] = out.get(k, ZERO) + c * v
        return {k: v for k, v in out.items() if v}

    def coact_omega(self, omega: tuple) -> list:
        """Coaction on ``da1 ... dak``: ``[(b_tuple, p_product_vector)]`` with the dual legs multiplied."""
        hd = self.hd
        acc = [((), hd.one)]
        for a in omega:
            nxt = []
            co = self.Ap.coact(a)
            for prev, pv in acc:
                for (b, p), c in co.items():
                    nxt.append((prev + (b,), {k: v * c for k, v in hd.mul(pv, {p: ONE}).items()}))
            acc = nxt
        return acc


class _Complex:
    picture = ""

    def __init__(self, spaces: FormSpaces):
        self.sp = spaces
        self.h = spaces.h
        self.hd = spaces.hd
        self.N = spaces.N
        self._cache: dict = {}

    def dim(self, deg: int) -> int:
        return self.sp.dim(deg)

    def _memo(self, key, fn):
        m = self._cache.get(key)
        if m is None:
            m = self._cache[key] = fn()
        return m

    # -- operators shared by both pictures ---------------------------------------

    def d(self, n: int) -> SparseMatrix:
        """Exterior derivative, degree n -> n+1 (zero out of the top degree)."""
        sp = self.sp
        if n >= self.N:
            return SparseMatrix.zero(0, self.dim(n))

        def fn(tup):
            x, a0, *rest = tup
            if n > 0 and a0 == sp.u:
                return {}
            return {(x, sp.u, a0, *rest): ONE}
        return self._memo(("d", n), lambda: sp.matrix(n, n + 1, fn))

    def inner_face(self, n: int, j: int) -> SparseMatrix:
        """Faces ``d_j`` with ``j < n``: multiply ``a^j a^(j+1)`` with sign ``(-1)^j``."""
        sp = self.sp

        def fn(tup):
            x, *om = tup
            left, right = om[j], om[j + 1]
            prod = sp.amul(left, right)
            sign = -ONE if j % 2 else ONE
            out = {}
            for c, v in prod.items():
                key = (x, *om[:j], c, *om[j + 2:])
                out[key] = out.get(key, ZERO) + sign * v
            return out
        return sp.matrix(n, n - 1, fn)

    def face(self, n: int, j: int) -> SparseMatrix:
        if not 0 <= j <= n or n == 0:
            raise ValueError(f"no face {j} in degree {n}")
        return self._memo(("face", n, j), lambda: self.inner_face(n, j) if j < n else self.last_face(n))

    def b(self, n: int) -> SparseMatrix:
        """Equivariant Hochschild boundary, degree n -> n-1."""
        if n == 0:
            return SparseMatrix.zero(0, self.dim(0))

        def build():
            m = self.face(n, 0)
            for j in range(1, n + 1):
                m = m + self.face(n, j)
            return m
        return self._memo(("b", n), build)

    def bmat(self, n: int) -> SparseMatrix:
        return self.b(n)

    def Bop(self, n: int) -> SparseMatrix:
        """Equivariant Connes operator, degree n -> n+1 (zero out of the top degree)."""
        if n >= self.N:
            return SparseMatrix.zero(0, self.dim(n))
        return self._memo(("B", n), lambda: self.build_B(n))

    def paramixed_check(self) -> ValidationReport:
        rep = ValidationReport(f"paramixed relations ({self.picture})")
        add = rep.checks.append
        for n in range(2, self.N + 1):
            add(Check(f"b^2 = 0 in degree {n}", (self.b(n - 1) @ self.b(n)).is_zero()))
        for n in range(0, self.N - 1):
            add(Check(f"B^2 = 0 in degree {n}", (self.Bop(n + 1) @ self.Bop(n)).is_zero()))
        for n in range(0, self.N):
            lhs = self.b(n + 1) @ self.Bop(n)
            if n > 0:
                lhs = lhs + self.Bop(n - 1) @ self.b(n)
            rhs = SparseMatrix.identity(self.dim(n)) - self.T(n)
            add(Check(f"Bb + bB = id - T in degree {n}", lhs == rhs, lhs.first_difference(rhs)))
        return rep

    def module(self, n: int) -> BiModule:
        return self._memo(("mod", n), lambda: BiModule(
            self.h, self.dim(n), [self.act_h(n, x) for x in range(self.h.dim)],
            [self.act_hd(n, f) for f in range(self.h.dim)], f"Omega^{n} ({self.picture})"))


class AydForms(_Complex):
    """``Omega_H(A) = H (x) Omega(A)`` with the anti-Yetter-Drinfeld structure."""
    picture = "AYD"

    def last_face(self, n: int) -> SparseMatrix:
        sp, h = self.sp, self.h
        sign = -ONE if n % 2 else ONE

        def fn(tup):
            t, a0, *rest = tup
            an = rest[-1]
            out: dict = {}
            for t1, t2, c in h._ct[t]:
                moved = sp.Ap.act(h.Sinv({t1: ONE}), {an: ONE})
                for m, v in moved.items():
                    for p, w in sp.amul(m, a0).items():
                        key = (t2, p, *rest[:-1])
                        out[key] = out.get(key, ZERO) + sign * c * v * w
            return out
        return sp.matrix(n, n - 1, fn)

    def build_B(self, n: int) -> SparseMatrix:
        sp, h = self.sp, self.h

        def fn(tup):
            t, *om = tup
            if n > 0 and om[0] == sp.u:
                return {}
            out: dict = {}
            for i in range(n + 1):
                moved = tuple(om[n + 1 - i:])
                rest = tuple(om[:n + 1 - i])
                sign = -ONE if (n * i) % 2 else ONE
                for t1, t2, c in h._ct[t]:
                    for mv, v in sp.act_omega_vec(h.Sinv({t1: ONE}), moved).items():
                        key = (t2, sp.u, *mv, *rest)
                        out[key] = out.get(key, ZERO) + sign * c * v
            return out
        return sp.matrix(n, n + 1, fn)

    def T(self, n: int) -> SparseMatrix:
        """``t (x) w -> t(2) (x) S^-1(t(1)).w``."""
        sp, h = self.sp, self.h

        def fn(tup):
            t, *om = tup
            out: dict = {}
            for t1, t2, c in h._ct[t]:
                for w, v in sp.act_omega_vec(h.Sinv({t1: ONE}), tuple(om)).items():
                    key = (t2, *w)
                    out[key] = out.get(key, ZERO) + c * v
            return out
        return self._memo(("T", n), lambda: sp.matrix(n, n, fn))

    def T_inverse(self, n: int) -> SparseMatrix:
        """``t (x) w -> t(2) (x) t(1).w``."""
        sp, h = self.sp, self.h

        def fn(tup):
            t, *om = tup
            out: dict = {}
            for t1, t2, c in h._ct[t]:
                for w, v in sp.act_omega(t1, tuple(om)):
                    key = (t2, *w)
                    out[key] = out.get(key, ZERO) + c * v
            return out
        return self._memo(("Tinv", n), lambda: sp.matrix(n, n, fn))

    def act_h(self, n: int, r: int) -> SparseMatrix:
        """``r.(t (x) w) = r(3) t S(r(1)) (x) r(2).w``."""
        sp, h = self.sp, self.h
        terms = [(r1, r2, r3, c) for (r1, r2, r3), c in h.comul_basis(r, 3).items()]
        outer = []
        for t in range(h.dim):
            by_r2: dict = {}
            for r1, r2, r3, c in terms:
                lead = h.mul(h.mul({r3: ONE}, {t: ONE}), h.S({r1: ONE}))
                if lead:
                    vaccum(by_r2.setdefault(r2, {}), lead, c)
            outer.append({r2: v for r2, v in by_r2.items() if v})

        def fn(tup):
            t, *om = tup
            out: dict = {}
            for r2, lead in outer[t].items():
                for w, v in sp.act_omega(r2, tuple(om)):
                    for x, y in lead.items():
                        key = (x, *w)
                        out[key] = out.get(key, ZERO) + v * y
            return out
        return self._memo(("acth", n, r), lambda: sp.matrix(n, n, fn))

    def act_hd(self, n: int, f: int) -> SparseMatrix:
        """``f.(t (x) w) = f(t(2)) t(1) (x) w``."""
        sp, h = self.sp, self.h

        def fn(tup):
            t, *om = tup
            out: dict = {}
            for t1, t2, c in h._ct[t]:
                if t2 == f:
                    key = (t1, *om)
                    out[key] = out.get(key, ZERO) + c
            return out
        return self._memo(("acthd", n, f), lambda: sp.matrix(n, n, fn))

    def bullet_h(self, n: int, r: int, delta: Mapping) -> SparseMatrix:
        """``r . (t (x) w) = delta^-1(r(1)) r(4) t S(r(2)) (x) r(3).w`` for the YD structure."""
        sp, h = self.sp, self.h
        dinv = h.dual_vec_compose_S(delta)

        def fn(tup):
            t, *om = tup
            out: dict = {}
            for (r1, r2, r3, r4), c in h.comul_basis(r, 4).items():
                e = dinv.get(r1)
                if not e:
                    continue
                lead = h.mul(h.mul({r4: ONE}, {t: ONE}), h.S({r2: ONE}))
                for w, v in sp.act_omega(r3, tuple(om)):
                    for x, y in lead.items():
                        key = (x, *w)
                        out[key] = out.get(key, ZERO) + c * e * v * y
            return out
        return sp.matrix(n, n, fn)

    def bullet_hd(self, n: int, f: int, sigma: Mapping) -> SparseMatrix:
        """``f . (t (x) w) = sigma(f(2)) f(1)(t(2)) t(1) (x) w``."""
        sp, h, hd = self.sp, self.h, self.hd
        fvec: dict = {}
        for f1, f2, c in hd._ct[f]:
            s = sigma.get(f2)
            if s:
                fvec[f1] = fvec.get(f1, ZERO) + c * s

        def fn(tup):
            t, *om = tup
            out: dict = {}
            for t1, t2, c in h._ct[t]:
                v = fvec.get(t2)
                if v:
                    key = (t1, *om)
                    out[key] = out.get(key, ZERO) + c * v
            return out
        return sp.matrix(n, n, fn)


class YdForms(_Complex):
    """``Omega^yd_H(A) = H^ (x) Omega(A)`` with the Yetter-Drinfeld structure of a modular pair.

    The twisted face reads ``g S^-1(a(1)) <- sigma`` as ``g (S^-1(a(1)) <- sigma)``;
    with this reading ``lambda`` intertwines both boundaries.
    """
    picture = "YD"

    def __init__(self, spaces: FormSpaces, sigma: Mapping, delta: Mapping):
        super().__init__(spaces)
        self.sigma = dict(sigma)
        self.delta = dict(delta)

    def _twist(self, g: int, p: Mapping) -> dict:
        """``g (S^-1(p) <- sigma)`` in the dual."""
        hd = self.hd
        return hd.mul({g: ONE}, hd.rhit(hd.Sinv(p), self.sigma))

    def last_face(self, n: int) -> SparseMatrix:
        sp = self.sp
        sign = -ONE if n % 2 else ONE

        def fn(tup):
            g, a0, *rest = tup
            an = rest[-1]
            out: dict = {}
            for (b, p), c in sp.Ap.coact(an).items():
                lead = self._twist(g, {p: ONE})
                if not lead:
                    continue
                for q, w in sp.amul(b, a0).items():
                    for x, y in lead.items():
                        key = (x, q, *rest[:-1])
                        out[key] = out.get(key, ZERO) + sign * c * w * y
            return out
        return sp.matrix(n, n - 1, fn)

    def build_B(self, n: int) -> SparseMatrix:
        sp = self.sp

        def fn(tup):
            g, *om = tup
            if n > 0 and om[0] == sp.u:
                return {}
            out: dict = {}
            for i in range(n + 1):
                moved = tuple(om[n + 1 - i:])
                rest = tuple(om[:n + 1 - i])
                sign = -ONE if (n * i) % 2 else ONE
                for bs, pv in sp.coact_omega(moved):
                    for x, y in self._twist(g, pv).items():
                        key = (x, sp.u, *bs, *rest)
                        out[key] = out.get(key, ZERO) + sign * y
            return out
        return sp.matrix(n, n + 1, fn)

    def act_h(self, n: int, r: int) -> SparseMatrix:
        """``r . (g (x) w) = r(1) -> g <- S^-1(r(4)) (x) r(2) delta(r(3)) . w``."""
        sp, h, hd = self.sp, self.h, self.hd
        delta = self.delta
        terms = [(r1, r2, h.Sinv({r4: ONE}), c * delta[r3])
                 for (r1, r2, r3, r4), c in h.comul_basis(r, 4).items() if delta.get(r3)]
        # outer[g][r2] = the dual-side coefficient vector, independent of the form
        outer = []
        for g in range(h.dim):
            by_r2: dict = {}
            for r1, r2, s4, ce in terms:
                lead = hd.rhit(hd.lhit({r1: ONE}, {g: ONE}), s4)
                if lead:
                    vaccum(by_r2.setdefault(r2, {}), lead, ce)
            outer.append({r2: v for r2, v in by_r2.items() if v})

        def fn(tup):
            g, *om = tup
            out: dict = {}
            for r2, lead in outer[g].items():
                for w, v in sp.act_omega(r2, tuple(om)):
                    for x, y in lead.items():
                        key = (x, *w)
                        out[key] = out.get(key, ZERO) + v * y
            return out
        return self._memo(("acth", n, r), lambda: sp.matrix(n, n, fn))

    def act_hd(self, n: int, f: int) -> SparseMatrix:
        """``f . (g (x) w) = f g (x) w``."""
        sp, hd = self.sp, self.hd

        def fn(tup):
            g, *om = tup
            return {(x, *om): v for x, v in hd.mul({f: ONE}, {g: ONE}).items()}
        return self._memo(("acthd", n, f), lambda: sp.matrix(n, n, fn))

    def lambda_map(self, n: int) -> SparseMatrix:
        """``lambda(f (x) w)(h) = psihat(h (sigma -> f) delta) (x) w``, into the AYD picture."""
        return self._memo(("lambda", n), lambda: lambda_outer(self.h, self.sigma, self.delta).kron_identity(
            self.dim(n) // self.h.dim))

    def lambda_inverse(self, n: int) -> SparseMatrix:
        return self._memo(("lambdainv", n), lambda: lambda_outer(self.h, self.sigma, self.delta).inverse()
                          .kron_identity(self.dim(n) // self.h.dim))

    def T(self, n: int) -> SparseMatrix:
        """The symmetry operator transported from the AYD picture."""
        def build():
            ayd = AydForms(self.sp)
            return self.lambda_inverse(n) @ ayd.T(n) @ self.lambda_map(n)
        return self._memo(("T", n), build)


def lambda_outer(h: FiniteQuantumGroup, sigma: Mapping, delta: Mapping) -> SparseMatrix:
    """The map ``f -> Ghat_l((sigma -> f) delta)`` from the dual to H."""
    hd = h.dual()
    gl = hd.fourier("Gl")
    n = h.dim

    def col(f):
        x = hd.mul(hd.lhit(sigma, {f: ONE}), delta)
        out: dict = {}
        for t, c in x.items():
            for r in range(n):
                if gl[r][t]:
                    out[r] = out.get(r, ZERO) + c * gl[r][t]
        return {k: v for k, v in out.items() if v}
    return SparseMatrix.from_function(n, n, col)


def build_forms(h: FiniteQuantumGroup, A: ModuleAlgebra, pair=None, N: int = 3):
    """Both pictures when a pair is given, otherwise the AYD picture alone (YD slot None)."""
    sp = FormSpaces(h, A, N)
    ayd = AydForms(sp)
    yd = YdForms(sp, pair.sigma, pair.delta) if pair is not None else None
    return ayd, yd


def lambda_checks(ayd: AydForms, yd: YdForms, max_degree: int = 2) -> ValidationReport:
    """``lambda`` is invertible, a morphism of YD modules and commutes with ``b``, ``d`` and ``B``."""
    from .yd import ayd_to_yd, is_morphism
    rep = ValidationReport("lambda")
    add = rep.checks.append
    top = min(max_degree, yd.N)
    for n in range(top + 1):
        L = yd.lambda_map(n)
        add(Check(f"invertible in degree {n}", L @ yd.lambda_inverse(n) == SparseMatrix.identity(yd.dim(n))))
        target = ayd_to_yd(ayd.module(n), yd.sigma, yd.delta)
        add(Check(f"intertwines the actions in degree {n}", is_morphism(L, yd.module(n), target)))
        if n > 0:
            add(Check(f"commutes with b in degree {n}", yd.lambda_map(n - 1) @ yd.b(n) == ayd.b(n) @ L))
        if n < top:
            add(Check(f"commutes with d in degree {n}", yd.lambda_map(n + 1) @ yd.d(n) == ayd.d(n) @ L))
            add(Check(f"commutes with B in degree {n}", yd.lambda_map(n + 1) @ yd.Bop(n) == ayd.Bop(n) @ L))
    return rep
