"""Module algebras over finite quantum groups and the constructions built from them.

An algebra is stored by structure constants ``mult[a, b, c]`` (``e_a e_b =
sum_c mult[a,b,c] e_c``) and an action tensor ``act[x, a, b]`` giving
``e_x . e_a = sum_b act[x,a,b] e_b``. The coaction of the dual is read off
the same tensor: ``a(0) (x) a(1)`` has coefficient ``act[p, a, b]`` on
``e_b (x) e^p``.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product
from typing import Mapping, Sequence

from .exact import ONE, ZERO, SparseMatrix, SparseTensor, kernel, rank, to_scalar, vaccum, vscale, vsparse
from .hopf import Check, FiniteQuantumGroup, ValidationReport

Vec = dict


class ModuleAlgebra:
    def __init__(self, name: str, host: FiniteQuantumGroup, dim: int, mult: SparseTensor,
                 act: SparseTensor, unit=None, basis: Sequence[str] | None = None):
        self.name = name
        self.host = host
        self.dim = dim
        self.mult = mult
        self.act_tensor = act
        self.unit = vsparse(unit) if unit is not None else None
        self.basis = tuple(basis) if basis is not None else tuple(f"a{i}" for i in range(dim))
        if mult.shape != (dim, dim, dim):
            raise ValueError(f"algebra product must have shape {(dim, dim, dim)}, got {mult.shape}")
        if act.shape != (host.dim, dim, dim):
            raise ValueError(f"action must have shape {(host.dim, dim, dim)}, got {act.shape}")
        mt: dict = {}
        for (a, b, c), v in mult.entries.items():
            mt.setdefault((a, b), {})[c] = v
        self._mt = mt
        at: dict = {}
        for (x, a, b), v in act.entries.items():
            at.setdefault((x, a), {})[b] = v
        self._at = at

    def __repr__(self):
        return f"ModuleAlgebra({self.name!r}, dim={self.dim}, host={self.host.name!r})"

    def mul(self, x: Mapping, y: Mapping) -> Vec:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                row = self._mt.get((i, j))
                if row:
                    vaccum(out, row, a * b)
        return out

    def act(self, t: Mapping, a: Mapping) -> Vec:
        out: dict = {}
        for x, c in t.items():
            for i, d in a.items():
                row = self._at.get((x, i))
                if row:
                    vaccum(out, row, c * d)
        return out

    def act_basis(self, x: int, a: int) -> Mapping:
        return self._at.get((x, a), {})

    def act_matrix(self, t: Mapping) -> SparseMatrix:
        return SparseMatrix.from_function(self.dim, self.dim, lambda a: self.act(t, {a: ONE}))

    @cached_property
    def coact_tensor(self) -> SparseTensor:
        """``coact[a, b, p]``: coefficient of ``e_b (x) e^p`` in the coaction of ``e_a``."""
        return SparseTensor._trusted((self.dim, self.dim, self.host.dim),
                                     {(a, b, p): v for (p, a, b), v in self.act_tensor.entries.items()})

    def coact(self, a: int) -> dict:
        return {(b, p): v for (p, a2, b), v in self.act_tensor.entries.items() if a2 == a}

    @cached_property
    def plus(self) -> "ModuleAlgebra":
        return unitarise(self)

    def validate(self) -> ValidationReport:
        return validate_algebra(self)


def validate_algebra(A: ModuleAlgebra) -> ValidationReport:
    """Algebra axioms, unital action, and H-linearity of the product."""
    h = A.host
    rep = ValidationReport(A.name)
    add = rep.checks.append
    d, n = A.dim, h.dim
    E = [{i: ONE} for i in range(d)]
    T = [{i: ONE} for i in range(n)]

    def first(name, it):
        for w in it:
            add(Check(name, False, w))
            return False
        add(Check(name, True))
        return True

    first("associativity", ((a, b, c) for a, b, c in product(range(d), repeat=3)
                            if A.mul(A.mul(E[a], E[b]), E[c]) != A.mul(E[a], A.mul(E[b], E[c]))))
    if A.unit is not None:
        first("unit", (a for a in range(d) if A.mul(A.unit, E[a]) != E[a] or A.mul(E[a], A.unit) != E[a]))
        first("action fixes the unit",
              (x for x in range(n) if A.act(T[x], A.unit) != vscale(A.unit, h.counit[x])))
    first("unital action", (a for a in range(d) if A.act(h.one, E[a]) != E[a]))
    first("action is multiplicative",
          ((x, y, a) for x, y, a in product(range(n), range(n), range(d))
           if A.act(h.mul(T[x], T[y]), E[a]) != A.act(T[x], A.act(T[y], E[a]))))

    def linear_fail(x, a, b):
        rhs: dict = {}
        for j, k, c in h._ct[x]:
            vaccum(rhs, A.mul(A.act(T[j], E[a]), A.act(T[k], E[b])), c)
        return A.act(T[x], A.mul(E[a], E[b])) != rhs
    first("product is H-linear",
          ((x, a, b) for x, a, b in product(range(n), range(d), range(d)) if linear_fail(x, a, b)))

    # coaction read back against the action on every basis element
    def coact_fail(x, a):
        back: dict = {}
        for (b, p), v in A.coact(a).items():
            if p == x:
                vaccum(back, {b: ONE}, v)
        return back != A.act(T[x], E[a])
    first("coaction reproduces the action",
          ((x, a) for x, a in product(range(n), range(d)) if coact_fail(x, a)))
    return rep


def unitarise(A: ModuleAlgebra) -> ModuleAlgebra:
    """``A+ = A (+) C`` with a fresh unit at index ``dim``; H acts on it by the counit."""
    d = A.dim
    u = d
    mult = dict(A.mult.entries)
    mult[(u, u, u)] = ONE
    for a in range(d):
        mult[(u, a, a)] = ONE
        mult[(a, u, a)] = ONE
    act = dict(A.act_tensor.entries)
    for x in range(A.host.dim):
        if A.host.counit[x]:
            act[(x, u, u)] = A.host.counit[x]
    return ModuleAlgebra(A.name + "+", A.host, d + 1, SparseTensor._trusted((d + 1,) * 3, mult),
                         SparseTensor._trusted((A.host.dim, d + 1, d + 1), act), unit={u: ONE},
                         basis=A.basis + ("1+",))


def center(A: ModuleAlgebra) -> list[dict]:
    """Basis of the center, by solving ``za = az`` for all basis ``a``."""
    d = A.dim
    rows = []
    for a in range(d):
        for c in range(d):
            rows.append([A._mt.get((z, a), {}).get(c, ZERO) - A._mt.get((a, z), {}).get(c, ZERO)
                         for z in range(d)])
    return [vsparse(v) for v in kernel(rows, d)]


def trace_form_rank(A: ModuleAlgebra) -> int:
    """Rank of ``(a, b) -> Tr(L_{ab})``; full rank means semisimple."""
    d = A.dim
    tr = [sum((A._mt.get((a, b), {}).get(b, ZERO) for b in range(d)), ZERO) for a in range(d)]
    # Tr(L_x) for x = e_a e_b
    form = [[sum((v * tr[c] for c, v in A._mt.get((a, b), {}).items()), ZERO) for b in range(d)]
            for a in range(d)]
    return rank(form)


# ---------------------------------------------------------------------------
# concrete algebras

def trivial_algebra(h: FiniteQuantumGroup) -> ModuleAlgebra:
    """The ground field with the counit action."""
    act = {(x, 0, 0): h.counit[x] for x in range(h.dim) if h.counit[x]}
    return ModuleAlgebra("C", h, 1, SparseTensor._trusted((1, 1, 1), {(0, 0, 0): ONE}),
                         SparseTensor._trusted((h.dim, 1, 1), act), unit={0: ONE}, basis=("1",))


def swap_algebra(h: FiniteQuantumGroup, swap_coeffs: Sequence) -> ModuleAlgebra:
    """``C^{Z2}`` with basis the two point masses, acted on through a Hopf map onto ``C[Z2]``.

    ``swap_coeffs[x] = (c_e, c_g)`` are the coordinates of the image of ``e_x``
    in ``C[Z2]``; ``g`` exchanges the point masses.
    """
    act = {}
    for x, (ce, cg) in enumerate(swap_coeffs):
        ce, cg = to_scalar(ce), to_scalar(cg)
        for a in range(2):
            if ce:
                act[(x, a, a)] = ce
            if cg:
                act[(x, a, 1 - a)] = cg
    mult = {(0, 0, 0): ONE, (1, 1, 1): ONE}
    return ModuleAlgebra("C^Z2", h, 2, SparseTensor._trusted((2, 2, 2), mult),
                         SparseTensor._trusted((h.dim, 2, 2), {k: v for k, v in act.items() if v}),
                         unit={0: ONE, 1: ONE}, basis=("d0", "d1"))


def translation_algebra(h: FiniteQuantumGroup) -> ModuleAlgebra:
    """``C^G`` for a group algebra ``h = C[G]``, with ``(g.f)(x) = f(xg)``.

    Every basis element of ``h`` must be group-like; the group law is read off the product.
    """
    n = h.dim
    if any(len(h._ct[i]) != 1 or h._ct[i][0] != (i, i, ONE) for i in range(n)):
        raise ValueError("translation needs a basis of group-likes")
    law = {}
    for (a, b), row in h._mt.items():
        (c, v), = row.items()
        law[(a, b)] = c
    e = next(iter(h.unit_vec))
    inv = {a: next(b for b in range(n) if law[(a, b)] == e) for a in range(n)}
    act = {(g, x, law[(x, inv[g])]): ONE for g in range(n) for x in range(n)}
    mult = {(x, x, x): ONE for x in range(n)}
    return ModuleAlgebra(f"C^{h.name}", h, n, SparseTensor._trusted((n, n, n), mult),
                         SparseTensor._trusted((n, n, n), act), unit={x: ONE for x in range(n)},
                         basis=tuple(f"d_{b}" for b in h.basis))


def graded_swap_algebra(h: FiniteQuantumGroup, z: int) -> ModuleAlgebra:
    """``C^{Z2}`` graded by an involution ``z`` of ``G`` for a function algebra ``h = C^G``.

    With ``u = d0 - d1``, the unit has degree ``e`` and ``u`` has degree ``z``;
    a point mass ``d_x`` of ``C^G`` acts as the projection onto degree ``x``.
    """
    e = next(i for i in range(h.dim) if h.counit[i])
    half = ONE / 2
    # projections onto span(1) and span(u), in the point-mass basis of A
    p_one = {(0, 0): half, (0, 1): half, (1, 0): half, (1, 1): half}
    p_u = {(0, 0): half, (0, 1): -half, (1, 0): -half, (1, 1): half}
    act = {}
    for (a, b), v in p_one.items():
        act[(e, a, b)] = v
    for (a, b), v in p_u.items():
        act[(z, a, b)] = act.get((z, a, b), ZERO) + v
    mult = {(0, 0, 0): ONE, (1, 1, 1): ONE}
    return ModuleAlgebra("C^Z2", h, 2, SparseTensor._trusted((2, 2, 2), mult),
                         SparseTensor._trusted((h.dim, 2, 2), {k: v for k, v in act.items() if v}),
                         unit={0: ONE, 1: ONE}, basis=("d0", "d1"))


def regular_algebra(h: FiniteQuantumGroup) -> ModuleAlgebra:
    """``h`` itself with the adjoint action ``r . t = r(2) t S(r(1))``; not always an H-algebra."""
    n = h.dim
    act = {}
    for x in range(n):
        for t in range(n):
            out: dict = {}
            for j, k, c in h._ct[x]:
                vaccum(out, h.mul(h.mul({k: ONE}, {t: ONE}), h.S({j: ONE})), c)
            for b, v in out.items():
                act[(x, t, b)] = v
    return ModuleAlgebra(f"ad({h.name})", h, n, h.mult, SparseTensor._trusted((n, n, n), act),
                         unit=h.unit_vec, basis=h.basis)


# ---------------------------------------------------------------------------
# crossed products and kernels

def crossed_product(A: ModuleAlgebra) -> ModuleAlgebra:
    """``A >| H`` on ``A (x) H`` (index ``a*n + r``) with the dual action of ``H^``.

    ``(a >| r)(b >| t) = a (r(1).b) >| r(2) t`` and ``f.(a >| r) = a >| r(1) f(r(2))``.
    """
    h = A.host
    hd = h.dual()
    n, d = h.dim, A.dim
    N = d * n
    mult: dict = {}
    for a in range(d):
        for r in range(n):
            for b in range(d):
                for t in range(n):
                    out: dict = {}
                    for j, k, c in h._ct[r]:
                        rb = A.act_basis(j, b)
                        if not rb:
                            continue
                        left = A.mul({a: ONE}, rb)
                        if not left:
                            continue
                        right = h._mt.get((k, t))
                        if not right:
                            continue
                        for p, u in left.items():
                            for q, w in right.items():
                                key = p * n + q
                                out[key] = out.get(key, ZERO) + c * u * w
                    for key, v in out.items():
                        if v:
                            mult[(a * n + r, b * n + t, key)] = v
    act: dict = {}
    for f in range(n):
        for r in range(n):
            # f -> r = r(1) f(r(2))
            img: dict = {}
            for j, k, c in h._ct[r]:
                if k == f:
                    img[j] = img.get(j, ZERO) + c
            for j, v in img.items():
                if v:
                    for a in range(d):
                        act[(f, a * n + r, a * n + j)] = v
    unit = None
    if A.unit is not None:
        unit = {a * n + r: u * w for a, u in A.unit.items() for r, w in h.unit_vec.items()}
    basis = [f"{x}|{y}" for x in A.basis for y in h.basis]
    return ModuleAlgebra(f"({A.name})x|{h.name}", hd, N, SparseTensor._trusted((N, N, N), mult),
                         SparseTensor._trusted((n, N, N), act), unit=unit, basis=basis)


def kernel_algebra(h: FiniteQuantumGroup) -> ModuleAlgebra:
    """``K_H`` on ``H (x) H^`` (index ``r*n + f``) with ``(r (x) f)(s (x) g) = f(s) r (x) g``.

    H acts by ``t.(r (x) f) = t(1) r (x) f <- S(t(2))``.
    """
    return stabilisation(trivial_algebra(h), name=f"K({h.name})")


def stabilisation(A: ModuleAlgebra, name: str | None = None) -> ModuleAlgebra:
    """``A (x) K_H`` (index ``(a*n + r)*n + f``) with ``t.(a (x) r (x) f) = t(2).a (x) t(1) r (x) f <- S(t(3))``."""
    h = A.host
    hd = h.dual()
    n, d = h.dim, A.dim
    N = d * n * n

    def ix(a, r, f):
        return (a * n + r) * n + f

    mult: dict = {}
    for (a, b, c), v in A.mult.entries.items():
        for r in range(n):
            for g in range(n):
                for s in range(n):
                    mult[(ix(a, r, s), ix(b, s, g), ix(c, r, g))] = v
    act: dict = {}
    Sb = [h.S({i: ONE}) for i in range(n)]
    for x in range(n):
        for (t1, t2, t3), c in h.comul_basis(x, 3).items():
            # f <- S(t3) on every dual basis vector f
            right = [hd.rhit({f: ONE}, Sb[t3]) for f in range(n)]
            for a in range(d):
                ta = A.act_basis(t2, a)
                if not ta:
                    continue
                for r in range(n):
                    tr = h._mt.get((t1, r))
                    if not tr:
                        continue
                    for f in range(n):
                        for b, u in ta.items():
                            for r2, w in tr.items():
                                for f2, y in right[f].items():
                                    key = (x, ix(a, r, f), ix(b, r2, f2))
                                    act[key] = act.get(key, ZERO) + c * u * w * y
    unit = None
    if A.unit is not None:
        unit = {ix(a, r, r): u for a, u in A.unit.items() for r in range(n)}
    basis = [f"{x}(x){y}(x){z}" for x in A.basis for y in h.basis for z in hd.basis]
    return ModuleAlgebra(name or f"{A.name}(x)K({h.name})", h, N, SparseTensor._trusted((N, N, N), mult),
                         SparseTensor._trusted((n, N, N), {k: v for k, v in act.items() if v}),
                         unit=unit, basis=basis)


def double_crossed_product(A: ModuleAlgebra) -> ModuleAlgebra:
    """``A >| H >| H^`` (index ``(a*n + r)*n + f``), an H-algebra again."""
    B = crossed_product(crossed_product(A))
    assert B.host is A.host
    return B


def takesaki_takai(A: ModuleAlgebra, sigma: Mapping, delta: Mapping) -> SparseMatrix:
    """Matrix of ``gamma_A: A >| H >| H^ -> A (x) K_H``.

    ``gamma(a >| r >| f)`` is the kernel ``x -> (x(3) (delta -> S(r(1))) sigma).a
    (x) x(2) S(r(2))`` weighted by ``S^-1(f)(x(1))``.
    """
    h = A.host
    hd = h.dual()
    n, d = h.dim, A.dim
    N = d * n * n

    def ix(a, r, f):
        return (a * n + r) * n + f

    sigma = dict(sigma)

    def column(col: int) -> dict:
        a, rem = divmod(col, n * n)
        r, f = divmod(rem, n)
        sinv_f = hd.Sinv({f: ONE})
        out: dict = {}
        for r1, r2, c in h._ct[r]:
            left = h.lhit(delta, h.S({r1: ONE}))   # delta -> S(r(1))
            s_r2 = h.S({r2: ONE})
            for x in range(n):
                for (x1, x2, x3), e in h.comul_basis(x, 3).items():
                    w = sinv_f.get(x1)
                    if not w:
                        continue
                    actor = h.mul(h.mul({x3: ONE}, left), sigma)
                    av = A.act(actor, {a: ONE})
                    hv = h.mul({x2: ONE}, s_r2)
                    coef = c * e * w
                    for b, u in av.items():
                        for q, y in hv.items():
                            key = ix(b, q, x)
                            out[key] = out.get(key, ZERO) + coef * u * y
        return {k: v for k, v in out.items() if v}

    return SparseMatrix.from_function(N, N, column)


def takesaki_takai_checks(A: ModuleAlgebra, sigma: Mapping, delta: Mapping) -> ValidationReport:
    """``gamma_A`` is a unital, multiplicative, bijective and H-linear map, checked on basis elements."""
    h = A.host
    B = double_crossed_product(A)
    K = stabilisation(A)
    G = takesaki_takai(A, sigma, delta)
    N = B.dim
    rep = ValidationReport(f"gamma for {A.name}")
    add = rep.checks.append
    add(Check("bijective", G.rank() == N))
    img = [G.cols[i] for i in range(N)]
    bad = next(((i, j) for i, j in product(range(N), repeat=2)
                if G.apply(B._mt.get((i, j), {})) != K.mul(img[i], img[j])), None)
    add(Check("multiplicative", bad is None, bad))
    if B.unit is not None:
        add(Check("unital", G.apply(B.unit) == K.unit))
    bad = next(((x, i) for x, i in product(range(h.dim), range(N))
                if G.apply(B.act_basis(x, i)) != K.act({x: ONE}, img[i])), None)
    add(Check("H-equivariant", bad is None, bad))
    return rep
