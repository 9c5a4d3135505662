"""The equivariant X-complex, its honest subquotients, and the Green-Julg identifications."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from .exact import ONE, ZERO, SparseMatrix, reduce_against, sparse_echelon, vaccum
from .halgebra import ModuleAlgebra
from .hopf import Check, FiniteQuantumGroup, ValidationReport


def row_kernel(rows: Sequence[Mapping], ncols: int) -> list[dict]:
    """Kernel of the matrix with the given sparse rows."""
    ech = sparse_echelon(rows)
    out = []
    for f in range(ncols):
        if f in ech:
            continue
        v = {f: ONE}
        for p, row in ech.items():
            c = row.get(f)
            if c:
                v[p] = -c
        out.append(v)
    return out


class Quotient:
    """``V / span(rel)`` with representatives the non-pivot coordinates of the reduced relations."""

    def __init__(self, dim: int, relations: Sequence[Mapping]):
        self.ambient = dim
        self.rows = sparse_echelon(relations)
        self.reps = [i for i in range(dim) if i not in self.rows]
        self.pos = {i: k for k, i in enumerate(self.reps)}

    @property
    def dim(self) -> int:
        return len(self.reps)

    def project(self, v: Mapping) -> dict:
        w = reduce_against(v, self.rows)
        return {self.pos[i]: c for i, c in w.items() if c}

    def q(self) -> SparseMatrix:
        return SparseMatrix.from_function(self.dim, self.ambient, lambda i: self.project({i: ONE}))

    def lift(self) -> SparseMatrix:
        return SparseMatrix(self.ambient, self.dim, [{i: ONE} for i in self.reps])

    def induced(self, m: SparseMatrix) -> SparseMatrix:
        """``q m lift`` for an endomorphism preserving the relations."""
        return SparseMatrix(self.dim, self.dim, [self.project(m.cols[i]) for i in self.reps])


@dataclass
class XComplex:
    """``X^0 = Omega^0`` and ``X^1 = Omega^1 / b(Omega^2)`` with ``del0 = q d`` and ``del1 = b lift``."""
    forms: object
    quotient: Quotient
    del0: SparseMatrix
    del1: SparseMatrix
    T0: SparseMatrix
    T1: SparseMatrix

    @property
    def dims(self) -> tuple[int, int]:
        return self.del0.ncols, self.quotient.dim

    def paracomplex_check(self) -> ValidationReport:
        d0, d1 = self.dims
        rep = ValidationReport("X-complex paracomplex law")
        add = rep.checks.append
        rank_b = len(self.quotient.rows)
        add(Check("rank-nullity", d1 + rank_b == self.forms.dim(1)))
        lhs0 = self.del1 @ self.del0
        rhs0 = SparseMatrix.identity(d0) - self.T0
        add(Check("del1 del0 = id - T on X0", lhs0 == rhs0, lhs0.first_difference(rhs0)))
        lhs1 = self.del0 @ self.del1
        rhs1 = SparseMatrix.identity(d1) - self.T1
        add(Check("del0 del1 = id - T on X1", lhs1 == rhs1, lhs1.first_difference(rhs1)))
        return rep

    def induced(self, n: int, m: SparseMatrix) -> SparseMatrix:
        """An endomorphism of ``Omega^n`` pushed to ``X^n``."""
        return m if n == 0 else self.quotient.induced(m)


def build_x(forms) -> XComplex:
    """X-complex of a form complex (either picture) built to degree 2 at least."""
    if forms.N < 2:
        raise ValueError("the forms must be built to degree 2")
    b2 = forms.b(2)
    quo = Quotient(forms.dim(1), b2.cols)
    q = quo.q()
    del0 = q @ forms.d(0)
    del1 = forms.b(1) @ quo.lift()
    return XComplex(forms, quo, del0, del1, forms.T(0), quo.induced(forms.T(1)))


@dataclass
class Subquotient:
    """A two-term honest complex cut out of an X-complex, with its inclusion or projection."""
    kind: str
    dims: tuple
    del0: SparseMatrix
    del1: SparseMatrix
    T: tuple
    maps: tuple            # inclusion (into X) or projection (from X), per degree
    extra: dict = field(default_factory=dict)

    def honest_check(self) -> ValidationReport:
        rep = ValidationReport(f"{self.kind} subquotient")
        add = rep.checks.append
        for n in (0, 1):
            add(Check(f"T = id in degree {n}", self.T[n] == SparseMatrix.identity(self.dims[n])))
        add(Check("del1 del0 = 0", (self.del1 @ self.del0).is_zero()))
        add(Check("del0 del1 = 0", (self.del0 @ self.del1).is_zero()))
        return rep

    def homology(self) -> tuple[int, int]:
        r0, r1 = self.del0.rank(), self.del1.rank()
        return self.dims[0] - r0 - r1, self.dims[1] - r1 - r0


def _coords(vectors: Sequence[Mapping], basis_rows: dict, pivots: list) -> SparseMatrix:
    """Coordinates of vectors lying in the span of an echelon basis."""
    cols = []
    for v in vectors:
        col = {}
        w = dict(v)
        for k, p in enumerate(pivots):
            c = w.get(p)
            if c:
                col[k] = c
                vaccum(w, basis_rows[p], -c)
        if any(w.values()):
            raise ValueError("vector leaves the subspace")
        cols.append(col)
    return SparseMatrix(len(pivots), len(vectors), cols)


def invariant_part(x: XComplex, actions: Sequence[Sequence[SparseMatrix]], counit: Sequence) -> Subquotient:
    """Vectors fixed by every action, ``a_i v = eps(e_i) v``, in both degrees.

    ``actions[n][i]`` is the matrix of basis element ``i`` on ``X^n``.
    """
    dims = x.dims
    bases, rows_list, pivs = [], [], []
    for n in (0, 1):
        rows = []
        for i, a in enumerate(actions[n]):
            m = a - SparseMatrix.identity(dims[n]).scale(counit[i]) if counit[i] else a
            rows.extend(m.transpose().cols)
        ker = row_kernel(rows, dims[n])
        ech = sparse_echelon(ker)
        piv = sorted(ech)
        bases.append([ech[p] for p in piv])
        rows_list.append(ech)
        pivs.append(piv)
    inc = [SparseMatrix(dims[n], len(bases[n]), bases[n]) for n in (0, 1)]
    del0 = _coords([x.del0.apply(v) for v in bases[0]], rows_list[1], pivs[1])
    del1 = _coords([x.del1.apply(v) for v in bases[1]], rows_list[0], pivs[0])
    T0 = _coords([x.T0.apply(v) for v in bases[0]], rows_list[0], pivs[0])
    T1 = _coords([x.T1.apply(v) for v in bases[1]], rows_list[1], pivs[1])
    return Subquotient("invariant", (len(bases[0]), len(bases[1])), del0, del1, (T0, T1), tuple(inc))


def twisted_coinvariants(x: XComplex, actions: Sequence[Sequence[SparseMatrix]], chi: Mapping) -> Subquotient:
    """Quotient by ``t.m - chi(t) m`` in both degrees."""
    dims = x.dims
    quos = []
    for n in (0, 1):
        rel = []
        for i, a in enumerate(actions[n]):
            c = chi.get(i, ZERO)
            m = a - SparseMatrix.identity(dims[n]).scale(c) if c else a
            rel.extend(m.cols)
        quos.append(Quotient(dims[n], rel))
    q0, q1 = quos
    del0 = SparseMatrix(q1.dim, q0.dim, [q1.project(x.del0.cols[i]) for i in q0.reps])
    del1 = SparseMatrix(q0.dim, q1.dim, [q0.project(x.del1.cols[i]) for i in q1.reps])
    T0 = q0.induced(x.T0)
    T1 = q1.induced(x.T1)
    return Subquotient("coinvariant", (q0.dim, q1.dim), del0, del1, (T0, T1), (q0.q(), q1.q()),
                       {"quotients": quos})


# ---------------------------------------------------------------------------
# the nonequivariant X-complex, coded without any quantum group

class PlainForms:
    """``Omega^{<=N}(B)`` for a unital algebra ``B`` with the ordinary Hochschild and Connes operators."""

    def __init__(self, B: ModuleAlgebra, N: int = 2):
        self.B = B
        self.N = N
        self.d = B.dim
        self.u = B.dim
        self._mt = B.plus._mt

    def a0_dim(self, n):
        return self.d if n == 0 else self.d + 1

    def dim(self, n: int) -> int:
        return self.a0_dim(n) * self.d ** n

    def encode(self, n, tup):
        i = tup[0]
        for a in tup[1:]:
            i = i * self.d + a
        return i

    def decode(self, n, i):
        rest = []
        for _ in range(n):
            i, a = divmod(i, self.d)
            rest.append(a)
        return (i,) + tuple(reversed(rest))

    def _mat(self, src, dst, fn):
        return SparseMatrix.from_function(self.dim(dst), self.dim(src),
                                          lambda i: {self.encode(dst, k): v for k, v in fn(self.decode(src, i)).items() if v})

    def d_op(self, n):
        def fn(tup):
            if n > 0 and tup[0] == self.u:
                return {}
            return {(self.u, *tup): ONE}
        return self._mat(n, n + 1, fn)

    def b(self, n):
        """``b(w da) = (-1)^{|w|} (w a - a w)`` expanded into the usual faces."""
        def fn(tup):
            out: dict = {}
            for j in range(n):
                sign = -ONE if j % 2 else ONE
                for c, v in self._mt.get((tup[j], tup[j + 1]), {}).items():
                    key = (*tup[:j], c, *tup[j + 2:])
                    out[key] = out.get(key, ZERO) + sign * v
            sign = -ONE if n % 2 else ONE
            for c, v in self._mt.get((tup[n], tup[0]), {}).items():
                key = (c, *tup[1:n])
                out[key] = out.get(key, ZERO) + sign * v
            return out
        return self._mat(n, n - 1, fn)


@dataclass
class PlainX:
    forms: PlainForms
    quotient: Quotient
    del0: SparseMatrix
    del1: SparseMatrix

    @property
    def dims(self):
        return self.del0.ncols, self.quotient.dim


def build_plain_x(B: ModuleAlgebra) -> PlainX:
    pf = PlainForms(B, 2)
    quo = Quotient(pf.dim(1), pf.b(2).cols)
    return PlainX(pf, quo, quo.q() @ pf.d_op(0), pf.b(1) @ quo.lift())


# ---------------------------------------------------------------------------
# chain-level Green-Julg identifications

def _outer_map(x: XComplex, vec: Mapping, plain: PlainX) -> tuple[SparseMatrix, SparseMatrix]:
    """``w -> v (x) w`` from the plain X-complex into the equivariant one, per degree."""
    sp = x.forms.sp
    m0 = SparseMatrix.from_function(sp.dim(0), plain.forms.dim(0),
                                    lambda i: {sp.encode(0, (t, i)): c for t, c in vec.items()})

    def lift1(i):
        tup = plain.forms.decode(1, i)
        return {sp.encode(1, (t, *tup)): c for t, c in vec.items()}
    raw1 = SparseMatrix.from_function(sp.dim(1), plain.forms.dim(1), lift1)
    return m0, raw1


def green_julg_invariants(yd, plain: PlainX | None = None) -> ValidationReport:
    """Invariants of the X-complex under left multiplication on the outer factor.

    ``yd`` is the YD form complex over ``K`` of an algebra ``B``; the dual of
    ``K`` acts by left multiplication. The invariant part is compared with
    ``Lambda (x) X(B)`` where ``Lambda`` is the integral of the dual.
    """
    x = build_x(yd)
    k = yd.h
    kd = k.dual()
    B = yd.sp.A
    plain = plain or build_plain_x(B)
    rep = ValidationReport(f"invariant part over {k.name}")
    add = rep.checks.append
    acts = [[yd.act_hd(0, f) for f in range(k.dim)],
            [x.quotient.induced(yd.act_hd(1, f)) for f in range(k.dim)]]
    sub = invariant_part(x, acts, kd.counit)
    rep.checks.extend(sub.honest_check().checks)
    lam = k.phi  # the Haar integral of K, an element of the outer factor
    m0, raw1 = _outer_map(x, lam, plain)
    # well defined on the quotient, then the induced degree-one map
    add(Check("Lambda (x) - sends b(Omega^2) into b(Omega^2)",
              (x.quotient.q() @ raw1 @ plain.forms.b(2)).is_zero()))
    m1 = x.quotient.q() @ raw1 @ plain.quotient.lift()
    # exact subspace equality: invariants == Lambda (x) everything
    for n, (m, dim_plain) in enumerate(((m0, plain.dims[0]), (m1, plain.dims[1]))):
        img = sparse_echelon(m.cols)
        inv = sparse_echelon(sub.maps[n].cols)
        same = len(img) == dim_plain and len(img) == len(inv) and all(not reduce_against(v, img)
                                                                     for v in inv.values())
        add(Check(f"invariants are Lambda (x) w in degree {n}", same,
                  None if same else (len(img), len(inv), dim_plain)))
    add(Check("del0 compatible", x.del0 @ m0 == m1 @ plain.del0))
    add(Check("del1 compatible", x.del1 @ m1 == m0 @ plain.del1))
    rep.extra = {"invariant dims": sub.dims, "plain dims": plain.dims, "homology": sub.homology()}
    return rep


def green_julg_coinvariants(yd, chi_inv: Mapping, plain: PlainX | None = None) -> ValidationReport:
    """Twisted coinvariants ``t.m - chi_inv(t) m`` against ``X(B)`` via ``alpha`` and ``beta``.

    ``alpha(t (x) w) = chi_inv(t) w`` and ``beta(w) = 1 (x) w``.
    """
    x = build_x(yd)
    k = yd.h
    kd = k.dual()
    sp = yd.sp
    plain = plain or build_plain_x(sp.A)
    rep = ValidationReport(f"twisted coinvariants over {k.name}")
    add = rep.checks.append
    acts = [[yd.act_hd(0, f) for f in range(k.dim)],
            [x.quotient.induced(yd.act_hd(1, f)) for f in range(k.dim)]]
    sub = twisted_coinvariants(x, acts, chi_inv)
    rep.checks.extend(sub.honest_check().checks)
    q0, q1 = sub.extra["quotients"]

    def alpha_raw(n):
        def col(i):
            t, *rest = sp.decode(n, i)
            c = chi_inv.get(t, ZERO)
            return {plain.forms.encode(n, tuple(rest)): c} if c else {}
        return SparseMatrix.from_function(plain.forms.dim(n), sp.dim(n), col)
    a0_raw, a1_raw = alpha_raw(0), alpha_raw(1)
    # alpha on Omega: well defined on the relations of X and of the coinvariants
    add(Check("alpha kills the twisted relations in degree 0",
              all((a0_raw @ (a - SparseMatrix.identity(sp.dim(0)).scale(chi_inv.get(i, ZERO)))).is_zero()
                  for i, a in enumerate(acts[0]))))
    add(Check("alpha sends b(Omega^2) into b(Omega^2)",
              (plain.quotient.q() @ a1_raw @ yd.b(2)).is_zero()))
    alpha0 = a0_raw @ q0.lift()
    alpha1 = plain.quotient.q() @ a1_raw @ x.quotient.lift() @ q1.lift()
    add(Check("alpha kills the twisted relations in degree 1",
              all((plain.quotient.q() @ a1_raw @ x.quotient.lift() @ r).is_zero()
                  for r in [a - SparseMatrix.identity(x.dims[1]).scale(chi_inv.get(i, ZERO))
                            for i, a in enumerate(acts[1])])))
    outer_one = kd.one
    b0_raw, b1_raw = _outer_map(x, outer_one, plain)
    beta0 = q0.q() @ b0_raw
    beta1 = q1.q() @ x.quotient.q() @ b1_raw @ plain.quotient.lift()
    add(Check("alpha beta = id in degree 0", alpha0 @ beta0 == SparseMatrix.identity(plain.dims[0])))
    add(Check("alpha beta = id in degree 1", alpha1 @ beta1 == SparseMatrix.identity(plain.dims[1])))
    add(Check("beta alpha = id in degree 0", beta0 @ alpha0 == SparseMatrix.identity(q0.dim)))
    add(Check("beta alpha = id in degree 1", beta1 @ alpha1 == SparseMatrix.identity(q1.dim)))
    add(Check("alpha chain map (del0)", alpha1 @ sub.del0 == plain.del0 @ alpha0))
    add(Check("alpha chain map (del1)", alpha0 @ sub.del1 == plain.del1 @ alpha1))
    add(Check("beta chain map (del0)", beta1 @ plain.del0 == sub.del0 @ beta0))
    add(Check("beta chain map (del1)", beta0 @ plain.del1 == sub.del1 @ beta1))
    rep.extra = {"coinvariant dims": sub.dims, "plain dims": plain.dims, "homology": sub.homology()}
    return rep
