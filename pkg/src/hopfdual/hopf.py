"""Finite quantum groups as structure tensors.

Elements are sparse vectors ``dict[int, Fraction]`` in the chosen basis.
Functionals on ``H`` are elements of the dual quantum group, which uses
the dual basis, so the two share one representation.

Conventions::

    e_i e_j = sum_k mult[i,j,k] e_k
    Delta(e_i) = sum_{j,k} comult[i,j,k] e_j (x) e_k
    S(e_j) = sum_i antipode[i][j] e_i      (column j is S(e_j))
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Mapping, Sequence

from .exact import (ONE, ZERO, NoSolution, SparseTensor, inverse, kernel, rank,
                    sparse_rank, to_scalar, vaccum, vdot, vscale, vsparse)
from .groups import FiniteGroup


class NoIntegral(ValueError):
    """The space of left invariant functionals is not one-dimensional."""


Vec = dict


@dataclass
class Check:
    name: str
    ok: bool
    witness: tuple | None = None
    detail: str = ""

    def __str__(self):
        s = f"{'PASS' if self.ok else 'FAIL'} {self.name}"
        if not self.ok and self.witness is not None:
            s += f" at {self.witness}"
        if self.detail:
            s += f" ({self.detail})"
        return s


@dataclass
class ValidationReport:
    name: str
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __str__(self):
        return "\n".join([f"{self.name}: {'valid' if self.ok else 'INVALID'}"] + ["  " + str(c) for c in self.checks])


def _col_dicts(mat: Sequence[Sequence]) -> list[dict]:
    n = len(mat)
    return [{i: mat[i][j] for i in range(n) if mat[i][j]} for j in range(n)]


class FiniteQuantumGroup:
    """A finite-dimensional Hopf algebra with faithful integrals.

    Missing integrals are solved for on first access; ``psi`` is always
    ``phi`` composed with the antipode unless given explicitly.
    """

    def __init__(self, name: str, basis: Sequence[str], unit, mult: SparseTensor,
                 comult: SparseTensor, counit, antipode, left_integral=None,
                 right_integral=None, grouplike_candidates=None, character_candidates=None):
        self.name = name
        self.basis = tuple(basis)
        n = self.dim = len(self.basis)
        self.unit_vec = vsparse(unit)
        self.mult = mult
        self.comult = comult
        self.counit = [to_scalar(x) for x in counit]
        self.antipode = [[to_scalar(x) for x in row] for row in antipode]
        if mult.shape != (n, n, n) or comult.shape != (n, n, n):
            raise ValueError(f"structure tensors must have shape {(n, n, n)}")
        if len(self.counit) != n or len(self.antipode) != n or any(len(r) != n for r in self.antipode):
            raise ValueError("counit or antipode has the wrong size")
        self._phi = vsparse(left_integral) if left_integral is not None else None
        self._psi = vsparse(right_integral) if right_integral is not None else None
        self.grouplike_candidates = [vsparse(v) for v in grouplike_candidates or []]
        self.character_candidates = [vsparse(v) for v in character_candidates or []]
        self._dual = None

        mt: dict = {}
        for (i, j, k), c in mult.entries.items():
            mt.setdefault((i, j), {})[k] = c
        self._mt = mt
        ct: list = [[] for _ in range(n)]
        for (i, j, k), c in comult.entries.items():
            ct[i].append((j, k, c))
        self._ct = ct
        self._S = _col_dicts(self.antipode)
        self._comul_cache: dict = {}

    def __repr__(self):
        return f"FiniteQuantumGroup({self.name!r}, dim={self.dim})"

    # -- basic element operations ------------------------------------------

    def basis_vec(self, i: int) -> Vec:
        return {i: ONE}

    @property
    def one(self) -> Vec:
        return dict(self.unit_vec)

    def mul(self, x: Mapping, y: Mapping) -> Vec:
        out: dict = {}
        mt = self._mt
        for i, a in x.items():
            for j, b in y.items():
                row = mt.get((i, j))
                if row:
                    vaccum(out, row, a * b)
        return out

    def mul_many(self, *xs: Mapping) -> Vec:
        out = self.one
        for x in xs:
            out = self.mul(out, x)
        return out

    def comul(self, x: Mapping) -> dict:
        """Delta(x) as ``{(j, k): c}``."""
        out: dict = {}
        for i, a in x.items():
            for j, k, c in self._ct[i]:
                key = (j, k)
                v = out.get(key, ZERO) + a * c
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    def comul_basis(self, i: int, legs: int) -> dict:
        """Iterated coproduct of ``e_i`` with ``legs`` tensor factors.

        Left-nested: apply Delta to the first factor repeatedly.
        """
        key = (i, legs)
        hit = self._comul_cache.get(key)
        if hit is not None:
            return hit
        if legs == 1:
            out = {(i,): ONE}
        else:
            prev = self.comul_basis(i, legs - 1)
            out = {}
            for idx, c in prev.items():
                for j, k, d in self._ct[idx[0]]:
                    nk = (j, k) + idx[1:]
                    v = out.get(nk, ZERO) + c * d
                    if v:
                        out[nk] = v
                    else:
                        out.pop(nk, None)
        self._comul_cache[key] = out
        return out

    def comul_basis_right(self, i: int, legs: int) -> dict:
        """Right-nested iterated coproduct, for coassociativity checks."""
        if legs == 1:
            return {(i,): ONE}
        prev = self.comul_basis_right(i, legs - 1)
        out: dict = {}
        for idx, c in prev.items():
            for j, k, d in self._ct[idx[-1]]:
                nk = idx[:-1] + (j, k)
                out[nk] = out.get(nk, ZERO) + c * d
        return {k: v for k, v in out.items() if v}

    def comul_n(self, x: Mapping, legs: int) -> dict:
        out: dict = {}
        for i, a in x.items():
            for idx, c in self.comul_basis(i, legs).items():
                v = out.get(idx, ZERO) + a * c
                if v:
                    out[idx] = v
                else:
                    out.pop(idx, None)
        return out

    def eps(self, x: Mapping) -> Fraction:
        return sum((a * self.counit[i] for i, a in x.items()), ZERO)

    def S(self, x: Mapping) -> Vec:
        out: dict = {}
        for j, a in x.items():
            vaccum(out, self._S[j], a)
        return out

    @cached_property
    def antipode_inverse(self) -> list:
        return inverse(self.antipode)

    @cached_property
    def _Sinv(self) -> list:
        return _col_dicts(self.antipode_inverse)

    def Sinv(self, x: Mapping) -> Vec:
        out: dict = {}
        for j, a in x.items():
            vaccum(out, self._Sinv[j], a)
        return out

    def S_power(self, x: Mapping, k: int) -> Vec:
        for _ in range(abs(k)):
            x = self.S(x) if k > 0 else self.Sinv(x)
        return dict(x)

    def pair(self, f: Mapping, x: Mapping) -> Fraction:
        """Evaluate a functional (dual coordinates) on an element."""
        return vdot(f, x)

    # -- matrices ----------------------------------------------------------

    def matrix_of(self, fn) -> list:
        """Dense matrix of a linear map on H, column j = fn(e_j)."""
        n = self.dim
        cols = [fn({j: ONE}) for j in range(n)]
        return [[cols[j].get(i, ZERO) for j in range(n)] for i in range(n)]

    @cached_property
    def S2_matrix(self) -> list:
        return self.matrix_of(lambda x: self.S(self.S(x)))

    @property
    def is_involutive(self) -> bool:
        n = self.dim
        return all(self.S2_matrix[i][j] == (ONE if i == j else ZERO) for i in range(n) for j in range(n))

    @cached_property
    def is_commutative(self) -> bool:
        return all(self._mt.get((i, j), {}) == self._mt.get((j, i), {})
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    @cached_property
    def is_cocommutative(self) -> bool:
        for i in range(self.dim):
            d = self.comul({i: ONE})
            if any(d.get((k, j), ZERO) != c for (j, k), c in d.items()):
                return False
        return True

    # -- integrals ---------------------------------------------------------

    @property
    def phi(self) -> Vec:
        if self._phi is None:
            self._phi, psi = solve_integrals(self)
            if self._psi is None:
                self._psi = psi
        return self._phi

    @property
    def psi(self) -> Vec:
        if self._psi is None:
            self._psi = self.dual_vec_compose_S(self.phi)
        return self._psi

    def dual_vec_compose_S(self, f: Mapping) -> Vec:
        """Coordinates of the functional ``f o S``."""
        n = self.dim
        return {j: v for j in range(n) if (v := vdot(f, self._S[j]))}

    def dual_vec_compose_Sinv(self, f: Mapping) -> Vec:
        n = self.dim
        return {j: v for j in range(n) if (v := vdot(f, self._Sinv[j]))}

    # -- duality -----------------------------------------------------------

    def fourier(self, kind: str) -> list:
        """Matrix of F_l, F_r, G_l or G_r: column t is the functional in dual coordinates."""
        integral = self.phi if kind in ("Fl", "Fr") else self.psi
        left = kind in ("Fl", "Gl")
        n = self.dim
        m = [[ZERO] * n for _ in range(n)]
        for t in range(n):
            for r in range(n):
                prod_ = self._mt.get((r, t) if left else (t, r), {})
                m[r][t] = vdot(integral, prod_)
        return m

    def dual(self) -> "FiniteQuantumGroup":
        """The dual quantum group on the dual basis.

        Product is the transposed coproduct and vice versa; the integrals
        are normalized by phihat(G_r(t)) = eps(t) and psihat(F_l(t)) = eps(t).
        """
        if self._dual is not None:
            return self._dual
        n = self.dim
        mult = SparseTensor._trusted((n, n, n), {(a, b, i): c for (i, a, b), c in self.comult.entries.items()})
        comult = SparseTensor._trusted((n, n, n), {(i, j, k): c for (j, k, i), c in self.mult.entries.items()})
        anti = [[self.antipode[j][i] for j in range(n)] for i in range(n)]
        unit = [self.counit[i] for i in range(n)]
        counit = [self.unit_vec.get(i, ZERO) for i in range(n)]
        phihat = solve_transposed(self.fourier("Gr"), self.counit)
        psihat = solve_transposed(self.fourier("Fl"), self.counit)
        basis = [b[:-1] if b.endswith("*") else b + "*" for b in self.basis]
        name = self.name[:-1] if self.name.endswith("^") else self.name + "^"
        d = FiniteQuantumGroup(name, basis, unit, mult, comult, counit, anti,
                               left_integral=phihat, right_integral=psihat,
                               grouplike_candidates=self.character_candidates,
                               character_candidates=self.grouplike_candidates)
        d._dual = self
        self._dual = d
        return d

    # -- convolution actions -----------------------------------------------

    def lhit(self, a: Mapping, x: Mapping) -> Vec:
        """``a -> x = x(1) a(x(2))`` for a functional ``a`` on this algebra."""
        out: dict = {}
        for i, c in x.items():
            for j, k, d in self._ct[i]:
                v = a.get(k)
                if v:
                    out[j] = out.get(j, ZERO) + c * d * v
        return {k: v for k, v in out.items() if v}

    def rhit(self, x: Mapping, a: Mapping) -> Vec:
        """``x <- a = a(x(1)) x(2)``."""
        out: dict = {}
        for i, c in x.items():
            for j, k, d in self._ct[i]:
                v = a.get(j)
                if v:
                    out[k] = out.get(k, ZERO) + c * d * v
        return {k: v for k, v in out.items() if v}

    # -- special elements --------------------------------------------------

    def is_grouplike(self, x: Mapping) -> bool:
        if self.eps(x) != 1:
            return False
        d = self.comul(x)
        outer = {(i, j): a * b for i, a in x.items() for j, b in x.items()}
        if d != outer:
            return False
        return self.mul(self.S(x), x) == self.one

    def is_character(self, f: Mapping) -> bool:
        if self.pair(f, self.unit_vec) != 1:
            return False
        n = self.dim
        for i in range(n):
            for j in range(n):
                if self.pair(f, self._mt.get((i, j), {})) != f.get(i, ZERO) * f.get(j, ZERO):
                    return False
        return True

    def grouplike_inverse(self, x: Mapping) -> Vec:
        return self.S(x)

    def character_inverse(self, f: Mapping) -> Vec:
        return self.dual_vec_compose_S(f)

    def modular_element(self) -> Vec:
        """The element nu with (phi (x) id)Delta(t) = phi(t) nu for all t."""
        phi = self.phi
        n = self.dim
        t0 = next(i for i in range(n) if phi.get(i))
        nu = vscale(self._left_slice(phi, t0), ONE / phi[t0])
        for t in range(n):
            if self._left_slice(phi, t) != vscale(nu, phi.get(t, ZERO)):
                raise NoSolution("modular element equation is inconsistent")
        return nu

    def _left_slice(self, f: Mapping, i: int) -> Vec:
        out: dict = {}
        for j, k, d in self._ct[i]:
            v = f.get(j)
            if v:
                out[k] = out.get(k, ZERO) + d * v
        return {k: v for k, v in out.items() if v}

    def _right_slice(self, f: Mapping, i: int) -> Vec:
        out: dict = {}
        for j, k, d in self._ct[i]:
            v = f.get(k)
            if v:
                out[j] = out.get(j, ZERO) + d * v
        return {k: v for k, v in out.items() if v}

    # -- comparison --------------------------------------------------------

    def same_structure(self, other: "FiniteQuantumGroup") -> bool:
        return (self.dim == other.dim and self.mult == other.mult and self.comult == other.comult
                and self.counit == other.counit and self.antipode == other.antipode
                and self.unit_vec == other.unit_vec and self.phi == other.phi and self.psi == other.psi)

    def to_json(self) -> dict:
        from .io import group_to_json
        return group_to_json(self)


def solve_transposed(m: Sequence[Sequence], rhs: Sequence) -> Vec:
    """Solve x^T m = rhs for x."""
    from .exact import solve_linear, transpose
    return vsparse(solve_linear(transpose(m), rhs))


def solve_integrals(h: FiniteQuantumGroup) -> tuple[Vec, Vec]:
    """Left integral by a linear solve, normalized to first nonzero coordinate 1.

    Returns ``(phi, psi)`` with ``psi = phi o S``.
    """
    n = h.dim
    rows = []
    for t in range(n):
        # (id (x) phi)Delta(e_t) - phi(e_t) 1 = 0, coordinate k
        coeffs = [[ZERO] * n for _ in range(n)]
        for j, k, d in h._ct[t]:
            coeffs[j][k] += d
        for k, u in h.unit_vec.items():
            coeffs[k][t] -= u
        rows.extend(coeffs)
    ker = kernel(rows, n)
    if len(ker) != 1:
        raise NoIntegral(f"left invariant functionals form a {len(ker)}-dimensional space")
    v = ker[0]
    lead = next(x for x in v if x)
    phi = vsparse([x / lead for x in v])
    return phi, h.dual_vec_compose_S(phi)


# ---------------------------------------------------------------------------
# validation

def validate(h: FiniteQuantumGroup) -> ValidationReport:
    """Check every Hopf axiom exactly; failures carry a witness index tuple."""
    rep = ValidationReport(h.name)
    n = h.dim
    E = [{i: ONE} for i in range(n)]
    add = rep.checks.append

    def first(name, it, detail=""):
        for w in it:
            add(Check(name, False, w, detail))
            return False
        add(Check(name, True))
        return True

    first("associativity", ((i, j, k) for i, j, k in product(range(n), repeat=3)
                            if h.mul(h.mul(E[i], E[j]), E[k]) != h.mul(E[i], h.mul(E[j], E[k]))))
    first("unit", (i for i in range(n) if h.mul(h.one, E[i]) != E[i] or h.mul(E[i], h.one) != E[i]))
    first("coassociativity", (i for i in range(n) if h.comul_basis(i, 3) != h.comul_basis_right(i, 3)))

    def counit_fail(i):
        left: dict = {}
        right: dict = {}
        for j, k, d in h._ct[i]:
            vaccum(left, {k: ONE}, d * h.counit[j])
            vaccum(right, {j: ONE}, d * h.counit[k])
        return left != E[i] or right != E[i]
    first("counit", (i for i in range(n) if counit_fail(i)))

    def tensor_mul(x: dict, y: dict) -> dict:
        out: dict = {}
        for (a, b), c in x.items():
            for (p, q), d in y.items():
                l, r = h._mt.get((a, p)), h._mt.get((b, q))
                if not l or not r:
                    continue
                for u, e in l.items():
                    for v, f in r.items():
                        key = (u, v)
                        out[key] = out.get(key, ZERO) + c * d * e * f
        return {k: v for k, v in out.items() if v}

    comuls = [h.comul(E[i]) for i in range(n)]
    first("comultiplication is multiplicative",
          ((i, j) for i, j in product(range(n), repeat=2)
           if h.comul(h.mul(E[i], E[j])) != tensor_mul(comuls[i], comuls[j])))
    first("comultiplication is unital",
          [()] if h.comul(h.one) != {(i, j): a * b for i, a in h.unit_vec.items() for j, b in h.unit_vec.items()} else [])
    first("counit is multiplicative",
          ((i, j) for i, j in product(range(n), repeat=2) if h.eps(h.mul(E[i], E[j])) != h.counit[i] * h.counit[j]))
    first("counit is unital", [()] if h.eps(h.one) != 1 else [])

    def antipode_fail(i):
        lhs: dict = {}
        rhs: dict = {}
        for j, k, d in h._ct[i]:
            vaccum(lhs, h.mul(h.S(E[j]), E[k]), d)
            vaccum(rhs, h.mul(E[j], h.S(E[k])), d)
        target = vscale(h.one, h.counit[i])
        return lhs != target or rhs != target
    antipode_ok = first("antipode laws", (i for i in range(n) if antipode_fail(i)))

    inv_ok = rank(h.antipode) == n
    add(Check("antipode invertible", inv_ok))
    first("antipode reverses products",
          ((i, j) for i, j in product(range(n), repeat=2)
           if h.S(h.mul(E[i], E[j])) != h.mul(h.S(E[j]), h.S(E[i]))))

    def coanti_fail(i):
        lhs: dict = {}
        for (j, k), c in h.comul(h.S(E[i])).items():
            lhs[(j, k)] = c
        rhs: dict = {}
        for j, k, d in h._ct[i]:
            for a, x in h._S[k].items():
                for b, y in h._S[j].items():
                    rhs[(a, b)] = rhs.get((a, b), ZERO) + d * x * y
        return lhs != {k: v for k, v in rhs.items() if v}
    first("antipode reverses coproducts", (i for i in range(n) if coanti_fail(i)))

    for gname, fn in (("gamma_l", lambda s, t: _tmul_left(h, comuls[s], t, left=True)),
                      ("gamma_r", lambda s, t: _tmul_left(h, comuls[s], t, left=False)),
                      ("rho_l", lambda s, t: _tmul_right(h, s, comuls[t], left=True)),
                      ("rho_r", lambda s, t: _tmul_right(h, s, comuls[t], left=False))):
        cols = [{a * n + b: c for (a, b), c in fn(s, t).items()} for s in range(n) for t in range(n)]
        rk = sparse_rank(cols)
        add(Check(f"Galois map {gname} invertible", rk == n * n, None if rk == n * n else (rk,)))

    try:
        phi, psi = h.phi, h.psi
    except NoIntegral as exc:
        add(Check("left integral exists", False, None, str(exc)))
        return rep
    first("left invariance of phi",
          (t for t in range(n) if h._right_slice(phi, t) != vscale(h.unit_vec, phi.get(t, ZERO))))
    P = [[vdot(phi, h._mt.get((i, j), {})) for j in range(n)] for i in range(n)]
    add(Check("phi faithful", rank(P) == n))
    first("right invariance of psi",
          (t for t in range(n) if h._left_slice(psi, t) != vscale(h.unit_vec, psi.get(t, ZERO))))
    if inv_ok:
        add(Check("psi = phi o S", psi == h.dual_vec_compose_S(phi)))
    return rep


def _tmul_left(h, d: dict, t: int, left: bool) -> dict:
    # Delta(s)(t (x) 1) or Delta(s)(1 (x) t)
    out: dict = {}
    for (a, b), c in d.items():
        if left:
            for u, e in h._mt.get((a, t), {}).items():
                out[(u, b)] = out.get((u, b), ZERO) + c * e
        else:
            for v, e in h._mt.get((b, t), {}).items():
                out[(a, v)] = out.get((a, v), ZERO) + c * e
    return {k: v for k, v in out.items() if v}


def _tmul_right(h, s: int, d: dict, left: bool) -> dict:
    # (s (x) 1)Delta(t) or (1 (x) s)Delta(t)
    out: dict = {}
    for (a, b), c in d.items():
        if left:
            for u, e in h._mt.get((s, a), {}).items():
                out[(u, b)] = out.get((u, b), ZERO) + c * e
        else:
            for v, e in h._mt.get((s, b), {}).items():
                out[(a, v)] = out.get((a, v), ZERO) + c * e
    return {k: v for k, v in out.items() if v}


def dual_normalization_checks(h: FiniteQuantumGroup) -> list[Check]:
    """phihat(G_r(t)) = eps(t) and psihat(F_l(t)) = eps(t) for every basis t."""
    d = h.dual()
    Gr, Fl = h.fourier("Gr"), h.fourier("Fl")
    n = h.dim
    out = []
    for name, integral, m in (("phihat(G_r(t)) = eps(t)", d.phi, Gr), ("psihat(F_l(t)) = eps(t)", d.psi, Fl)):
        bad = [t for t in range(n) if sum((integral.get(r, ZERO) * m[r][t] for r in range(n)), ZERO) != h.counit[t]]
        out.append(Check(name, not bad, (bad[0],) if bad else None))
    return out


def fourier_checks(h: FiniteQuantumGroup) -> list[Check]:
    """All four Fourier maps are invertible with a common image."""
    mats = {k: h.fourier(k) for k in ("Fl", "Fr", "Gl", "Gr")}
    out = [Check(f"{k} invertible", rank(m) == h.dim) for k, m in mats.items()]
    return out


def bidual_check(h: FiniteQuantumGroup) -> Check:
    """Dualizing twice reproduces every structure tensor and both integrals."""
    d = h.dual()
    fresh = FiniteQuantumGroup(d.name, d.basis, [d.unit_vec.get(i, ZERO) for i in range(d.dim)],
                               d.mult, d.comult, d.counit, d.antipode, d.phi, d.psi)
    dd = fresh.dual()
    fields = {
        "mult": dd.mult == h.mult, "comult": dd.comult == h.comult, "counit": dd.counit == h.counit,
        "antipode": dd.antipode == h.antipode, "unit": dd.unit_vec == h.unit_vec,
        "phi": dd.phi == h.phi, "psi": dd.psi == h.psi,
    }
    bad = [k for k, ok in fields.items() if not ok]
    return Check("biduality", not bad, tuple(bad) or None)


# ---------------------------------------------------------------------------
# constructors

def _tensor(n: int, entries: Mapping) -> SparseTensor:
    return SparseTensor((n, n, n), entries)


def group_algebra(g: FiniteGroup) -> FiniteQuantumGroup:
    """C[G]: basis the group elements, every basis element group-like."""
    n = g.order
    mult = _tensor(n, {(a, b, g.mul(a, b)): 1 for a in range(n) for b in range(n)})
    comult = _tensor(n, {(a, a, a): 1 for a in range(n)})
    anti = [[ONE if i == g.inverse(j) else ZERO for j in range(n)] for i in range(n)]
    unit = [ONE if i == g.identity else ZERO for i in range(n)]
    grouplikes = [[ONE if i == a else ZERO for i in range(n)] for a in range(n)]
    from .groups import sign_characters
    chars = [[Fraction(x) for x in chi] for chi in sign_characters(g)]
    return FiniteQuantumGroup(f"C[{g.name}]", g.elements, unit, mult, comult, [1] * n, anti,
                              grouplike_candidates=grouplikes, character_candidates=chars)


def function_algebra(g: FiniteGroup) -> FiniteQuantumGroup:
    """C^G: basis the point masses, pointwise product."""
    n = g.order
    mult = _tensor(n, {(a, a, a): 1 for a in range(n)})
    comult = _tensor(n, {(g.mul(a, b), a, b): 1 for a in range(n) for b in range(n)})
    anti = [[ONE if i == g.inverse(j) else ZERO for j in range(n)] for i in range(n)]
    counit = [ONE if i == g.identity else ZERO for i in range(n)]
    from .groups import sign_characters
    grouplikes = [[Fraction(x) for x in chi] for chi in sign_characters(g)]
    chars = [[ONE if i == a else ZERO for i in range(n)] for a in range(n)]
    return FiniteQuantumGroup(f"C^{g.name}", [f"d_{x}" for x in g.elements], [1] * n, mult, comult,
                              counit, anti, grouplike_candidates=grouplikes, character_candidates=chars)


def sweedler_h4() -> FiniteQuantumGroup:
    """The four-dimensional Sweedler algebra with basis 1, g, x, gx."""
    # g^2 = 1, x^2 = 0, xg = -gx
    one, g, x, gx = range(4)
    mult = {}
    table = {
        (g, g): {one: 1}, (g, x): {gx: 1}, (g, gx): {x: 1},
        (x, g): {gx: -1}, (x, x): {}, (x, gx): {},
        (gx, g): {x: -1}, (gx, x): {}, (gx, gx): {},
    }
    for a in range(4):
        mult[(one, a, a)] = 1
        if a != one:
            mult[(a, one, a)] = 1
    for (a, b), res in table.items():
        for c, v in res.items():
            mult[(a, b, c)] = v
    comult = {
        (one, one, one): 1, (g, g, g): 1,
        (x, x, one): 1, (x, g, x): 1,
        (gx, gx, g): 1, (gx, one, gx): 1,
    }
    anti = [[ZERO] * 4 for _ in range(4)]
    anti[one][one] = ONE
    anti[g][g] = ONE
    anti[gx][x] = -ONE
    anti[x][gx] = ONE
    return FiniteQuantumGroup(
        "H4", ["1", "g", "x", "gx"], [1, 0, 0, 0], _tensor(4, mult), _tensor(4, comult),
        [1, 1, 0, 0], anti,
        grouplike_candidates=[[1, 0, 0, 0], [0, 1, 0, 0]],
        character_candidates=[[1, 1, 0, 0], [1, -1, 0, 0]])


def trivial_group() -> FiniteQuantumGroup:
    t1 = SparseTensor((1, 1, 1), {(0, 0, 0): 1})
    return FiniteQuantumGroup("C", ["1"], [1], t1, t1, [1], [[1]],
                              grouplike_candidates=[[1]], character_candidates=[[1]])


def tensor_product(h1: FiniteQuantumGroup, h2: FiniteQuantumGroup) -> FiniteQuantumGroup:
    """Componentwise structure on H1 (x) H2; index (i, j) -> i*n2 + j."""
    n1, n2 = h1.dim, h2.dim
    n = n1 * n2

    def ix(i, j):
        return i * n2 + j

    mult = {}
    for (a, b, c), x in h1.mult.entries.items():
        for (p, q, r), y in h2.mult.entries.items():
            mult[(ix(a, p), ix(b, q), ix(c, r))] = x * y
    comult = {}
    for (a, b, c), x in h1.comult.entries.items():
        for (p, q, r), y in h2.comult.entries.items():
            comult[(ix(a, p), ix(b, q), ix(c, r))] = x * y
    anti = [[h1.antipode[a][b] * h2.antipode[p][q] for b in range(n1) for q in range(n2)]
            for a in range(n1) for p in range(n2)]
    unit = [h1.unit_vec.get(a, ZERO) * h2.unit_vec.get(p, ZERO) for a in range(n1) for p in range(n2)]
    counit = [h1.counit[a] * h2.counit[p] for a in range(n1) for p in range(n2)]
    phi = [h1.phi.get(a, ZERO) * h2.phi.get(p, ZERO) for a in range(n1) for p in range(n2)]
    psi = [h1.psi.get(a, ZERO) * h2.psi.get(p, ZERO) for a in range(n1) for p in range(n2)]
    basis = [f"{x}(x){y}" for x in h1.basis for y in h2.basis]
    return FiniteQuantumGroup(f"{h1.name}(x){h2.name}", basis, unit, _tensor(n, mult), _tensor(n, comult),
                              counit, anti, left_integral=phi, right_integral=psi)


def tensor_vec(x: Mapping, y: Mapping, n2: int) -> Vec:
    return {i * n2 + j: a * b for i, a in x.items() for j, b in y.items()}
