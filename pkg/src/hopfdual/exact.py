"""Exact rational linear algebra: scalars, sparse tensors and matrices.

Everything here works over :class:`fractions.Fraction`.  Sparse vectors are
plain ``dict[int, Fraction]`` without stored zeros; the helpers ``vadd``,
``vscale`` and friends keep that invariant.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

Scalar = Fraction
SparseVec = dict  # dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)

# fill ratio above which contraction switches to dense object arrays
DENSE_FILL = 0.25
DENSE_MAX_SIZE = 200_000


class NoSolution(ValueError):
    """Raised by :func:`solve_linear` for an inconsistent system."""


class ShapeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# scalars

def to_scalar(x) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    return Fraction(x)


def format_scalar(x) -> str:
    x = to_scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# sparse vectors

def vadd(u: Mapping, v: Mapping, c=ONE) -> dict:
    """Return u + c*v."""
    out = dict(u)
    for k, x in v.items():
        y = out.get(k, ZERO) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vaccum(acc: dict, v: Mapping, c=ONE) -> None:
    """In place: acc += c*v."""
    if not c:
        return
    for k, x in v.items():
        y = acc.get(k, ZERO) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)


def vscale(v: Mapping, c) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vdot(u: Mapping, v: Mapping) -> Fraction:
    if len(u) > len(v):
        u, v = v, u
    s = ZERO
    for k, x in u.items():
        y = v.get(k)
        if y is not None:
            s += x * y
    return s


def vbasis(i: int) -> dict:
    return {i: ONE}


def vdense(v: Mapping, n: int) -> list:
    out = [ZERO] * n
    for k, x in v.items():
        out[k] = x
    return out


def vsparse(xs) -> dict:
    """Sparse vector from a dense sequence, or a cleaned copy of a sparse one."""
    if isinstance(xs, Mapping):
        pairs = ((int(i), to_scalar(x)) for i, x in xs.items())
    else:
        pairs = ((i, to_scalar(x)) for i, x in enumerate(xs))
    return {i: x for i, x in pairs if x}


def vouter(u: Mapping, v: Mapping, stride: int) -> dict:
    """Sparse vector of u (x) v with index i*stride + j."""
    return {i * stride + j: x * y for i, x in u.items() for j, y in v.items()}


# ---------------------------------------------------------------------------
# dense matrices (lists of lists of Fractions)

def as_matrix(m) -> list:
    return [[to_scalar(x) for x in row] for row in m]


def identity(n: int) -> list:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    if not a:
        return []
    if len(a[0]) != len(b):
        raise ShapeError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x?")
    bt = list(zip(*b)) if b else []
    return [[sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in a]


def transpose(a: Sequence[Sequence]) -> list:
    return [list(r) for r in zip(*a)]


def rref(m) -> tuple[list, list, int]:
    """Reduced row-echelon form.

    Returns ``(R, pivots, rank)`` where ``pivots`` lists the pivot column of
    each nonzero row of ``R``.
    """
    a = as_matrix(m)
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        if piv != 1:
            a[r] = [x / piv for x in a[r]]
        row = a[r]
        nz = [j for j in range(c, ncols) if row[j]]
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f:
                    ai = a[i]
                    for j in nz:
                        ai[j] -= f * row[j]
        pivots.append(c)
        r += 1
    return a, pivots, r


def rank(m) -> int:
    return rref(m)[2]


def solve_linear(a, b) -> list:
    """Solve ``a x = b`` exactly.

    Free variables are set to zero.  Raises :class:`NoSolution` when the
    system is inconsistent.
    """
    a = as_matrix(a)
    b = [to_scalar(x) for x in b]
    if len(a) != len(b):
        raise ShapeError("row count of a must match length of b")
    ncols = len(a[0]) if a else 0
    aug = [row + [bi] for row, bi in zip(a, b)]
    r, pivots, rk = rref(aug)
    if ncols in pivots:
        raise NoSolution("inconsistent linear system")
    x = [ZERO] * ncols
    for i, c in enumerate(pivots):
        x[c] = r[i][ncols]
    return x


def kernel(m, ncols: int | None = None) -> list:
    """Basis of the right kernel, one vector per free column."""
    a = as_matrix(m)
    if ncols is None:
        ncols = len(a[0]) if a else 0
    if not a:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    r, pivots, _ = rref(a)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, c in enumerate(pivots):
            v[c] = -r[i][f]
        basis.append(v)
    return basis


def inverse(m) -> list:
    a = as_matrix(m)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ShapeError("inverse of a non-square matrix")
    aug = [row + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    r, pivots, rk = rref(aug)
    if rk < n or pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in r[:n]]


# ---------------------------------------------------------------------------
# sparse tensors

class SparseTensor:
    """Immutable multi-index tensor with exact entries.

    ``entries`` maps index tuples to nonzero Fractions.
    """

    __slots__ = ("shape", "_entries")

    def __init__(self, shape: Sequence[int], entries: Mapping[tuple, object] | None = None):
        self.shape = tuple(int(d) for d in shape)
        if any(d <= 0 for d in self.shape):
            raise ShapeError(f"dimensions must be positive, got {self.shape}")
        clean = {}
        for idx, x in (entries or {}).items():
            idx = tuple(idx)
            if len(idx) != len(self.shape) or any(not 0 <= i < d for i, d in zip(idx, self.shape)):
                raise ShapeError(f"index {idx} outside shape {self.shape}")
            x = to_scalar(x)
            if x:
                clean[idx] = x
        self._entries = clean

    @classmethod
    def _trusted(cls, shape, entries) -> "SparseTensor":
        t = object.__new__(cls)
        t.shape = tuple(shape)
        t._entries = entries
        return t

    @property
    def entries(self) -> Mapping[tuple, Fraction]:
        return self._entries

    @property
    def rank(self) -> int:
        return len(self.shape)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape, dtype=object)) if self.shape else 1

    @property
    def nnz(self) -> int:
        return len(self._entries)

    @property
    def density(self) -> float:
        return self.nnz / self.size

    def __getitem__(self, idx) -> Fraction:
        if not isinstance(idx, tuple):
            idx = (idx,)
        return self._entries.get(idx, ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.shape, frozenset(self._entries.items())))

    def __repr__(self):
        return f"SparseTensor(shape={self.shape}, nnz={self.nnz})"

    def is_zero(self) -> bool:
        return not self._entries

    @classmethod
    def zeros(cls, shape) -> "SparseTensor":
        return cls(shape)

    @classmethod
    def from_dense(cls, arr) -> "SparseTensor":
        a = np.asarray(arr, dtype=object)
        entries = {}
        for idx in np.ndindex(*a.shape):
            x = a[idx]
            if x:
                entries[idx] = to_scalar(x)
        return cls(a.shape, entries)

    def to_dense(self) -> np.ndarray:
        a = np.full(self.shape, ZERO, dtype=object)
        for idx, x in self._entries.items():
            a[idx] = x
        return a

    def __add__(self, other: "SparseTensor") -> "SparseTensor":
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} vs {other.shape}")
        out = dict(self._entries)
        for k, x in other._entries.items():
            y = out.get(k, ZERO) + x
            if y:
                out[k] = y
            else:
                out.pop(k, None)
        return SparseTensor._trusted(self.shape, out)

    def __neg__(self) -> "SparseTensor":
        return self.scale(-ONE)

    def __sub__(self, other: "SparseTensor") -> "SparseTensor":
        return self + (-other)

    def scale(self, c) -> "SparseTensor":
        c = to_scalar(c)
        if not c:
            return SparseTensor._trusted(self.shape, {})
        return SparseTensor._trusted(self.shape, {k: c * x for k, x in self._entries.items()})

    def transpose(self, perm: Sequence[int]) -> "SparseTensor":
        perm = tuple(perm)
        if sorted(perm) != list(range(self.rank)):
            raise ShapeError(f"bad permutation {perm}")
        shape = tuple(self.shape[p] for p in perm)
        return SparseTensor._trusted(
            shape, {tuple(k[p] for p in perm): x for k, x in self._entries.items()})

    def contract(self, other: "SparseTensor", axes: Sequence[tuple[int, int]]) -> "SparseTensor":
        return contract(self, other, axes)

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "entries": [[*k, format_scalar(x)] for k, x in sorted(self._entries.items())],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "SparseTensor":
        shape = obj["shape"]
        entries = {}
        for row in obj["entries"]:
            *idx, x = row
            entries[tuple(int(i) for i in idx)] = to_scalar(x)
        return cls(shape, entries)


def contract(t1: SparseTensor, t2: SparseTensor, axes: Sequence[tuple[int, int]]) -> SparseTensor:
    """Contract paired axes of ``t1`` and ``t2``.

    The output carries the unpaired axes of ``t1`` followed by those of ``t2``.
    """
    axes = [(int(a), int(b)) for a, b in axes]
    a1 = [a for a, _ in axes]
    a2 = [b for _, b in axes]
    if len(set(a1)) != len(a1) or len(set(a2)) != len(a2):
        raise ShapeError("an axis is paired twice")
    for a, b in axes:
        if not (0 <= a < t1.rank and 0 <= b < t2.rank):
            raise ShapeError(f"axis pair {(a, b)} out of range")
        if t1.shape[a] != t2.shape[b]:
            raise ShapeError(f"paired axes differ: {t1.shape[a]} vs {t2.shape[b]}")
    free1 = [i for i in range(t1.rank) if i not in a1]
    free2 = [i for i in range(t2.rank) if i not in a2]
    shape = tuple(t1.shape[i] for i in free1) + tuple(t2.shape[i] for i in free2)

    if (t1.density > DENSE_FILL and t2.density > DENSE_FILL
            and t1.size <= DENSE_MAX_SIZE and t2.size <= DENSE_MAX_SIZE
            and int(np.prod(shape, dtype=object) if shape else 1) <= DENSE_MAX_SIZE):
        d = np.tensordot(t1.to_dense(), t2.to_dense(), axes=(a1, a2)) if axes else \
            np.multiply.outer(t1.to_dense(), t2.to_dense())
        if not shape:
            d = np.array(d, dtype=object)
        return SparseTensor._trusted(shape, {
            idx: to_scalar(x) for idx, x in np.ndenumerate(d) if x})

    index = defaultdict(list)
    for k, x in t2.entries.items():
        index[tuple(k[b] for b in a2)].append((tuple(k[i] for i in free2), x))
    out: dict = {}
    get = out.get
    for k, x in t1.entries.items():
        matches = index.get(tuple(k[a] for a in a1))
        if not matches:
            continue
        head = tuple(k[i] for i in free1)
        for tail, y in matches:
            key = head + tail
            out[key] = get(key, ZERO) + x * y
    return SparseTensor._trusted(shape, {k: x for k, x in out.items() if x})


# ---------------------------------------------------------------------------
# column-sparse matrices for large linear maps

class SparseMatrix:
    """Linear map stored column by column as sparse vectors.

    ``cols[j]`` is the image of the j-th source basis vector.
    """

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: Sequence[Mapping[int, Fraction]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [{} for _ in range(ncols)]
        if len(cols) != ncols:
            raise ShapeError(f"expected {ncols} columns, got {len(cols)}")
        self.cols = tuple(cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @classmethod
    def from_function(cls, nrows: int, ncols: int, fn: Callable[[int], Mapping]) -> "SparseMatrix":
        cols = []
        for j in range(ncols):
            v = fn(j)
            cols.append({k: x for k, x in v.items() if x})
        return cls(nrows, ncols, cols)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, [{j: ONE} for j in range(n)])

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols)

    @classmethod
    def from_dense(cls, m) -> "SparseMatrix":
        m = as_matrix(m)
        nrows = len(m)
        ncols = len(m[0]) if nrows else 0
        return cls(nrows, ncols, [{i: m[i][j] for i in range(nrows) if m[i][j]} for j in range(ncols)])

    def to_dense(self) -> list:
        out = [[ZERO] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def to_tensor(self) -> SparseTensor:
        return SparseTensor._trusted(
            (self.nrows, self.ncols),
            {(i, j): x for j, col in enumerate(self.cols) for i, x in col.items()})

    def apply(self, v: Mapping[int, Fraction]) -> dict:
        out: dict = {}
        for j, c in v.items():
            vaccum(out, self.cols[j], c)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot compose {self.shape} with {other.shape}")
        return SparseMatrix(self.nrows, other.ncols, [self.apply(c) for c in other.cols])

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} vs {other.shape}")
        return SparseMatrix(self.nrows, self.ncols, [vadd(a, b) for a, b in zip(self.cols, other.cols)])

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} vs {other.shape}")
        return SparseMatrix(self.nrows, self.ncols,
                            [vadd(a, b, -ONE) for a, b in zip(self.cols, other.cols)])

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-ONE)

    def scale(self, c) -> "SparseMatrix":
        c = to_scalar(c)
        return SparseMatrix(self.nrows, self.ncols, [vscale(col, c) for col in self.cols])

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.cols, other.cols))

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.cols)

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def transpose(self) -> "SparseMatrix":
        cols = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                cols[i][j] = x
        return SparseMatrix(self.ncols, self.nrows, cols)

    def rank(self) -> int:
        return sparse_rank(self.cols)

    def inverse(self) -> "SparseMatrix":
        if self.nrows != self.ncols:
            raise ShapeError("inverse of a non-square matrix")
        return SparseMatrix.from_dense(inverse(self.to_dense()))

    def first_difference(self, other: "SparseMatrix") -> int | None:
        """Index of the first column where ``self`` and ``other`` differ."""
        for j, (a, b) in enumerate(zip(self.cols, other.cols)):
            if a != b:
                return j
        return None

    def kron_identity(self, n: int) -> "SparseMatrix":
        """``self (x) id_n`` with index convention i*n + k."""
        cols = []
        for j in range(self.ncols):
            col = self.cols[j]
            for k in range(n):
                cols.append({i * n + k: x for i, x in col.items()})
        return SparseMatrix(self.nrows * n, self.ncols * n, cols)

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def sparse_echelon(vectors: Iterable[Mapping[int, Fraction]]) -> dict:
    """Incremental elimination; returns ``{pivot: reduced row}``.

    Each stored row has coefficient 1 at its pivot, and no other stored row
    has a nonzero entry at that pivot.
    """
    rows: dict[int, dict] = {}
    for v in vectors:
        w = reduce_against(v, rows)
        if not w:
            continue
        p = min(w)
        c = w[p]
        w = {k: x / c for k, x in w.items()}
        for q, row in rows.items():
            f = row.get(p)
            if f:
                vaccum(row, w, -f)
        rows[p] = w
    return rows


def reduce_against(v: Mapping[int, Fraction], rows: Mapping[int, Mapping]) -> dict:
    """Remove from ``v`` every pivot coordinate of a reduced echelon system."""
    w = dict(v)
    for p in sorted(set(w) & set(rows)):
        f = w.get(p)
        if f:
            vaccum(w, rows[p], -f)
    # pivots may be reintroduced only at larger indices; sweep until stable
    while True:
        hit = [p for p in w if p in rows]
        if not hit:
            return w
        for p in sorted(hit):
            f = w.get(p)
            if f:
                vaccum(w, rows[p], -f)


def sparse_rank(vectors: Iterable[Mapping[int, Fraction]]) -> int:
    return len(sparse_echelon(vectors))


def sparse_kernel(m: SparseMatrix) -> list[dict]:
    """Basis of the kernel of a sparse matrix, as sparse vectors."""
    return [vsparse(v) for v in kernel(m.to_dense(), m.ncols)]


def in_span(v: Mapping[int, Fraction], rows: Mapping[int, Mapping]) -> bool:
    return not reduce_against(v, rows)
