"""Exact linear algebra over a :class:`~awb.field.Field`.

Vectors are sparse ``dict[int, scalar]`` with no stored zeros.  Matrices
keep one such dict per row.  Everything here is exact; rank decisions are
never approximate.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .field import Field

Vec = dict


# -- sparse vector helpers --------------------------------------------------

def vec_from_dense(F: Field, values: Sequence) -> Vec:
    out = {}
    for i, x in enumerate(values):
        x = F(x)
        if x != 0:
            out[i] = x
    return out


def vec_to_dense(v: Vec, n: int) -> list:
    out = [0] * n
    for i, x in v.items():
        out[i] = x
    return out


def unit(i: int) -> Vec:
    return {i: 1}


def axpy(F: Field, acc: Vec, c, x: Vec) -> Vec:
    """In place ``acc += c * x``; returns ``acc``."""
    if c == 0:
        return acc
    norm = F.norm
    for i, xi in x.items():
        s = norm(acc.get(i, 0) + c * xi)
        if s == 0:
            acc.pop(i, None)
        else:
            acc[i] = s
    return acc


def vadd(F: Field, x: Vec, y: Vec) -> Vec:
    return axpy(F, dict(x), 1, y)


def vsub(F: Field, x: Vec, y: Vec) -> Vec:
    return axpy(F, dict(x), -1, y)


def vscale(F: Field, c, x: Vec) -> Vec:
    if c == 0:
        return {}
    norm = F.norm
    out = {}
    for i, xi in x.items():
        s = norm(c * xi)
        if s != 0:
            out[i] = s
    return out


def vneg(F: Field, x: Vec) -> Vec:
    return vscale(F, -1, x)


def lincomb(F: Field, terms: Iterable) -> Vec:
    """Sum of ``c * v`` over ``(c, v)`` pairs."""
    acc = {}
    for c, v in terms:
        axpy(F, acc, c, v)
    return acc


def shift(v: Vec, offset: int) -> Vec:
    return {i + offset: x for i, x in v.items()}


def restrict(v: Vec, start: int, stop: int) -> Vec:
    return {i - start: x for i, x in v.items() if start <= i < stop}


def vkey(v: Vec) -> tuple:
    return tuple(sorted(v.items()))


# -- matrices ---------------------------------------------------------------

class Matrix:
    """An exact ``nrows x ncols`` matrix stored as sparse rows."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        rows = list(rows)
        if len(rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        for r in rows:
            if r and (min(r) < 0 or max(r) >= ncols):
                raise ValueError("row entry outside column range")
        self.rows = rows

    @classmethod
    def from_dense(cls, F: Field, entries: Sequence[Sequence], ncols=None) -> "Matrix":
        entries = list(entries)
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        for r in entries:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        return cls(F, len(entries), ncols, [vec_from_dense(F, r) for r in entries])

    @classmethod
    def from_columns(cls, F: Field, nrows: int, columns: Sequence[Vec]) -> "Matrix":
        rows = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, x in col.items():
                rows[i][j] = x
        return cls(F, nrows, len(columns), rows)

    @classmethod
    def identity(cls, F: Field, n: int) -> "Matrix":
        return cls(F, n, n, [{i: 1} for i in range(n)])

    @classmethod
    def zero(cls, F: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(F, nrows, ncols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def to_dense(self) -> list:
        return [vec_to_dense(r, self.ncols) for r in self.rows]

    def columns(self) -> list:
        cols = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                cols[j][i] = x
        return cols

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows, self.columns())

    def apply(self, v: Vec) -> Vec:
        """Matrix times column vector."""
        F = self.field
        norm = F.norm
        out = {}
        for i, r in enumerate(self.rows):
            if not r:
                continue
            s = 0
            if len(r) < len(v):
                for j, x in r.items():
                    y = v.get(j)
                    if y is not None:
                        s += x * y
            else:
                for j, y in v.items():
                    x = r.get(j)
                    if x is not None:
                        s += x * y
            s = norm(s)
            if s != 0:
                out[i] = s
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        out = []
        for r in self.rows:
            acc = {}
            for k, x in r.items():
                axpy(F, acc, x, other.rows[k])
            out.append(acc)
        return Matrix(F, self.nrows, other.ncols, out)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, nnz={sum(map(len, self.rows))})"

    def is_zero(self) -> bool:
        return not any(self.rows)

    def rank(self) -> int:
        return len(rref(self)[1])


# -- row reduction ----------------------------------------------------------

class RowReducer:
    """Incremental Gauss-Jordan elimination keeping a reduced echelon basis.

    Every stored row has a leading 1 at its pivot and zeros in every other
    pivot column, so the final basis is the canonical RREF of the span no
    matter the insertion order.
    """

    def __init__(self, F: Field, ncols: int):
        self.field = F
        self.ncols = ncols
        self.pivot_rows: dict[int, Vec] = {}

    def __len__(self):
        return len(self.pivot_rows)

    def reduce(self, v: Vec) -> Vec:
        """Residual of ``v`` modulo the current span (a fresh dict)."""
        F = self.field
        v = dict(v)
        for c in [c for c in v if c in self.pivot_rows]:
            x = v.get(c)
            if x:
                axpy(F, v, -x, self.pivot_rows[c])
        return v

    def add(self, v: Vec) -> bool:
        """Insert ``v``; return True when it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        F = self.field
        p = min(r)
        r = vscale(F, F.inv(r[p]), r)
        for row in self.pivot_rows.values():
            x = row.get(p)
            if x:
                axpy(F, row, -x, r)
        self.pivot_rows[p] = r
        return True

    def add_all(self, vectors: Iterable[Vec]) -> "RowReducer":
        for v in vectors:
            self.add(v)
        return self

    @property
    def pivots(self) -> list:
        return sorted(self.pivot_rows)

    def basis(self) -> list:
        return [self.pivot_rows[p] for p in self.pivots]


def rref(m: Matrix):
    """Canonical reduced row echelon form of ``m`` and its pivot columns."""
    red = RowReducer(m.field, m.ncols).add_all(m.rows)
    pivots = red.pivots
    rows = [dict(r) for r in red.basis()]
    return Matrix(m.field, len(rows), m.ncols, rows), pivots


# -- subspaces --------------------------------------------------------------

class Subspace:
    """A subspace of ``K^n`` held by its canonical RREF basis.

    Two subspaces are equal as sets exactly when their bases coincide.
    """

    __slots__ = ("field", "ambient_dim", "basis", "pivots", "_pivot_index")

    def __init__(self, field: Field, ambient_dim: int, basis, pivots):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = tuple(basis)
        self.pivots = tuple(pivots)
        self._pivot_index = dict(zip(self.pivots, self.basis))

    @classmethod
    def span(cls, F: Field, n: int, vectors: Iterable[Vec]) -> "Subspace":
        red = RowReducer(F, n)
        for v in vectors:
            if v and max(v) >= n:
                raise ValueError(f"vector outside ambient dimension {n}")
            red.add(v)
        return cls._from_reducer(red)

    @classmethod
    def _from_reducer(cls, red: RowReducer) -> "Subspace":
        piv = red.pivots
        return cls(red.field, red.ncols, [dict(red.pivot_rows[p]) for p in piv], piv)

    @classmethod
    def zero(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n, [], [])

    @classmethod
    def full(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n, [{i: 1} for i in range(n)], range(n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def matrix(self) -> Matrix:
        return Matrix(self.field, self.dim, self.ambient_dim, [dict(b) for b in self.basis])

    def reduce(self, v: Vec) -> Vec:
        F = self.field
        v = dict(v)
        idx = self._pivot_index
        for c in [c for c in v if c in idx]:
            x = v.get(c)
            if x:
                axpy(F, v, -x, idx[c])
        return v

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def __contains__(self, v: Vec) -> bool:
        return self.contains(v)

    def coordinates(self, v: Vec) -> Vec:
        """Coordinates of ``v`` in this basis; raises if ``v`` is outside."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return {k: v[p] for k, p in enumerate(self.pivots) if v.get(p, 0) != 0}

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(b) for b in self.basis)

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.ambient_dim, self.basis + other.basis)

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersection(other)

    def intersection(self, other: "Subspace") -> "Subspace":
        # Zassenhaus: rows (a | a) and (b | 0); rows with empty left half span a ∩ b.
        self._check(other)
        n = self.ambient_dim
        red = RowReducer(self.field, 2 * n)
        for a in self.basis:
            red.add({**a, **shift(a, n)})
        for b in other.basis:
            red.add(dict(b))
        inter = [restrict(r, n, 2 * n) for p, r in red.pivot_rows.items() if p >= n]
        return Subspace.span(self.field, n, inter)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.pivots == other.pivots
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, tuple(vkey(b) for b in self.basis)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def to_dense(self) -> list:
        return [vec_to_dense(b, self.ambient_dim) for b in self.basis]


def subspace_ops(a: Subspace, b: Subspace, queries=()):
    """Sum, intersection and membership of each query vector in ``a``."""
    return a + b, a & b, [a.contains(q) for q in queries]


def kernel_basis(m: Matrix) -> Subspace:
    """Null space of ``m`` as a subspace of ``K^ncols``."""
    F = m.field
    red = RowReducer(F, m.ncols).add_all(m.rows)
    pivots = set(red.pivot_rows)
    vectors = []
    for f in range(m.ncols):
        if f in pivots:
            continue
        v = {f: 1}
        for p, row in red.pivot_rows.items():
            x = row.get(f)
            if x:
                v[p] = F.norm(-x)
        vectors.append(v)
    return Subspace.span(F, m.ncols, vectors)


def image_basis(m: Matrix) -> Subspace:
    """Column space of ``m`` as a subspace of ``K^nrows``."""
    return Subspace.span(m.field, m.nrows, m.columns())


# -- quotients --------------------------------------------------------------

class QuotientSpace:
    """Canonical quotient ``K^n / S``.

    The quotient basis is indexed by the non-pivot coordinates of ``S`` in
    increasing order.
    """

    __slots__ = ("field", "ambient_dim", "relations", "free", "_free_index")

    def __init__(self, n: int, s: Subspace):
        if s.ambient_dim != n:
            raise ValueError("relation subspace lives in the wrong ambient space")
        self.field = s.field
        self.ambient_dim = n
        self.relations = s
        pivots = set(s.pivots)
        self.free = tuple(c for c in range(n) if c not in pivots)
        self._free_index = {c: k for k, c in enumerate(self.free)}

    @property
    def dim(self) -> int:
        return len(self.free)

    def project(self, v: Vec) -> Vec:
        r = self.relations.reduce(v)
        idx = self._free_index
        return {idx[c]: x for c, x in r.items()}

    def lift(self, q: Vec) -> Vec:
        return {self.free[k]: x for k, x in q.items()}

    @property
    def projection(self) -> Matrix:
        cols = [self.project({j: 1}) for j in range(self.ambient_dim)]
        return Matrix.from_columns(self.field, self.dim, cols)

    @property
    def section(self) -> Matrix:
        cols = [self.lift({k: 1}) for k in range(self.dim)]
        return Matrix.from_columns(self.field, self.ambient_dim, cols)


def quotient_space(n: int, s: Subspace) -> QuotientSpace:
    return QuotientSpace(n, s)


# -- solving ----------------------------------------------------------------

class Preimage:
    """Right inverse of a linear map on its image.

    ``columns`` are the images of the basis vectors of the source.  With
    ``reverse=True`` elimination prefers the highest-index source columns,
    which gives a second, generally different, section.
    """

    def __init__(self, F: Field, target_dim: int, columns: Sequence[Vec], reverse=False):
        self.field = F
        self.source_dim = len(columns)
        self.target_dim = target_dim
        n = self.source_dim
        # rows (f(e_j) | e_j); the echelon form tracks which source combination
        # produces each image vector.  Reversing the slot order of the e_j
        # changes which kernel coordinates get pinned to zero.
        self._slot = [n - 1 - j for j in range(n)] if reverse else list(range(n))
        self._red = RowReducer(F, target_dim + n)
        for j in range(n):
            self._red.add({**columns[j], target_dim + self._slot[j]: 1})
        self._source_of = {s: j for j, s in enumerate(self._slot)}
        self.rank = sum(1 for p in self._red.pivot_rows if p < target_dim)

    def solve(self, y: Vec):
        """Some ``x`` with ``f(x) = y``, or None if ``y`` is not in the image."""
        F = self.field
        t = self.target_dim
        r = dict(y)
        x = {}
        for p in sorted(self._red.pivot_rows):
            if p >= t:
                break
            c = r.get(p)
            if c:
                row = self._red.pivot_rows[p]
                axpy(F, r, -c, {k: v for k, v in row.items() if k < t})
                axpy(F, x, c, {self._source_of[k - t]: v for k, v in row.items() if k >= t})
        if r:
            return None
        return x
