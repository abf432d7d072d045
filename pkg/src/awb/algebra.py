"""Finite-dimensional algebras with bracket given by structure constants.

An algebra with bracket (AWB) is an associative algebra with a bilinear
bracket satisfying ``[ab, c] = [a, c] b + a [b, c]``.  A :class:`FiniteAwb`
stores both operations as tables ``table[i][j] = e_i op e_j`` of sparse
vectors.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .errors import PreconditionError, ValidationReport, VerificationError, Witness
from .field import Field
from .linalg import (Matrix, Preimage, QuotientSpace, RowReducer, Subspace, Vec, axpy,
                     image_basis, kernel_basis, shift, vec_from_dense, vec_to_dense, vsub)

Q = Field(0)


def bilinear(F: Field, table, x: Vec, y: Vec) -> Vec:
    """Expand ``x op y`` through ``table[i][j]``."""
    if len(x) == 1 and len(y) == 1:
        (i, xi), = x.items()
        (j, yj), = y.items()
        t = table[i][j]
        if xi == 1 and yj == 1:
            return dict(t)
        c = F.norm(xi * yj)
        return {k: F.norm(c * v) for k, v in t.items()} if c else {}
    acc = {}
    for i, xi in x.items():
        row = table[i]
        for j, yj in y.items():
            t = row[j]
            if t:
                axpy(F, acc, F.norm(xi * yj), t)
    return acc


def _sparse_table(F: Field, n: int, dense) -> list:
    if dense is None:
        return [[{} for _ in range(n)] for _ in range(n)]
    if len(dense) != n or any(len(r) != n for r in dense):
        raise ValueError(f"structure tensor must be {n}x{n}x{n}")
    out = []
    for r in dense:
        row = []
        for v in r:
            if isinstance(v, dict):
                row.append({k: F(x) for k, x in v.items() if F(x) != 0})
            else:
                if len(v) != n:
                    raise ValueError(f"structure tensor must be {n}x{n}x{n}")
                row.append(vec_from_dense(F, v))
        out.append(row)
    return out


class FiniteAwb:
    """An AWB of dimension ``dim`` over ``field``.

    ``product`` and ``bracket`` may be dense ``n x n x n`` nested lists or
    ``n x n`` tables of sparse vectors.  Axioms are enforced unless
    ``check=False`` (used for deliberately broken fixtures).
    """

    def __init__(self, field: Field, dim: int, product=None, bracket=None,
                 name: str = "", check: bool = True):
        self.field = field
        self.dim = dim
        self.mul = _sparse_table(field, dim, product)
        self.br = _sparse_table(field, dim, bracket)
        self.name = name
        if check:
            report = validate_awb(self)
            if not report.valid:
                w = report.witnesses[0]
                raise VerificationError(
                    f"{name or 'algebra'} is not an AWB: {w.axiom} fails at {w.indices}", report)

    def __repr__(self):
        return f"FiniteAwb({self.name!r}, dim={self.dim}, {self.field.name})"

    def element(self, coords: Sequence) -> Vec:
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return vec_from_dense(self.field, coords)

    def basis(self, i: int) -> Vec:
        return {i: 1}

    def times(self, x: Vec, y: Vec) -> Vec:
        return bilinear(self.field, self.mul, x, y)

    def bracket(self, x: Vec, y: Vec) -> Vec:
        return bilinear(self.field, self.br, x, y)

    def product_tensor(self) -> list:
        return [[vec_to_dense(v, self.dim) for v in row] for row in self.mul]

    def bracket_tensor(self) -> list:
        return [[vec_to_dense(v, self.dim) for v in row] for row in self.br]

    def is_abelian(self) -> bool:
        return not any(v for row in self.mul for v in row) and \
            not any(v for row in self.br for v in row)

    def has_zero_bracket(self) -> bool:
        return not any(v for row in self.br for v in row)

    def same_structure(self, other: "FiniteAwb") -> bool:
        return (self.field == other.field and self.dim == other.dim
                and self.mul == other.mul and self.br == other.br)


def evaluate(A: FiniteAwb, x: Sequence, y: Sequence, op: str = "product") -> list:
    """Dense ``x * y`` or ``[x, y]`` in ``A``."""
    if len(x) != A.dim or len(y) != A.dim:
        raise ValueError(f"elements must have {A.dim} coordinates")
    xv, yv = A.element(x), A.element(y)
    if op == "product":
        r = A.times(xv, yv)
    elif op == "bracket":
        r = A.bracket(xv, yv)
    else:
        raise ValueError(f"unknown operation {op!r}")
    return vec_to_dense(r, A.dim)


# -- axioms -----------------------------------------------------------------

def _associativity(F, mul, n, report, label="assoc"):
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = bilinear(F, mul, mul[i][j], {k: 1})
        rhs = bilinear(F, mul, {i: 1}, mul[j][k])
        report.checked += 1
        if lhs != rhs:
            report.witnesses.append(Witness(label, (i, j, k), lhs, rhs))


def validate_awb(A: FiniteAwb) -> ValidationReport:
    """Check associativity and ``[ab,c] = [a,c]b + a[b,c]`` on basis triples."""
    F, n, mul, br = A.field, A.dim, A.mul, A.br
    report = ValidationReport(subject=f"AWB {A.name}".strip())
    _associativity(F, mul, n, report)
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = bilinear(F, br, mul[i][j], {k: 1})
        rhs = bilinear(F, mul, br[i][k], {j: 1})
        axpy(F, rhs, 1, bilinear(F, mul, {i: 1}, br[j][k]))
        report.checked += 1
        if lhs != rhs:
            report.witnesses.append(Witness("awb_identity", (i, j, k), lhs, rhs))
    return report


def validate_associative(F: Field, product) -> ValidationReport:
    n = len(product)
    mul = _sparse_table(F, n, product)
    report = ValidationReport(subject="associative algebra")
    _associativity(F, mul, n, report)
    return report


def tautological(F: Field, product, name: str = "") -> FiniteAwb:
    """``T(A)``: the associative algebra with ``[a, b] = ab - ba``."""
    n = len(product)
    mul = _sparse_table(F, n, product)
    if not validate_associative(F, mul).valid:
        raise PreconditionError("product is not associative")
    br = [[vsub(F, mul[i][j], mul[j][i]) for j in range(n)] for i in range(n)]
    return FiniteAwb(F, n, mul, br, name=name or f"T(dim {n})")


def with_trivial_bracket(F: Field, product, name: str = "") -> FiniteAwb:
    """``I(A)``: the associative algebra with the zero bracket."""
    n = len(product)
    mul = _sparse_table(F, n, product)
    if not validate_associative(F, mul).valid:
        raise PreconditionError("product is not associative")
    return FiniteAwb(F, n, mul, None, name=name or f"I(dim {n})")


def abelian(F: Field, n: int, name: str = "") -> FiniteAwb:
    return FiniteAwb(F, n, None, None, name=name or f"abelian_{n}")


# -- standard associative algebras -------------------------------------------

def matrix_algebra_product(k: int) -> list:
    """Product tensor of ``M_k`` on matrix units ``e_ab`` in row-major order."""
    n = k * k
    out = [[[0] * n for _ in range(n)] for _ in range(n)]
    for a, b, c, d in itertools.product(range(k), repeat=4):
        if b == c:
            out[a * k + b][c * k + d][a * k + d] = 1
    return out


def dual_numbers_product() -> list:
    """``K[e]/(e^2)`` on the basis ``(1, e)``."""
    return [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]


def zero_product(n: int) -> list:
    return [[[0] * n for _ in range(n)] for _ in range(n)]


# -- subspaces inside an AWB --------------------------------------------------

def _products_with_basis(A: FiniteAwb, v: Vec):
    """All ``v e_j, e_j v, [v, e_j], [e_j, v]``."""
    F = A.field
    for j in range(A.dim):
        e = {j: 1}
        yield bilinear(F, A.mul, v, e)
        yield bilinear(F, A.mul, e, v)
        yield bilinear(F, A.br, v, e)
        yield bilinear(F, A.br, e, v)


def ideal_closure(A: FiniteAwb, seeds) -> Subspace:
    """Smallest two-sided ideal containing ``seeds`` (worklist fixpoint)."""
    red = RowReducer(A.field, A.dim)
    queue = []
    for s in seeds:
        if red.add(s):
            queue.append(s)
    while queue:
        v = queue.pop()
        for w in _products_with_basis(A, v):
            if w and red.add(w):
                queue.append(w)
    return Subspace._from_reducer(red)


def is_subalgebra(A: FiniteAwb, S: Subspace) -> bool:
    F = A.field
    for x, y in itertools.product(S.basis, repeat=2):
        if not S.contains(bilinear(F, A.mul, x, y)) or not S.contains(bilinear(F, A.br, x, y)):
            return False
    return True


def is_ideal(A: FiniteAwb, S: Subspace) -> bool:
    return all(S.contains(w) for v in S.basis for w in _products_with_basis(A, v))


def commutator_ideal(A: FiniteAwb, B: Subspace, C: Subspace) -> Subspace:
    """``[[B, C]]``: the ideal generated by ``bc, cb, [b,c], [c,b]``."""
    if not is_ideal(A, B) or not is_ideal(A, C):
        raise PreconditionError("commutator_ideal needs two-sided ideals")
    F = A.field
    seeds = []
    for b in B.basis:
        for c in C.basis:
            seeds += [bilinear(F, A.mul, b, c), bilinear(F, A.mul, c, b),
                      bilinear(F, A.br, b, c), bilinear(F, A.br, c, b)]
    return ideal_closure(A, seeds)


def derived(A: FiniteAwb) -> Subspace:
    full = Subspace.full(A.field, A.dim)
    return commutator_ideal(A, full, full)


def derived_and_perfect(A: FiniteAwb):
    d = derived(A)
    return d, d.dim == A.dim


def is_perfect(A: FiniteAwb) -> bool:
    return derived_and_perfect(A)[1]


def center(A: FiniteAwb) -> Subspace:
    """Kernel of ``x -> (x e_j, e_j x, [x, e_j], [e_j, x])_j``."""
    n = A.dim
    cols = []
    for i in range(n):
        col = {}
        for j in range(n):
            base = 4 * n * j
            for k, v in enumerate((A.mul[i][j], A.mul[j][i], A.br[i][j], A.br[j][i])):
                col.update(shift(v, base + k * n))
        cols.append(col)
    return kernel_basis(Matrix.from_columns(A.field, 4 * n * n, cols))


# -- morphisms --------------------------------------------------------------

class AwbMorphism:
    """Linear map ``source -> target`` given by the images of basis vectors."""

    def __init__(self, source: FiniteAwb, target: FiniteAwb, images, name: str = ""):
        images = list(images)
        if len(images) != source.dim:
            raise ValueError(f"need {source.dim} images, got {len(images)}")
        for v in images:
            if v and max(v) >= target.dim:
                raise ValueError("image outside target dimension")
        self.source = source
        self.target = target
        self.images = images
        self.name = name

    @classmethod
    def from_matrix(cls, source, target, m, name=""):
        """``m`` is dense ``target.dim x source.dim`` or a :class:`Matrix`."""
        if not isinstance(m, Matrix):
            m = Matrix.from_dense(source.field, m, ncols=source.dim) if target.dim else \
                Matrix(source.field, 0, source.dim)
        if m.shape != (target.dim, source.dim):
            raise ValueError(f"matrix shape {m.shape} != {(target.dim, source.dim)}")
        return cls(source, target, m.columns(), name)

    @classmethod
    def identity(cls, A: FiniteAwb) -> "AwbMorphism":
        return cls(A, A, [{i: 1} for i in range(A.dim)], name=f"id_{A.name}")

    @classmethod
    def zero(cls, A: FiniteAwb, B: FiniteAwb) -> "AwbMorphism":
        return cls(A, B, [{} for _ in range(A.dim)], name="0")

    @property
    def field(self):
        return self.source.field

    @property
    def matrix(self) -> Matrix:
        return Matrix.from_columns(self.field, self.target.dim, self.images)

    def __call__(self, v: Vec) -> Vec:
        acc = {}
        for j, x in v.items():
            axpy(self.field, acc, x, self.images[j])
        return acc

    def compose(self, inner: "AwbMorphism") -> "AwbMorphism":
        """``self ∘ inner``."""
        return AwbMorphism(inner.source, self.target, [self(v) for v in inner.images],
                           name=f"{self.name}∘{inner.name}")

    def kernel(self) -> Subspace:
        return kernel_basis(self.matrix)

    def image(self) -> Subspace:
        return image_basis(self.matrix)

    def rank(self) -> int:
        return self.image().dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def same_map(self, other: "AwbMorphism") -> bool:
        return self.images == other.images

    def section(self, reverse: bool = False):
        """Linear right inverse on the image, as a callable."""
        return Preimage(self.field, self.target.dim, self.images, reverse=reverse).solve

    def __repr__(self):
        return f"AwbMorphism({self.source.name} -> {self.target.name})"


def check_morphism(f: AwbMorphism) -> ValidationReport:
    """``f(e_i e_j) = f(e_i) f(e_j)`` and the bracket analogue on basis pairs."""
    A, B = f.source, f.target
    F = A.field
    report = ValidationReport(subject=f"morphism {f.name}".strip())
    for i, j in itertools.product(range(A.dim), repeat=2):
        for label, ta, tb in (("product", A.mul, B.mul), ("bracket", A.br, B.br)):
            lhs = f(ta[i][j])
            rhs = bilinear(F, tb, f.images[i], f.images[j])
            report.checked += 1
            if lhs != rhs:
                report.witnesses.append(Witness(f"hom_{label}", (i, j), lhs, rhs))
    return report


# -- quotients and subalgebras ---------------------------------------------------

def quotient_awb(A: FiniteAwb, I: Subspace, name: str = ""):
    """``A / I`` on the canonical quotient basis, with its projection."""
    if I.ambient_dim != A.dim:
        raise ValueError("ideal lives in the wrong space")
    if not is_ideal(A, I):
        raise PreconditionError("quotient_awb needs a two-sided ideal")
    qs = QuotientSpace(A.dim, I)
    free = qs.free
    F = A.field
    mul = [[qs.project(A.mul[a][b]) for b in free] for a in free]
    br = [[qs.project(A.br[a][b]) for b in free] for a in free]
    Qa = FiniteAwb(F, qs.dim, mul, br, name=name or f"{A.name}/I", check=False)
    proj = AwbMorphism(A, Qa, [qs.project({j: 1}) for j in range(A.dim)], name="proj")
    return Qa, proj


def abelianization(A: FiniteAwb):
    return quotient_awb(A, derived(A), name=f"{A.name}^ab")


def associativization(A: FiniteAwb):
    seeds = [A.br[i][j] for i in range(A.dim) for j in range(A.dim)]
    return quotient_awb(A, ideal_closure(A, seeds), name=f"{A.name}^as")


def poisson_ideal(A: FiniteAwb) -> Subspace:
    F, n, br = A.field, A.dim, A.br
    seeds = []
    for i in range(n):
        seeds.append(br[i][i])
        for j in range(i + 1, n):
            seeds.append(axpy(F, dict(br[i][j]), 1, br[j][i]))
    for i, j, k in itertools.product(range(n), repeat=3):
        jac = bilinear(F, br, {i: 1}, br[j][k])
        axpy(F, jac, 1, bilinear(F, br, {j: 1}, br[k][i]))
        axpy(F, jac, 1, bilinear(F, br, {k: 1}, br[i][j]))
        seeds.append(jac)
    return ideal_closure(A, seeds)


def poisson_quotient(A: FiniteAwb):
    return quotient_awb(A, poisson_ideal(A), name=f"{A.name}_Poiss")


def subalgebra_awb(A: FiniteAwb, S: Subspace, name: str = ""):
    """Materialize a subalgebra on its canonical basis, with the inclusion."""
    if not is_subalgebra(A, S):
        raise PreconditionError("subspace is not closed under the operations")
    F = A.field
    basis = S.basis
    mul = [[S.coordinates(bilinear(F, A.mul, x, y)) for y in basis] for x in basis]
    br = [[S.coordinates(bilinear(F, A.br, x, y)) for y in basis] for x in basis]
    B = FiniteAwb(F, S.dim, mul, br, name=name or f"sub({A.name})", check=False)
    inc = AwbMorphism(B, A, [dict(b) for b in basis], name="inc")
    return B, inc


def direct_sum(A: FiniteAwb, B: FiniteAwb, name: str = ""):
    """``A ⊕ B`` with injections ``(iA, iB)`` and projections ``(pA, pB)``."""
    if A.field != B.field:
        raise PreconditionError("direct sum of algebras over different fields")
    F = A.field
    a, b = A.dim, B.dim
    n = a + b
    mul = [[{} for _ in range(n)] for _ in range(n)]
    br = [[{} for _ in range(n)] for _ in range(n)]
    for i, j in itertools.product(range(a), repeat=2):
        mul[i][j] = dict(A.mul[i][j])
        br[i][j] = dict(A.br[i][j])
    for i, j in itertools.product(range(b), repeat=2):
        mul[a + i][a + j] = shift(B.mul[i][j], a)
        br[a + i][a + j] = shift(B.br[i][j], a)
    S = FiniteAwb(F, n, mul, br, name=name or f"{A.name}+{B.name}", check=False)
    iA = AwbMorphism(A, S, [{i: 1} for i in range(a)], name="i1")
    iB = AwbMorphism(B, S, [{a + i: 1} for i in range(b)], name="i2")
    pA = AwbMorphism(S, A, [{i: 1} for i in range(a)] + [{} for _ in range(b)], name="p1")
    pB = AwbMorphism(S, B, [{} for _ in range(a)] + [{i: 1} for i in range(b)], name="p2")
    return S, (iA, iB), (pA, pB)


def is_antisymmetric_jacobi(A: FiniteAwb) -> bool:
    return poisson_ideal(A).dim == 0


def change_of_basis(A: FiniteAwb, new_basis, name: str = ""):
    """``A`` rewritten on ``new_basis`` (vectors in old coordinates).

    Returns ``(A', iso)`` with ``iso: A' -> A`` sending basis vector ``k`` to
    ``new_basis[k]``.
    """
    from .linalg import Preimage

    F = A.field
    basis = [{k: F(x) for k, x in (v.items() if isinstance(v, dict) else enumerate(v)) if F(x) != 0}
             for v in new_basis]
    pre = Preimage(F, A.dim, basis)
    if len(basis) != A.dim or pre.rank != A.dim:
        raise PreconditionError("new basis is not a basis")
    mul = [[pre.solve(bilinear(F, A.mul, x, y)) for y in basis] for x in basis]
    br = [[pre.solve(bilinear(F, A.br, x, y)) for y in basis] for x in basis]
    B = FiniteAwb(F, A.dim, mul, br, name=name or A.name, check=False)
    return B, AwbMorphism(B, A, basis, name="change of basis")
