"""The trivial-coefficient chain complex of an AWB and its homology.

``C_0 = A`` and ``C_n = A^{⊗(n+1)} ⊕ A^{⊗(n+1)}`` for ``n >= 1``; the ⊗ block
comes first and words are ordered lexicographically in their factor indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import FiniteAwb, derived, validate_associative, with_trivial_bracket, tautological
from .errors import PreconditionError, VerificationError
from .linalg import Matrix, QuotientSpace, RowReducer, Subspace, axpy, kernel_basis

DEFAULT_CAP = 10 ** 5
DEFAULT_MAX_DEGREE = 3


def chain_dim(n_alg: int, degree: int) -> int:
    if degree == 0:
        return n_alg
    return 2 * n_alg ** (degree + 1)


def _word_index(word, n):
    k = 0
    for i in word:
        k = k * n + i
    return k


def _expand(F, prefix, vec, suffix, n, offset, coeff, acc):
    """Add ``coeff * prefix ⊗ vec ⊗ suffix`` to ``acc`` (``vec`` sparse in A)."""
    for i, c in vec.items():
        w = prefix + (i,) + suffix
        axpy(F, acc, F.norm(coeff * c), {offset + _word_index(w, n): 1})


def boundary_column(A: FiniteAwb, degree: int, col: int) -> dict:
    """``d_degree`` applied to basis vector ``col`` of ``C_degree``."""
    F = A.field
    n = A.dim
    size = n ** (degree + 1)
    circ, k = divmod(col, size)
    word = []
    for _ in range(degree + 1):
        k, r = divmod(k, n)
        word.append(r)
    word = tuple(reversed(word))
    acc = {}
    tgt_block = 0 if degree == 1 else n ** degree   # offset of the ∘ block in C_{degree-1}
    if not circ:
        for i in range(degree):
            sign = 1 if i % 2 == 0 else -1
            prod = A.mul[word[i]][word[i + 1]]
            _expand(F, word[:i], prod, word[i + 2:], n, 0, sign, acc)
        return acc
    last = word[-1]
    for i in range(degree):
        brk = A.br[word[i]][last]
        _expand(F, word[:i], brk, word[i + 1:-1], n, 0, 1, acc)
    for i in range(degree - 1):
        sign = -1 if i % 2 == 0 else 1          # (-1)^(i+1) with 0-based i
        prod = A.mul[word[i]][word[i + 1]]
        _expand(F, word[:i], prod, word[i + 2:], n, tgt_block, sign, acc)
    return acc


def boundary_matrix(A: FiniteAwb, degree: int) -> Matrix:
    """``d_degree: C_degree -> C_{degree-1}``; ``d_0`` is the zero map ``A -> 0``."""
    F = A.field
    if degree < 0:
        raise PreconditionError("degree must be non-negative")
    if degree == 0:
        return Matrix(F, 0, A.dim)
    cols = [boundary_column(A, degree, c) for c in range(chain_dim(A.dim, degree))]
    return Matrix.from_columns(F, chain_dim(A.dim, degree - 1), cols)


@dataclass
class ChainComplex:
    algebra: FiniteAwb
    max_degree: int
    dims: list
    boundaries: dict = field(default_factory=dict)   # degree -> Matrix

    def d(self, degree: int) -> Matrix:
        if degree == 0:
            return Matrix(self.algebra.field, 0, self.algebra.dim)
        if degree not in self.boundaries:
            raise PreconditionError(f"boundary d_{degree} not built (max degree {self.max_degree})")
        return self.boundaries[degree]


def build_complex(A: FiniteAwb, max_degree: int = DEFAULT_MAX_DEGREE,
                  cap: int = DEFAULT_CAP) -> ChainComplex:
    """All boundaries up to ``max_degree``; ``d∘d = 0`` is verified."""
    if max_degree < 0:
        raise PreconditionError("max degree must be non-negative")
    dims = [chain_dim(A.dim, k) for k in range(max_degree + 1)]
    if dims[-1] > cap:
        raise PreconditionError(f"C_{max_degree} has dimension {dims[-1]} above the cap {cap}")
    cx = ChainComplex(A, max_degree, dims)
    for k in range(1, max_degree + 1):
        cx.boundaries[k] = boundary_matrix(A, k)
    for k in range(2, max_degree + 1):
        if not (cx.boundaries[k - 1] @ cx.boundaries[k]).is_zero():
            raise VerificationError(f"d_{k - 1} d_{k} is not zero")
    return cx


def _rank_of_columns(F, nrows, cols) -> int:
    red = RowReducer(F, nrows)
    for c in cols:
        red.add(c)
    return len(red)


@dataclass
class HomologyResult:
    degree: int
    dim: int
    cycles: Subspace
    boundaries: Subspace
    representatives: list

    def as_json(self):
        return {"degree": self.degree, "dim": self.dim, "cycles": self.cycles.dim,
                "boundaries": self.boundaries.dim}


def homology(A: FiniteAwb, degree: int, complex_: ChainComplex = None) -> HomologyResult:
    """``H_degree = Ker d_degree / Im d_{degree+1}`` with explicit bases."""
    cx = complex_ or build_complex(A, degree + 1)
    if degree + 1 > cx.max_degree:
        raise PreconditionError(f"need the complex up to degree {degree + 1}")
    Z = kernel_basis(cx.d(degree))
    B = Subspace.span(A.field, cx.dims[degree], cx.d(degree + 1).columns())
    if not B.is_subspace_of(Z):
        raise VerificationError("boundaries are not cycles")
    # representatives: cycle basis vectors independent modulo the boundaries
    red = RowReducer(A.field, cx.dims[degree])
    red.add_all(B.basis)
    reps = [z for z in Z.basis if red.add(z)]
    return HomologyResult(degree, Z.dim - B.dim, Z, B, reps)


def homology_dims(A: FiniteAwb, max_degree: int = DEFAULT_MAX_DEGREE - 1,
                  cap: int = DEFAULT_CAP) -> list:
    """``dim H_k`` for ``0 <= k <= max_degree`` using ranks only."""
    cx = build_complex(A, max_degree + 1, cap)
    F = A.field
    ranks = {0: 0}
    for k in range(1, max_degree + 2):
        ranks[k] = _rank_of_columns(F, cx.dims[k - 1], cx.d(k).columns())
    return [cx.dims[k] - ranks[k] - ranks[k + 1] for k in range(max_degree + 1)]


def h0_isomorphism_check(A: FiniteAwb) -> dict:
    """``Im d_1 = [[A, A]]``, so ``H_0 = A/[[A, A]] = A^ab``; returns the identification."""
    d1 = boundary_matrix(A, 1)
    im = Subspace.span(A.field, A.dim, d1.columns())
    D = derived(A)
    if im != D:
        raise VerificationError("image of d_1 differs from the derived algebra")
    qs = QuotientSpace(A.dim, im)
    return {"dim_h0": qs.dim, "dim_ab": A.dim - D.dim, "image_d1": im.dim,
            "isomorphism": Matrix.identity(A.field, qs.dim)}


# -- comparison with Hochschild homology ------------------------------------------

def hochschild_boundary(F, product, k: int) -> Matrix:
    """``b: A^{⊗k} -> A^{⊗(k-1)}``, the ⊗-component formula; ``b_1 = 0``."""
    A = with_trivial_bracket(F, product)
    n = A.dim
    if k <= 1:
        return Matrix(F, 1 if k == 0 else n, n ** max(k, 0))
    full = boundary_matrix(A, k - 1)
    size = n ** k
    rows = n ** (k - 1)
    cols = [{r: v for r, v in full.apply({c: 1}).items() if r < rows} for c in range(size)]
    return Matrix.from_columns(F, rows, cols)


def hochschild_comparison(F, product, max_degree: int = 2) -> dict:
    """Maps ``Hoch_{n+1}(A) -> H_n(T(A))`` for ``n = 0, 1`` induced by the ⊗-block inclusion."""
    if not validate_associative(F, product).valid:
        raise PreconditionError("hochschild_comparison needs an associative product")
    if max_degree < 2:
        raise PreconditionError("degree bound must be at least 2")
    T = tautological(F, product, name="T(A)")
    n = T.dim
    cx = build_complex(T, 2)
    out = {}
    for deg in (0, 1):
        k = deg + 1
        b_k = hochschild_boundary(F, product, k)
        b_next = hochschild_boundary(F, product, k + 1)
        hz = kernel_basis(b_k) if k > 1 else Subspace.full(F, n)
        hb = Subspace.span(F, n ** k, b_next.columns())
        Z = kernel_basis(cx.d(deg))
        B = Subspace.span(F, cx.dims[deg], cx.d(deg + 1).columns())
        # the inclusion A^{⊗k} -> ⊗ block of C_deg is the identity on coordinates
        images = Subspace.span(F, cx.dims[deg], hz.basis) + B
        rank = images.dim - B.dim
        hoch_dim = hz.dim - hb.dim
        awb_dim = Z.dim - B.dim
        kernel_trivial = (Subspace.span(F, cx.dims[deg], hz.basis) & B).dim == hb.dim
        out[deg] = {"hochschild_dim": hoch_dim, "awb_dim": awb_dim, "rank": rank,
                    "surjective": rank == awb_dim, "injective": rank == hoch_dim and kernel_trivial}
    out["iso_at_0"] = out[0]["surjective"] and out[0]["injective"]
    out["epi_at_1"] = out[1]["surjective"]
    return out


# -- functoriality -----------------------------------------------------------------

def chain_map(f, degree: int) -> Matrix:
    """``C_degree(f)``: apply ``f`` in every tensor slot."""
    A, B = f.source, f.target
    F = A.field
    n, m = A.dim, B.dim
    if degree == 0:
        return f.matrix
    cols = []
    for circ in (0, 1):
        for word in itertools.product(range(n), repeat=degree + 1):
            acc = {}
            terms = [{(): 1}]
            for i in word:
                nxt = {}
                for pre, c in terms[0].items():
                    for j, x in f.images[i].items():
                        key = pre + (j,)
                        nxt[key] = F.norm(nxt.get(key, 0) + c * x)
                terms = [{k: v for k, v in nxt.items() if v}]
            for w, c in terms[0].items():
                axpy(F, acc, c, {circ * m ** (degree + 1) + _word_index(w, m): 1})
            cols.append(acc)
    return Matrix.from_columns(F, chain_dim(m, degree), cols)


def check_chain_map(f, max_degree: int = 2) -> bool:
    """``d ∘ C(f) = C(f) ∘ d`` in degrees ``1..max_degree``."""
    for k in range(1, max_degree + 1):
        lhs = boundary_matrix(f.target, k) @ chain_map(f, k)
        rhs = chain_map(f, k - 1) @ boundary_matrix(f.source, k)
        if lhs != rhs:
            return False
    return True
