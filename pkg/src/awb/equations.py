"""Declarative equation tables evaluated over basis tuples.

Each identity is a Python function of typed variables returning
``(lhs, rhs)``.  A variable's role comes from its name: ``a*`` lives in the
acting algebra, ``m*`` in M and ``n*`` in N.  A *frame* maps roles to the
algebras of a :class:`Ctx`; the identities "with the roles of M and N
exchanged" are obtained by evaluating the same function in the swapped
frame, never by rewriting it.

Notation used by the operator functions::

    mul(x, y) = x y            br(x, y) = [x, y]
    ld(x, y)  = ^{x·} y        rd(x, y) = x^{·y}
    ls(x, y)  = ^{x∗} y        rs(x, y) = x^{∗y}
    odot(x, y) = x ⊙ y         oast(x, y) = x ⊛ y   (tensor generators)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .algebra import bilinear
from .errors import ValidationReport, Witness
from .linalg import axpy, vscale

ODOT, OAST = 0, 1
MN, NM = 0, 1


class El:
    """A vector tagged with the algebra (label) it lives in."""

    __slots__ = ("ctx", "label", "vec")

    def __init__(self, ctx, label, vec):
        self.ctx = ctx
        self.label = label
        self.vec = vec

    def _same(self, other):
        if isinstance(other, int) and other == 0:
            return El(self.ctx, self.label, {})
        if other.label != self.label:
            raise TypeError(f"adding elements of {self.label} and {other.label}")
        return other

    def __add__(self, other):
        other = self._same(other)
        return El(self.ctx, self.label, axpy(self.ctx.field, dict(self.vec), 1, other.vec))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._same(other)
        return El(self.ctx, self.label, axpy(self.ctx.field, dict(self.vec), -1, other.vec))

    def __neg__(self):
        return El(self.ctx, self.label, vscale(self.ctx.field, -1, self.vec))

    def __rmul__(self, c):
        return El(self.ctx, self.label, vscale(self.ctx.field, c, self.vec))

    def __repr__(self):
        return f"El({self.label}, {self.vec})"


class Ctx:
    """Algebras, the actions between them, and an optional tensor layout.

    ``actions[(X, Y)]`` is an action of algebra X on algebra Y.  The tensor
    layout, when set, names the ordered factor pair ``(M, N)``; generator
    ``(kind, orientation, i, j)`` sits at flat index
    ``(2 * kind + orientation) * p * q + i * d2 + j`` where ``d2`` is the
    dimension of the second factor in that orientation.
    """

    def __init__(self, algebras: dict, actions: dict, tensor=None):
        self.algebras = algebras
        self.actions = actions
        self.field = next(iter(algebras.values())).field
        self.tensor = tensor
        if tensor is not None:
            first, second = tensor
            self._p = algebras[first].dim
            self._q = algebras[second].dim

    def el(self, label, vec):
        return El(self, label, vec)

    def basis(self, label, i):
        return El(self, label, {i: 1})

    # flat generator index -------------------------------------------------
    @property
    def ngens(self) -> int:
        return 4 * self._p * self._q

    def gen_index(self, kind: int, orient: int, i: int, j: int) -> int:
        p, q = self._p, self._q
        block = (2 * kind + orient) * p * q
        return block + i * (q if orient == MN else p) + j

    def gen_decode(self, g: int):
        p, q = self._p, self._q
        block, r = divmod(g, p * q)
        kind, orient = divmod(block, 2)
        d2 = q if orient == MN else p
        i, j = divmod(r, d2)
        return kind, orient, i, j

    def gen_factors(self, g: int):
        """Typed basis elements ``(x, y)`` with generator ``g = x ⋆ y``."""
        kind, orient, i, j = self.gen_decode(g)
        first, second = self.tensor
        if orient == NM:
            first, second = second, first
        return kind, self.basis(first, i), self.basis(second, j)


def _check(x, y, same):
    if (x.label == y.label) != same:
        if same:
            raise TypeError(f"operation needs one algebra, got {x.label} and {y.label}")
        raise TypeError(f"action needs two algebras, got {x.label} twice")


def mul(x: El, y: El) -> El:
    _check(x, y, True)
    A = x.ctx.algebras[x.label]
    return El(x.ctx, x.label, bilinear(A.field, A.mul, x.vec, y.vec))


def br(x: El, y: El) -> El:
    _check(x, y, True)
    A = x.ctx.algebras[x.label]
    return El(x.ctx, x.label, bilinear(A.field, A.br, x.vec, y.vec))


def _act(x: El, y: El, actor: El, which: str, acted: El) -> El:
    _check(x, y, False)
    act = x.ctx.actions[(actor.label, acted.label)]
    return El(x.ctx, acted.label, bilinear(x.ctx.field, getattr(act, which), x.vec, y.vec))


def ld(x: El, y: El) -> El:
    """``^{x·}y``: x acts on y from the left via the product."""
    return _act(x, y, x, "ldot", y)


def rd(x: El, y: El) -> El:
    """``x^{·y}``: y acts on x from the right via the product."""
    return _act(x, y, y, "rdot", x)


def ls(x: El, y: El) -> El:
    """``^{x∗}y``."""
    return _act(x, y, x, "lstar", y)


def rs(x: El, y: El) -> El:
    """``x^{∗y}``."""
    return _act(x, y, y, "rstar", x)


def _gen(kind: int, x: El, y: El) -> El:
    ctx = x.ctx
    first, second = ctx.tensor
    if (x.label, y.label) == (first, second):
        orient = MN
    elif (x.label, y.label) == (second, first):
        orient = NM
    else:
        raise TypeError(f"no tensor generator for {x.label} ⋆ {y.label}")
    out = {}
    F = ctx.field
    norm = F.norm
    for i, xi in x.vec.items():
        for j, yj in y.vec.items():
            out[ctx.gen_index(kind, orient, i, j)] = norm(xi * yj)
    return El(ctx, "T", out)


def odot(x: El, y: El) -> El:
    return _gen(ODOT, x, y)


def oast(x: El, y: El) -> El:
    return _gen(OAST, x, y)


# -- evaluation -------------------------------------------------------------

@dataclass(frozen=True)
class Equation:
    id: str
    fn: Callable

    @property
    def params(self) -> tuple:
        code = self.fn.__code__
        return code.co_varnames[:code.co_argcount]

    def roles(self) -> tuple:
        return tuple(p.rstrip("0123456789") for p in self.params)


def iter_assignments(ctx: Ctx, eq: Equation, frame: dict):
    labels = [frame[r] for r in eq.roles()]
    dims = [ctx.algebras[l].dim for l in labels]
    pools = [[ctx.basis(l, i) for i in range(d)] for l, d in zip(labels, dims)]
    for idx in itertools.product(*(range(d) for d in dims)):
        yield idx, [pool[i] for pool, i in zip(pools, idx)]


def check_table(ctx: Ctx, table, frame: dict, report: ValidationReport,
                tag: str = "") -> ValidationReport:
    """Evaluate every equation of ``table`` on all basis assignments."""
    for eq in table:
        for idx, args in iter_assignments(ctx, eq, frame):
            lhs, rhs = eq.fn(*args)
            report.checked += 1
            if lhs.vec != rhs.vec:
                report.witnesses.append(Witness(eq.id + tag, idx, lhs.vec, rhs.vec))
    return report


def relation_vectors(ctx: Ctx, eq: Equation, frame: dict):
    """``lhs - rhs`` for every basis assignment (tensor relations)."""
    F = ctx.field
    for idx, args in iter_assignments(ctx, eq, frame):
        lhs, rhs = eq.fn(*args)
        v = axpy(F, dict(lhs.vec), -1, rhs.vec)
        if v:
            yield v


def _table(prefix, rows):
    return tuple(Equation(f"{prefix}.{key}", fn) for key, fn in rows)


# -- action of A on M: twelve identities, ids r<row>c<col> ---------------------

ACTION_EQUATIONS = _table("action", [
    ("r1c1", lambda a1, a2, m: (ld(mul(a1, a2), m), ld(a1, ld(a2, m)))),
    ("r2c1", lambda a1, a2, m: (rd(m, mul(a1, a2)), rd(rd(m, a1), a2))),
    ("r3c1", lambda a1, a2, m: (rd(ld(a1, m), a2), ld(a1, rd(m, a2)))),
    ("r4c1", lambda a, m1, m2: (rd(mul(m1, m2), a), mul(m1, rd(m2, a)))),
    ("r5c1", lambda a, m1, m2: (ld(a, mul(m1, m2)), mul(ld(a, m1), m2))),
    ("r6c1", lambda a, m1, m2: (mul(rd(m1, a), m2), mul(m1, ld(a, m2)))),
    ("r1c2", lambda a1, a2, m: (rs(ld(a1, m), a2), ld(a1, rs(m, a2)) + ld(br(a1, a2), m))),
    ("r2c2", lambda a1, a2, m: (rs(rd(m, a1), a2), rd(rs(m, a2), a1) + rd(m, br(a1, a2)))),
    ("r3c2", lambda a1, a2, m: (ls(mul(a1, a2), m), ld(a1, ls(a2, m)) + rd(ls(a1, m), a2))),
    ("r4c2", lambda a, m1, m2: (br(rd(m1, a), m2), mul(m1, ls(a, m2)) + rd(br(m1, m2), a))),
    ("r5c2", lambda a, m1, m2: (br(ld(a, m1), m2), ld(a, br(m1, m2)) + mul(ls(a, m2), m1))),
    ("r6c2", lambda a, m1, m2: (rs(mul(m1, m2), a), mul(m1, rs(m2, a)) + mul(rs(m1, a), m2))),
])

# rows 4-6 only involve operations inside M; they are 0 = 0 when M is abelian
REPRESENTATION_VACUOUS = frozenset(
    f"action.r{r}c{c}" for r in (4, 5, 6) for c in (1, 2))


# -- compatibility of mutual actions: sixteen identities (m1 = m', n1 = n') -----

COMPATIBILITY_EQUATIONS = _table("compat", [
    ("r1c1", lambda m, m1, n1: (rd(m, ld(m1, n1)), mul(m, rd(m1, n1)))),
    ("r2c1", lambda m, m1, n1: (rd(m, ls(m1, n1)), mul(m, rs(m1, n1)))),
    ("r3c1", lambda m, m1, n1: (rs(m, ld(m1, n1)), br(m, rd(m1, n1)))),
    ("r4c1", lambda m, m1, n1: (rs(m, ls(m1, n1)), br(m, rs(m1, n1)))),
    ("r5c1", lambda m, n, n1: (ld(rd(m, n), n1), mul(ld(m, n), n1))),
    ("r6c1", lambda m, n, n1: (ld(rs(m, n), n1), mul(ls(m, n), n1))),
    ("r7c1", lambda m, n, n1: (ls(rd(m, n), n1), br(ld(m, n), n1))),
    ("r8c1", lambda m, n, n1: (ls(rs(m, n), n1), br(ls(m, n), n1))),
    ("r1c2", lambda m, m1, n1: (rd(m, rd(n1, m1)), mul(m, ld(n1, m1)))),
    ("r2c2", lambda m, m1, n1: (rd(m, rs(n1, m1)), mul(m, ls(n1, m1)))),
    ("r3c2", lambda m, m1, n1: (rs(m, rd(n1, m1)), br(m, ld(n1, m1)))),
    ("r4c2", lambda m, m1, n1: (rs(m, rs(n1, m1)), br(m, ls(n1, m1)))),
    ("r5c2", lambda m, n, n1: (ld(ld(n, m), n1), mul(rd(n, m), n1))),
    ("r6c2", lambda m, n, n1: (ld(ls(n, m), n1), mul(rs(n, m), n1))),
    ("r7c2", lambda m, n, n1: (ls(ld(n, m), n1), br(rd(n, m), n1))),
    ("r8c2", lambda m, n, n1: (ls(ls(n, m), n1), br(rs(n, m), n1))),
])


# -- defining relations of the tensor product ----------------------------------
# The sixteen interchange identities hold for ⋆ = ⊙ and ⋆ = ⊛; ``star`` is
# bound to each in turn.  Scalar and additivity relations are implicit in
# working with the linear span of generators on basis tuples.

INTERCHANGE_RELATIONS = _table("rel", [
    ("r1c1", lambda star, m, n, m1, n1: (star(rd(m, n), ld(m1, n1)), star(ld(m, n), rd(m1, n1)))),
    ("r1c2", lambda star, m, n, m1, n1: (star(rd(m, n), rd(n1, m1)), star(ld(m, n), ld(n1, m1)))),
    ("r2c1", lambda star, m, n, m1, n1: (star(ld(n, m), rd(n1, m1)), star(rd(n, m), ld(n1, m1)))),
    ("r2c2", lambda star, m, n, m1, n1: (star(ld(n, m), ld(m1, n1)), star(rd(n, m), rd(m1, n1)))),
    ("r3c1", lambda star, m, n, m1, n1: (star(rd(m, n), ls(m1, n1)), star(ld(m, n), rs(m1, n1)))),
    ("r3c2", lambda star, m, n, m1, n1: (star(rd(m, n), rs(n1, m1)), star(ld(m, n), ls(n1, m1)))),
    ("r4c1", lambda star, m, n, m1, n1: (star(ld(n, m), ls(m1, n1)), star(rd(n, m), rs(m1, n1)))),
    ("r4c2", lambda star, m, n, m1, n1: (star(ld(n, m), rs(n1, m1)), star(rd(n, m), ls(n1, m1)))),
    ("r5c1", lambda star, m, n, m1, n1: (star(rs(m, n), ld(m1, n1)), star(ls(m, n), rd(m1, n1)))),
    ("r5c2", lambda star, m, n, m1, n1: (star(rs(m, n), rd(n1, m1)), star(ls(m, n), ld(n1, m1)))),
    ("r6c1", lambda star, m, n, m1, n1: (star(ls(n, m), ld(m1, n1)), star(rs(n, m), rd(m1, n1)))),
    ("r6c2", lambda star, m, n, m1, n1: (star(ls(n, m), rd(n1, m1)), star(rs(n, m), ld(n1, m1)))),
    ("r7c1", lambda star, m, n, m1, n1: (star(rs(m, n), ls(m1, n1)), star(ls(m, n), rs(m1, n1)))),
    ("r7c2", lambda star, m, n, m1, n1: (star(rs(m, n), rs(n1, m1)), star(ls(m, n), ls(n1, m1)))),
    ("r8c1", lambda star, m, n, m1, n1: (star(ls(n, m), ls(m1, n1)), star(rs(n, m), rs(m1, n1)))),
    ("r8c2", lambda star, m, n, m1, n1: (star(ls(n, m), rs(n1, m1)), star(rs(n, m), ls(n1, m1)))),
])

PRODUCT_RELATIONS = _table("rel", [
    ("prod1", lambda m1, m2, n: (odot(mul(m1, m2), n), odot(m1, ld(m2, n)))),
    ("prod2", lambda m1, m2, n: (odot(n, mul(m1, m2)), odot(rd(n, m1), m2))),
    ("prod3", lambda m1, m2, n: (oast(mul(m1, m2), n), odot(m1, ls(m2, n)) + odot(ls(m1, n), m2))),
    ("prod4", lambda m1, m2, n: (oast(ld(m1, n), m2), odot(m1, rs(n, m2)) + odot(br(m1, m2), n))),
    ("prod5", lambda m1, m2, n: (oast(rd(n, m1), m2), odot(rs(n, m2), m1) + odot(n, br(m1, m2)))),
    ("prod6", lambda m1, m2, n: (odot(ld(m1, n), m2), odot(m1, rd(n, m2)))),
])

# lines of the displayed relation list that are absorbed by linearity
LINEARITY_RELATION_LINES = 3


def star_bound(eq: Equation, star, name: str) -> Equation:
    fn = eq.fn

    def bound(m, n, m1, n1):
        return fn(star, m, n, m1, n1)

    return Equation(f"{eq.id}[{name}]", bound)


def relation_families() -> tuple:
    """All displayed families with ⋆ expanded: 16 x 2 + 6."""
    fams = []
    for eq in INTERCHANGE_RELATIONS:
        fams.append(star_bound(eq, odot, "odot"))
        fams.append(star_bound(eq, oast, "oast"))
    fams.extend(PRODUCT_RELATIONS)
    return tuple(fams)


# -- operations on generators ---------------------------------------------------
# Keyed by (operation, kind of left generator, its factor roles, kind of right
# generator, its factor roles); values give the image in terms of the factors.

def _k(op, k1, r1, k2, r2):
    return (op, k1, r1, k2, r2)


_o, _a = ODOT, OAST
_mn, _nm = ("m", "n"), ("n", "m")

STRUCTURE_TABLE = {
    # products
    _k("product", _o, _mn, _o, _mn): lambda m, n, m1, n1: odot(rd(m, n), ld(m1, n1)),
    _k("product", _o, _mn, _o, _nm): lambda m, n, m1, n1: odot(rd(m, n), rd(n1, m1)),
    _k("product", _o, _nm, _o, _mn): lambda m, n, m1, n1: odot(ld(n, m), ld(m1, n1)),
    _k("product", _o, _nm, _o, _nm): lambda m, n, m1, n1: odot(ld(n, m), rd(n1, m1)),
    _k("product", _o, _mn, _a, _mn): lambda m, n, m1, n1: odot(rd(m, n), ls(m1, n1)),
    _k("product", _o, _mn, _a, _nm): lambda m, n, m1, n1: odot(rd(m, n), rs(n1, m1)),
    _k("product", _o, _nm, _a, _mn): lambda m, n, m1, n1: odot(ld(n, m), ls(m1, n1)),
    _k("product", _o, _nm, _a, _nm): lambda m, n, m1, n1: odot(ld(n, m), rs(n1, m1)),
    _k("product", _a, _mn, _o, _mn): lambda m, n, m1, n1: odot(rs(m, n), ld(m1, n1)),
    _k("product", _a, _mn, _o, _nm): lambda m, n, m1, n1: odot(rs(m, n), rd(n1, m1)),
    _k("product", _a, _nm, _o, _mn): lambda m, n, m1, n1: odot(ls(n, m), ld(m1, n1)),
    _k("product", _a, _nm, _o, _nm): lambda m, n, m1, n1: odot(ls(n, m), rd(n1, m1)),
    _k("product", _a, _mn, _a, _mn): lambda m, n, m1, n1: odot(rs(m, n), ls(m1, n1)),
    _k("product", _a, _mn, _a, _nm): lambda m, n, m1, n1: odot(rs(m, n), rs(n1, m1)),
    _k("product", _a, _nm, _a, _mn): lambda m, n, m1, n1: odot(ls(n, m), ls(m1, n1)),
    _k("product", _a, _nm, _a, _nm): lambda m, n, m1, n1: odot(ls(n, m), rs(n1, m1)),
    # brackets
    _k("bracket", _o, _mn, _o, _mn): lambda m, n, m1, n1: oast(rd(m, n), ld(m1, n1)),
    _k("bracket", _o, _mn, _o, _nm): lambda m, n, m1, n1: oast(rd(m, n), rd(n1, m1)),
    _k("bracket", _o, _nm, _o, _mn): lambda m, n, m1, n1: oast(ld(n, m), ld(m1, n1)),
    _k("bracket", _o, _nm, _o, _nm): lambda m, n, m1, n1: oast(ld(n, m), rd(n1, m1)),
    _k("bracket", _o, _mn, _a, _mn): lambda m, n, m1, n1: oast(rd(m, n), ls(m1, n1)),
    _k("bracket", _o, _mn, _a, _nm): lambda m, n, m1, n1: oast(rd(m, n), rs(n1, m1)),
    _k("bracket", _o, _nm, _a, _mn): lambda m, n, m1, n1: oast(ld(n, m), ls(m1, n1)),
    _k("bracket", _o, _nm, _a, _nm): lambda m, n, m1, n1: oast(ld(n, m), rs(n1, m1)),
    _k("bracket", _a, _mn, _o, _mn): lambda m, n, m1, n1: oast(rs(m, n), ld(m1, n1)),
    _k("bracket", _a, _mn, _o, _nm): lambda m, n, m1, n1: oast(rs(m, n), rd(n1, m1)),
    _k("bracket", _a, _nm, _o, _mn): lambda m, n, m1, n1: oast(ls(n, m), ld(m1, n1)),
    _k("bracket", _a, _nm, _o, _nm): lambda m, n, m1, n1: oast(ls(n, m), rd(n1, m1)),
    _k("bracket", _a, _mn, _a, _mn): lambda m, n, m1, n1: oast(rs(m, n), ls(m1, n1)),
    _k("bracket", _a, _mn, _a, _nm): lambda m, n, m1, n1: oast(rs(m, n), rs(n1, m1)),
    _k("bracket", _a, _nm, _a, _mn): lambda m, n, m1, n1: oast(ls(n, m), ls(m1, n1)),
    _k("bracket", _a, _nm, _a, _nm): lambda m, n, m1, n1: oast(ls(n, m), rs(n1, m1)),
}

# Action of M on the tensor product.  Keys: (action map, generator kind, roles
# of its factors).  The action of N is this table in the swapped frame.
INDUCED_ACTION_TABLE = {
    ("ldot", _o, _mn): lambda m, m1, n1: odot(m, ld(m1, n1)),
    ("ldot", _o, _nm): lambda m, m1, n1: odot(m, rd(n1, m1)),
    ("rdot", _o, _mn): lambda m, m1, n1: odot(ld(m1, n1), m),
    ("rdot", _o, _nm): lambda m, m1, n1: odot(rd(n1, m1), m),
    ("lstar", _o, _mn): lambda m, m1, n1: oast(m, ld(m1, n1)),
    ("lstar", _o, _nm): lambda m, m1, n1: oast(m, rd(n1, m1)),
    ("rstar", _o, _mn): lambda m, m1, n1: oast(ld(m1, n1), m),
    ("rstar", _o, _nm): lambda m, m1, n1: oast(rd(n1, m1), m),
    ("ldot", _a, _mn): lambda m, m1, n1: odot(m, ls(m1, n1)),
    ("ldot", _a, _nm): lambda m, m1, n1: odot(m, rs(n1, m1)),
    ("rdot", _a, _mn): lambda m, m1, n1: odot(ls(m1, n1), m),
    ("rdot", _a, _nm): lambda m, m1, n1: odot(rs(n1, m1), m),
    ("lstar", _a, _mn): lambda m, m1, n1: oast(m, ls(m1, n1)),
    ("lstar", _a, _nm): lambda m, m1, n1: oast(m, rs(n1, m1)),
    ("rstar", _a, _mn): lambda m, m1, n1: oast(ls(m1, n1), m),
    ("rstar", _a, _nm): lambda m, m1, n1: oast(rs(n1, m1), m),
}

# ψ_M on generators; ψ_N is the same table in the swapped frame.
PSI_TABLE = {
    (_o, _mn): lambda m, n: rd(m, n),
    (_o, _nm): lambda m, n: ld(n, m),
    (_a, _mn): lambda m, n: rs(m, n),
    (_a, _nm): lambda m, n: ls(n, m),
}


def roles_of(ctx: Ctx, orient: int, frame: dict) -> tuple:
    """Factor roles of a generator with global orientation ``orient``."""
    first, second = ctx.tensor
    labels = (first, second) if orient == MN else (second, first)
    inv = {v: k for k, v in frame.items()}
    return (inv[labels[0]], inv[labels[1]])


def bind_factors(ctx: Ctx, g: int, frame: dict):
    """Generator ``g`` as (kind, roles, {role: basis element})."""
    kind, x, y = ctx.gen_factors(g)
    orient = ctx.gen_decode(g)[1]
    roles = roles_of(ctx, orient, frame)
    return kind, roles, {roles[0]: x, roles[1]: y}
