"""Actions of one AWB on another, semidirect products, compatibility."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import equations as eqs
from .algebra import (AwbMorphism, FiniteAwb, bilinear, check_morphism, is_ideal, is_subalgebra,
                      subalgebra_awb, tautological, with_trivial_bracket)
from .errors import PreconditionError, ValidationReport, VerificationError
from .linalg import Preimage, Subspace, axpy, shift, vec_to_dense

_MAPS = ("ldot", "rdot", "lstar", "rstar")


def _table(F, rows, cols, data):
    """``rows x cols`` table of sparse vectors from dense data or None."""
    if data is None:
        return [[{} for _ in range(cols)] for _ in range(rows)]
    if len(data) != rows or any(len(r) != cols for r in data):
        raise ValueError(f"action tensor must have leading shape {rows}x{cols}")
    out = []
    for r in data:
        row = []
        for v in r:
            if isinstance(v, dict):
                row.append({k: F(x) for k, x in v.items() if F(x) != 0})
            else:
                row.append({k: F(x) for k, x in enumerate(v) if F(x) != 0})
        out.append(row)
    return out


class AwbAction:
    """Four bilinear maps by which ``actor`` acts on ``actee``.

    ``ldot[a][m] = ^{a·}m``, ``rdot[m][a] = m^{·a}``, ``lstar[a][m] = ^{a∗}m``
    and ``rstar[m][a] = m^{∗a}``, each a sparse vector of ``actee``.
    """

    def __init__(self, actor: FiniteAwb, actee: FiniteAwb, ldot=None, rdot=None,
                 lstar=None, rstar=None, name: str = ""):
        if actor.field != actee.field:
            raise PreconditionError("actor and actee live over different fields")
        F = actor.field
        a, m = actor.dim, actee.dim
        self.actor = actor
        self.actee = actee
        self.ldot = _table(F, a, m, ldot)
        self.rdot = _table(F, m, a, rdot)
        self.lstar = _table(F, a, m, lstar)
        self.rstar = _table(F, m, a, rstar)
        self.name = name
        for t in (self.ldot, self.lstar, self.rdot, self.rstar):
            for row in t:
                for v in row:
                    if v and max(v) >= m:
                        raise ValueError("action value outside the actee")

    @property
    def field(self):
        return self.actor.field

    def tensors(self) -> dict:
        return {k: getattr(self, k) for k in _MAPS}

    def dense(self) -> dict:
        m = self.actee.dim
        return {k: [[vec_to_dense(v, m) for v in row] for row in getattr(self, k)]
                for k in _MAPS}

    def same_as(self, other: "AwbAction") -> bool:
        return all(getattr(self, k) == getattr(other, k) for k in _MAPS)

    def is_trivial(self) -> bool:
        return not any(v for k in _MAPS for row in getattr(self, k) for v in row)

    def apply(self, which: str, x, y):
        """``which`` in ldot/lstar takes (actor, actee) vectors; rdot/rstar (actee, actor)."""
        return bilinear(self.field, getattr(self, which), x, y)

    def context(self) -> eqs.Ctx:
        return eqs.Ctx({"A": self.actor, "M": self.actee}, {("A", "M"): self})

    def __repr__(self):
        return f"AwbAction({self.actor.name} on {self.actee.name})"


def validate_action(act: AwbAction) -> ValidationReport:
    """All twelve action identities on basis triples.

    When the actee is abelian the identities in rows 4-6 are 0 = 0; the
    per-equation status in ``report.notes`` records them as ``vacuous``.
    """
    ctx = act.context()
    report = ValidationReport(subject=f"action {act.name}".strip())
    status = {}
    abelian_actee = act.actee.is_abelian()
    for eq in eqs.ACTION_EQUATIONS:
        sub = ValidationReport()
        eqs.check_table(ctx, [eq], {"a": "A", "m": "M"}, sub)
        if abelian_actee and eq.id in eqs.REPRESENTATION_VACUOUS:
            status[eq.id] = "vacuous"
        else:
            status[eq.id] = "fails" if sub.witnesses else "holds"
        report.extend(sub)
    report.notes["equation_status"] = status
    return report


def trivial_action(A: FiniteAwb, M: FiniteAwb) -> AwbAction:
    return AwbAction(A, M, name="trivial")


def action_from_ideal(B: FiniteAwb, A_sub: Subspace, M_sub: Subspace):
    """Action of a subalgebra on a two-sided ideal through the operations of ``B``.

    Returns ``(action, A, M, inc_A, inc_M)`` with ``A`` and ``M``
    materialized on the canonical bases of the subspaces.
    """
    if not is_subalgebra(B, A_sub):
        raise PreconditionError("acting subspace is not a subalgebra")
    if not is_ideal(B, M_sub):
        raise PreconditionError("acted-on subspace is not a two-sided ideal")
    F = B.field
    A, inc_a = subalgebra_awb(B, A_sub, name=f"{B.name}|A")
    M, inc_m = subalgebra_awb(B, M_sub, name=f"{B.name}|M")
    coords = M_sub.coordinates
    ab, mb = A_sub.basis, M_sub.basis
    ldot = [[coords(bilinear(F, B.mul, a, m)) for m in mb] for a in ab]
    rdot = [[coords(bilinear(F, B.mul, m, a)) for a in ab] for m in mb]
    lstar = [[coords(bilinear(F, B.br, a, m)) for m in mb] for a in ab]
    rstar = [[coords(bilinear(F, B.br, m, a)) for a in ab] for m in mb]
    act = AwbAction(A, M, ldot, rdot, lstar, rstar, name="operations")
    return act, A, M, inc_a, inc_m


def self_action(A: FiniteAwb) -> AwbAction:
    """``A`` acting on itself by its own product and bracket."""
    n = A.dim
    rdot = [[A.mul[m][a] for a in range(n)] for m in range(n)]
    rstar = [[A.br[m][a] for a in range(n)] for m in range(n)]
    return AwbAction(A, A, A.mul, rdot, A.br, rstar, name="self")


def action_from_hom(f: AwbMorphism) -> AwbAction:
    """``A`` acts on ``M`` through ``f: A -> M`` and the operations of ``M``."""
    rep = check_morphism(f)
    if not rep.valid:
        raise PreconditionError("action_from_hom needs an AWB morphism")
    A, M = f.source, f.target
    F = A.field
    n = M.dim
    fa = f.images
    ldot = [[bilinear(F, M.mul, fa[a], {m: 1}) for m in range(n)] for a in range(A.dim)]
    rdot = [[bilinear(F, M.mul, {m: 1}, fa[a]) for a in range(A.dim)] for m in range(n)]
    lstar = [[bilinear(F, M.br, fa[a], {m: 1}) for m in range(n)] for a in range(A.dim)]
    rstar = [[bilinear(F, M.br, {m: 1}, fa[a]) for a in range(A.dim)] for m in range(n)]
    return AwbAction(A, M, ldot, rdot, lstar, rstar, name="via hom")


def _action_via_section(mu: AwbMorphism, section) -> AwbAction:
    M, A = mu.source, mu.target
    F = M.field
    lifts = [section({a: 1}) for a in range(A.dim)]
    rng = range(M.dim)
    ldot = [[bilinear(F, M.mul, s, {m: 1}) for m in rng] for s in lifts]
    rdot = [[bilinear(F, M.mul, {m: 1}, s) for s in lifts] for m in rng]
    lstar = [[bilinear(F, M.br, s, {m: 1}) for m in rng] for s in lifts]
    rstar = [[bilinear(F, M.br, {m: 1}, s) for s in lifts] for m in rng]
    return AwbAction(A, M, ldot, rdot, lstar, rstar, name="via preimages")


def action_from_central_surjection(mu: AwbMorphism) -> AwbAction:
    """Action of ``A`` on ``M`` for a surjection ``mu: M -> A`` with central kernel.

    Operations are taken with pivot-chosen preimages; the result is rebuilt
    with the reversed-pivot section and both must agree.
    """
    from .algebra import center

    if not check_morphism(mu).valid:
        raise PreconditionError("mu is not an AWB morphism")
    if not mu.is_surjective():
        raise PreconditionError("mu is not surjective")
    if not mu.kernel().is_subspace_of(center(mu.source)):
        raise PreconditionError("kernel of mu is not central")
    act = _action_via_section(mu, mu.section())
    other = _action_via_section(mu, mu.section(reverse=True))
    if not act.same_as(other):
        raise VerificationError("induced action depends on the chosen preimages")
    return act


def pullback_action(act: AwbAction, f: AwbMorphism) -> AwbAction:
    """``B`` acts on ``M`` through ``f: B -> A`` and an action of ``A`` on ``M``."""
    if f.target is not act.actor and not f.target.same_structure(act.actor):
        raise PreconditionError("morphism does not land in the acting algebra")
    F = act.field
    B, M = f.source, act.actee
    fb = f.images
    rng = range(M.dim)
    ldot = [[bilinear(F, act.ldot, fb[b], {m: 1}) for m in rng] for b in range(B.dim)]
    lstar = [[bilinear(F, act.lstar, fb[b], {m: 1}) for m in rng] for b in range(B.dim)]
    rdot = [[bilinear(F, act.rdot, {m: 1}, fb[b]) for b in range(B.dim)] for m in rng]
    rstar = [[bilinear(F, act.rstar, {m: 1}, fb[b]) for b in range(B.dim)] for m in rng]
    return AwbAction(B, M, ldot, rdot, lstar, rstar, name=f"pullback({act.name})")


# -- semidirect products ------------------------------------------------------

@dataclass
class Semidirect:
    """``M ⋊ A`` on ``M ⊕ A`` (M coordinates first) with its structure maps."""

    awb: FiniteAwb
    inclusion: AwbMorphism      # m -> (m, 0)
    projection: AwbMorphism     # (m, a) -> a
    section: AwbMorphism        # a -> (0, a)
    action: AwbAction

    @property
    def ideal(self) -> Subspace:
        return self.inclusion.image()


def semidirect(act: AwbAction, check: bool = True) -> Semidirect:
    rep = validate_action(act)
    if not rep.valid:
        raise PreconditionError(f"not an action: {sorted(rep.axioms())}")
    A, M = act.actor, act.actee
    F = A.field
    d, a = M.dim, A.dim
    n = d + a
    mul = [[{} for _ in range(n)] for _ in range(n)]
    br = [[{} for _ in range(n)] for _ in range(n)]
    for i, j in itertools.product(range(d), repeat=2):
        mul[i][j] = dict(M.mul[i][j])
        br[i][j] = dict(M.br[i][j])
    for x, m in itertools.product(range(a), range(d)):
        mul[d + x][m] = dict(act.ldot[x][m])
        mul[m][d + x] = dict(act.rdot[m][x])
        br[d + x][m] = dict(act.lstar[x][m])
        br[m][d + x] = dict(act.rstar[m][x])
    for x, y in itertools.product(range(a), repeat=2):
        mul[d + x][d + y] = shift(A.mul[x][y], d)
        br[d + x][d + y] = shift(A.br[x][y], d)
    name = f"{M.name}⋊{A.name}"
    try:
        S = FiniteAwb(F, n, mul, br, name=name, check=check)
    except VerificationError as exc:
        raise VerificationError(f"semidirect product is not an AWB: {exc}", exc.report)
    inc = AwbMorphism(M, S, [{i: 1} for i in range(d)], name="i")
    proj = AwbMorphism(S, A, [{} for _ in range(d)] + [{x: 1} for x in range(a)], name="pi")
    sec = AwbMorphism(A, S, [{d + x: 1} for x in range(a)], name="s")
    return Semidirect(S, inc, proj, sec, act)


def action_from_split_extension(B: FiniteAwb, i: AwbMorphism, pi: AwbMorphism,
                                s: AwbMorphism) -> AwbAction:
    """Action of ``A`` on ``M`` induced by a split extension ``M -> B -> A``."""
    for f in (i, pi, s):
        if not check_morphism(f).valid:
            raise PreconditionError(f"{f.name or 'map'} is not an AWB morphism")
    M, A = i.source, pi.target
    if not i.is_injective():
        raise PreconditionError("i is not injective")
    if pi.kernel() != i.image():
        raise PreconditionError("sequence is not exact at the middle term")
    if not pi.compose(s).same_map(AwbMorphism.identity(A)):
        raise PreconditionError("s is not a section of pi")
    F = B.field
    inv = Preimage(F, B.dim, i.images).solve
    sa = s.images
    im = i.images
    rng = range(M.dim)
    ldot = [[inv(bilinear(F, B.mul, sa[x], im[m])) for m in rng] for x in range(A.dim)]
    rdot = [[inv(bilinear(F, B.mul, im[m], sa[x])) for x in range(A.dim)] for m in rng]
    lstar = [[inv(bilinear(F, B.br, sa[x], im[m])) for m in rng] for x in range(A.dim)]
    rstar = [[inv(bilinear(F, B.br, im[m], sa[x])) for x in range(A.dim)] for m in rng]
    return AwbAction(A, M, ldot, rdot, lstar, rstar, name="from split extension")


# -- mutual actions ---------------------------------------------------------

class MutualActions:
    """Actions of ``M`` on ``N`` and of ``N`` on ``M``."""

    def __init__(self, m_on_n: AwbAction, n_on_m: AwbAction):
        if m_on_n.actor is not n_on_m.actee or m_on_n.actee is not n_on_m.actor:
            if not (m_on_n.actor.same_structure(n_on_m.actee)
                    and m_on_n.actee.same_structure(n_on_m.actor)):
                raise PreconditionError("mutual actions do not pair the same algebras")
        self.m_on_n = m_on_n
        self.n_on_m = n_on_m

    @property
    def M(self) -> FiniteAwb:
        return self.m_on_n.actor

    @property
    def N(self) -> FiniteAwb:
        return self.m_on_n.actee

    def context(self, tensor=True) -> eqs.Ctx:
        return eqs.Ctx({"M": self.M, "N": self.N},
                       {("M", "N"): self.m_on_n, ("N", "M"): self.n_on_m},
                       tensor=("M", "N") if tensor else None)

    def swapped(self) -> "MutualActions":
        return MutualActions(self.n_on_m, self.m_on_n)

    def is_trivial(self) -> bool:
        return self.m_on_n.is_trivial() and self.n_on_m.is_trivial()


FRAME = {"m": "M", "n": "N"}
SWAPPED = {"m": "N", "n": "M"}


def check_compatibility(mut: MutualActions) -> ValidationReport:
    """The sixteen compatibility identities and their sixteen M/N swaps."""
    ctx = mut.context(tensor=False)
    report = ValidationReport(subject="compatibility")
    eqs.check_table(ctx, eqs.COMPATIBILITY_EQUATIONS, FRAME, report)
    eqs.check_table(ctx, eqs.COMPATIBILITY_EQUATIONS, SWAPPED, report, tag="~swap")
    report.notes["equations"] = 2 * len(eqs.COMPATIBILITY_EQUATIONS)
    return report


def trivial_mutual(M: FiniteAwb, N: FiniteAwb) -> MutualActions:
    return MutualActions(trivial_action(M, N), trivial_action(N, M))


def mutual_from_ideals(A: FiniteAwb, M_sub: Subspace, N_sub: Subspace):
    """Two ideals of ``A`` acting on each other by the operations of ``A``.

    Returns ``(mutual, M, N, inc_M, inc_N)``.
    """
    m_on_n, M, N, inc_m, inc_n = action_from_ideal(A, M_sub, N_sub)
    n_on_m, N2, M2, _, _ = action_from_ideal(A, N_sub, M_sub)
    n_on_m.actor, n_on_m.actee = N, M
    return MutualActions(m_on_n, n_on_m), M, N, inc_m, inc_n


def self_mutual(A: FiniteAwb) -> MutualActions:
    act = self_action(A)
    return MutualActions(act, act)


# -- associative actions lifted through I and T ---------------------------------------

def lift_associative_action(F, a_product, m_product, left, right, mode: str) -> AwbAction:
    """Lift an action of an associative algebra on another to an AWB action.

    ``left[a][m] = a·m`` and ``right[m][a] = m·a``.  ``mode`` is
    ``"trivial_bracket"`` (acting on ``I(M)`` by ``I(A)``) or
    ``"tautological"`` (``T(A)`` on ``T(M)``, star maps are commutators).
    """
    if mode == "trivial_bracket":
        A = with_trivial_bracket(F, a_product, name="I(A)")
        M = with_trivial_bracket(F, m_product, name="I(M)")
    elif mode == "tautological":
        A = tautological(F, a_product, name="T(A)")
        M = tautological(F, m_product, name="T(M)")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    plain = AwbAction(with_trivial_bracket(F, a_product), with_trivial_bracket(F, m_product),
                      left, right)
    rep = ValidationReport()
    ctx = plain.context()
    eqs.check_table(ctx, [e for e in eqs.ACTION_EQUATIONS if e.id.endswith("c1")],
                    {"a": "A", "m": "M"}, rep)
    if not rep.valid:
        raise PreconditionError("not an action of associative algebras")
    ld, rd = plain.ldot, plain.rdot
    if mode == "trivial_bracket":
        return AwbAction(A, M, ld, rd, None, None, name="I-lift")
    lstar = [[axpy(F, dict(ld[a][m]), -1, rd[m][a]) for m in range(M.dim)] for a in range(A.dim)]
    rstar = [[axpy(F, dict(rd[m][a]), -1, ld[a][m]) for a in range(A.dim)] for m in range(M.dim)]
    return AwbAction(A, M, ld, rd, lstar, rstar, name="T-lift")
