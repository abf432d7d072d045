"""Crossed modules, cat¹-AWBs and the constructions passing between them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .actions import (AwbAction, action_from_ideal, lift_associative_action, self_action,
                      semidirect, validate_action)
from .algebra import (AwbMorphism, FiniteAwb, bilinear, center, check_morphism, ideal_closure,
                      is_subalgebra, quotient_awb, subalgebra_awb)
from .errors import PreconditionError, ValidationReport, VerificationError, Witness
from .linalg import Subspace, shift


@dataclass
class CrossedModule:
    mu: AwbMorphism       # M -> A
    act: AwbAction        # A acting on M

    @property
    def M(self) -> FiniteAwb:
        return self.mu.source

    @property
    def A(self) -> FiniteAwb:
        return self.mu.target

    def __post_init__(self):
        if self.act.actee.dim != self.mu.source.dim or self.act.actor.dim != self.mu.target.dim:
            raise PreconditionError("action and morphism do not share M and A")


def _cmp(report, axiom, idx, lhs, rhs):
    report.checked += 1
    if lhs != rhs:
        report.witnesses.append(Witness(axiom, idx, lhs, rhs))


def validate_xmod(xm: CrossedModule) -> ValidationReport:
    """CM1 on all (m, a) basis pairs and CM2 on all (m, m') basis pairs."""
    report = ValidationReport(subject="crossed module")
    report.extend(validate_action(xm.act))
    report.extend(check_morphism(xm.mu))
    M, A, act, mu = xm.M, xm.A, xm.act, xm.mu
    F = M.field
    for m, a in itertools.product(range(M.dim), range(A.dim)):
        mm, aa = mu({m: 1}), {a: 1}
        _cmp(report, "cm1.rdot", (m, a), mu(act.rdot[m][a]), bilinear(F, A.mul, mm, aa))
        _cmp(report, "cm1.ldot", (m, a), mu(act.ldot[a][m]), bilinear(F, A.mul, aa, mm))
        _cmp(report, "cm1.rstar", (m, a), mu(act.rstar[m][a]), bilinear(F, A.br, mm, aa))
        _cmp(report, "cm1.lstar", (m, a), mu(act.lstar[a][m]), bilinear(F, A.br, aa, mm))
    for m, n in itertools.product(range(M.dim), repeat=2):
        um, un = mu({m: 1}), mu({n: 1})
        prod, brk = M.mul[m][n], M.br[m][n]
        _cmp(report, "cm2.ldot", (m, n), bilinear(F, act.ldot, um, {n: 1}), prod)
        _cmp(report, "cm2.rdot", (m, n), bilinear(F, act.rdot, {m: 1}, un), prod)
        _cmp(report, "cm2.lstar", (m, n), bilinear(F, act.lstar, um, {n: 1}), brk)
        _cmp(report, "cm2.rstar", (m, n), bilinear(F, act.rstar, {m: 1}, un), brk)
    return report


def xmod_structural_checks(xm: CrossedModule) -> dict:
    """Kernel central, image an ideal, image acting trivially on the kernel.

    Also returns the induced representation of ``A/Im μ`` on ``Ker μ``.
    """
    M, A, act, mu = xm.M, xm.A, xm.act, xm.mu
    F = M.field
    ker, im = mu.kernel(), mu.image()
    out = {
        "kernel_central": ker.is_subspace_of(center(M)),
        "image_ideal": ideal_closure(A, im.basis) == im,
    }
    trivial = True
    for x, k in itertools.product(im.basis, ker.basis):
        for which in ("ldot", "lstar"):
            if bilinear(F, getattr(act, which), x, k):
                trivial = False
        for which in ("rdot", "rstar"):
            if bilinear(F, getattr(act, which), k, x):
                trivial = False
    out["image_acts_trivially"] = trivial
    if not all(out.values()):
        raise VerificationError(f"crossed module structure fails: {out}")
    Q, proj = quotient_awb(A, im, name=f"{A.name}/Im")
    K, _ = subalgebra_awb(M, ker, name="Ker")
    lifts = [proj.section()({q: 1}) for q in range(Q.dim)]
    coords = ker.coordinates
    rng = range(K.dim)
    kb = ker.basis
    ldot = [[coords(bilinear(F, act.ldot, s, kb[k])) for k in rng] for s in lifts]
    rdot = [[coords(bilinear(F, act.rdot, kb[k], s)) for s in lifts] for k in rng]
    lstar = [[coords(bilinear(F, act.lstar, s, kb[k])) for k in rng] for s in lifts]
    rstar = [[coords(bilinear(F, act.rstar, kb[k], s)) for s in lifts] for k in rng]
    rep = AwbAction(Q, K, ldot, rdot, lstar, rstar, name="induced representation")
    out["kernel_abelian"] = K.is_abelian()
    out["representation"] = rep
    out["representation_valid"] = validate_action(rep).valid
    return out


def semidirect_homs(xm: CrossedModule):
    """``(μ, id): M⋊A -> A⋊A``, ``(id, μ): M⋊M -> M⋊A`` and ``φ(m, a) = (-m, μ(m) + a)``."""
    M, A, mu = xm.M, xm.A, xm.mu
    d, a = M.dim, A.dim
    MA = semidirect(xm.act)
    AA = semidirect(self_action(A))
    MM = semidirect(self_action(M))
    f1 = AwbMorphism(MA.awb, AA.awb,
                     [mu({i: 1}) for i in range(d)] + [{a + x: 1} for x in range(a)],
                     name="(mu, id)")
    f2 = AwbMorphism(MM.awb, MA.awb,
                     [{i: 1} for i in range(d)] + [shift(mu({i: 1}), d) for i in range(d)],
                     name="(id, mu)")
    F = M.field
    phi_images = []
    for i in range(d):
        v = {i: F(-1)}
        v.update(shift(mu({i: 1}), d))
        phi_images.append(v)
    phi_images += [{d + x: 1} for x in range(a)]
    phi = AwbMorphism(MA.awb, MA.awb, phi_images, name="phi")
    for f in (f1, f2, phi):
        check_morphism(f).raise_if_invalid(f"{f.name} is not a morphism")
    return f1, f2, phi


# -- morphisms of crossed modules ----------------------------------------------

@dataclass
class XModMorphism:
    source: CrossedModule
    target: CrossedModule
    alpha: AwbMorphism    # M -> M'
    beta: AwbMorphism     # A -> A'


def validate_xmod_morphism(f: XModMorphism) -> ValidationReport:
    report = ValidationReport(subject="crossed module morphism")
    report.extend(check_morphism(f.alpha))
    report.extend(check_morphism(f.beta))
    src, tgt, al, be = f.source, f.target, f.alpha, f.beta
    F = src.M.field
    for m in range(src.M.dim):
        _cmp(report, "commutes", (m,), be(src.mu({m: 1})), tgt.mu(al({m: 1})))
    for a, m in itertools.product(range(src.A.dim), range(src.M.dim)):
        ba, am = be({a: 1}), al({m: 1})
        for which in ("ldot", "lstar"):
            _cmp(report, f"equivariant.{which}", (a, m),
                 al(getattr(src.act, which)[a][m]), bilinear(F, getattr(tgt.act, which), ba, am))
        for which in ("rdot", "rstar"):
            _cmp(report, f"equivariant.{which}", (a, m),
                 al(getattr(src.act, which)[m][a]), bilinear(F, getattr(tgt.act, which), am, ba))
    return report


# -- cat¹-AWBs -----------------------------------------------------------------------

@dataclass
class Cat1Awb:
    R: FiniteAwb
    P: Subspace
    s: AwbMorphism
    t: AwbMorphism

    def __post_init__(self):
        n = self.R.dim
        if self.P.ambient_dim != n or self.s.source.dim != n or self.t.source.dim != n:
            raise PreconditionError("cat1 data have inconsistent dimensions")
        if self.s.target.dim != n or self.t.target.dim != n:
            raise PreconditionError("s and t must be endomorphisms of R")


def validate_cat1(c: Cat1Awb) -> ValidationReport:
    report = ValidationReport(subject="cat1")
    R, P, s, t = c.R, c.P, c.s, c.t
    F = R.field
    for name, f in (("s", s), ("t", t)):
        sub = check_morphism(f)
        for w in sub.witnesses:
            report.witnesses.append(Witness(f"{name}.{w.axiom}", w.indices, w.lhs, w.rhs))
        report.checked += sub.checked
        for i in range(R.dim):
            report.checked += 1
            v = f({i: 1})
            if v not in P:
                report.witnesses.append(Witness(f"{name}.image_in_P", (i,), v, P.reduce(v)))
        for k, p in enumerate(P.basis):
            _cmp(report, f"{name}.identity_on_P", (k,), f(p), p)
    report.checked += 1
    if not is_subalgebra(R, P):
        report.witnesses.append(Witness("P.subalgebra", (), {}, {}))
    ks, kt = s.kernel(), t.kernel()
    for (i, x), (j, y) in itertools.product(enumerate(ks.basis), enumerate(kt.basis)):
        _cmp(report, "ker_s.ker_t", (i, j), bilinear(F, R.mul, x, y), {})
        _cmp(report, "ker_t.ker_s", (i, j), bilinear(F, R.mul, y, x), {})
        _cmp(report, "[ker_s,ker_t]", (i, j), bilinear(F, R.br, x, y), {})
        _cmp(report, "[ker_t,ker_s]", (i, j), bilinear(F, R.br, y, x), {})
    return report


def cat1_to_xmod(c: Cat1Awb) -> CrossedModule:
    """``M = Ker s`` acted on by ``P`` through ``R``, with ``μ = t|_M``."""
    rep = validate_cat1(c)
    if not rep.valid:
        raise PreconditionError(f"not a cat1-AWB: {sorted(rep.axioms())}")
    ker = c.s.kernel()
    act, P, M, inc_p, inc_m = action_from_ideal(c.R, c.P, ker)
    mu = AwbMorphism(M, P, [c.P.coordinates(c.t(k)) for k in ker.basis], name="t|Ker s")
    return CrossedModule(mu, act)


def xmod_to_cat1(xm: CrossedModule) -> Cat1Awb:
    """``R = M⋊A``, ``P = 0⊕A``, ``s(m, a) = a`` and ``t(m, a) = μ(m) + a``."""
    rep = validate_xmod(xm)
    if not rep.valid:
        raise PreconditionError(f"not a crossed module: {sorted(rep.axioms())}")
    sd = semidirect(xm.act)
    R = sd.awb
    d, a = xm.M.dim, xm.A.dim
    P = Subspace.span(R.field, R.dim, [{d + x: 1} for x in range(a)])
    s = AwbMorphism(R, R, [{} for _ in range(d)] + [{d + x: 1} for x in range(a)], name="s")
    t = AwbMorphism(R, R, [shift(xm.mu({i: 1}), d) for i in range(d)]
                    + [{d + x: 1} for x in range(a)], name="t")
    return Cat1Awb(R, P, s, t)


def roundtrip_iso(xm: CrossedModule) -> XModMorphism:
    """Isomorphism ``m -> (m, 0)``, ``a -> (0, a)`` onto the crossed module of ``xmod_to_cat1(xm)``."""
    c = xmod_to_cat1(xm)
    back = cat1_to_xmod(c)
    d = xm.M.dim
    ker = c.s.kernel()
    alpha = AwbMorphism(xm.M, back.M, [ker.coordinates({i: 1}) for i in range(d)], name="alpha")
    beta = AwbMorphism(xm.A, back.A, [c.P.coordinates({d + x: 1}) for x in range(xm.A.dim)],
                       name="beta")
    f = XModMorphism(xm, back, alpha, beta)
    rep = validate_xmod_morphism(f)
    if not rep.valid or not alpha.is_injective() or not alpha.is_surjective() \
            or not beta.is_injective() or not beta.is_surjective():
        raise VerificationError("round trip through cat1 did not give an isomorphism", rep)
    return f


def cat1_roundtrip_iso(c: Cat1Awb) -> AwbMorphism:
    """Isomorphism ``(k, p) -> k + p`` from the cat¹ rebuilt from ``cat1_to_xmod(c)`` onto ``c``.

    Checked to be a bijective morphism carrying ``P'`` onto ``P`` and
    intertwining the two source maps and the two target maps.
    """
    xm = cat1_to_xmod(c)
    c2 = xmod_to_cat1(xm)
    ker = c.s.kernel()
    images = list(ker.basis) + list(c.P.basis)
    g = AwbMorphism(c2.R, c.R, images, name="(k,p)->k+p")
    rep = check_morphism(g)
    ok = rep.valid and g.is_injective() and g.is_surjective()
    ok = ok and Subspace.span(c.R.field, c.R.dim, [g(p) for p in c2.P.basis]) == c.P
    for i in range(c2.R.dim):
        v = {i: 1}
        ok = ok and g(c2.s(v)) == c.s(g(v)) and g(c2.t(v)) == c.t(g(v))
    if not ok:
        raise VerificationError("round trip through crossed modules did not give an isomorphism", rep)
    return g


# -- crossed modules of associative algebras lifted through I and T ---------------------

def lift_associative_xmod(F, m_product, a_product, mu_images, left, right, mode: str):
    """Lift ``μ: M -> A`` with an associative action ``left``/``right`` of ``A`` on ``M``."""
    act = lift_associative_action(F, a_product, m_product, left, right, mode)
    mu = AwbMorphism(act.actee, act.actor, [{k: F(x) for k, x in enumerate(v) if F(x) != 0}
                                            if not isinstance(v, dict) else v
                                            for v in mu_images], name=f"mu[{mode}]")
    return CrossedModule(mu, act)


def ideal_inclusion_xmod(A: FiniteAwb, ideal: Subspace) -> CrossedModule:
    """The inclusion of a two-sided ideal with the action by operations."""
    act, Aw, M, inc_a, inc_m = action_from_ideal(A, Subspace.full(A.field, A.dim), ideal)
    mu = AwbMorphism(M, Aw, list(ideal.basis), name="inclusion")
    return CrossedModule(mu, act)


def zero_xmod(rep: AwbAction) -> CrossedModule:
    """``0: M -> A`` for a representation (abelian ``M``)."""
    return CrossedModule(AwbMorphism.zero(rep.actee, rep.actor), rep)
