"""Central extensions, the universal central extension ``A⊠A -> A`` and the
four-term homology sequence of an ideal."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (AwbMorphism, FiniteAwb, bilinear, center, check_morphism, commutator_ideal,
                      is_ideal, is_perfect)
from .errors import PreconditionError, ValidationReport, VerificationError, Witness
from .homology import homology_dims
from .linalg import Matrix, Preimage, QuotientSpace, Subspace, axpy, kernel_basis
from .tensor import ODOT, IdealSequence, TensorProduct, psi_maps, tensor_self


@dataclass
class CentralExtension:
    phi: AwbMorphism      # B -> A
    kernel: Subspace

    @property
    def B(self) -> FiniteAwb:
        return self.phi.source

    @property
    def A(self) -> FiniteAwb:
        return self.phi.target


def validate_central_extension(phi: AwbMorphism) -> CentralExtension:
    """Surjective ``phi`` with ``[[Ker phi, B]] = 0``."""
    rep = check_morphism(phi)
    if not rep.valid:
        raise PreconditionError("not an AWB morphism")
    if not phi.is_surjective():
        raise PreconditionError("not surjective")
    B = phi.source
    ker = phi.kernel()
    full = Subspace.full(B.field, B.dim)
    if commutator_ideal(B, ker, full).dim:
        raise PreconditionError("kernel is not central")
    return CentralExtension(phi, ker)


@dataclass
class UceResult:
    algebra: FiniteAwb
    tensor: TensorProduct
    psi: AwbMorphism
    kernel: Subspace
    h1_dim: int
    checks: dict

    def as_json(self):
        return {"algebra": self.algebra.name, "dim": self.algebra.dim,
                "tensor_dim": self.tensor.awb.dim, "kernel_dim": self.kernel.dim,
                "h1_dim": self.h1_dim, "checks": dict(self.checks),
                "relation_families": dict(self.tensor.family_counts)}


def uce(A: FiniteAwb) -> UceResult:
    """``ψ_A: A⊠A -> A`` for perfect ``A``, certified against ``H_1`` of the chain complex."""
    if not is_perfect(A):
        raise PreconditionError("not perfect")
    t = tensor_self(A)
    psi, _ = psi_maps(t)
    ker = psi.kernel()
    h1 = homology_dims(A, 1)[1]
    checks = {
        "psi_surjective": psi.is_surjective(),
        "kernel_central": ker.is_subspace_of(center(t.awb)),
        "tensor_perfect": is_perfect(t.awb),
        "kernel_equals_h1": ker.dim == h1,
    }
    if not all(checks.values()):
        raise VerificationError(f"universal central extension checks fail: {checks}")
    return UceResult(A, t, psi, ker, h1, checks)


def _alpha(u: UceResult, ce: CentralExtension, reverse: bool) -> list:
    """Images in ``B`` of the generators ``a ⋆ a'`` of ``A⊠A`` through lifted preimages."""
    t = u.tensor
    B = ce.B
    F = B.field
    lift = ce.phi.section(reverse=reverse)
    lifts = [lift({i: 1}) for i in range(u.algebra.dim)]
    gens = []
    for g in range(t.ngens):
        kind, orient, i, j = t.ctx.gen_decode(g)
        table = B.mul if kind == ODOT else B.br
        gens.append(bilinear(F, table, lifts[i], lifts[j]))
    return gens


def universality_check(u: UceResult, ce: CentralExtension) -> dict:
    """The map ``α: A⊠A -> B`` with ``φα = ψ_A``; built from two sections and compared."""
    if not ce.A.same_structure(u.algebra):
        raise PreconditionError("central extension is over a different algebra")
    t = u.tensor
    F = t.field
    results = []
    for reverse in (False, True):
        gens = _alpha(u, ce, reverse)
        for k, r in enumerate(t.relations.basis):
            val = {}
            for g, c in r.items():
                axpy(F, val, c, gens[g])
            if val:
                rep = ValidationReport(witnesses=[Witness("alpha.relation", (k,), val, {})])
                raise VerificationError("alpha does not vanish on the relations", rep)
        alpha = AwbMorphism(t.awb, ce.B, [gens[g] for g in t.quotient.free], name="alpha")
        results.append(alpha)
    alpha, alpha2 = results
    out = {
        "alpha_morphism": check_morphism(alpha).valid,
        "commutes": ce.phi.compose(alpha).same_map(u.psi),
        "section_independent": alpha.same_map(alpha2),
        "sections_differ": _sections_differ(ce),
    }
    if not (out["alpha_morphism"] and out["commutes"] and out["section_independent"]):
        raise VerificationError(f"universality fails: {out}")
    out["alpha"] = alpha
    return out


def _sections_differ(ce: CentralExtension) -> bool:
    a = ce.phi.section()
    b = ce.phi.section(reverse=True)
    return any(a({i: 1}) != b({i: 1}) for i in range(ce.A.dim))


# -- the four-term sequence ---------------------------------------------------------------

def _restricted_image(f: AwbMorphism, S: Subspace) -> Subspace:
    return Subspace.span(f.field, f.target.dim, [f(v) for v in S.basis])


def four_term_sequence(A: FiniteAwb, ideal: Subspace) -> dict:
    """``Ker(ψ_M) -> H_1(A) -> H_1(A/M) -> M/[[A,M]] -> 0`` realized on the ladder."""
    if not is_perfect(A):
        raise PreconditionError("not perfect")
    if not is_ideal(A, ideal):
        raise PreconditionError("M is not a two-sided ideal")
    s = IdealSequence(A, ideal)
    F = A.field
    M, Q = s.M, s.Q
    if not is_perfect(Q):
        raise VerificationError("quotient of a perfect algebra is not perfect")
    psi_a, _ = psi_maps(s.t_aa)
    psi_q, _ = psi_maps(s.t_qq)
    psi_m_ma, _ = psi_maps(s.t_ma)          # M⊠A -> M
    _, psi_m_am = psi_maps(s.t_am)          # A⊠M -> M
    psi = AwbMorphism(s.sd.awb, M, list(psi_m_ma.images) + list(psi_m_am.images), name="psi")
    inc = AwbMorphism(M, s.A, list(ideal.basis), name="inc")
    ladder = {
        "psi_morphism": check_morphism(psi).valid,
        "left_square": inc.compose(psi).same_map(psi_a.compose(s.sigma)),
        "right_square": s.proj.compose(psi_a).same_map(psi_q.compose(s.tau)),
    }
    k_m = psi_m_ma.kernel()
    k_psi = psi.kernel()
    h1a = psi_a.kernel()
    h1q = psi_q.kernel()
    full = Subspace.full(F, A.dim)
    comm = commutator_ideal(s.A, full, ideal)                 # inside A, contained in M
    comm_m = Subspace.span(F, M.dim, [ideal.coordinates(v) for v in comm.basis])
    coker = QuotientSpace(M.dim, comm_m)
    # connecting map: lift through τ, apply ψ_A, read off in M, project mod [[A, M]]
    deltas = []
    for rev in (False, True):
        lift = Preimage(F, s.t_qq.awb.dim, s.tau.images, reverse=rev).solve
        vals = []
        for z in h1q.basis:
            w = lift(z)
            a = psi_a(w)
            m = ideal.coordinates(a) if a in ideal else None
            if m is None:
                raise VerificationError("ψ_A of a lifted kernel class is not in M")
            vals.append(coker.project(m))
        deltas.append(vals)
    delta_well_defined = deltas[0] == deltas[1]
    delta_images = deltas[0]
    tau_on_h1 = _restricted_image(s.tau, h1a)
    ker_tau_on_h1 = h1a & s.tau.kernel()
    first_choice = _restricted_image(s.sigma1, k_m)
    first_snake = _restricted_image(s.sigma, k_psi)
    # kernel of δ on H_1(A/M): combinations of the h1q basis sent to zero
    dmat = Matrix.from_columns(F, coker.dim, delta_images)
    dker = kernel_basis(dmat)
    ker_delta = Subspace.span(F, s.t_qq.awb.dim,
                              [_combine(F, h1q.basis, v) for v in dker.basis])
    dims = {
        "ker_psi_M": k_m.dim, "ker_psi": k_psi.dim, "h1_A": h1a.dim, "h1_A/M": h1q.dim,
        "coker_psi": coker.dim, "image_first": first_choice.dim,
        "image_tau_on_h1": tau_on_h1.dim, "rank_delta": dmat.rank(),
    }
    homology_side = {"h1_A": homology_dims(A, 1)[1], "h1_A/M": homology_dims(Q, 1)[1]}
    exact = {
        "at_h1_A": first_choice == ker_tau_on_h1,
        "at_h1_A_snake_map": first_snake == ker_tau_on_h1,
        "at_h1_A/M": tau_on_h1 == ker_delta,
        "delta_surjective": dmat.rank() == coker.dim,
        "delta_well_defined": delta_well_defined,
        "coker_is_M_mod_commutator": coker.dim == M.dim - comm.dim,
        "kernels_match_homology": homology_side == {"h1_A": h1a.dim, "h1_A/M": h1q.dim},
    }
    out = {"ladder": ladder, "dims": dims, "exact": exact}
    if not all(ladder.values()):
        raise VerificationError(f"four-term ladder does not commute: {out}")
    if not exact["at_h1_A"] and exact["at_h1_A_snake_map"]:
        out["first_map_choice_failure"] = True
        raise VerificationError(f"first map choice fails while the snake map is exact: {out}")
    if not all(exact.values()):
        raise VerificationError(f"four-term sequence is not exact: {out}")
    out["ok"] = True
    return out


def _combine(F, basis, coeffs):
    acc = {}
    for k, c in coeffs.items():
        axpy(F, acc, c, basis[k])
    return acc
