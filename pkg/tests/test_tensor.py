import itertools

import pytest

from awb import equations as eqs
from awb import fixtures as fx
from awb.actions import MutualActions, self_action, self_mutual, trivial_action, trivial_mutual
from awb.algebra import AwbMorphism, bilinear, check_morphism, is_perfect, validate_awb
from awb.crossed import validate_xmod
from awb.errors import PreconditionError, VerificationError
from awb.field import Field
from awb.linalg import Subspace
from awb.tensor import (DISPLAYED_RELATION_LINES, ia_quotient, ia_subspace, ideal_tensor_sequence,
                        induced_actions, nonabelian_tensor, psi_maps, pure_tensor,
                        right_exactness_check, tensor_functor, trivial_tensor_check,
                        xmod_on_tensor)

from conftest import cached_tensor_self

QQ = Field(0)


def products_dim(A):
    """Dimension of the span of all products ``xy`` (brackets excluded)."""
    return Subspace.span(A.field, A.dim, [v for row in A.mul for v in row]).dim


def trivial_dim_oracle(M, N):
    """Dimension of M⊠N under trivial actions, read off the relations by hand.

    Bilinearity and the interchange rules kill everything built from
    derived elements except the symbols ``x ⊛ (y1 y2)`` and ``(y1 y2) ⊛ x``,
    which no displayed relation reaches.
    """
    from awb.algebra import derived
    ab_m = M.dim - derived(M).dim
    ab_n = N.dim - derived(N).dim
    return (2 * ab_m * ab_n + (M.dim - products_dim(M)) * N.dim
            + (N.dim - products_dim(N)) * M.dim)


def test_relation_counts():
    assert DISPLAYED_RELATION_LINES == 25
    assert eqs.LINEARITY_RELATION_LINES == 3
    assert len(eqs.relation_families()) == 38
    t = cached_tensor_self("t_ext3")
    c = t.family_counts
    assert c["rank"] == c["rank_displayed"] + c["rank_added_by_swap"] == t.relations.dim
    assert t.ngens == 4 * 9


@pytest.mark.parametrize("name,dim,ker", [
    ("t_m2", 4, 0), ("i_m2", 4, 0), ("t_dual", 2, 0), ("t_ext3", 4, 1), ("t_ext4", 4, 0),
    ("ab1", 4, 4), ("n2", 7, 6),
])
def test_self_tensor_dims(name, dim, ker):
    t = cached_tensor_self(name)
    assert t.awb.dim == dim
    psi, psi2 = psi_maps(t)
    assert psi.kernel().dim == ker
    assert psi.same_map(psi2)       # both actions are by operations


def test_swap_frame_is_redundant_for_self_pairs(pairs):
    for name, mut in pairs.items():
        if name.startswith("self:"):
            t = nonabelian_tensor(mut)
            assert t.family_counts["rank_added_by_swap"] == 0, name


def test_swap_frame_matters_for_asymmetric_pairs():
    t = nonabelian_tensor(trivial_mutual(fx.algebra("t_m2"), fx.algebra("n2")))
    assert t.family_counts["rank_added_by_swap"] == 4


@pytest.mark.parametrize("m,n", [("ab1", "ab1"), ("ab2", "ab3"), ("n2", "ab1"), ("n2", "n2"),
                                 ("t_m2", "ab1"), ("t_m2", "ab2"), ("poisson", "ab1"),
                                 ("skew_fail", "ab1"), ("t_m2", "t_dual"), ("i_m2", "n2")])
def test_trivial_action_dimension(m, n):
    M, N = fx.algebra(m), fx.algebra(n)
    t = nonabelian_tensor(trivial_mutual(M, N))
    assert t.awb.dim == trivial_dim_oracle(M, N)
    assert t.awb.is_abelian()


def test_n2_with_k_keeps_star_of_square():
    # x ⊛ 1 dies but (x²) ⊛ 1 = y ⊛ 1 survives alongside the four abelian symbols
    t = nonabelian_tensor(trivial_mutual(fx.algebra("n2"), fx.algebra("ab1")))
    assert t.awb.dim == 5
    with pytest.raises(VerificationError):
        trivial_tensor_check(fx.algebra("n2"), fx.algebra("ab1"))


@pytest.mark.parametrize("m,n", fx.trivial_tensor_pairs())
def test_trivial_tensor_check_passes(m, n):
    res = trivial_tensor_check(fx.algebra(m), fx.algebra(n))
    assert res["ok"] and res["isomorphism_rank"] == res["dim"]


def test_pure_tensor_is_bilinear():
    t = cached_tensor_self("t_ext3")
    x, y, z = {0: 2, 1: 1}, {2: 1}, {1: -3}
    F = t.field
    lhs = pure_tensor(t, x, {2: 1, 1: -3})
    rhs = dict(pure_tensor(t, x, y))
    for k, c in pure_tensor(t, x, z).items():
        rhs[k] = F.norm(rhs.get(k, 0) + c)
    assert lhs == {k: v for k, v in rhs.items() if v}


def test_structure_descends_and_generator_relations():
    t = cached_tensor_self("t_m2")
    assert validate_awb(t.awb).valid
    # (m ⊙ n)(m' ⊙ n') = (m n) ⊙ (m' n') on basis symbols
    for i, j, k, l in itertools.product(range(4), repeat=4):
        a = pure_tensor(t, {i: 1}, {j: 1})
        b = pure_tensor(t, {k: 1}, {l: 1})
        prod = bilinear(t.field, t.awb.mul, a, b)
        M = t.m
        assert prod == pure_tensor(t, M.mul[i][j], M.mul[k][l])


def test_induced_actions_and_xmods(pairs):
    for name, mut in pairs.items():
        if "t_m2_sum" in name:
            continue
        t = nonabelian_tensor(mut)
        psi_m, psi_n = psi_maps(t)
        assert check_morphism(psi_m).valid and check_morphism(psi_n).valid
        xm, xn = xmod_on_tensor(t)
        assert validate_xmod(xm).valid and validate_xmod(xn).valid, name


def test_psi_vanishes_on_relations():
    t = cached_tensor_self("t_ext3")
    from awb.tensor import _psi_gen
    from awb.actions import FRAME
    for r in t.relations.basis:
        acc = {}
        for g, c in r.items():
            for k, x in _psi_gen(t, g, FRAME).items():
                acc[k] = t.field.norm(acc.get(k, 0) + c * x)
        assert not any(acc.values())


def test_incompatible_actions_rejected():
    T = fx.algebra("t_m2")
    with pytest.raises(PreconditionError):
        nonabelian_tensor(MutualActions(self_action(T), trivial_action(T, T)))


def test_functor_identity_and_composition():
    E = fx.algebra("t_ext3")
    t = cached_tensor_self("t_ext3")
    idE = AwbMorphism.identity(E)
    h = tensor_functor(idE, idE, t, t)
    assert h.same_map(AwbMorphism.identity(t.awb))
    B = fx.algebra("t_ext4")
    mu = AwbMorphism(B, E, [{0: 1}, {1: 1}, {2: 1}, {}])
    tb = cached_tensor_self("t_ext4")
    g = tensor_functor(mu, mu, tb, t)
    assert check_morphism(g).valid
    # ψ is natural: ψ_E ∘ (μ⊠μ) = μ ∘ ψ_B
    assert psi_maps(t)[0].compose(g).same_map(mu.compose(psi_maps(tb)[0]))


def test_functor_needs_equivariant_maps():
    E = fx.algebra("t_ext3")
    t = cached_tensor_self("t_ext3")
    z = AwbMorphism.zero(E, E)
    with pytest.raises(PreconditionError):
        tensor_functor(AwbMorphism.identity(E), z, t, t)


def test_right_exactness_with_central_ideal():
    B = fx.algebra("t_ext4")
    Z = Subspace.span(QQ, 4, [{3: 1}])
    rep = right_exactness_check(*fx.right_exactness_data(B, Z, Z))
    c = rep["conclusion"]
    assert c["dims"] == [4, 4, 3] and c["image_f"] == c["kernel_g"] == 1


def test_right_exactness_needs_well_defined_quotient_action():
    E = fx.algebra("t_ext3")
    K = Subspace.span(QQ, 3, [{1: 1}])
    with pytest.raises(PreconditionError) as exc:
        right_exactness_check(*fx.right_exactness_data(E, K, Subspace.full(QQ, 3)))
    assert exc.value.report["hypotheses"]["g_preserves_actions"] is False


def test_ideal_sequence_on_small_algebra():
    B = fx.algebra("t_ext4")
    res = ideal_tensor_sequence(B, Subspace.span(QQ, 4, [{3: 1}]))
    assert res["ok"] and res["kernel_equals_image"] and res["tau_prime_inverse"]


@pytest.mark.parametrize("name", ["t_m2", "i_m2", "t_dual", "t_ext3", "t_ext4", "t_m2_gf5"])
def test_ia_model(name):
    res = ia_quotient(fx.algebra(name))
    assert res["bijective"] and res["dim"] == res["tensor_dim"]


def test_ia_for_non_perfect_has_no_isomorphism():
    res = ia_quotient(fx.algebra("n2"))
    assert res["isomorphism"] is None and not res["perfect"]
    assert ia_subspace(fx.algebra("ab1")).dim == 0
