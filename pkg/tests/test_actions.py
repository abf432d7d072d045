import pytest
from hypothesis import given, settings

from awb import fixtures as fx
from awb.actions import (AwbAction, MutualActions, action_from_central_surjection,
                         action_from_hom, action_from_ideal, action_from_split_extension,
                         check_compatibility, lift_associative_action, pullback_action,
                         self_action, self_mutual, semidirect, trivial_action, trivial_mutual,
                         validate_action)
from awb.algebra import AwbMorphism, check_morphism, tautological, validate_awb, with_trivial_bracket
from awb.errors import PreconditionError
from awb.field import Field
from awb.linalg import Subspace

from strategies import scrambled_products

QQ = Field(0)


def _round_trip(act):
    sd = semidirect(act)
    assert validate_awb(sd.awb).valid
    back = action_from_split_extension(sd.awb, sd.inclusion, sd.projection, sd.section)
    return back.same_as(act)


@pytest.mark.parametrize("name", ["ab2", "n2", "t_m2", "i_m2", "poisson", "skew_fail",
                                  "t_ext3", "t_ext4", "t_m2_gf5"])
def test_self_action_valid_and_round_trips(name):
    act = self_action(fx.algebra(name))
    assert validate_action(act).valid
    assert _round_trip(act)


def test_trivial_action_every_equation_holds():
    act = trivial_action(fx.algebra("t_m2"), fx.algebra("n2"))
    rep = validate_action(act)
    assert rep.valid
    assert set(rep.notes["equation_status"].values()) == {"holds"}


def test_representation_rows_are_vacuous():
    rep = validate_action(fx.representation_action())
    assert rep.valid
    status = rep.notes["equation_status"]
    assert len(status) == 12
    vac = sorted(k for k, v in status.items() if v == "vacuous")
    assert vac == [f"action.r{r}c{c}" for r in (4, 5, 6) for c in (1, 2)]
    assert _round_trip(fx.representation_action())


def test_corrupted_action_fails_with_witness():
    T = fx.algebra("t_m2")
    good = self_action(T)
    ldot = [[dict(v) for v in row] for row in good.ldot]
    ldot[0][1] = {1: 2}
    bad = AwbAction(T, T, ldot, good.rdot, good.lstar, good.rstar)
    rep = validate_action(bad)
    assert not rep.valid
    assert "fails" in rep.notes["equation_status"].values()
    with pytest.raises(PreconditionError):
        semidirect(bad)


def test_action_from_ideal():
    S = fx.algebra("t_m2_sum")
    act, A, M, inc_a, inc_m = action_from_ideal(S, Subspace.full(QQ, 8),
                                                Subspace.span(QQ, 8, [{i: 1} for i in range(4)]))
    assert validate_action(act).valid
    assert check_morphism(inc_m).valid
    with pytest.raises(PreconditionError):
        action_from_ideal(fx.algebra("t_ext3"), Subspace.full(QQ, 3),
                          Subspace.span(QQ, 3, [{0: 1}]))


def test_action_from_hom_and_pullback():
    B, E = fx.algebra("t_ext4"), fx.algebra("t_ext3")
    mu = AwbMorphism(B, E, [{0: 1}, {1: 1}, {2: 1}, {}])
    assert validate_action(action_from_hom(mu)).valid
    pb = pullback_action(self_action(E), mu)
    assert pb.actor is B and validate_action(pb).valid


def test_central_surjection_action_independent_of_preimages():
    B, E = fx.algebra("t_ext4"), fx.algebra("t_ext3")
    mu = AwbMorphism(B, E, [{0: 1}, {1: 1}, {2: 1}, {}])
    act = action_from_central_surjection(mu)
    assert validate_action(act).valid
    # E ⊕ K -> E with the kernel moved off the coordinate axes
    phi = fx.central_extensions("t_ext3")["split_plus_abelian"]
    assert validate_action(action_from_central_surjection(phi)).valid


def test_central_surjection_rejects_non_central_kernel():
    S = fx.algebra("t_m2_sum")
    T = fx.algebra("t_m2")
    p = AwbMorphism(S, T, [{i: 1} for i in range(4)] + [{}] * 4)
    with pytest.raises(PreconditionError):
        action_from_central_surjection(p)


@pytest.mark.parametrize("mode", ["trivial_bracket", "tautological"])
def test_lifted_associative_actions(mode):
    xm = fx.associative_xmods(mode)["assoc_ideal"]
    assert validate_action(xm.act).valid
    with pytest.raises(ValueError):
        lift_associative_action(QQ, fx.EXT3_PRODUCT, [[[0]]], [[{}]] * 3, [[{}] * 3], "other")


def test_lift_rejects_non_action():
    left = [[{0: 1}] for _ in range(3)]
    with pytest.raises(PreconditionError):
        lift_associative_action(QQ, fx.EXT3_PRODUCT, [[[0]]], left, [[{}] * 3], "tautological")


def test_every_fixture_pair_is_compatible(pairs):
    for name, mut in pairs.items():
        rep = check_compatibility(mut)
        assert rep.valid, name
        assert rep.notes["equations"] == 32
        assert check_compatibility(mut.swapped()).valid, name


def test_incompatible_pair_detected():
    # T(M_2) acting on itself by operations but receiving the zero action back
    T = fx.algebra("t_m2")
    mut = MutualActions(self_action(T), trivial_action(T, T))
    rep = check_compatibility(mut)
    assert not rep.valid
    assert all(w.axiom.startswith("compat.") for w in rep.witnesses)


def test_mutual_actions_must_pair_algebras():
    with pytest.raises(PreconditionError):
        MutualActions(trivial_action(fx.algebra("ab1"), fx.algebra("ab2")),
                      trivial_action(fx.algebra("ab1"), fx.algebra("ab2")))


def test_trivial_mutual_is_trivial():
    assert trivial_mutual(fx.algebra("n2"), fx.algebra("ab1")).is_trivial()
    assert not self_mutual(fx.algebra("t_m2")).is_trivial()


@settings(max_examples=25, deadline=None)
@given(scrambled_products())
def test_semidirect_round_trip_random(case):
    _, product = case
    for A in (tautological(QQ, product), with_trivial_bracket(QQ, product)):
        act = self_action(A)
        assert validate_action(act).valid
        assert _round_trip(act)
        assert check_compatibility(self_mutual(A)).valid
