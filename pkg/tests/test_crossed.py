import pytest

from awb import fixtures as fx
from awb.actions import self_action, trivial_action
from awb.algebra import AwbMorphism, check_morphism
from awb.crossed import (Cat1Awb, CrossedModule, XModMorphism, cat1_roundtrip_iso,
                         cat1_to_xmod, roundtrip_iso, semidirect_homs, validate_cat1,
                         validate_xmod, validate_xmod_morphism, xmod_structural_checks,
                         xmod_to_cat1, zero_xmod)
from awb.errors import PreconditionError
from awb.field import Field
from awb.linalg import Subspace

QQ = Field(0)
XMODS = fx.xmods()
CAT1S = fx.cat1s()


@pytest.mark.parametrize("name", sorted(XMODS))
def test_xmod_fixture_valid(name):
    xm = XMODS[name]
    assert validate_xmod(xm).valid
    st = xmod_structural_checks(xm)
    assert st["kernel_abelian"] and st["representation_valid"]


@pytest.mark.parametrize("name", sorted(CAT1S))
def test_cat1_fixture_valid(name):
    assert validate_cat1(CAT1S[name]).valid


def test_ideal_inclusion_kernel_and_cokernel():
    xm = XMODS["ideal_inclusion"]
    assert xm.mu.kernel().dim == 0 and xm.mu.image().dim == 4


def test_zero_map_needs_abelian_source():
    T = fx.algebra("t_m2")
    xm = CrossedModule(AwbMorphism.zero(T, T), self_action(T))
    rep = validate_xmod(xm)
    assert not rep.valid
    assert {w.axiom.split(".")[0] for w in rep.witnesses} == {"cm2"}


def test_wrong_equivariance_detected():
    T = fx.algebra("t_m2")
    xm = CrossedModule(AwbMorphism.identity(T), trivial_action(T, T))
    rep = validate_xmod(xm)
    assert "cm1" in {w.axiom.split(".")[0] for w in rep.witnesses}
    with pytest.raises(PreconditionError):
        xmod_to_cat1(xm)


def test_zero_xmod_of_representation():
    xm = zero_xmod(fx.representation_action())
    assert validate_xmod(xm).valid


def test_semidirect_homs_are_morphisms():
    for name in ("ideal_inclusion_ext3", "representation", "central_extension"):
        f1, f2, phi = semidirect_homs(XMODS[name])
        for f in (f1, f2, phi):
            assert check_morphism(f).valid


@pytest.mark.parametrize("name", sorted(XMODS))
def test_xmod_cat1_xmod_round_trip(name):
    f = roundtrip_iso(XMODS[name])
    assert validate_xmod_morphism(f).valid
    assert f.alpha.is_injective() and f.alpha.is_surjective()


@pytest.mark.parametrize("name", sorted(CAT1S))
def test_cat1_xmod_cat1_round_trip(name):
    g = cat1_roundtrip_iso(CAT1S[name])
    assert g.is_injective() and g.is_surjective()


def test_cat1_from_xmod_shape():
    c = xmod_to_cat1(XMODS["representation"])
    assert c.R.dim == 6 and c.P.dim == 4
    back = cat1_to_xmod(c)
    assert back.M.dim == 2 and back.A.dim == 4


def test_cat1_with_non_annihilating_kernels_fails():
    # R = T(M_2), P = 0, s = t = 0: Ker s = Ker t = R does not annihilate itself
    T = fx.algebra("t_m2")
    z = AwbMorphism.zero(T, T)
    c = Cat1Awb(T, Subspace.zero(QQ, 4), z, z)
    rep = validate_cat1(c)
    assert "ker_s.ker_t" in rep.axioms()
    with pytest.raises(PreconditionError):
        cat1_to_xmod(c)


def test_xmod_morphism_detects_non_commuting_square():
    xm = XMODS["identity"]
    T = xm.M
    f = XModMorphism(xm, xm, AwbMorphism.identity(T), AwbMorphism.zero(T, T))
    assert "commutes" in validate_xmod_morphism(f).axioms()
