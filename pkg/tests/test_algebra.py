import pytest
from hypothesis import given, settings

from awb import fixtures as fx
from awb.algebra import (AwbMorphism, FiniteAwb, abelianization, associativization, center,
                         change_of_basis, check_morphism, commutator_ideal, derived, direct_sum,
                         evaluate, ideal_closure, is_ideal, is_perfect, poisson_ideal,
                         poisson_quotient, quotient_awb, subalgebra_awb, tautological,
                         validate_associative, validate_awb, with_trivial_bracket)
from awb.errors import PreconditionError, VerificationError
from awb.field import Field
from awb.linalg import Subspace

from strategies import scrambled_products

QQ = Field(0)


@pytest.mark.parametrize("name", fx.algebra_names())
def test_fixture_is_awb(name):
    assert validate_awb(fx.algebra(name)).valid


@pytest.mark.parametrize("name,case", sorted(fx.corrupted().items()))
def test_corrupted_fixture_rejected(name, case):
    with pytest.raises(VerificationError) as exc:
        FiniteAwb(case["field"], case["dim"], case["product"], case["bracket"], name=name)
    w = exc.value.report.witnesses[0]
    assert w.axiom == case["axiom"]
    if case["triple"] is not None:
        assert w.indices == case["triple"]


def test_bad_identity_witness_values():
    case = fx.corrupted()["bad_identity"]
    A = FiniteAwb(case["field"], 1, case["product"], case["bracket"], check=False)
    (w,) = validate_awb(A).witnesses
    assert (w.lhs, w.rhs) == ({0: 1}, {0: 2})


def test_bad_t_m2_first_witness():
    case = fx.corrupted()["bad_t_m2"]
    A = FiniteAwb(QQ, 4, case["product"], case["bracket"], check=False)
    rep = validate_awb(A)
    assert not rep.valid and rep.axioms() == {"awb_identity"}


def test_skew_fail_is_awb_but_not_poisson():
    A = fx.algebra("skew_fail")
    assert validate_awb(A).valid
    assert poisson_ideal(A).dim == 1
    P, _ = poisson_quotient(A)
    assert P.dim == 1 and poisson_ideal(P).dim == 0


def test_poisson_fixture_is_poisson():
    A = fx.algebra("poisson")
    assert poisson_ideal(A).dim == 0
    assert is_perfect(A)          # unital


def test_tautological_bracket_is_commutator():
    T = fx.algebra("t_m2")
    assert evaluate(T, [0, 1, 0, 0], [0, 0, 1, 0], "bracket") == [1, 0, 0, -1]
    assert evaluate(T, [1, 0, 0, 0], [0, 1, 0, 0]) == [0, 1, 0, 0]


def test_non_associative_rejected_by_builders():
    bad = fx.corrupted()["bad_assoc"]["product"]
    assert not validate_associative(QQ, bad).valid
    with pytest.raises(PreconditionError):
        tautological(QQ, bad)


@pytest.mark.parametrize("name,perfect,derived_dim,center_dim", [
    ("ab2", False, 0, 2), ("n2", False, 1, 1), ("t_m2", True, 4, 0), ("i_m2", True, 4, 0),
    ("t_dual", True, 2, 0), ("t_ext3", True, 3, 0), ("t_ext4", True, 4, 1),
    ("skew_fail", False, 1, 1),
])
def test_derived_and_center(name, perfect, derived_dim, center_dim):
    A = fx.algebra(name)
    assert is_perfect(A) == perfect
    assert derived(A).dim == derived_dim
    assert center(A).dim == center_dim


def test_center_is_the_annihilator():
    # z must kill products as well as brackets, so only non-unital fixtures have one
    Z = center(fx.algebra("t_ext4"))
    assert Z == Subspace.span(QQ, 4, [{3: 1}])
    assert center(fx.algebra("n2")) == Subspace.span(QQ, 2, [{1: 1}])


def test_ideal_closure_and_quotient():
    E = fx.algebra("t_ext3")
    I = ideal_closure(E, [{1: 1}])
    assert I.dim == 1 and is_ideal(E, I)
    Q, proj = quotient_awb(E, I)
    assert Q.dim == 2 and check_morphism(proj).valid and proj.is_surjective()
    assert ideal_closure(E, [{0: 1}]).dim == 3


def test_commutator_ideal_needs_ideals():
    E = fx.algebra("t_ext3")
    with pytest.raises(PreconditionError):
        commutator_ideal(E, Subspace.span(QQ, 3, [{0: 1}]), Subspace.full(QQ, 3))


def test_abelianization_and_associativization():
    N = fx.algebra("n2")
    Ab, p = abelianization(N)
    assert Ab.dim == 1 and Ab.is_abelian()
    # commutators generate all of the simple algebra M_2
    assert associativization(fx.algebra("t_m2"))[0].dim == 0
    As, _ = associativization(fx.algebra("poisson"))
    assert As.dim == 2 and As.has_zero_bracket()


def test_direct_sum_maps():
    T = fx.algebra("t_m2")
    S, (i1, i2), (p1, p2) = direct_sum(T, fx.algebra("n2"))
    assert validate_awb(S).valid
    for f in (i1, i2, p1, p2):
        assert check_morphism(f).valid
    assert p1.compose(i1).same_map(AwbMorphism.identity(T))
    assert p2.compose(i1).kernel().dim == 4


def test_subalgebra_rejects_non_closed():
    T = fx.algebra("t_m2")
    with pytest.raises(PreconditionError):
        subalgebra_awb(T, Subspace.span(QQ, 4, [{1: 1}, {2: 1}]))
    D, inc = subalgebra_awb(T, Subspace.span(QQ, 4, [{0: 1}, {3: 1}]))
    assert D.dim == 2 and D.has_zero_bracket() and check_morphism(inc).valid


def test_change_of_basis_is_isomorphism():
    B = fx.algebra("t_ext4")
    B2, iso = change_of_basis(B, [{0: 1}, {1: 1}, {2: 1}, {0: 1, 3: 1}])
    assert validate_awb(B2).valid
    assert check_morphism(iso).valid and iso.is_injective() and iso.is_surjective()
    with pytest.raises(PreconditionError):
        change_of_basis(B, [{0: 1}, {0: 1}, {2: 1}, {3: 1}])


def test_morphism_check_reports_witness():
    T = fx.algebra("t_m2")
    f = AwbMorphism(T, T, [{0: 1}, {1: 2}, {2: 1}, {3: 1}])
    rep = check_morphism(f)
    assert not rep.valid
    assert rep.witnesses[0].axiom.startswith("hom_")


@settings(max_examples=40, deadline=None)
@given(scrambled_products())
def test_scrambled_algebras_lift_to_awbs(case):
    _, product = case
    T = tautological(QQ, product)
    I = with_trivial_bracket(QQ, product)
    assert validate_awb(T).valid and validate_awb(I).valid
    assert poisson_ideal(I).dim == 0


@settings(max_examples=25, deadline=None)
@given(scrambled_products())
def test_invariants_do_not_depend_on_basis(case):
    name, product = case
    from strategies import BASE_PRODUCTS
    base = tautological(QQ, BASE_PRODUCTS[name])
    T = tautological(QQ, product)
    assert is_perfect(T) == is_perfect(base)
    assert center(T).dim == center(base).dim
    assert derived(T).dim == derived(base).dim
