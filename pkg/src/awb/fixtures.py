"""Named fixtures: algebras, actions, crossed modules, cat¹-AWBs, extensions.

Every builder is deterministic; ``gf5`` variants reuse the integer structure
constants over GF(5).
"""

from __future__ import annotations

from functools import lru_cache

from .actions import (AwbAction, MutualActions, action_from_central_surjection,
                      lift_associative_action, mutual_from_ideals, self_action, self_mutual,
                      trivial_mutual)
from .algebra import (AwbMorphism, FiniteAwb, abelian, change_of_basis, direct_sum,
                      dual_numbers_product, matrix_algebra_product, tautological,
                      with_trivial_bracket)
from .crossed import (Cat1Awb, CrossedModule, ideal_inclusion_xmod, lift_associative_xmod,
                      xmod_to_cat1)
from .field import Field
from .linalg import Subspace

QQ = Field(0)
GF5 = Field(5)


def _table(n, rules):
    t = [[[0] * n for _ in range(n)] for _ in range(n)]
    for (i, j), vec in rules.items():
        if isinstance(vec, int):
            t[i][j][vec] = 1
        else:
            for k, c in vec.items():
                t[i][j][k] = c
    return t


# e, x, y with ee = e, ex = x, ye = y: perfect, with H_1 of dimension one
EXT3_PRODUCT = _table(3, {(0, 0): 0, (0, 1): 1, (2, 0): 2})
# the same plus a central z = yx
EXT4_PRODUCT = _table(4, {(0, 0): 0, (0, 1): 1, (2, 0): 2, (2, 1): 3})
# x^2 = y
N2_PRODUCT = _table(2, {(0, 0): 1})
# basis (1, x, y) of K[x, y]/(x, y)^2 with {x, y} = x
POISSON_PRODUCT = _table(3, {(0, 0): 0, (0, 1): 1, (0, 2): 2, (1, 0): 1, (2, 0): 2})
POISSON_BRACKET = _table(3, {(1, 2): {1: 1}, (2, 1): {1: -1}})
# zero product and [b, b] = a: an AWB whose bracket is not skew
SKEW_FAIL_BRACKET = _table(2, {(1, 1): 0})


def _algebra(key: str, F: Field, name: str) -> FiniteAwb:
    if key.startswith("ab"):
        return abelian(F, int(key[2:]), name=name)
    if key == "n2":
        return with_trivial_bracket(F, N2_PRODUCT, name=name)
    if key == "t_m2":
        return tautological(F, matrix_algebra_product(2), name=name)
    if key == "i_m2":
        return with_trivial_bracket(F, matrix_algebra_product(2), name=name)
    if key == "t_m2_sum":
        T = tautological(F, matrix_algebra_product(2), name="t_m2")
        return direct_sum(T, T, name=name)[0]
    if key == "poisson":
        return FiniteAwb(F, 3, POISSON_PRODUCT, POISSON_BRACKET, name=name)
    if key == "skew_fail":
        return FiniteAwb(F, 2, None, SKEW_FAIL_BRACKET, name=name)
    if key == "t_dual":
        return tautological(F, dual_numbers_product(), name=name)
    if key == "t_ext3":
        return tautological(F, EXT3_PRODUCT, name=name)
    if key == "i_ext3":
        return with_trivial_bracket(F, EXT3_PRODUCT, name=name)
    if key == "t_ext4":
        return tautological(F, EXT4_PRODUCT, name=name)
    raise KeyError(key)


BASE_ALGEBRAS = ("ab1", "ab2", "ab3", "n2", "t_m2", "i_m2", "t_m2_sum", "poisson",
                 "skew_fail", "t_dual", "t_ext3", "i_ext3", "t_ext4")
GF5_ALGEBRAS = ("ab1", "ab2", "ab3", "n2", "t_m2", "i_m2", "t_m2_sum", "poisson",
                "skew_fail", "t_dual", "t_ext3", "i_ext3", "t_ext4")


@lru_cache(maxsize=None)
def algebra(name: str) -> FiniteAwb:
    """Fixture by name; a ``_gf5`` suffix selects the GF(5) variant."""
    if name.endswith("_gf5"):
        return _algebra(name[:-4], GF5, name)
    return _algebra(name, QQ, name)


def algebra_names() -> list:
    return list(BASE_ALGEBRAS) + [f"{n}_gf5" for n in GF5_ALGEBRAS]


def perfect_names() -> list:
    from .algebra import is_perfect

    return [n for n in algebra_names() if is_perfect(algebra(n))]


def corrupted() -> dict:
    """Three invalid structures with the first witness each must produce."""
    F = QQ
    bad_assoc = _table(2, {(0, 0): 1, (1, 0): 0})     # (aa)a = ba = a, a(aa) = ab = 0
    # x x = x, [x, x] = x: [xx, x] = x but [x, x]x + x[x, x] = 2x
    bad_identity = ([[[1]]], [[[1]]])
    T = algebra("t_m2")
    br = [[dict(T.br[i][j]) for j in range(4)] for i in range(4)]
    br[0][1] = {1: 2}                                  # [e11, e12] doubled
    return {
        "bad_assoc": {"field": F, "dim": 2, "product": bad_assoc, "bracket": None,
                      "axiom": "assoc", "triple": (0, 0, 0), "lhs": {0: 1}, "rhs": {}},
        "bad_identity": {"field": F, "dim": 1, "product": bad_identity[0],
                         "bracket": bad_identity[1], "axiom": "awb_identity",
                         "triple": (0, 0, 0), "lhs": {0: 1}, "rhs": {0: 2}},
        # [e11 e21, e12] = 0 but [e11, e12] e21 + e11 [e21, e12] = 2 e11 - e11
        "bad_t_m2": {"field": F, "dim": 4, "product": T.mul, "bracket": br,
                     "axiom": "awb_identity", "triple": (0, 2, 1), "lhs": {}, "rhs": {0: 1}},
    }


# -- actions, mutual actions ----------------------------------------------------

def representation_action(F: Field = QQ) -> AwbAction:
    """``T(M_2)`` acting on ``K^2`` (abelian) by ``a·v``, with star maps the commutators."""
    left = [[{} for _ in range(2)] for _ in range(4)]
    for a in range(4):
        r, c = divmod(a, 2)
        left[a][c] = {r: 1}
    right = [[{} for _ in range(4)] for _ in range(2)]
    zero = [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]
    act = lift_associative_action(F, matrix_algebra_product(2), zero, left, right, "tautological")
    act.actor = algebra("t_m2" if F.characteristic == 0 else "t_m2_gf5")
    act.actee = algebra("ab2" if F.characteristic == 0 else "ab2_gf5")
    act.name = "t_m2 on K^2"
    return act


def _first_factor(F: Field) -> Subspace:
    return Subspace.span(F, 8, [{i: 1} for i in range(4)])


def _second_factor(F: Field) -> Subspace:
    return Subspace.span(F, 8, [{i: 1} for i in range(4, 8)])


def compatible_pairs(include_large: bool = True) -> dict:
    """Named compatible MutualActions covering self, ideal, trivial and crossed-module pairs."""
    out = {}
    for name in ("ab1", "ab2", "n2", "t_m2", "i_m2", "poisson", "t_dual", "t_ext3", "i_ext3",
                 "n2_gf5", "t_m2_gf5", "t_ext3_gf5"):
        out[f"self:{name}"] = self_mutual(algebra(name))
    for m, n in (("ab2", "ab3"), ("n2", "ab1"), ("t_m2", "ab1"), ("t_m2", "n2"),
                 ("poisson", "ab2")):
        out[f"trivial:{m}x{n}"] = trivial_mutual(algebra(m), algebra(n))
    S = algebra("t_m2_sum")
    mut, _, _, _, _ = mutual_from_ideals(S, _first_factor(QQ), _second_factor(QQ))
    out["ideals:t_m2_sum:first,second"] = mut
    E = algebra("t_ext3")
    mut, _, _, _, _ = mutual_from_ideals(E, Subspace.span(QQ, 3, [{1: 1}]), Subspace.full(QQ, 3))
    out["ideals:t_ext3:x,all"] = mut
    # two crossed modules into T(M_2): 0: K^2 -> T(M_2) and id: T(M_2) -> T(M_2)
    rep = representation_action()
    T = rep.actor
    n_on_m = rep                                   # T(M_2) acts on K^2 through id
    m_on_n = AwbAction(rep.actee, T, name="via zero map")   # K^2 acts through 0
    out["xmods:K2,t_m2"] = MutualActions(m_on_n, n_on_m)
    if include_large:
        mut, _, _, _, _ = mutual_from_ideals(S, _first_factor(QQ), Subspace.full(QQ, 8))
        out["ideals:t_m2_sum:first,all"] = mut
    return out


def trivial_tensor_pairs() -> list:
    """Pairs on which the trivial-action dimension formula is asserted."""
    return [("ab1", "ab1"), ("ab2", "ab3"), ("ab3", "ab3"), ("ab2_gf5", "ab1_gf5"),
            ("t_m2", "t_m2"), ("i_m2", "t_m2"), ("t_m2", "t_dual"), ("t_m2_sum", "i_m2")]


# -- crossed modules and cat¹-AWBs -------------------------------------------------------

def xmods() -> dict:
    out = {}
    S = algebra("t_m2_sum")
    out["ideal_inclusion"] = ideal_inclusion_xmod(S, _first_factor(QQ))
    E = algebra("t_ext3")
    out["ideal_inclusion_ext3"] = ideal_inclusion_xmod(E, Subspace.span(QQ, 3, [{1: 1}]))
    rep = representation_action()
    out["representation"] = CrossedModule(AwbMorphism.zero(rep.actee, rep.actor), rep)
    T = algebra("t_m2")
    out["identity"] = CrossedModule(AwbMorphism.identity(T), self_action(T))
    B = algebra("t_ext4")
    mu = AwbMorphism(B, E, [{0: 1}, {1: 1}, {2: 1}, {}], name="t_ext4 -> t_ext3")
    out["central_extension"] = CrossedModule(mu, action_from_central_surjection(mu))
    T5 = algebra("t_m2_gf5")
    out["identity_gf5"] = CrossedModule(AwbMorphism.identity(T5), self_action(T5))
    out["representation_gf5"] = CrossedModule(
        AwbMorphism.zero(algebra("ab2_gf5"), T5), representation_action(GF5))
    for mode in ("trivial_bracket", "tautological"):
        for key, xm in associative_xmods(mode).items():
            out[f"{key}[{mode}]"] = xm
    return out


def associative_xmods(mode: str) -> dict:
    """Crossed modules of associative algebras lifted through I or T."""
    F = QQ
    # ideal span{x} of the algebra e, x, y
    ideal_prod = [[[0]]]
    left = [[{0: 1} if a == 0 else {}] for a in range(3)]    # e·x = x
    right = [[{} for _ in range(3)]]                           # x·a = 0
    inc = lift_associative_xmod(F, ideal_prod, EXT3_PRODUCT, [{1: 1}], left, right, mode)
    # K^2 under M_2 from the left, zero map
    lft = [[{} for _ in range(2)] for _ in range(4)]
    for a in range(4):
        r, c = divmod(a, 2)
        lft[a][c] = {r: 1}
    rgt = [[{} for _ in range(4)] for _ in range(2)]
    zero = [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]
    rep = lift_associative_xmod(F, zero, matrix_algebra_product(2), [{}, {}], lft, rgt, mode)
    return {"assoc_ideal": inc, "assoc_rep": rep}


def cat1s() -> dict:
    out = {f"from_{k}": xmod_to_cat1(v) for k, v in xmods().items()}
    T = algebra("t_m2")
    idT = AwbMorphism.identity(T)
    out["identity"] = Cat1Awb(T, Subspace.full(QQ, 4), idT, idT)
    return out


# -- central extensions ---------------------------------------------------------------

def _transported_projection(A: FiniteAwb, V_dim: int = 1):
    """``A ⊕ V -> A`` rewritten on a basis where the kernel is not a coordinate axis."""
    V = abelian(A.field, V_dim, name=f"ab{V_dim}")
    S, _, (pA, _) = direct_sum(A, V, name=f"{A.name}+V")
    n = A.dim
    basis = [{i: 1} for i in range(n + V_dim)]
    basis[n] = {0: 1, n: 1}
    B, iso = change_of_basis(S, basis, name=f"({A.name}+V)'")
    return pA.compose(iso)


def central_extensions(name: str) -> dict:
    """Central extensions over the perfect fixture ``name``."""
    A = algebra(name)
    out = {"identity": AwbMorphism.identity(A),
           "split_plus_abelian": _transported_projection(A)}
    if name in ("t_ext3", "t_ext3_gf5"):
        B = algebra(name.replace("t_ext3", "t_ext4"))
        basis = [{0: 1}, {1: 1}, {2: 1}, {0: 1, 3: 1}]
        B2, iso = change_of_basis(B, basis, name="t_ext4'")
        mu = AwbMorphism(B, A, [{0: 1}, {1: 1}, {2: 1}, {}], name="t_ext4 -> t_ext3")
        out["nonsplit"] = mu.compose(iso)
    return out


def _slug(s: str) -> str:
    return "".join(c if c.isalnum() or c in "_-" else "_" for c in s).strip("_")


def corpus() -> dict:
    """Every shipped fixture keyed by file stem."""
    out = {}
    for name in algebra_names():
        out[name] = algebra(name)
    for name, d in corrupted().items():
        out[f"corrupt_{name}"] = FiniteAwb(d["field"], d["dim"], d["product"], d["bracket"],
                                           name=name, check=False)
    out["action_t_m2_on_k2"] = representation_action()
    for name, mut in compatible_pairs().items():
        out[f"mutual_{_slug(name)}"] = mut
    for name, xm in xmods().items():
        out[f"xmod_{_slug(name)}"] = xm
    for name, c in cat1s().items():
        out[f"cat1_{_slug(name)}"] = c
    for a in perfect_names():
        if a.startswith("t_m2_sum"):
            continue
        for name, phi in central_extensions(a).items():
            out[f"ce_{a}_{name}"] = phi
    return out


def export(directory) -> list:
    """Write the corpus as canonical JSON files; returns the paths written."""
    from pathlib import Path

    from .io import save

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    return [save(obj, d / f"{stem}.json") for stem, obj in sorted(corpus().items())]


def right_exactness_data(A: FiniteAwb, K: Subspace, N_sub: Subspace):
    """``(f, g, muts)`` for ``0 -> K -> A -> A/K -> 0`` paired with the ideal ``N_sub``.

    Everything acts by the operations of ``A``; ``A/K`` acts on ``N`` through
    pivot lifts, which is only well defined when ``[[K, N]] = 0``.
    """
    from .algebra import bilinear, quotient_awb

    F = A.field
    full = Subspace.full(F, A.dim)
    mut1, M1, N, _, _ = mutual_from_ideals(A, K, N_sub)
    mut2, M2, _, _, _ = mutual_from_ideals(A, full, N_sub)
    Q, proj = quotient_awb(A, K, name=f"{A.name}/K")
    lift = proj.section()
    lifts = [lift({q: 1}) for q in range(Q.dim)]
    nb = N_sub.basis
    co = N_sub.coordinates
    rq = range(Q.dim)

    def on_n(table, x, y):
        return co(bilinear(F, table, x, y))

    q_on_n = AwbAction(Q, N, [[on_n(A.mul, s, n) for n in nb] for s in lifts],
                       [[on_n(A.mul, n, s) for s in lifts] for n in nb],
                       [[on_n(A.br, s, n) for n in nb] for s in lifts],
                       [[on_n(A.br, n, s) for s in lifts] for n in nb], name="via lifts")
    n_on_q = AwbAction(N, Q, [[proj(bilinear(F, A.mul, n, lifts[q]))
                               for q in rq] for n in nb],
                       [[proj(bilinear(F, A.mul, lifts[q], n)) for n in nb] for q in rq],
                       [[proj(bilinear(F, A.br, n, lifts[q])) for q in rq] for n in nb],
                       [[proj(bilinear(F, A.br, lifts[q], n)) for n in nb] for q in rq],
                       name="operations mod K")
    mut3 = MutualActions(q_on_n, n_on_q)
    f = AwbMorphism(M1, M2, [dict(v) for v in K.basis], name="inc")
    g = AwbMorphism(M2, Q, list(proj.images), name="proj")
    for mut in (mut2, mut3):
        mut.n_on_m.actor = N
        mut.m_on_n.actee = N
    return f, g, (mut1, mut2, mut3)
