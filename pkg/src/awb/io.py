"""JSON file formats and canonical report serialization.

Scalars are strings everywhere ("p/q" or "p" over Q, decimal residues over
GF(p)).  Objects referencing algebras either embed the algebra object or
give a path relative to the referencing file.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .actions import AwbAction, MutualActions
from .algebra import AwbMorphism, FiniteAwb, check_morphism, validate_awb
from .crossed import Cat1Awb, CrossedModule, validate_cat1, validate_xmod
from .errors import InputError, VerificationError
from .field import Field
from .linalg import Subspace, vec_from_dense, vec_to_dense

FORMAT_VERSION = 1
REPORT_VERSION = 1
KINDS = ("algebra", "action", "mutual", "xmod", "cat1", "morphism")


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def to_jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(to_jsonable(v) for v in x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


# -- scalar arrays -------------------------------------------------------------------

def _fmt(F: Field, x) -> str:
    return F.format_scalar(F(x))


def _dense_table(F, table, n) -> list:
    return [[[_fmt(F, c) for c in vec_to_dense(v, n)] for v in row] for row in table]


def _vectors(F, vecs, n) -> list:
    return [[_fmt(F, c) for c in vec_to_dense(v, n)] for v in vecs]


class _Reader:
    """Parses nested scalar arrays, reporting the location of the first problem."""

    def __init__(self, where: str):
        self.where = where

    def fail(self, loc, msg):
        raise InputError(f"{self.where}: {loc}: {msg}")

    def get(self, d, key, loc=""):
        if not isinstance(d, dict) or key not in d:
            self.fail(f"{loc}{key}", "missing")
        return d[key]

    def scalar(self, F, s, loc):
        if not isinstance(s, (str, int)) or isinstance(s, bool):
            self.fail(loc, f"scalar must be a string, got {s!r}")
        try:
            return F(str(s))
        except (ValueError, ZeroDivisionError) as exc:
            self.fail(loc, str(exc))

    def vector(self, F, arr, n, loc):
        if not isinstance(arr, list) or len(arr) != n:
            self.fail(loc, f"expected a list of {n} scalars")
        return vec_from_dense(F, [self.scalar(F, s, f"{loc}[{k}]") for k, s in enumerate(arr)])

    def vectors(self, F, arr, count, n, loc):
        if not isinstance(arr, list) or len(arr) != count:
            self.fail(loc, f"expected {count} vectors")
        return [self.vector(F, v, n, f"{loc}[{i}]") for i, v in enumerate(arr)]

    def table(self, F, arr, rows, cols, n, loc):
        if not isinstance(arr, list) or len(arr) != rows:
            self.fail(loc, f"expected {rows} rows")
        return [self.vectors(F, r, cols, n, f"{loc}[{i}]") for i, r in enumerate(arr)]


def _check_format(r: _Reader, d, kind):
    if not isinstance(d, dict):
        r.fail("", "top level must be an object")
    if d.get("format") != f"awb.{kind}":
        r.fail("format", f"expected 'awb.{kind}', got {d.get('format')!r}")
    if d.get("format_version") != FORMAT_VERSION:
        r.fail("format_version", f"unsupported version {d.get('format_version')!r}")


# -- algebras ---------------------------------------------------------------------------

def algebra_to_json(A: FiniteAwb) -> dict:
    F = A.field
    return {"format": "awb.algebra", "format_version": FORMAT_VERSION, "name": A.name,
            "field": F.name, "dim": A.dim,
            "product": _dense_table(F, A.mul, A.dim), "bracket": _dense_table(F, A.br, A.dim)}


def algebra_from_json(d, where="<algebra>", allow_invalid=False) -> FiniteAwb:
    r = _Reader(where)
    _check_format(r, d, "algebra")
    try:
        F = Field.parse(str(r.get(d, "field")))
    except ValueError as exc:
        r.fail("field", str(exc))
    n = r.get(d, "dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        r.fail("dim", "must be a non-negative integer")
    mul = r.table(F, r.get(d, "product"), n, n, n, "product")
    br = r.table(F, r.get(d, "bracket"), n, n, n, "bracket")
    A = FiniteAwb(F, n, mul, br, name=str(d.get("name", "")), check=False)
    if not allow_invalid:
        rep = validate_awb(A)
        if not rep.valid:
            w = rep.witnesses[0]
            raise VerificationError(f"{where}: not an AWB: {w.axiom} fails at {w.indices}", rep)
    return A


def _ref(d, key, base: Path, r: _Reader, allow_invalid=False) -> FiniteAwb:
    v = r.get(d, key)
    if isinstance(v, str):
        return load(base / v, "algebra", allow_invalid=allow_invalid)
    return algebra_from_json(v, f"{r.where}: {key}", allow_invalid)


# -- actions ----------------------------------------------------------------------------

def _action_tensors(act: AwbAction) -> dict:
    F, m = act.field, act.actee.dim
    return {k: _dense_table(F, getattr(act, k), m) for k in ("ldot", "rdot", "lstar", "rstar")}


def _read_action(r, d, A, M, loc="") -> AwbAction:
    F = A.field
    a, m = A.dim, M.dim
    t = {}
    for k, (rows, cols) in (("ldot", (a, m)), ("rdot", (m, a)), ("lstar", (a, m)),
                            ("rstar", (m, a))):
        t[k] = r.table(F, r.get(d, k, loc), rows, cols, m, f"{loc}{k}") if k in d else None
    return AwbAction(A, M, **t, name=str(d.get("name", "")))


def action_to_json(act: AwbAction) -> dict:
    out = {"format": "awb.action", "format_version": FORMAT_VERSION, "name": act.name,
           "actor": algebra_to_json(act.actor), "actee": algebra_to_json(act.actee)}
    out.update(_action_tensors(act))
    return out


def action_from_json(d, where="<action>", base=Path(".")) -> AwbAction:
    r = _Reader(where)
    _check_format(r, d, "action")
    A = _ref(d, "actor", base, r)
    M = _ref(d, "actee", base, r)
    if A.field != M.field:
        r.fail("actee", "field differs from the actor's")
    return _read_action(r, d, A, M)


def mutual_to_json(mut: MutualActions, embed=True) -> dict:
    out = {"format": "awb.mutual", "format_version": FORMAT_VERSION,
           "m_on_n": _action_tensors(mut.m_on_n), "n_on_m": _action_tensors(mut.n_on_m)}
    if embed:
        out["M"] = algebra_to_json(mut.M)
        out["N"] = algebra_to_json(mut.N)
    return out


def mutual_from_json(d, where="<mutual>", base=Path("."), M=None, N=None) -> MutualActions:
    """Mutual actions; ``M`` and ``N`` override or replace the embedded algebras."""
    r = _Reader(where)
    _check_format(r, d, "mutual")
    M = M if M is not None else _ref(d, "M", base, r)
    N = N if N is not None else _ref(d, "N", base, r)
    if M.field != N.field:
        r.fail("N", "field differs from M's")
    m_on_n = _read_action(r, r.get(d, "m_on_n"), M, N, "m_on_n.")
    n_on_m = _read_action(r, r.get(d, "n_on_m"), N, M, "n_on_m.")
    return MutualActions(m_on_n, n_on_m)


# -- morphisms, crossed modules, cat¹ ----------------------------------------------------------

def morphism_to_json(f: AwbMorphism) -> dict:
    return {"format": "awb.morphism", "format_version": FORMAT_VERSION, "name": f.name,
            "source": algebra_to_json(f.source), "target": algebra_to_json(f.target),
            "images": _vectors(f.field, f.images, f.target.dim)}


def morphism_from_json(d, where="<morphism>", base=Path(".")) -> AwbMorphism:
    r = _Reader(where)
    _check_format(r, d, "morphism")
    S = _ref(d, "source", base, r)
    T = _ref(d, "target", base, r)
    imgs = r.vectors(S.field, r.get(d, "images"), S.dim, T.dim, "images")
    f = AwbMorphism(S, T, imgs, name=str(d.get("name", "")))
    if not check_morphism(f).valid:
        r.fail("images", "not an AWB morphism")
    return f


def xmod_to_json(xm: CrossedModule) -> dict:
    out = {"format": "awb.xmod", "format_version": FORMAT_VERSION,
           "M": algebra_to_json(xm.M), "A": algebra_to_json(xm.A),
           "mu": _vectors(xm.M.field, xm.mu.images, xm.A.dim)}
    out["action"] = _action_tensors(xm.act)
    return out


def xmod_from_json(d, where="<xmod>", base=Path("."), validate=False) -> CrossedModule:
    r = _Reader(where)
    _check_format(r, d, "xmod")
    M = _ref(d, "M", base, r)
    A = _ref(d, "A", base, r)
    mu = AwbMorphism(M, A, r.vectors(M.field, r.get(d, "mu"), M.dim, A.dim, "mu"), name="mu")
    act = _read_action(r, r.get(d, "action"), A, M, "action.")
    xm = CrossedModule(mu, act)
    if validate:
        validate_xmod(xm).raise_if_invalid(f"{where}: not a crossed module")
    return xm


def cat1_to_json(c: Cat1Awb) -> dict:
    F, n = c.R.field, c.R.dim
    return {"format": "awb.cat1", "format_version": FORMAT_VERSION, "R": algebra_to_json(c.R),
            "P": _vectors(F, c.P.basis, n), "s": _vectors(F, c.s.images, n),
            "t": _vectors(F, c.t.images, n)}


def cat1_from_json(d, where="<cat1>", base=Path("."), validate=False) -> Cat1Awb:
    r = _Reader(where)
    _check_format(r, d, "cat1")
    R = _ref(d, "R", base, r)
    F, n = R.field, R.dim
    P = r.get(d, "P")
    if not isinstance(P, list):
        r.fail("P", "expected a list of vectors")
    P = Subspace.span(F, n, r.vectors(F, P, len(P), n, "P"))
    s = AwbMorphism(R, R, r.vectors(F, r.get(d, "s"), n, n, "s"), name="s")
    t = AwbMorphism(R, R, r.vectors(F, r.get(d, "t"), n, n, "t"), name="t")
    c = Cat1Awb(R, P, s, t)
    if validate:
        validate_cat1(c).raise_if_invalid(f"{where}: not a cat1-AWB")
    return c


_WRITERS = {FiniteAwb: algebra_to_json, AwbAction: action_to_json, MutualActions: mutual_to_json,
            AwbMorphism: morphism_to_json, CrossedModule: xmod_to_json, Cat1Awb: cat1_to_json}


def to_json(obj) -> dict:
    for cls, w in _WRITERS.items():
        if isinstance(obj, cls):
            return w(obj)
    raise TypeError(f"no file format for {type(obj).__name__}")


def read_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: cannot read: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load(path, kind=None, allow_invalid=False):
    """Load any supported file; ``kind`` restricts the accepted format."""
    path = Path(path)
    d = read_json(path)
    fmt = d.get("format", "") if isinstance(d, dict) else ""
    got = fmt[4:] if fmt.startswith("awb.") else None
    if got not in KINDS:
        raise InputError(f"{path}: format: unknown format {fmt!r}")
    if kind is not None and got != kind:
        raise InputError(f"{path}: format: expected 'awb.{kind}', got {fmt!r}")
    where, base = str(path), path.parent
    if got == "algebra":
        return algebra_from_json(d, where, allow_invalid)
    if got == "action":
        return action_from_json(d, where, base)
    if got == "mutual":
        return mutual_from_json(d, where, base)
    if got == "morphism":
        return morphism_from_json(d, where, base)
    if got == "xmod":
        return xmod_from_json(d, where, base)
    return cat1_from_json(d, where, base)


def save(obj, path) -> Path:
    path = Path(path)
    path.write_text(dumps(to_json(obj)), encoding="utf-8")
    return path

