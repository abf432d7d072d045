"""Command-line interface.

Exit codes: 0 when every assertion holds, 1 for a mathematical failure (the
report carries a witness), 2 for malformed input or an unmet precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .actions import semidirect, trivial_mutual, validate_action
from .algebra import (AwbMorphism, center, derived, ideal_closure, is_perfect, poisson_ideal,
                      validate_awb)
from .crossed import (cat1_roundtrip_iso, cat1_to_xmod, roundtrip_iso, validate_cat1,
                      validate_xmod, xmod_structural_checks, xmod_to_cat1)
from .errors import InputError, PreconditionError, VerificationError
from .extensions import four_term_sequence, universality_check, uce, validate_central_extension
from .homology import build_complex, h0_isomorphism_check, homology, homology_dims
from .tensor import (nonabelian_tensor, psi_maps, tensor_self, trivial_tensor_check,
                     xmod_on_tensor)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _vec(F, v: dict) -> dict:
    return {str(k): F.format_scalar(x) for k, x in sorted(v.items())}


def _basis(F, S) -> list:
    return [_vec(F, v) for v in S.basis]


def _algebra_summary(A) -> dict:
    return {"name": A.name, "field": A.field.name, "dim": A.dim}


# -- subcommands ----------------------------------------------------------------------

def cmd_check(args):
    A = io.load(args.algebra, "algebra", allow_invalid=True)
    rep = validate_awb(A)
    return {"algebra": _algebra_summary(A), "validation": rep.as_json()}, rep.valid


def cmd_invariants(args):
    A = io.load(args.algebra, "algebra")
    F = A.field
    Z, D = center(A), derived(A)
    h0 = h0_isomorphism_check(A)
    out = {"algebra": _algebra_summary(A), "center": {"dim": Z.dim, "basis": _basis(F, Z)},
           "derived": {"dim": D.dim, "basis": _basis(F, D)}, "perfect": is_perfect(A),
           "abelianization_dim": A.dim - D.dim, "h0_dim": h0["dim_h0"],
           "poisson_ideal_dim": poisson_ideal(A).dim}
    return out, h0["dim_h0"] == h0["dim_ab"]


def cmd_homology(args):
    A = io.load(args.algebra, "algebra")
    k = args.max_degree
    if k < 0:
        raise PreconditionError("max degree must be non-negative")
    dims = homology_dims(A, k)
    cx = build_complex(A, k + 1)      # raises if d∘d != 0
    out = {"algebra": _algebra_summary(A), "max_degree": k, "dims": dims,
           "chain_dims": cx.dims, "d_squared_zero": True}
    if args.representatives:
        reps = {}
        for deg in range(k + 1):
            h = homology(A, deg, cx)
            reps[str(deg)] = [_vec(A.field, v) for v in h.representatives]
        out["representatives"] = reps
    return out, True


def cmd_action_check(args):
    act = io.load(args.action, "action")
    rep = validate_action(act)
    out = {"actor": _algebra_summary(act.actor), "actee": _algebra_summary(act.actee),
           "validation": rep.as_json(), "equation_status": rep.notes["equation_status"]}
    return out, rep.valid


def cmd_semidirect(args):
    act = io.load(args.action, "action")
    sd = semidirect(act)
    rep = validate_awb(sd.awb)
    split = sd.projection.compose(sd.section).same_map(AwbMorphism.identity(act.actor))
    out = {"semidirect": io.algebra_to_json(sd.awb), "validation": rep.as_json(), "split": split}
    return out, rep.valid and out["split"]


def cmd_xmod(args):
    xm = io.load(args.xmod, "xmod")
    rep = validate_xmod(xm)
    out = {"M": _algebra_summary(xm.M), "A": _algebra_summary(xm.A), "validation": rep.as_json()}
    if args.xmod_cmd == "check":
        if rep.valid:
            st = xmod_structural_checks(xm)
            rp = st.pop("representation")
            st["representation_dims"] = {"actor": rp.actor.dim, "actee": rp.actee.dim}
            out["structure"] = st
        return out, rep.valid
    if not rep.valid:
        raise VerificationError("not a crossed module", rep)
    c = xmod_to_cat1(xm)
    roundtrip_iso(xm)
    out["cat1"] = io.cat1_to_json(c)
    out["roundtrip_isomorphism"] = True
    return out, True


def cmd_cat1(args):
    c = io.load(args.cat1, "cat1")
    rep = validate_cat1(c)
    out = {"R": _algebra_summary(c.R), "P_dim": c.P.dim, "validation": rep.as_json()}
    if args.cat1_cmd == "check":
        return out, rep.valid
    if not rep.valid:
        raise VerificationError("not a cat1-AWB", rep)
    xm = cat1_to_xmod(c)
    cat1_roundtrip_iso(c)
    out["xmod"] = io.xmod_to_json(xm)
    out["roundtrip_isomorphism"] = True
    return out, True


def _tensor_report(t, structure: bool) -> dict:
    rep = validate_awb(t.awb)
    psi_m, psi_n = psi_maps(t)
    xm_m, xm_n = xmod_on_tensor(t)
    out = {"M": _algebra_summary(t.m), "N": _algebra_summary(t.n), "dim": t.awb.dim,
           "generators": t.ngens, "relation_rank": t.relations.dim,
           "families": t.family_counts, "validation": rep.as_json(),
           "psi_M_kernel_dim": psi_m.kernel().dim, "psi_N_kernel_dim": psi_n.kernel().dim,
           "xmod_M_valid": validate_xmod(xm_m).valid, "xmod_N_valid": validate_xmod(xm_n).valid}
    if structure:
        out["structure"] = io.algebra_to_json(t.awb)
    ok = rep.valid and out["xmod_M_valid"] and out["xmod_N_valid"]
    return out, ok


def cmd_tensor(args):
    M = io.load(args.M, "algebra")
    N = io.load(args.N, "algebra")
    if M.field != N.field:
        raise InputError("M and N live over different fields")
    if args.actions:
        p = Path(args.actions)
        mut = io.mutual_from_json(io.read_json(p), str(p), p.parent, M=M, N=N)
    else:
        mut = trivial_mutual(M, N)
    return _tensor_report(nonabelian_tensor(mut), args.structure)


def cmd_tensor_self(args):
    A = io.load(args.algebra, "algebra")
    return _tensor_report(tensor_self(A), args.structure)


def cmd_uce(args):
    A = io.load(args.algebra, "algebra")
    u = uce(A)
    out = u.as_json()
    ok = True
    if args.against:
        phi = io.load(args.against, "morphism")
        ce = validate_central_extension(phi)
        res = universality_check(u, ce)
        out["universality"] = {k: v for k, v in res.items() if k != "alpha"}
        out["universality"]["extension_dim"] = ce.B.dim
        ok = res["alpha_morphism"] and res["commutes"] and res["section_independent"]
    return out, ok


def _parse_generators(text: str, n: int, F):
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = [part.split(",") for part in text.split(";") if part.strip()]
    if not isinstance(data, list) or not all(isinstance(v, list) and len(v) == n for v in data):
        raise InputError(f"--ideal: expected vectors of length {n}")
    try:
        return [{k: F(str(x).strip()) for k, x in enumerate(v) if F(str(x).strip()) != 0}
                for v in data]
    except ValueError as exc:
        raise InputError(f"--ideal: {exc}") from None


def cmd_four_term(args):
    A = io.load(args.algebra, "algebra")
    gens = _parse_generators(args.ideal, A.dim, A.field)
    ideal = ideal_closure(A, gens)
    out = four_term_sequence(A, ideal)
    out["ideal_dim"] = ideal.dim
    return out, out["ok"]


def cmd_trivial_tensor(args):
    M = io.load(args.M, "algebra")
    N = io.load(args.N, "algebra")
    if M.field != N.field:
        raise InputError("M and N live over different fields")
    res = trivial_tensor_check(M, N)
    out = {k: res[k] for k in ("dim", "expected_dim", "abelian", "isomorphism_rank", "families",
                               "ok")}
    out["M"], out["N"] = _algebra_summary(M), _algebra_summary(N)
    return out, res["ok"]


def cmd_export(args):
    from .fixtures import export

    paths = export(args.directory)
    return {"written": [p.name for p in paths], "count": len(paths)}, True


# -- parser and dispatch ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="awb", description="Exact computations with AWBs.")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="validate an algebra file")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_check)
    s = sub.add_parser("invariants", help="center, derived algebra, perfectness, H_0")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_invariants)
    s = sub.add_parser("homology", help="homology dimensions")
    s.add_argument("algebra")
    s.add_argument("--max-degree", type=int, default=2)
    s.add_argument("--representatives", action="store_true")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("action", help="action files")
    asub = s.add_subparsers(dest="action_cmd", required=True)
    a = asub.add_parser("check")
    a.add_argument("action")
    a.set_defaults(func=cmd_action_check)
    s = sub.add_parser("semidirect", help="semidirect product of an action")
    s.add_argument("action")
    s.set_defaults(func=cmd_semidirect)

    s = sub.add_parser("xmod", help="crossed-module files")
    s.add_argument("xmod_cmd", choices=("check", "to-cat1"))
    s.add_argument("xmod")
    s.set_defaults(func=cmd_xmod)
    s = sub.add_parser("cat1", help="cat1-AWB files")
    s.add_argument("cat1_cmd", choices=("check", "to-xmod"))
    s.add_argument("cat1")
    s.set_defaults(func=cmd_cat1)

    s = sub.add_parser("tensor", help="non-abelian tensor product M⊠N")
    s.add_argument("M")
    s.add_argument("N")
    s.add_argument("--actions", help="mutual-action file (trivial actions when omitted)")
    s.add_argument("--structure", action="store_true", help="include structure constants")
    s.set_defaults(func=cmd_tensor)
    s = sub.add_parser("tensor-self", help="A⊠A under the actions by operations")
    s.add_argument("algebra")
    s.add_argument("--structure", action="store_true")
    s.set_defaults(func=cmd_tensor_self)

    s = sub.add_parser("uce", help="universal central extension of a perfect AWB")
    s.add_argument("algebra")
    s.add_argument("--against", help="central extension (morphism file) to test universality")
    s.set_defaults(func=cmd_uce)
    s = sub.add_parser("four-term", help="four-term homology sequence of an ideal")
    s.add_argument("algebra")
    s.add_argument("--ideal", required=True,
                   help="generators as JSON vectors or 'a,b,c;d,e,f'")
    s.set_defaults(func=cmd_four_term)
    s = sub.add_parser("trivial-tensor", help="M⊠N under trivial actions")
    s.add_argument("M")
    s.add_argument("N")
    s.set_defaults(func=cmd_trivial_tensor)
    s = sub.add_parser("export-fixtures", help="write the fixture corpus")
    s.add_argument("directory")
    s.set_defaults(func=cmd_export)
    return p


def _command_name(args) -> str:
    parts = [args.command]
    for attr in ("action_cmd", "xmod_cmd", "cat1_cmd"):
        if getattr(args, attr, None):
            parts.append(getattr(args, attr))
    return " ".join(parts)


_OPAQUE = ("structure", "cat1", "xmod", "semidirect")


def _render_text(report: dict, prefix="") -> list:
    """One ``dotted.key: value`` line per leaf; file payloads stay on one line."""
    lines = []
    for k in sorted(report):
        v = report[k]
        key = f"{prefix}{k}"
        if isinstance(v, dict) and v and k not in _OPAQUE:
            lines.extend(_render_text(v, key + "."))
        else:
            lines.append(f"{key}: {json.dumps(io.to_jsonable(v), sort_keys=True)}")
    return lines


def _emit(report: dict, as_json: bool, stream):
    if as_json:
        stream.write(io.dumps(report))
    else:
        stream.write("\n".join(_render_text(report)) + "\n")


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    base = {"command": _command_name(args), "report_version": io.REPORT_VERSION}
    try:
        body, ok = args.func(args)
        report = {**base, **body, "ok": bool(ok)}
        code = EXIT_OK if ok else EXIT_FAIL
    except VerificationError as exc:
        report = {**base, "ok": False, "error": str(exc)}
        if exc.report is not None:
            rep = exc.report
            report["witness"] = rep.as_json() if hasattr(rep, "as_json") else rep
        code = EXIT_FAIL
    except (InputError, PreconditionError) as exc:
        report = {**base, "ok": False, "error": str(exc)}
        if getattr(exc, "report", None) is not None:
            report["details"] = exc.report
        code = EXIT_INPUT
    _emit(report, args.json, stdout)
    if code and not args.json:
        stderr.write(f"error: {report.get('error', 'assertion failed')}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
