import json

import pytest

from awb import fixtures as fx
from awb import io
from awb.errors import InputError, VerificationError


@pytest.fixture(scope="module")
def corpus_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("fixtures")
    fx.export(d)
    return d


def test_corpus_round_trips_canonically(corpus_dir):
    files = sorted(corpus_dir.glob("*.json"))
    assert len(files) == len(fx.corpus())
    for p in files:
        obj = io.load(p, allow_invalid=p.stem.startswith("corrupt_"))
        assert io.dumps(io.to_json(obj)) == p.read_text(), p.name


def test_corpus_minimum_contents():
    names = set(fx.corpus())
    for n in ("ab1", "ab2", "ab3", "n2", "t_m2", "i_m2", "t_m2_sum", "poisson",
              "xmod_representation", "xmod_ideal_inclusion", "cat1_from_representation",
              "cat1_from_ideal_inclusion"):
        assert n in names
    for n in ("ab1", "ab2", "ab3", "n2", "t_m2", "i_m2", "poisson", "t_dual", "t_ext3"):
        assert f"{n}_gf5" in names


def test_shipped_fixtures_match_generated():
    from pathlib import Path
    shipped = Path(__file__).resolve().parent.parent / "fixtures"
    for stem, obj in fx.corpus().items():
        assert (shipped / f"{stem}.json").read_text() == io.dumps(io.to_json(obj)), stem


def test_scalars_are_strings():
    d = io.algebra_to_json(fx.algebra("t_m2"))
    flat = [c for plane in d["product"] for row in plane for c in row]
    assert all(isinstance(c, str) for c in flat)
    d5 = io.algebra_to_json(fx.algebra("t_m2_gf5"))
    assert d5["field"] == "GF(5)"
    assert d5["bracket"][1][2] == ["1", "0", "0", "4"]


def test_rationals_parse():
    d = io.algebra_to_json(fx.algebra("ab1"))
    d["product"] = [[["1/2"]]]
    A = io.algebra_from_json(d)
    assert str(A.mul[0][0][0]) == "1/2"
    assert io.algebra_to_json(A)["product"] == [[["1/2"]]]


@pytest.mark.parametrize("mutate,where", [
    (lambda d: d.pop("dim"), "dim"),
    (lambda d: d.update(field="R"), "field"),
    (lambda d: d.update(format="awb.xmod"), "format"),
    (lambda d: d.update(format_version=7), "format_version"),
    (lambda d: d["product"][0].pop(), "product[0]"),
    (lambda d: d["bracket"][0][0].__setitem__(0, 1.5), "bracket[0][0][0]"),
])
def test_malformed_algebra_reports_location(mutate, where):
    d = io.algebra_to_json(fx.algebra("ab2"))
    mutate(d)
    with pytest.raises(InputError) as exc:
        io.algebra_from_json(d, "f.json")
    assert f"f.json: {where}" in str(exc.value)


def test_invalid_algebra_rejected_unless_allowed(tmp_path):
    case = fx.corrupted()["bad_identity"]
    from awb.algebra import FiniteAwb
    A = FiniteAwb(case["field"], 1, case["product"], case["bracket"], check=False)
    p = io.save(A, tmp_path / "bad.json")
    with pytest.raises(VerificationError):
        io.load(p)
    assert io.load(p, allow_invalid=True).dim == 1


def test_algebra_reference_by_path(tmp_path):
    io.save(fx.algebra("t_m2"), tmp_path / "t.json")
    io.save(fx.algebra("ab2"), tmp_path / "k2.json")
    d = io.action_to_json(fx.representation_action())
    d["actor"], d["actee"] = "t.json", "k2.json"
    (tmp_path / "act.json").write_text(json.dumps(d))
    act = io.load(tmp_path / "act.json", "action")
    assert act.same_as(fx.representation_action())


def test_load_rejects_wrong_kind(tmp_path):
    p = io.save(fx.algebra("ab1"), tmp_path / "a.json")
    with pytest.raises(InputError, match="expected 'awb.xmod'"):
        io.load(p, "xmod")


def test_dumps_is_canonical():
    assert io.dumps({"b": 1, "a": [True, None]}) == '{\n  "a": [\n    true,\n    null\n  ],\n  "b": 1\n}\n'
    with pytest.raises(TypeError):
        io.dumps({"x": object()})
