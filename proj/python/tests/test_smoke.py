import os
from pathlib import Path

import pytest

import lefweave

SCRIPTS = Path(os.environ.get("LEFWEAVE_SCRIPTS", Path(__file__).resolve().parents[2] / "scripts"))


def read(name):
    return (SCRIPTS / name).read_text()


def test_first_example_invariants():
    ws = lefweave.Workspace(read("x1.lef"), "x1.lef")
    assert ws.data == ["X1"]
    assert ws.presentation("X1") == "W(rank 2 n=2; e1, tw(e2)^2 e1)"
    inv = ws.invariants("X1")
    assert [g["free"] for g in inv["homology"]] == [1, 0, 1, 1]
    assert inv["chi"] == 1
    assert inv["middle_form"]["symmetry"] == "skew"


def test_classes_are_python_ints():
    ws = lefweave.Workspace(read("x1.lef"))
    assert ws.classes("X1") == [[1, 0], [1, 0]]


def test_verify_and_search():
    ws = lefweave.Workspace(read("x2.lef"))
    res = ws.verify("flex")
    assert res["accepted"] is True
    assert res["hurwitz_moves"] == 1
    found = ws.search("X2", depth=2)
    assert found["result"] == "found"
    assert lefweave.Workspace(read("x1.lef")).search("X1", depth=2)["result"] == "none"


def test_flexify_pipeline():
    ws = lefweave.Workspace(read("sf_t3s.lef"))
    res = ws.flexify("TS3", [[1], [1]])
    assert res["accepted"] is True
    assert res["hurwitz_moves"] == 2


def test_run_matches_exit_codes():
    outputs, code = lefweave.run(read("x1.lef"), "x1.lef", depth=1)
    assert code == 1
    assert [o["command"] for o in outputs] == ["invariants", "verify", "search"]
    _, code = lefweave.run(read("x2.lef"), "x2.lef")
    assert code == 0


def test_pretty_round_trip():
    text = read("x2.lef")
    once = lefweave.pretty(text)
    assert lefweave.pretty(once) == once


def test_errors_carry_location_and_code():
    with pytest.raises(lefweave.LefweaveError) as info:
        lefweave.Workspace("fiber A = ak 3 n=2\ndatum X over A = [tw(e2)^0 e1]\n", "bad.lef")
    assert str(info.value).startswith("bad.lef:2:")
    assert info.value.code == "parse"
    ws = lefweave.Workspace(read("x1.lef"))
    with pytest.raises(lefweave.LefweaveError, match="did you mean 'X1'"):
        ws.invariants("X2")
