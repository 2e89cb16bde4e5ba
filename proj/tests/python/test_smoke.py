import json
import os

import pytest

import inqnl

DATA = os.environ.get("INQNL_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))
FIG1 = os.path.join(DATA, "fig1.json")


@pytest.fixture
def fig1():
    return inqnl.Model.from_file(FIG1)


def test_parse_print_roundtrip():
    f = inqnl.parse("?p => ?q")
    assert str(f) == "?p => ?q"
    assert f.modal_depth == 1
    assert f.is_declarative
    assert not inqnl.parse("?p").is_declarative


def test_resolutions():
    answers = {str(r) for r in inqnl.parse("?p").resolutions()}
    assert answers == {"p", "~p"}


def test_fixture_truths(fig1):
    assert fig1.true_at("w1", "[+]?p")
    assert not fig1.true_at("w2", "[+]?p")
    assert fig1.true_at("w2", "?p => ?q")
    assert not fig1.true_at("w3", "?p => ?q")
    assert fig1.supports([], "bot")
    assert fig1.supports(["wpq", "wnpq"], "?q")


def test_model_json_roundtrip(fig1):
    again = inqnl.Model.from_json(fig1.to_json())
    assert again.worlds == fig1.worlds
    assert again.validate() == []


def test_closure_and_frame(fig1):
    closed = fig1.closure("union")
    assert closed.check_frame_condition("full-union-closure")
    assert not fig1.check_frame_condition("convexity")


def test_bisimulation(fig1):
    assert inqnl.bisimilar(fig1, "w1", fig1, "w2", 0)
    assert not inqnl.bisimilar(fig1, "w1", fig1, "w2", 1)
    assert inqnl.bisimilar(fig1, "w1", fig1, "w1")


def test_characteristic_formula(fig1):
    chi = inqnl.chi_world(fig1, "wpq", 0)
    assert str(chi) == "p & q"
    assert fig1.true_at("wpq", str(chi))


def test_countermodel():
    found = inqnl.find_countermodel(["?p"], "p", max_worlds=2)
    assert found is not None
    model_json, state = found
    assert json.loads(model_json)["worlds"]
    assert inqnl.find_countermodel([], "p => p", max_worlds=2) is None


def test_translations():
    assert str(inqnl.inl_to_modal("box(q ; p)")) == "~(p => ~q)"
    text, count = inqnl.modal_to_inl("p => ~q", ["p", "q"])
    assert count > 1
    with pytest.raises(RuntimeError):
        inqnl.modal_to_inl("?p")


def test_derivation_check():
    report = inqnl.check_derivation_file(
        os.path.join(DATA, "chain_derivation.json"),
        ["p1 & r => q1", "p2 => q2 // r"],
    )
    assert report["ok"]
    assert report["end_formula"] == "p1 & p2 => q1 // q2"


def test_cli_passthrough():
    code, out, err = inqnl.cli(["truth", "-m", FIG1, "-w", "w1", "[+]?p"])
    assert code == 0
    assert out.strip() == "true"
