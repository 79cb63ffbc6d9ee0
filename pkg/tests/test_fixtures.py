import json
from importlib import resources
from fractions import Fraction as F

import pytest

from thermoforge import FixtureSelfCheckFailed, get_fixture, load_fixtures, thermo_majorizes
from thermoforge.fixtures import PINS, VERDICTS, fixture_from_json


def test_corpus_self_check():
    names = [fx.name for fx in load_fixtures()]
    assert names == ["F1", "F2", "F3", "F4", "F5"]


def test_every_kind_has_a_pin():
    assert {fx.kind for fx in load_fixtures(check=False)} <= set(PINS)


def test_every_expectation_is_known():
    for fx in load_fixtures(check=False):
        assert set(fx.expect) <= set(VERDICTS)
        assert fx.expect["params_in_range"] is True


def test_support_block_majorized():
    fx = get_fixture("F1")
    assert thermo_majorizes(fx.p, fx.q, fx.d)


def test_counterexample_entries():
    fx = get_fixture("F4")
    assert fx.params["phi"] == F(3, 4)
    assert fx.M[1][2] == F(1, 2)


def test_unknown_name():
    with pytest.raises(KeyError):
        get_fixture("F9")


def _doc(name):
    root = resources.files("thermoforge") / "data" / "fixtures"
    path = next(f for f in root.iterdir() if f.name.startswith(name + "_"))
    return json.loads(path.read_text())


def test_wrong_verdict_is_caught():
    doc = _doc("F1")
    doc["expect"]["majorized"] = False
    assert fixture_from_json(doc).check()


def test_pin_outside_interval_is_caught():
    doc = _doc("F4")
    doc["params"]["phi"] = "1/4"
    fx = fixture_from_json(doc)
    assert any("params_in_range" in msg for msg in fx.check())


def test_loader_raises_on_mismatch(monkeypatch):
    real = VERDICTS["majorized"]
    monkeypatch.setitem(VERDICTS, "majorized", lambda fx: not real(fx))
    with pytest.raises(FixtureSelfCheckFailed):
        load_fixtures()
