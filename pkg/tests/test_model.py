import json

import pytest

from qnetsched.model import (
    ArrivalSpec,
    SCENARIO_NAMES,
    SpecError,
    builtin_scenario,
    parse_spec,
    serialize_spec,
)

FIG1_DOC = {
    "num_links": 3,
    "link_probs": [1.0, 1.0, 1.0],
    "classes": [
        {"name": "pair12", "users": ["u1", "u2"], "links": [0, 1], "q": 1.0},
        {"name": "pair23", "users": ["u2", "u3"], "links": [1, 2], "q": 1.0},
        {"name": "pair13", "users": ["u1", "u3"], "links": [0, 2], "q": 1.0},
    ],
    "arrivals": {"kind": "bernoulli", "rates": [0.2, 0.2, 0.2]},
}


def test_parse_fig1_switch():
    spec, arrivals = parse_spec(json.dumps(FIG1_DOC))
    assert spec.num_links == 3
    assert spec.num_classes == 3
    assert spec.link_sets() == ((0, 1), (1, 2), (0, 2))
    assert arrivals.rates == (0.2, 0.2, 0.2)


def test_out_of_range_link_prob_names_link():
    doc = dict(FIG1_DOC, link_probs=[1.0, 1.0, 1.3])
    with pytest.raises(SpecError) as e:
        parse_spec(json.dumps(doc))
    assert e.value.field == "link_probs[2]"


def test_link_index_off_by_one():
    doc = json.loads(json.dumps(FIG1_DOC))
    doc["num_links"] = 7
    doc["link_probs"] = [1.0] * 7
    doc["classes"][0]["links"] = [0, 7]  # valid indices 0..6
    with pytest.raises(SpecError) as e:
        parse_spec(json.dumps(doc))
    assert "links" in e.value.field


def test_missing_field():
    doc = {k: v for k, v in FIG1_DOC.items() if k != "link_probs"}
    with pytest.raises(SpecError) as e:
        parse_spec(json.dumps(doc))
    assert e.value.field == "link_probs"


def test_empty_link_set_rejected():
    doc = json.loads(json.dumps(FIG1_DOC))
    doc["classes"][1]["links"] = []
    with pytest.raises(SpecError):
        parse_spec(json.dumps(doc))


def test_duplicate_class_rejected():
    doc = json.loads(json.dumps(FIG1_DOC))
    doc["classes"].append(dict(doc["classes"][0]))
    doc["arrivals"]["rates"].append(0.1)
    with pytest.raises(SpecError) as e:
        parse_spec(json.dumps(doc))
    assert "classes[3]" == e.value.field


def test_q_factors_product():
    doc = json.loads(json.dumps(FIG1_DOC))
    del doc["classes"][0]["q"]
    doc["classes"][0]["q_factors"] = [0.9, 0.8, 0.5]
    spec, _ = parse_spec(json.dumps(doc))
    assert spec.classes[0].q == pytest.approx(0.9 * 0.8 * 0.5, abs=1e-15)


def test_rate_out_of_range():
    with pytest.raises(SpecError):
        ArrivalSpec(kind="bernoulli", rates=(0.5, 1.2))


def test_roundtrip_identity():
    spec, arrivals = parse_spec(json.dumps(FIG1_DOC))
    spec2, arrivals2 = parse_spec(serialize_spec(spec, arrivals))
    assert spec2 == spec
    assert arrivals2 == arrivals


@pytest.mark.parametrize("name", SCENARIO_NAMES)
def test_builtin_scenarios_valid_and_roundtrip(name):
    spec, arrivals = builtin_scenario(name)
    spec2, arrivals2 = parse_spec(serialize_spec(spec, arrivals))
    assert spec2 == spec
    assert arrivals2 == arrivals


def test_net5_low_parameters():
    spec, arrivals = builtin_scenario("net5-low")
    assert spec.num_links == 7
    assert spec.link_probs == (0.7, 0.8, 0.6, 0.9, 0.9, 0.9, 0.8)
    assert [c.q for c in spec.classes] == [0.75, 0.8]
    assert spec.link_sets() == ((0, 1, 2, 5), (2, 3, 4, 6))
    assert arrivals.rates == (0.095, 0.165)


def test_switch4_unstable_parameters():
    spec, arrivals = builtin_scenario("switch4-unstable")
    assert arrivals.rates == (0.3, 0.3, 0.3, 0.2, 0.45, 0.2)
    assert spec.link_probs == (1.0,) * 4
    assert all(c.q == 1.0 for c in spec.classes)


def test_switch3_symmetric_rate_parameter():
    _, arrivals = builtin_scenario("switch3-symmetric", symmetric_rate=0.25)
    assert arrivals.rates == (0.25, 0.25, 0.25)
    _, default = builtin_scenario("switch3-symmetric")
    assert default.rates == (0.25, 0.25, 0.25)


def test_unknown_scenario():
    with pytest.raises(SpecError):
        builtin_scenario("switch99")
