import random

import numpy as np
import pytest

from qnetsched.model import ArrivalSpec, NetworkSpec, RequestClass, builtin_scenario
from qnetsched.policy import get_policy
from qnetsched.sim import (
    QueueState,
    SimConfig,
    SlotRecord,
    detect_trend,
    drift_probe,
    run,
    service_frequency_check,
    step,
    write_trace_csv,
)


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(slots=0, seed=1)
    with pytest.raises(ValueError):
        SimConfig(slots=50, seed=1, sample_every=10)  # fewer than 10 samples


def test_step_deterministic_success():
    spec, _ = builtin_scenario("switch3-symmetric")
    arrivals = ArrivalSpec(kind="bernoulli", rates=(0.0, 0.0, 0.0))
    state = QueueState.fresh(3, initial=(1, 0, 0))
    rec = step(state, spec, arrivals, get_policy("maxweight"), random.Random(0))
    assert rec.link_state == (1, 1, 1)
    assert rec.matching == (1, 0, 0)
    assert rec.departures == (1, 0, 0)
    assert state.queues == [0, 0, 0]


def test_step_zero_measurement_probability():
    spec = NetworkSpec(
        num_links=1,
        link_probs=(1.0,),
        classes=(RequestClass(id=0, users=frozenset({"u"}), links=frozenset({0}), q=1e-12),),
    )
    arrivals = ArrivalSpec(kind="bernoulli", rates=(0.0,))
    state = QueueState.fresh(1, initial=(5,))
    rng = random.Random(3)
    for _ in range(50):
        rec = step(state, spec, arrivals, get_policy("maxweight"), rng)
        assert rec.departures == (0,)
    assert state.queues == [5]


def test_golden_record_seed42_net5_low():
    # pinned once from this implementation; guards draw order and stream use
    spec, arrivals = builtin_scenario("net5-low")
    rng = random.Random(42)
    state = QueueState.fresh(spec.num_classes)
    rec = step(state, spec, arrivals, get_policy("maxweight"), rng)
    assert rec == SlotRecord(
        slot=1,
        queues=(0, 0),
        arrivals=(0, 1),
        link_state=(1, 1, 1, 1, 1, 1, 0),
        matching=(0, 1),
        measurements=(0, 0),
        departures=(0, 0),
        mean_queue=0.0,
    )
    rec3 = [step(state, spec, arrivals, get_policy("maxweight"), rng) for _ in range(2)][-1]
    assert rec3 == SlotRecord(
        slot=3,
        queues=(1, 1),
        arrivals=(0, 0),
        link_state=(1, 1, 1, 0, 1, 1, 1),
        matching=(1, 0),
        measurements=(1, 0),
        departures=(1, 0),
        mean_queue=1.0,
    )


def test_arrivals_of_slot_do_not_serve_same_slot():
    spec, _ = builtin_scenario("switch3-symmetric")
    arrivals = ArrivalSpec(kind="bernoulli", rates=(1.0, 1.0, 1.0))
    state = QueueState.fresh(3)  # empty: slot-1 arrivals must not depart in slot 1
    rec = step(state, spec, arrivals, get_policy("maxweight"), random.Random(5))
    assert rec.departures == (0, 0, 0)
    assert state.queues == [1, 1, 1]


def test_zero_arrivals_drain_and_stay_zero():
    spec, _ = builtin_scenario("switch3-symmetric")
    arrivals = ArrivalSpec(kind="bernoulli", rates=(0.0, 0.0, 0.0))
    res = run(
        SimConfig(slots=100, seed=9, sample_every=10),
        spec,
        arrivals,
        initial_queues=(2, 1, 0),
        audit=True,
    )
    assert res.summary.final_Q == (0, 0, 0)
    assert sum(res.summary.service_rates) * 100 == pytest.approx(3)


def test_run_flow_conservation_and_counters():
    spec, arrivals = builtin_scenario("net5-high")
    res = run(SimConfig(slots=3000, seed=17, sample_every=100), spec, arrivals, audit=True)
    total = sum(res.summary.c_sigma_freqs.values())
    assert total == pytest.approx(1.0, abs=1e-12)


def test_run_reproducible():
    spec, arrivals = builtin_scenario("net5-low")
    cfg = SimConfig(slots=2000, seed=123, sample_every=100)
    r1 = run(cfg, spec, arrivals)
    r2 = run(cfg, spec, arrivals)
    assert r1.trace == r2.trace
    assert r1.summary == r2.summary


def test_detect_trend_growing_synthetic():
    rng = np.random.default_rng(1)
    slots = np.arange(1, 20_001, 100)
    s = 0.0667 * slots + rng.normal(0, 5, size=slots.size)
    out = detect_trend(slots, s)
    assert out["verdict"] == "growing"
    assert out["slope"] == pytest.approx(0.0667, rel=0.05)


def test_detect_trend_stable_noise():
    rng = np.random.default_rng(2)
    slots = np.arange(1, 20_001, 100)
    out = detect_trend(slots, 3.0 + rng.normal(0, 0.5, size=slots.size))
    assert out["verdict"] == "stable-looking"


def test_detect_trend_constant_zero():
    slots = np.arange(1, 1001, 100)
    out = detect_trend(slots, np.zeros(slots.size))
    assert out["verdict"] == "stable-looking"
    assert out["slope"] == 0.0


def test_detect_trend_too_few_samples():
    with pytest.raises(ValueError):
        detect_trend([1, 2, 3], [1.0, 2.0, 3.0])


def test_service_frequency_check_zero_rates():
    spec, _ = builtin_scenario("switch3-symmetric")
    arrivals = ArrivalSpec(kind="bernoulli", rates=(0.0, 0.0, 0.0))
    res = run(SimConfig(slots=500, seed=1, sample_every=50), spec, arrivals)
    assert service_frequency_check(res.summary, arrivals.rates) == 0.0


def test_drift_probe_insufficient_data():
    out = drift_probe(np.zeros(500), np.zeros(500), threshold=10.0)
    assert out["status"] == "insufficient data"


def test_trace_csv_schema(tmp_path):
    spec, arrivals = builtin_scenario("net5-low")
    res = run(SimConfig(slots=1000, seed=8, sample_every=100), spec, arrivals)
    path = tmp_path / "trace.csv"
    write_trace_csv(path, res)
    lines = path.read_text().splitlines()
    assert lines[0] == "slot,S,Q_0,Q_1,served_total"
    assert len(lines) == 1 + len(res.trace)
    first = lines[1].split(",")
    assert first[0] == "1"
