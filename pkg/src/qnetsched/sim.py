"""Seeded slot-by-slot queue simulation with stability diagnostics.

Randomness comes from a single per-run Mersenne Twister (random.Random) with
a fixed draw order per slot: link outcomes, one tie-break draw for the
policy, measurement outcomes for selected servable classes in ascending
class order, then arrivals. Traces are therefore bit-reproducible for a
given (seed, config, spec).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .matching import BitVector
from .model import ArrivalSpec, NetworkSpec
from .policy import SchedulerInput, get_policy

TREND_SLOPE_MIN = 1e-4
DRIFT_MIN_SLOTS = 1000


@dataclass(frozen=True)
class SimConfig:
    slots: int
    seed: int
    sample_every: int = 1000
    policy: str = "maxweight"
    drift_threshold: float | None = None

    def __post_init__(self):
        if self.slots < 1:
            raise ValueError("slots must be positive")
        if self.sample_every < 1 or self.slots // self.sample_every < 10:
            raise ValueError("sample_every must yield at least 10 samples")


@dataclass
class QueueState:
    queues: list[int]
    initial: tuple[int, ...]
    cum_arrivals: list[int]
    cum_departures: list[int]
    c_sigma: dict[BitVector, int] = field(default_factory=dict)
    slot: int = 0  # number of completed slots

    @classmethod
    def fresh(cls, num_classes: int, initial: tuple[int, ...] | None = None) -> "QueueState":
        q0 = tuple(initial) if initial is not None else (0,) * num_classes
        return cls(
            queues=list(q0),
            initial=q0,
            cum_arrivals=[0] * num_classes,
            cum_departures=[0] * num_classes,
        )


@dataclass(frozen=True)
class SlotRecord:
    slot: int
    queues: tuple[int, ...]  # Q(n) at the beginning of the slot
    arrivals: BitVector
    link_state: BitVector
    matching: BitVector
    measurements: BitVector
    departures: BitVector
    mean_queue: float  # average queue size at the beginning of the slot


@dataclass
class RunSummary:
    policy: str
    seed: int
    slots: int
    mean_S: float
    final_Q: tuple[int, ...]
    service_rates: tuple[float, ...]
    c_sigma_freqs: dict[BitVector, float]
    trend: dict
    drift: dict

    def to_dict(self) -> dict:
        return {
            "policy": self.policy,
            "seed": self.seed,
            "slots": self.slots,
            "mean_S": self.mean_S,
            "final_Q": list(self.final_Q),
            "service_rates": list(self.service_rates),
            "c_sigma_freqs": {
                "".join(map(str, sigma)): f for sigma, f in sorted(self.c_sigma_freqs.items())
            },
            "trend": self.trend,
            "drift": self.drift,
        }


@dataclass
class RunResult:
    summary: RunSummary
    trace: list[SlotRecord]
    sample_slots: np.ndarray
    sample_S: np.ndarray
    sample_served: np.ndarray  # cumulative departures (all classes) at each sample
    queue_norms: np.ndarray  # ||Q(n)|| at the beginning of each slot
    drift_values: np.ndarray  # V(Q(n+1)) - V(Q(n)) per slot


def step(
    state: QueueState,
    spec: NetworkSpec,
    arrivals: ArrivalSpec,
    policy_fn,
    rng: random.Random,
) -> SlotRecord:
    """Advance one slot in place and return its record.

    Arrivals of the current slot are drawn after departures, so they never
    affect the current slot's service.
    """
    m = spec.num_classes
    sets = spec.link_sets()
    q_before = list(state.queues)

    link_state = tuple(
        1 if rng.random() < p else 0 for p in spec.link_probs
    )
    decision = policy_fn(
        SchedulerInput(
            queues=tuple(q_before),
            link_state=link_state,
            tie_break_draw=rng.random(),
        ),
        spec,
    )
    w = decision.matching
    meas = [0] * m
    dep = [0] * m
    for i in range(m):
        if w[i] and q_before[i] > 0 and all(link_state[j] for j in sets[i]):
            meas[i] = 1 if rng.random() < spec.classes[i].q else 0
            dep[i] = meas[i]
    arr = tuple(1 if rng.random() < lam else 0 for lam in arrivals.rates)

    for i in range(m):
        state.queues[i] = q_before[i] - dep[i] + arr[i]
        assert state.queues[i] >= 0, f"negative queue for class {i}"
        state.cum_arrivals[i] += arr[i]
        state.cum_departures[i] += dep[i]
    dep_t = tuple(dep)
    state.c_sigma[dep_t] = state.c_sigma.get(dep_t, 0) + 1
    state.slot += 1

    return SlotRecord(
        slot=state.slot,
        queues=tuple(q_before),
        arrivals=arr,
        link_state=link_state,
        matching=w,
        measurements=tuple(meas),
        departures=dep_t,
        mean_queue=sum(q_before) / m,
    )


def detect_trend(sample_slots, sample_S) -> dict:
    """Heuristic growth verdict from decimated mean-queue samples.

    Fits a least-squares slope (per slot) over the last half of the samples;
    "growing" needs both a slope above TREND_SLOPE_MIN and a last-decile mean
    above twice the first-decile mean.
    """
    slots = np.asarray(sample_slots, dtype=float)
    vals = np.asarray(sample_S, dtype=float)
    n = len(vals)
    if n < 10:
        raise ValueError("need at least 10 samples for a trend verdict")
    half = n // 2
    slope = float(np.polyfit(slots[half:], vals[half:], 1)[0])
    dec = max(1, n // 10)
    first, last = float(np.mean(vals[:dec])), float(np.mean(vals[-dec:]))
    growing = slope > TREND_SLOPE_MIN and last > 2.0 * first
    return {
        "verdict": "growing" if growing else "stable-looking",
        "slope": slope,
        "heuristic": True,
    }


def drift_probe(queue_norms, drift_values, threshold: float) -> dict:
    """Mean quadratic-Lyapunov drift over slots with ||Q|| at or above threshold."""
    norms = np.asarray(queue_norms, dtype=float)
    dv = np.asarray(drift_values, dtype=float)
    mask = norms >= threshold
    count = int(mask.sum())
    if count < DRIFT_MIN_SLOTS:
        return {"status": "insufficient data", "count": count}
    vals = dv[mask]
    mean = float(vals.mean())
    sem = float(vals.std(ddof=1) / np.sqrt(count)) if count > 1 else float("inf")
    return {"status": "ok", "mean": mean, "sem": sem, "count": count, "threshold": threshold}


def service_frequency_check(summary: RunSummary, rates) -> float:
    """Largest per-class gap between arrival rate and empirical departure rate."""
    return max(
        abs(lam - r) for lam, r in zip(rates, summary.service_rates)
    )


def run(
    config: SimConfig,
    spec: NetworkSpec,
    arrivals: ArrivalSpec,
    initial_queues: tuple[int, ...] | None = None,
    audit: bool = False,
) -> RunResult:
    """Simulate config.slots slots and assemble summary, trace, and diagnostics.

    With audit=True, flow conservation and the service-vector counter total
    are verified after every slot.
    """
    if len(arrivals.rates) != spec.num_classes:
        raise ValueError("arrival rates do not match the number of classes")
    policy_fn = get_policy(config.policy)
    rng = random.Random(config.seed)
    state = QueueState.fresh(spec.num_classes, initial_queues)

    n_max = config.slots
    norms = np.empty(n_max)
    dvals = np.empty(n_max)
    trace: list[SlotRecord] = []
    sample_slots: list[int] = []
    sample_S: list[float] = []
    sample_served: list[int] = []
    s_total = 0.0

    v_before = float(sum(q * q for q in state.queues))
    for n in range(1, n_max + 1):
        norms[n - 1] = v_before**0.5
        rec = step(state, spec, arrivals, policy_fn, rng)
        v_after = float(sum(q * q for q in state.queues))
        dvals[n - 1] = v_after - v_before
        v_before = v_after
        s_total += rec.mean_queue
        if n == 1 or n % config.sample_every == 0:
            trace.append(rec)
            sample_slots.append(n)
            sample_S.append(rec.mean_queue)
            sample_served.append(sum(state.cum_departures))
        if audit:
            for i in range(spec.num_classes):
                assert (
                    state.queues[i]
                    == state.initial[i] + state.cum_arrivals[i] - state.cum_departures[i]
                ), f"flow conservation violated for class {i} at slot {n}"
            assert sum(state.c_sigma.values()) == n, f"counter total != {n}"

    threshold = (
        config.drift_threshold
        if config.drift_threshold is not None
        else float(np.percentile(norms, 80))
    )
    n_arr = np.asarray(sample_slots)
    s_arr = np.asarray(sample_S)
    summary = RunSummary(
        policy=config.policy,
        seed=config.seed,
        slots=n_max,
        mean_S=s_total / n_max,
        final_Q=tuple(state.queues),
        service_rates=tuple(d / n_max for d in state.cum_departures),
        c_sigma_freqs={s: c / n_max for s, c in state.c_sigma.items()},
        trend=detect_trend(n_arr, s_arr),
        drift=drift_probe(norms, dvals, threshold),
    )
    return RunResult(
        summary=summary,
        trace=trace,
        sample_slots=n_arr,
        sample_S=s_arr,
        sample_served=np.asarray(sample_served),
        queue_norms=norms,
        drift_values=dvals,
    )


def write_trace_csv(path, result: RunResult) -> None:
    """Write the decimated trace in the documented CSV schema."""
    if not result.trace:
        raise ValueError("empty trace")
    m = len(result.trace[0].departures)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("slot,S," + ",".join(f"Q_{i}" for i in range(m)) + ",served_total\n")
        for rec, served in zip(result.trace, result.sample_served):
            fh.write(
                f"{rec.slot},{rec.mean_queue:.6f},"
                + ",".join(str(q) for q in rec.queues)
                + f",{served}\n"
            )
