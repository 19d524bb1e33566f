"""Scheduling policies: pick a matching from the queue sizes and link outcomes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .matching import BitVector, enumerate_matchings
from .model import NetworkSpec

POLICY_NAMES = ("maxweight", "lqf", "lqf-servable", "random")


@dataclass(frozen=True)
class SchedulerInput:
    queues: tuple[int, ...]
    link_state: BitVector
    tie_break_draw: float  # uniform in [0, 1), supplied by the simulation stream


@dataclass(frozen=True)
class PolicyDecision:
    matching: BitVector
    weight: float
    num_maximizers: int


def _links_up(i: int, link_state: Sequence[int], sets) -> bool:
    return all(link_state[j] for j in sets[i])


def weight_of(pi: BitVector, queues: Sequence[float], link_state: Sequence[int], spec: NetworkSpec) -> float:
    """Objective value of a matching: sum of q_i * Q_i over servable selected classes."""
    sets = spec.link_sets()
    total = 0.0
    for i, b in enumerate(pi):
        if b and queues[i] > 0 and _links_up(i, link_state, sets):
            total += spec.classes[i].q * queues[i]
    return total


def max_weight_select(inp: SchedulerInput, spec: NetworkSpec) -> PolicyDecision:
    """Matching with the largest weight; ties broken uniformly via the draw."""
    matchings = enumerate_matchings(spec)
    weights = [weight_of(pi, inp.queues, inp.link_state, spec) for pi in matchings]
    best = max(weights)
    maximizers = [pi for pi, w in zip(matchings, weights) if w == best]
    chosen = maximizers[min(int(inp.tie_break_draw * len(maximizers)), len(maximizers) - 1)]
    return PolicyDecision(matching=chosen, weight=best, num_maximizers=len(maximizers))


def _complete_to_matching(i_star: int, spec: NetworkSpec) -> BitVector:
    """Lexicographically first matching containing the chosen class."""
    for pi in enumerate_matchings(spec):
        if pi[i_star]:
            return pi
    raise AssertionError(f"no matching contains class {i_star}")  # unreachable


def _pick_argmax(candidates: list[int], queues: Sequence[int], draw: float) -> int:
    top = max(queues[i] for i in candidates)
    ties = [i for i in candidates if queues[i] == top]
    return ties[min(int(draw * len(ties)), len(ties) - 1)]


def lqf_select(inp: SchedulerInput, spec: NetworkSpec) -> PolicyDecision:
    """Longest-queue-first, blind to link outcomes (ties uniform)."""
    i_star = _pick_argmax(list(range(spec.num_classes)), inp.queues, inp.tie_break_draw)
    chosen = _complete_to_matching(i_star, spec)
    return PolicyDecision(
        matching=chosen,
        weight=weight_of(chosen, inp.queues, inp.link_state, spec),
        num_maximizers=1,
    )


def lqf_servable_select(inp: SchedulerInput, spec: NetworkSpec) -> PolicyDecision:
    """Variant restricting the queue argmax to currently servable classes."""
    sets = spec.link_sets()
    candidates = [
        i for i in range(spec.num_classes) if _links_up(i, inp.link_state, sets)
    ]
    if not candidates:
        candidates = list(range(spec.num_classes))
    i_star = _pick_argmax(candidates, inp.queues, inp.tie_break_draw)
    chosen = _complete_to_matching(i_star, spec)
    return PolicyDecision(
        matching=chosen,
        weight=weight_of(chosen, inp.queues, inp.link_state, spec),
        num_maximizers=1,
    )


def random_select(inp: SchedulerInput, spec: NetworkSpec) -> PolicyDecision:
    """Uniform baseline over all matchings."""
    matchings = enumerate_matchings(spec)
    chosen = matchings[min(int(inp.tie_break_draw * len(matchings)), len(matchings) - 1)]
    return PolicyDecision(
        matching=chosen,
        weight=weight_of(chosen, inp.queues, inp.link_state, spec),
        num_maximizers=len(matchings),
    )


_POLICIES = {
    "maxweight": max_weight_select,
    "lqf": lqf_select,
    "lqf-servable": lqf_servable_select,
    "random": random_select,
}


def get_policy(name: str):
    try:
        return _POLICIES[name]
    except KeyError:
        raise ValueError(f"unknown policy {name!r}; known: {', '.join(POLICY_NAMES)}") from None
