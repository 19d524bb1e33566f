"""Arrival-rate feasibility: per-link load region and the decomposition region.

Membership in the per-link region checks scaled loads below 1 on every link.
The decomposition region is decided by a small LP: find nonnegative weights
over (link-availability pattern, service vector) pairs that deliver the
requested rates at minimal per-pattern scheduling budget B; rates are
infeasible for any policy when B >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matching import BitVector, enumerate_service_vectors
from .model import NetworkSpec
from .simplex import INFEASIBLE, OPTIMAL, SolverError, solve_lp

REGION_TOL = 1e-9
PATTERN_CAP_LINKS = 16
CERT_RATE_TOL = 1e-8


@dataclass(frozen=True)
class ServabilityPattern:
    """Per-class availability bits: bit i set iff every link of class i is up."""

    bits: BitVector
    prob: float


@dataclass
class CapacityVerdict:
    lambda_loads: tuple[float, ...]
    in_lambda: bool
    budget: float
    in_lambda_q: bool
    boundary: bool
    certificate: dict[tuple[BitVector, BitVector], float] | None
    reason: str | None = None


def per_class_success(spec: NetworkSpec) -> tuple[float, ...]:
    """q_i times the product of link probabilities over each class's links."""
    sets = spec.link_sets()
    return tuple(
        c.q * math.prod(spec.link_probs[j] for j in sets[i])
        for i, c in enumerate(spec.classes)
    )


def check_lambda(spec: NetworkSpec, rates) -> tuple[tuple[float, ...], bool]:
    """Per-link scaled loads and whether all are strictly below 1."""
    rates = tuple(float(x) for x in rates)
    if len(rates) != spec.num_classes:
        raise ValueError(f"expected {spec.num_classes} rates, got {len(rates)}")
    if any(x < 0 for x in rates):
        raise ValueError("rates must be non-negative")
    success = per_class_success(spec)
    sets = spec.link_sets()
    loads = tuple(
        sum(rates[i] / success[i] for i in range(spec.num_classes) if r in sets[i])
        for r in range(spec.num_links)
    )
    return loads, all(load < 1.0 for load in loads)


def servability_distribution(spec: NetworkSpec) -> list[ServabilityPattern]:
    """Aggregate the 2^K link-state distribution into class-servability patterns."""
    if spec.num_links > PATTERN_CAP_LINKS:
        raise ValueError(
            f"{spec.num_links} links exceeds pattern enumeration cap of {PATTERN_CAP_LINKS}"
        )
    sets = spec.link_sets()
    probs = spec.link_probs
    acc: dict[BitVector, float] = {}
    for code in range(2**spec.num_links):
        p = 1.0
        for j in range(spec.num_links):
            p *= probs[j] if (code >> j) & 1 else 1.0 - probs[j]
        if p == 0.0:
            continue
        bits = tuple(
            1 if all((code >> j) & 1 for j in sets[i]) else 0
            for i in range(spec.num_classes)
        )
        acc[bits] = acc.get(bits, 0.0) + p
    total = sum(acc.values())
    assert abs(total - 1.0) < 1e-12, f"pattern probabilities sum to {total}"
    return [ServabilityPattern(bits=b, prob=p) for b, p in sorted(acc.items())]


def _pattern_serves(sigma: BitVector, pattern: BitVector) -> bool:
    return all(pattern[i] for i, b in enumerate(sigma) if b)


def lambda_q_budget(spec: NetworkSpec, rates) -> CapacityVerdict:
    """Solve the budget LP deciding decomposition-region membership."""
    rates = tuple(float(x) for x in rates)
    loads, in_lambda = check_lambda(spec, rates)
    patterns = servability_distribution(spec)
    vectors = enumerate_service_vectors(spec)
    m = spec.num_classes

    # variable 0 is the budget B; then one weight per (pattern, servable vector)
    columns: list[tuple[int, BitVector]] = []
    for pi, pat in enumerate(patterns):
        for sigma in vectors:
            if _pattern_serves(sigma, pat.bits):
                columns.append((pi, sigma))
    nvar = 1 + len(columns)

    A_eq = np.zeros((m, nvar))
    b_eq = np.array(rates)
    for col, (pi, sigma) in enumerate(columns, start=1):
        pat = patterns[pi]
        for i in range(m):
            if sigma[i]:
                A_eq[i, col] = pat.prob * spec.classes[i].q
    A_ub = np.zeros((len(patterns), nvar))
    for pi in range(len(patterns)):
        A_ub[pi, 0] = -1.0
        for col, (pj, _) in enumerate(columns, start=1):
            if pj == pi:
                A_ub[pi, col] = 1.0
    b_ub = np.zeros(len(patterns))
    c = np.zeros(nvar)
    c[0] = 1.0

    result = solve_lp(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq)
    if result.status == INFEASIBLE:
        return CapacityVerdict(
            lambda_loads=loads,
            in_lambda=in_lambda,
            budget=math.inf,
            in_lambda_q=False,
            boundary=False,
            certificate=None,
            reason="requested rates are unreachable under any weighting",
        )
    if result.status != OPTIMAL:
        raise SolverError(f"budget LP ended with status {result.status}")

    budget = result.objective
    certificate = {
        (patterns[pi].bits, sigma): float(result.x[col])
        for col, (pi, sigma) in enumerate(columns, start=1)
        if result.x[col] > 1e-12
    }
    # sanity: the certificate must reproduce the requested rates
    for i in range(m):
        got = sum(
            v * spec.classes[i].q * next(p.prob for p in patterns if p.bits == s)
            for (s, sigma), v in certificate.items()
            if sigma[i]
        )
        if abs(got - rates[i]) > CERT_RATE_TOL:
            raise SolverError(
                f"certificate rate mismatch for class {i}: {got} vs {rates[i]}"
            )
    in_lambda_q = budget < 1.0 - REGION_TOL
    boundary = abs(budget - 1.0) <= REGION_TOL
    return CapacityVerdict(
        lambda_loads=loads,
        in_lambda=in_lambda,
        budget=budget,
        in_lambda_q=in_lambda_q,
        boundary=boundary,
        certificate=certificate,
    )


def verdict_to_dict(v: CapacityVerdict) -> dict:
    """JSON-friendly form of a verdict (certificate keys become strings)."""
    cert = None
    if v.certificate is not None:
        cert = {
            f"s={''.join(map(str, s))},sigma={''.join(map(str, sigma))}": weight
            for (s, sigma), weight in sorted(v.certificate.items())
        }
    return {
        "lambda_loads": list(v.lambda_loads),
        "in_lambda": v.in_lambda,
        "budget": v.budget if math.isfinite(v.budget) else "inf",
        "in_lambda_q": v.in_lambda_q,
        "boundary": v.boundary,
        "certificate": cert,
        "reason": v.reason,
        "note": "membership is a necessary region; outside it no policy is stable",
    }
