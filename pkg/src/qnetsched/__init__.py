"""Scheduling simulator and capacity analyzer for entanglement-distribution networks."""

from .capacity import CapacityVerdict, check_lambda, lambda_q_budget, servability_distribution
from .matching import conflict_pairs, enumerate_matchings, enumerate_service_vectors, servable_under
from .model import ArrivalSpec, NetworkSpec, RequestClass, SpecError, builtin_scenario, parse_spec, serialize_spec
from .policy import PolicyDecision, SchedulerInput, get_policy, max_weight_select, weight_of
from .sim import RunResult, RunSummary, SimConfig, detect_trend, drift_probe, run, service_frequency_check, step

__all__ = [
    "ArrivalSpec",
    "CapacityVerdict",
    "NetworkSpec",
    "PolicyDecision",
    "RequestClass",
    "RunResult",
    "RunSummary",
    "SchedulerInput",
    "SimConfig",
    "SpecError",
    "builtin_scenario",
    "check_lambda",
    "conflict_pairs",
    "detect_trend",
    "drift_probe",
    "enumerate_matchings",
    "enumerate_service_vectors",
    "get_policy",
    "lambda_q_budget",
    "max_weight_select",
    "parse_spec",
    "run",
    "serialize_spec",
    "servability_distribution",
    "servable_under",
    "service_frequency_check",
    "step",
    "weight_of",
]

__version__ = "0.1.0"
