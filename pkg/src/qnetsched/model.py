"""Network / request-class specification: validation, parsing, built-in scenarios."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field


class SpecError(ValueError):
    """Raised on an invalid spec document; carries the offending field name."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class RequestClass:
    id: int
    users: frozenset[str]
    links: frozenset[int]
    q: float
    name: str = ""

    def __post_init__(self):
        if not (0.0 < self.q <= 1.0):
            raise SpecError(f"classes[{self.id}].q", f"must be in (0, 1], got {self.q}")
        if len(self.links) < 1:
            raise SpecError(f"classes[{self.id}].links", "link set must be non-empty")


@dataclass(frozen=True)
class NetworkSpec:
    num_links: int
    link_probs: tuple[float, ...]
    classes: tuple[RequestClass, ...]

    def __post_init__(self):
        if self.num_links < 1:
            raise SpecError("num_links", f"must be positive, got {self.num_links}")
        if len(self.link_probs) != self.num_links:
            raise SpecError(
                "link_probs",
                f"expected {self.num_links} entries, got {len(self.link_probs)}",
            )
        for j, p in enumerate(self.link_probs):
            if not (0.0 < p <= 1.0):
                raise SpecError(f"link_probs[{j}]", f"must be in (0, 1], got {p}")
        if len(self.classes) < 1:
            raise SpecError("classes", "at least one request class is required")
        seen: set[tuple[frozenset[int], frozenset[str]]] = set()
        for c in self.classes:
            for j in c.links:
                if not (0 <= j < self.num_links):
                    raise SpecError(
                        f"classes[{c.id}].links",
                        f"link index {j} out of range 0..{self.num_links - 1}",
                    )
            key = (c.links, c.users)
            if key in seen:
                raise SpecError(f"classes[{c.id}]", "duplicate class (same links and users)")
            seen.add(key)

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def link_sets(self) -> tuple[tuple[int, ...], ...]:
        """Sorted link indices per class, in class order."""
        return tuple(tuple(sorted(c.links)) for c in self.classes)


@dataclass(frozen=True)
class ArrivalSpec:
    kind: str
    rates: tuple[float, ...]

    def __post_init__(self):
        if self.kind != "bernoulli":
            raise SpecError("arrivals.kind", f"unsupported kind {self.kind!r}")
        for i, lam in enumerate(self.rates):
            if not (0.0 <= lam <= 1.0):
                raise SpecError(f"arrivals.rates[{i}]", f"must be in [0, 1], got {lam}")


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise SpecError(f"{where}{key}", "missing field")
    return obj[key]


def parse_spec(text: str) -> tuple[NetworkSpec, ArrivalSpec]:
    """Parse a JSON spec document into a validated (NetworkSpec, ArrivalSpec) pair."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError("document", f"not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise SpecError("document", "top level must be an object")

    num_links = _require(doc, "num_links", "")
    link_probs = tuple(float(p) for p in _require(doc, "link_probs", ""))
    raw_classes = _require(doc, "classes", "")
    classes = []
    for i, rc in enumerate(raw_classes):
        where = f"classes[{i}]."
        links = frozenset(int(j) for j in _require(rc, "links", where))
        users = frozenset(str(u) for u in rc.get("users", ()))
        if "q" in rc:
            q = float(rc["q"])
        elif "q_factors" in rc:
            q = math.prod(float(f) for f in rc["q_factors"])
        else:
            raise SpecError(f"{where}q", "missing field (give q or q_factors)")
        classes.append(RequestClass(id=i, users=users, links=links, q=q, name=rc.get("name", f"class{i}")))

    spec = NetworkSpec(num_links=int(num_links), link_probs=link_probs, classes=tuple(classes))

    arr = _require(doc, "arrivals", "")
    arrivals = ArrivalSpec(
        kind=_require(arr, "kind", "arrivals."),
        rates=tuple(float(x) for x in _require(arr, "rates", "arrivals.")),
    )
    if len(arrivals.rates) != spec.num_classes:
        raise SpecError(
            "arrivals.rates",
            f"expected {spec.num_classes} rates, got {len(arrivals.rates)}",
        )
    return spec, arrivals


def serialize_spec(spec: NetworkSpec, arrivals: ArrivalSpec) -> str:
    """Inverse of parse_spec; round-trips to an identical pair."""
    doc = {
        "num_links": spec.num_links,
        "link_probs": list(spec.link_probs),
        "classes": [
            {
                "name": c.name,
                "users": sorted(c.users),
                "links": sorted(c.links),
                "q": c.q,
            }
            for c in spec.classes
        ],
        "arrivals": {"kind": arrivals.kind, "rates": list(arrivals.rates)},
    }
    return json.dumps(doc, indent=2)


SCENARIO_NAMES = (
    "switch3-symmetric",
    "switch4-unstable",
    "switch4-stable",
    "net5-low",
    "net5-high",
)

# 4-link switch serving all six user pairs; classes ordered (1,2),(1,3),(1,4),(2,3),(2,4),(3,4).
_K4_PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def _switch_spec(num_links: int, pairs: list[tuple[int, int]]) -> NetworkSpec:
    classes = tuple(
        RequestClass(
            id=i,
            users=frozenset({f"u{a + 1}", f"u{b + 1}"}),
            links=frozenset({a, b}),
            q=1.0,
            name=f"pair{a + 1}{b + 1}",
        )
        for i, (a, b) in enumerate(pairs)
    )
    return NetworkSpec(num_links=num_links, link_probs=(1.0,) * num_links, classes=classes)


def _net5_spec() -> NetworkSpec:
    # 3-switch, 7-link network; class 1 is a tripartite request, class 2 bipartite.
    classes = (
        RequestClass(id=0, users=frozenset({"u1", "u2", "u3"}), links=frozenset({0, 1, 2, 5}), q=0.75, name="ghz123"),
        RequestClass(id=1, users=frozenset({"u3", "u4", "u5"}), links=frozenset({2, 3, 4, 6}), q=0.8, name="ghz345"),
    )
    return NetworkSpec(
        num_links=7,
        link_probs=(0.7, 0.8, 0.6, 0.9, 0.9, 0.9, 0.8),
        classes=classes,
    )


def builtin_scenario(name: str, symmetric_rate: float | None = None) -> tuple[NetworkSpec, ArrivalSpec]:
    """Return one of the built-in experiment scenarios.

    symmetric_rate only applies to switch3-symmetric (default 0.25 per class).
    """
    if name == "switch3-symmetric":
        a = 0.25 if symmetric_rate is None else symmetric_rate
        spec = _switch_spec(3, [(0, 1), (1, 2), (0, 2)])
        return spec, ArrivalSpec(kind="bernoulli", rates=(a, a, a))
    if symmetric_rate is not None:
        raise SpecError("symmetric_rate", f"only valid for switch3-symmetric, not {name!r}")
    if name == "switch4-unstable":
        return _switch_spec(4, _K4_PAIRS), ArrivalSpec(
            kind="bernoulli", rates=(0.3, 0.3, 0.3, 0.2, 0.45, 0.2)
        )
    if name == "switch4-stable":
        return _switch_spec(4, _K4_PAIRS), ArrivalSpec(
            kind="bernoulli", rates=(0.3, 0.3, 0.2, 0.2, 0.45, 0.2)
        )
    if name == "net5-low":
        return _net5_spec(), ArrivalSpec(kind="bernoulli", rates=(0.095, 0.165))
    if name == "net5-high":
        return _net5_spec(), ArrivalSpec(kind="bernoulli", rates=(0.105, 0.175))
    raise SpecError("scenario", f"unknown scenario {name!r}; known: {', '.join(SCENARIO_NAMES)}")
