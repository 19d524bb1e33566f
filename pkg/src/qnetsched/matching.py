"""Conflict structure and enumeration of matchings / feasible service vectors.

A matching is a maximal binary selection of request classes such that no link
is used by two selected classes; a service vector is any (not necessarily
maximal) such selection, including the empty one.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .model import NetworkSpec

MAX_CLASSES = 24

BitVector = tuple[int, ...]


class EnumerationCapError(RuntimeError):
    """Too many request classes for explicit enumeration."""


def conflict_pairs(spec: NetworkSpec) -> set[tuple[int, int]]:
    """Pairs (i, j), i < j, whose classes share at least one link."""
    sets = spec.link_sets()
    return {
        (i, j)
        for i, j in combinations(range(spec.num_classes), 2)
        if set(sets[i]) & set(sets[j])
    }


def _check_cap(spec: NetworkSpec) -> None:
    if spec.num_classes > MAX_CLASSES:
        raise EnumerationCapError(
            f"{spec.num_classes} classes exceeds enumeration cap of {MAX_CLASSES}"
        )


def _feasible_vectors(spec: NetworkSpec) -> list[BitVector]:
    """DFS over class indices with per-link usage tracking; zero vector included."""
    sets = spec.link_sets()
    m = spec.num_classes
    out: list[BitVector] = []
    bits = [0] * m
    used: set[int] = set()

    def descend(i: int) -> None:
        if i == m:
            out.append(tuple(bits))
            return
        # exclude-first yields ascending lexicographic order directly
        descend(i + 1)
        if not used.intersection(sets[i]):
            bits[i] = 1
            used.update(sets[i])
            descend(i + 1)
            used.difference_update(sets[i])
            bits[i] = 0

    descend(0)
    return sorted(out)


def _is_maximal(bits: BitVector, spec: NetworkSpec) -> bool:
    sets = spec.link_sets()
    used = set()
    for i, b in enumerate(bits):
        if b:
            used.update(sets[i])
    return all(
        bits[r] == 1 or used.intersection(sets[r]) for r in range(spec.num_classes)
    )


@lru_cache(maxsize=256)
def enumerate_service_vectors(spec: NetworkSpec) -> tuple[BitVector, ...]:
    """All link-exclusive binary vectors (the set of service vectors), lex order."""
    _check_cap(spec)
    return tuple(_feasible_vectors(spec))


@lru_cache(maxsize=256)
def enumerate_matchings(spec: NetworkSpec) -> tuple[BitVector, ...]:
    """All maximal link-exclusive binary vectors, lex order."""
    _check_cap(spec)
    return tuple(v for v in _feasible_vectors(spec) if _is_maximal(v, spec))


def servable_under(sigma: BitVector, link_state: BitVector, spec: NetworkSpec) -> bool:
    """True iff every selected class has all of its links available."""
    sets = spec.link_sets()
    return all(
        all(link_state[j] for j in sets[i]) for i, b in enumerate(sigma) if b
    )


def brute_force_matchings(spec: NetworkSpec) -> list[BitVector]:
    """Test oracle: filter all 2^M vectors for feasibility and maximality."""
    m = spec.num_classes
    sets = spec.link_sets()

    def feasible(bits: BitVector) -> bool:
        used: set[int] = set()
        for i, b in enumerate(bits):
            if b:
                if used.intersection(sets[i]):
                    return False
                used.update(sets[i])
        return True

    out = []
    for code in range(2**m):
        bits = tuple((code >> i) & 1 for i in range(m))
        if feasible(bits) and _is_maximal(bits, spec):
            out.append(bits)
    return sorted(out)
