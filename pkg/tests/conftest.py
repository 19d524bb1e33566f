import random

import pytest

from qnetsched.model import NetworkSpec, RequestClass


def random_spec(rng: random.Random, max_classes: int = 10, max_links: int = 6,
                deterministic: bool = False) -> NetworkSpec:
    """Random small instance; deterministic=True forces p = q = 1."""
    k = rng.randint(2, max_links)
    m = rng.randint(1, max_classes)
    classes = []
    seen = set()
    for i in range(m):
        links = None
        for _ in range(50):
            size = rng.randint(1, min(3, k))
            candidate = frozenset(rng.sample(range(k), size))
            if candidate not in seen:
                links = candidate
                seen.add(links)
                break
        if links is None:
            break  # small k exhausted its distinct subsets
        q = 1.0 if deterministic else rng.uniform(0.3, 1.0)
        classes.append(RequestClass(id=i, users=frozenset({f"u{i}"}), links=links, q=q))
    probs = tuple(1.0 if deterministic else rng.uniform(0.3, 1.0) for _ in range(k))
    return NetworkSpec(num_links=k, link_probs=probs, classes=tuple(classes))


@pytest.fixture
def rng():
    return random.Random(20260823)
