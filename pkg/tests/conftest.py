"""Shared fixtures and the random valid-network generator.

The generator gives every agent a layer-1 self-loop.  That single choice
makes the two-step influence chain contain every reversed union edge, which
in turn guarantees a unique closed communication class and a strictly
positive chain diagonal — so every generated network passes validation and
the limit analysis by construction, in both the leader and the no-leader
shape.
"""

from __future__ import annotations

import numpy as np
import pytest

from muxdyn import MultiplexNetwork, fixture_path, load_network


def random_valid_network(
    rng: np.random.Generator, n: int | None = None, mode: str | None = None
) -> tuple[MultiplexNetwork, np.ndarray]:
    """Build a random network that satisfies the structural assumptions.

    ``mode`` picks the closed-class shape: "leader" for a single
    self-reliant root, "class" for a directed cycle of two or more
    mutually influencing agents.  Returns the network and a random
    opinion profile in [0, 10].
    """
    if n is None:
        n = int(rng.integers(2, 11))
    if mode is None:
        mode = "leader" if rng.random() < 0.5 else "class"
    labels = [f"a{i}" for i in range(n)]
    e1: set[tuple[int, int]] = {(i, i) for i in range(n)}
    e2: set[tuple[int, int]] = set()

    def add(u: int, v: int) -> None:
        (e1 if rng.random() < 0.5 else e2).add((u, v))

    if mode == "leader":
        root = int(rng.integers(n))
        e2.add((root, root))
        protected = {root}
        order = [i for i in range(n) if i != root]
        rng.shuffle(order)
        reached = [root]
        for v in order:
            add(int(rng.choice(reached)), v)
            reached.append(v)
    else:
        size = int(rng.integers(2, n + 1))
        members = [int(v) for v in rng.choice(n, size=size, replace=False)]
        protected = set(members)
        for k, v in enumerate(members):
            add(members[(k + 1) % size], v)
        order = [i for i in range(n) if i not in protected]
        rng.shuffle(order)
        reached = list(members)
        for v in order:
            add(int(rng.choice(reached)), v)
            reached.append(v)

    extras = int(rng.integers(0, 2 * n))
    for _ in range(extras):
        u, v = int(rng.integers(n)), int(rng.integers(n))
        if v in protected or u == v:
            continue
        add(u, v)

    for i in range(n):
        if not any(v == i for (_, v) in e2):
            e2.add((i, i))

    net = MultiplexNetwork.build(labels, e1, e2)
    x0 = rng.uniform(0.0, 10.0, size=n)
    return net, x0


@pytest.fixture(scope="session")
def leader_net():
    return load_network(fixture_path("leader-net"))


@pytest.fixture(scope="session")
def cycle_net():
    return load_network(fixture_path("cycle-net"))


def leader3() -> tuple[MultiplexNetwork, np.ndarray]:
    """Three agents: a leader, a follower of the leader, and a follower's follower."""
    net = MultiplexNetwork.build(
        ["A", "B", "C"],
        [(0, 0), (0, 1), (1, 2)],
        [(0, 0), (1, 1), (2, 2)],
    )
    return net, np.array([4.0, 2.0, 0.0])


def cycle3() -> tuple[MultiplexNetwork, np.ndarray]:
    """Three agents on a layer-1 cycle with one self-loop; identity layer 2."""
    net = MultiplexNetwork.build(
        ["A", "B", "C"],
        [(0, 0), (2, 0), (0, 1), (1, 2)],
        [(0, 0), (1, 1), (2, 2)],
    )
    return net, np.array([4.0, 2.0, 0.0])
