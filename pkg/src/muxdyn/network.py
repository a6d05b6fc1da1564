"""Two-layer multiplex networks of influence edges.

An edge (u, v) means "u influences v": v reads u's opinion when updating.
The neighbor set of an agent on a layer is therefore its set of in-neighbors,
self included when a self-loop is present.  Layer 1 is active at every step;
layer 2 joins in periodically (period 2 by default, the only period the
closed-form analysis supports).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

__all__ = [
    "Agent",
    "Layer",
    "MultiplexNetwork",
    "CommClass",
    "Violation",
    "ValidationReport",
    "neighbor_set",
    "leaders",
    "strongly_connected_components",
    "has_spanning_tree",
    "validate_assumptions",
    "symmetrize",
]

SCOPES = ("layer1", "layer2", "union")


@dataclass(frozen=True)
class Agent:
    """A network participant: a dense index plus a human-readable label."""

    index: int
    label: str


@dataclass(frozen=True)
class Layer:
    """A directed graph over n agents, stored as a set of (source, target) index pairs."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("layer size must be non-negative")
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for {self.n} agents")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Layer":
        return cls(n=n, edges=frozenset((int(u), int(v)) for u, v in pairs))

    def in_neighbors(self, i: int) -> frozenset[int]:
        return frozenset(u for (u, v) in self.edges if v == i)


@dataclass(frozen=True)
class MultiplexNetwork:
    """Agents plus two edge layers sharing the same node set.

    ``activation_period`` is the cadence at which layer 2 becomes active;
    the simulation accepts any period >= 2 but the fixed-point analysis is
    only defined for period 2.
    """

    agents: tuple[Agent, ...]
    layer1: Layer
    layer2: Layer
    activation_period: int = 2

    def __post_init__(self) -> None:
        n = len(self.agents)
        for pos, agent in enumerate(self.agents):
            if agent.index != pos:
                raise ValueError("agent indices must be dense and in order")
        labels = [a.label for a in self.agents]
        if len(set(labels)) != len(labels):
            raise ValueError("agent labels must be unique")
        if self.layer1.n != n or self.layer2.n != n:
            raise ValueError("layer size does not match the agent list")
        if self.activation_period < 2:
            raise ValueError("activation period must be at least 2")

    @property
    def n(self) -> int:
        return len(self.agents)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(a.label for a in self.agents)

    @classmethod
    def build(
        cls,
        labels: Iterable[str],
        edges1: Iterable[tuple[int, int]],
        edges2: Iterable[tuple[int, int]],
        activation_period: int = 2,
    ) -> "MultiplexNetwork":
        """Convenience constructor from labels and index-pair edge lists."""
        agents = tuple(Agent(i, str(lab)) for i, lab in enumerate(labels))
        n = len(agents)
        return cls(
            agents=agents,
            layer1=Layer.from_pairs(n, edges1),
            layer2=Layer.from_pairs(n, edges2),
            activation_period=activation_period,
        )

    def union_edges(self) -> frozenset[tuple[int, int]]:
        return self.layer1.edges | self.layer2.edges


def _check_agent(net: MultiplexNetwork, i: int) -> None:
    if not (0 <= i < net.n):
        raise ValueError(f"unknown agent index {i}")


def neighbor_set(net: MultiplexNetwork, i: int, scope: str = "union") -> frozenset[int]:
    """In-neighbors of agent ``i`` on one layer or on the union of both."""
    _check_agent(net, i)
    if scope == "layer1":
        return net.layer1.in_neighbors(i)
    if scope == "layer2":
        return net.layer2.in_neighbors(i)
    if scope == "union":
        return net.layer1.in_neighbors(i) | net.layer2.in_neighbors(i)
    raise ValueError(f"unknown scope {scope!r}; expected one of {SCOPES}")


def leaders(net: MultiplexNetwork, scope: str = "union") -> frozenset[int]:
    """Agents whose only in-neighbor in the given scope is themselves.

    A leader never reads anyone else's opinion, so its value is constant
    under the dynamics on that scope.
    """
    return frozenset(
        i for i in range(net.n) if neighbor_set(net, i, scope) == frozenset({i})
    )


@dataclass(frozen=True)
class CommClass:
    """A communication class: one strongly connected block of a digraph.

    ``closed`` means no edge leaves the block in the direction of the edge
    set handed to the decomposition.
    """

    members: tuple[int, ...]
    closed: bool


def strongly_connected_components(
    n: int, edges: Iterable[tuple[int, int]]
) -> list[CommClass]:
    """Ordered SCC partition of a digraph on ``n`` nodes.

    Iterative Tarjan; blocks are sorted by their smallest member so the
    partition order is deterministic.
    """
    adj: list[list[int]] = [[] for _ in range(n)]
    edge_set = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range")
        if (u, v) not in edge_set:
            edge_set.add((u, v))
            adj[u].append(v)

    index = [0] * n
    low = [0] * n
    on_stack = [False] * n
    visited = [False] * n
    stack: list[int] = []
    comp_of = [-1] * n
    comps: list[list[int]] = []
    counter = 1

    for start in range(n):
        if visited[start]:
            continue
        work = [(start, 0)]
        while work:
            v, ptr = work[-1]
            if ptr == 0:
                visited[v] = True
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            while ptr < len(adj[v]):
                w = adj[v][ptr]
                ptr += 1
                if not visited[w]:
                    work[-1] = (v, ptr)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                block = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp_of[w] = len(comps)
                    block.append(w)
                    if w == v:
                        break
                comps.append(sorted(block))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])

    closed = [True] * len(comps)
    for u, v in edge_set:
        if comp_of[u] != comp_of[v]:
            closed[comp_of[u]] = False

    blocks = [
        CommClass(members=tuple(m), closed=closed[k]) for k, m in enumerate(comps)
    ]
    blocks.sort(key=lambda b: b.members[0])
    return blocks


def has_spanning_tree(n: int, edges: Iterable[tuple[int, int]], root: int) -> bool:
    """True when every node is reachable from ``root`` along the directed edges."""
    if not (0 <= root < n):
        raise ValueError(f"unknown root index {root}")
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
    seen = [False] * n
    seen[root] = True
    queue = deque([root])
    count = 1
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                queue.append(v)
    return count == n


@dataclass(frozen=True)
class Violation:
    """One structured validation failure."""

    code: str
    message: str
    agents: tuple[int, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the connectivity checks the analysis relies on.

    ``violations`` empty means the network qualifies: the dynamics admit a
    single absorbing block and the fixed-point machinery applies.
    """

    leaders_layer1: frozenset[int]
    leaders_layer2: frozenset[int]
    leaders_union: frozenset[int]
    spanning_tree_root: int | None
    violations: tuple[Violation, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_assumptions(net: MultiplexNetwork) -> ValidationReport:
    """Check the connectivity requirements for a well-posed limit.

    The rules, in order:

    * at most one agent may be a leader on the union of both layers;
    * with a union leader, the union graph needs a spanning tree rooted there;
    * without one, every layer-1 communication class needs a member with a
      layer-1 self-loop, and the union graph needs a spanning tree rooted
      somewhere;
    * an agent with no union in-neighbor besides itself must carry a self-loop.
    """
    n = net.n
    union = net.union_edges()
    l1 = leaders(net, "layer1")
    l2 = leaders(net, "layer2")
    lu = leaders(net, "union")
    violations: list[Violation] = []
    root: int | None = None

    if len(lu) > 1:
        violations.append(
            Violation(
                code="multiple-leaders",
                message="more than one union-level leader",
                agents=tuple(sorted(lu)),
            )
        )
    elif len(lu) == 1:
        (candidate,) = lu
        if has_spanning_tree(n, union, candidate):
            root = candidate
        else:
            violations.append(
                Violation(
                    code="no-spanning-tree",
                    message="union graph lacks a spanning tree rooted at the leader",
                    agents=(candidate,),
                )
            )
    else:
        for block in strongly_connected_components(n, net.layer1.edges):
            if not any((m, m) in net.layer1.edges for m in block.members):
                violations.append(
                    Violation(
                        code="class-without-self-loop",
                        message="layer-1 communication class has no self-loop member",
                        agents=block.members,
                    )
                )
        for candidate in range(n):
            if has_spanning_tree(n, union, candidate):
                root = candidate
                break
        if root is None:
            violations.append(
                Violation(
                    code="no-spanning-tree",
                    message="union graph has no spanning tree from any root",
                )
            )

    for i in range(n):
        others = neighbor_set(net, i, "union") - {i}
        if not others and (i, i) not in union:
            violations.append(
                Violation(
                    code="isolated-without-self-loop",
                    message="isolated agent lacks a self-loop",
                    agents=(i,),
                )
            )

    return ValidationReport(
        leaders_layer1=l1,
        leaders_layer2=l2,
        leaders_union=lu,
        spanning_tree_root=root,
        violations=tuple(violations),
    )


def symmetrize(net: MultiplexNetwork) -> MultiplexNetwork:
    """Bidirectional variant: add the reverse of every cross edge, per layer.

    Reverses pointing into a union-level leader are skipped, so a leader
    never acquires an in-neighbor and keeps anchoring the consensus value.
    Applying the transform twice changes nothing.
    """
    protected = leaders(net, "union")

    def widen(layer: Layer) -> Layer:
        extra = {
            (v, u)
            for (u, v) in layer.edges
            if u != v and u not in protected
        }
        return Layer(n=layer.n, edges=layer.edges | frozenset(extra))

    return MultiplexNetwork(
        agents=net.agents,
        layer1=widen(net.layer1),
        layer2=widen(net.layer2),
        activation_period=net.activation_period,
    )
