"""JSON network files: two labeled edge lists plus initial opinions.

Schema::

    {
      "agents": ["A", "B", ...],
      "layers": [
        [{"source": "A", "target": "B"}, ...],   # layer 1
        [{"source": "A", "target": "A"}, ...]    # layer 2
      ],
      "initial_opinions": {"A": 4.74, ...},
      "activation_period": 2                      # optional, default 2
    }

Edges point from influencer to influenced.  Serialization sorts agents'
edges canonically so a parse/serialize round trip is stable.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import NetworkFormatError
from .network import MultiplexNetwork

__all__ = ["load_network", "parse_network", "network_to_dict", "save_network"]


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise NetworkFormatError(message)


def _parse_edge_list(raw, which: str, index_of: dict[str, int]) -> list[tuple[int, int]]:
    _require(isinstance(raw, list), f"{which}: expected a list of edges")
    edges = []
    for pos, item in enumerate(raw):
        _require(
            isinstance(item, dict) and set(item) == {"source", "target"},
            f"{which}[{pos}]: each edge must be an object with 'source' and 'target'",
        )
        src, dst = item["source"], item["target"]
        for role, label in (("source", src), ("target", dst)):
            _require(
                isinstance(label, str) and label in index_of,
                f"{which}[{pos}].{role}: unknown agent {label!r}",
            )
        edges.append((index_of[src], index_of[dst]))
    return edges


def parse_network(doc) -> tuple[MultiplexNetwork, np.ndarray]:
    """Build a network and its initial profile from a decoded JSON document."""
    _require(isinstance(doc, dict), "top level: expected a JSON object")
    agents = doc.get("agents")
    _require(
        isinstance(agents, list) and agents, "agents: expected a non-empty list"
    )
    for pos, label in enumerate(agents):
        _require(
            isinstance(label, str) and label,
            f"agents[{pos}]: labels must be non-empty strings",
        )
    _require(len(set(agents)) == len(agents), "agents: labels must be unique")
    index_of = {label: i for i, label in enumerate(agents)}

    layers = doc.get("layers")
    _require(
        isinstance(layers, list) and len(layers) == 2,
        "layers: expected exactly 2 edge lists",
    )
    edges1 = _parse_edge_list(layers[0], "layers[0]", index_of)
    edges2 = _parse_edge_list(layers[1], "layers[1]", index_of)

    opinions = doc.get("initial_opinions")
    _require(
        isinstance(opinions, dict), "initial_opinions: expected an object"
    )
    for label in opinions:
        _require(
            label in index_of, f"initial_opinions: unknown agent {label!r}"
        )
    x0 = np.zeros(len(agents))
    for label, i in index_of.items():
        _require(
            label in opinions, f"initial_opinions: missing opinion for {label!r}"
        )
        value = opinions[label]
        _require(
            isinstance(value, (int, float)) and not isinstance(value, bool),
            f"initial_opinions.{label}: expected a number",
        )
        _require(
            0.0 <= float(value) <= 10.0,
            f"initial_opinions.{label}: opinions must lie in [0, 10]",
        )
        x0[i] = float(value)

    period = doc.get("activation_period", 2)
    _require(
        isinstance(period, int) and not isinstance(period, bool) and period >= 2,
        "activation_period: expected an integer >= 2",
    )

    net = MultiplexNetwork.build(agents, edges1, edges2, activation_period=period)
    return net, x0


def load_network(path) -> tuple[MultiplexNetwork, np.ndarray]:
    """Read and validate a network file; all failures carry a field-level message."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise NetworkFormatError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkFormatError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return parse_network(doc)


def network_to_dict(net: MultiplexNetwork, x0) -> dict:
    """Serialize to the file schema, with canonically sorted edge lists."""
    labels = net.labels
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (net.n,):
        raise ValueError(f"opinion vector has shape {x0.shape}, expected ({net.n},)")

    def edge_list(edges) -> list[dict]:
        pairs = sorted((labels[u], labels[v]) for (u, v) in edges)
        return [{"source": u, "target": v} for u, v in pairs]

    return {
        "agents": list(labels),
        "layers": [edge_list(net.layer1.edges), edge_list(net.layer2.edges)],
        "initial_opinions": {labels[i]: float(x0[i]) for i in range(net.n)},
        "activation_period": net.activation_period,
    }


def save_network(path, net: MultiplexNetwork, x0) -> None:
    doc = network_to_dict(net, x0)
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")
