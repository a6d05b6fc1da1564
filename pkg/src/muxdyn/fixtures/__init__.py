"""Bundled example networks.

Two nine-agent multiplex networks ship with the package:

``leader-net``
    A single union-level leader (agent A) that every other agent can
    eventually hear through composite two-layer walks.  Layer 1 has three
    self-reliant agents (A, C, F); the consensus value equals A's initial
    opinion.

``cycle-net``
    No leader on either layer.  The union graph contains a directed
    four-cycle (A, B, D, C) that forms the closed communication class, so
    the long-run profile is the stationary-weighted average of those four
    initial opinions.
"""

from importlib.resources import files
from pathlib import Path

FIXTURE_NAMES = ("leader-net", "cycle-net")


def fixture_path(name: str) -> Path:
    """Return the on-disk path of a bundled network file.

    ``name`` may be given with or without the ``.json`` suffix.
    """
    stem = name.removesuffix(".json")
    if stem not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURE_NAMES)}")
    return Path(str(files(__package__).joinpath(f"{stem}.json")))
