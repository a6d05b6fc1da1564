"""Dense stochastic-matrix kernel for the opinion dynamics.

Everything here is desk-scale dense numpy: neighbor-averaging adjacency
rows, induced norms, a norm-based spectral radius estimate, and a direct
linear solve for stationary distributions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import StructuralError
from .network import MultiplexNetwork, neighbor_set

__all__ = [
    "ROW_SUM_TOL",
    "STATIONARY_TOL",
    "StochasticMatrix",
    "Distribution",
    "layer_adjacency",
    "multiplex_adjacency",
    "matmul",
    "matvec",
    "induced_norm",
    "vector_norm",
    "spectral_radius",
    "stationary_distribution",
]

ROW_SUM_TOL = 1e-12
STATIONARY_TOL = 1e-10

KINDS = ("row-stochastic", "substochastic", "general")


def _as_array(a) -> np.ndarray:
    if isinstance(a, StochasticMatrix):
        return a.entries
    return np.asarray(a, dtype=float)


@dataclass(frozen=True)
class StochasticMatrix:
    """A dense square non-negative matrix with a declared row-sum regime.

    * ``row-stochastic``: every row sums to 1 (within 1e-12).
    * ``substochastic``: rows sum to at most 1, at least one strictly less.
    * ``general``: non-negative, no row-sum constraint.
    """

    entries: np.ndarray
    kind: str = "general"

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {entries.shape}")
        if entries.size and entries.min() < 0.0:
            raise ValueError("matrix entries must be non-negative")
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if entries.size:
            sums = entries.sum(axis=1)
            if self.kind == "row-stochastic":
                if np.max(np.abs(sums - 1.0)) > ROW_SUM_TOL:
                    raise ValueError("rows must sum to 1 for a row-stochastic matrix")
            elif self.kind == "substochastic":
                if np.max(sums) > 1.0 + ROW_SUM_TOL:
                    raise ValueError("substochastic rows may not exceed sum 1")
                if np.min(sums) >= 1.0 - ROW_SUM_TOL:
                    raise ValueError(
                        "a substochastic matrix needs at least one row summing below 1"
                    )
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class Distribution:
    """A probability vector: non-negative weights summing to 1."""

    weights: np.ndarray

    def __post_init__(self) -> None:
        w = np.array(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("a distribution needs at least one weight")
        if w.min() < 0.0:
            raise ValueError("distribution weights must be non-negative")
        if abs(w.sum() - 1.0) > STATIONARY_TOL:
            raise ValueError("distribution weights must sum to 1")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.weights.shape[0]


def layer_adjacency(net: MultiplexNetwork, which: str) -> StochasticMatrix:
    """Row-stochastic averaging matrix of one layer.

    Row i spreads weight 1/|neighbors(i)| over agent i's in-neighbors on
    that layer.  An agent with no in-neighbors there has no well-defined
    row, which is a structural error.
    """
    if which not in ("layer1", "layer2"):
        raise ValueError(f"unknown layer {which!r}")
    n = net.n
    entries = np.zeros((n, n))
    for i in range(n):
        nbrs = neighbor_set(net, i, which)
        if not nbrs:
            raise StructuralError(
                f"agent {net.agents[i].label!r} has an empty neighbor set on {which}"
            )
        w = 1.0 / len(nbrs)
        for j in nbrs:
            entries[i, j] = w
    return StochasticMatrix(entries=entries, kind="row-stochastic")


def multiplex_adjacency(net: MultiplexNetwork, t: int) -> StochasticMatrix:
    """The update matrix in force at step ``t`` (t >= 1).

    Layer 1 acts alone except when ``t`` is a multiple of the activation
    period, where both layers contribute with equal weight.
    """
    if t < 1:
        raise ValueError("time steps are counted from 1")
    a1 = layer_adjacency(net, "layer1")
    if t % net.activation_period == 0:
        a2 = layer_adjacency(net, "layer2")
        return StochasticMatrix(
            entries=0.5 * (a1.entries + a2.entries), kind="row-stochastic"
        )
    return a1


def matmul(a, b) -> StochasticMatrix:
    """Dense product; the product of two row-stochastic factors stays row-stochastic."""
    am, bm = _as_array(a), _as_array(b)
    kind_a = a.kind if isinstance(a, StochasticMatrix) else "general"
    kind_b = b.kind if isinstance(b, StochasticMatrix) else "general"
    kind = (
        "row-stochastic"
        if kind_a == kind_b == "row-stochastic"
        else "general"
    )
    return StochasticMatrix(entries=am @ bm, kind=kind)


def matvec(a, x) -> np.ndarray:
    return _as_array(a) @ np.asarray(x, dtype=float)


def induced_norm(a, p) -> float:
    """Operator norm induced by the vector p-norm, for p in {1, inf}."""
    m = _as_array(a)
    if m.size == 0:
        return 0.0
    if p == 1:
        return float(np.max(np.abs(m).sum(axis=0)))
    if p in (np.inf, math.inf, "inf"):
        return float(np.max(np.abs(m).sum(axis=1)))
    raise ValueError("only the 1- and inf-induced norms are supported")


def vector_norm(x, p) -> float:
    v = np.asarray(x, dtype=float)
    if p == 2:
        return float(np.sqrt(np.sum(v * v)))
    if p in (np.inf, math.inf, "inf"):
        return float(np.max(np.abs(v))) if v.size else 0.0
    raise ValueError("only the 2- and inf-vector norms are supported")


GELFAND_REL_TOL = 1e-6
GELFAND_MAX_SQUARINGS = 40


def spectral_radius(a) -> float:
    """Norm-based spectral radius estimate via repeated squaring.

    Uses the limit of ||A^(2^m)||_inf ** (1/2^m).  The running power is
    renormalized at every squaring and the scale factors are accumulated in
    log space, so geometric decay never underflows; only a genuinely
    nilpotent matrix collapses to the exact zero matrix, which pins the
    radius at 0.  Successive estimates decrease toward the radius from
    above; iteration stops once they agree to a relative 1e-6 (or after 40
    squarings).  A few squarings are always performed before the early
    exit, because norms of low powers can plateau (a transient chain holds
    full row sums until mass first leaks out) and a plateau is
    indistinguishable from convergence.
    """
    m = _as_array(a)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("spectral radius needs a square matrix")
    if m.size == 0:
        return 0.0
    scale = induced_norm(m, np.inf)
    if scale == 0.0:
        return 0.0
    min_squarings = max(6, math.ceil(math.log2(m.shape[0] + 1)) + 1)
    power = m / scale
    log_estimate = math.log(scale)
    estimate = scale
    for step in range(1, GELFAND_MAX_SQUARINGS + 1):
        power = power @ power
        scale = induced_norm(power, np.inf)
        if scale == 0.0:
            return 0.0
        log_estimate += math.log(scale) / 2.0**step
        refined = math.exp(log_estimate)
        if step >= min_squarings and abs(refined - estimate) <= GELFAND_REL_TOL * max(
            estimate, 1e-300
        ):
            return refined
        estimate = refined
        power = power / scale
    return estimate


def stationary_distribution(p) -> Distribution:
    """Left fixed vector of a row-stochastic matrix, by direct linear solve.

    Solves (P^T - I) pi = 0 together with the normalization row.  The
    caller must hand over a single communication class; reducibility shows
    up as a rank-deficient system and is rejected, as is a class without
    any self-loop (the aperiodicity guard the model relies on).  The result
    is checked to balance P to within 1e-10.
    """
    pm = _as_array(p)
    n = pm.shape[0]
    if n == 0:
        raise StructuralError("cannot take a stationary distribution of an empty matrix")
    if isinstance(p, StochasticMatrix) and p.kind != "row-stochastic":
        raise ValueError("stationary distributions are defined for row-stochastic matrices")
    if not np.any(np.diag(pm) > 0.0):
        raise StructuralError(
            "no positive diagonal entry: aperiodicity of the class is not guaranteed"
        )
    system = np.vstack([pm.T - np.eye(n), np.ones((1, n))])
    rhs = np.zeros(n + 1)
    rhs[-1] = 1.0
    solution, _, rank, _ = np.linalg.lstsq(system, rhs, rcond=None)
    if rank < n:
        raise StructuralError(
            "stationary distribution is not unique (matrix is reducible)"
        )
    pi = solution
    if pi.min() < -STATIONARY_TOL:
        raise StructuralError("stationary solve produced negative mass")
    pi = np.clip(pi, 0.0, None)
    pi = pi / pi.sum()
    residual = float(np.max(np.abs(pi @ pm - pi)))
    if residual >= STATIONARY_TOL:
        raise StructuralError(
            f"stationary balance residual {residual:.3e} exceeds {STATIONARY_TOL:.0e}"
        )
    return Distribution(weights=pi)
