"""Opinion updates, trajectories, and the geometric convergence envelope.

Opinions live in [0, 10].  Each step every agent moves to the mean of its
in-neighbors' opinions on the active layers, which is exactly the best
response to a quadratic disagreement cost.  The envelope machinery turns
the two-step contraction factor into a per-step upper bound on the
distance to the predicted limit, with a prefactor calibrated from the
observed error series.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .errors import AssumptionViolatedError, CalibrationError, StructuralError, UnsupportedConfigurationError
from .matrices import layer_adjacency, multiplex_adjacency, vector_norm
from .network import MultiplexNetwork, neighbor_set

__all__ = [
    "OPINION_MIN",
    "OPINION_MAX",
    "DEFAULT_T_MAX",
    "DEFAULT_TOL",
    "GRACE_STEPS",
    "Trajectory",
    "BoundParameters",
    "Calibration",
    "step",
    "simulate",
    "cost",
    "best_response",
    "bound_value",
    "bound_series",
    "with_bound",
    "calibrate_u",
]

OPINION_MIN = 0.0
OPINION_MAX = 10.0
DEFAULT_T_MAX = 10_000
DEFAULT_TOL = 1e-9
GRACE_STEPS = 1  # extra steps recorded past the convergence time


def _check_opinions(net: MultiplexNetwork, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (net.n,):
        raise ValueError(f"opinion vector has shape {x.shape}, expected ({net.n},)")
    if x.size and (x.min() < OPINION_MIN or x.max() > OPINION_MAX):
        raise ValueError(
            f"opinions must lie in [{OPINION_MIN:g}, {OPINION_MAX:g}]"
        )
    return x


def step(net: MultiplexNetwork, x, t: int) -> np.ndarray:
    """One synchronous update: apply the matrix active at step ``t`` (t >= 1)."""
    x = _check_opinions(net, x)
    return multiplex_adjacency(net, t).entries @ x


@dataclass(frozen=True)
class Trajectory:
    """A recorded run: states for t = 0..T, plus optional error and bound series.

    ``converged_at`` is the first step at which the opinion spread
    (max - min) dropped below the tolerance, or None if that never
    happened within the horizon.  Recording continues for a short grace
    window past convergence so the settled profile is visible.
    """

    times: tuple[int, ...]
    states: np.ndarray
    converged_at: int | None
    err_series: np.ndarray | None
    bound_series: np.ndarray | None = None

    def __post_init__(self) -> None:
        states = np.array(self.states, dtype=float)
        states.setflags(write=False)
        object.__setattr__(self, "states", states)
        for name in ("err_series", "bound_series"):
            series = getattr(self, name)
            if series is not None:
                series = np.array(series, dtype=float)
                series.setflags(write=False)
                object.__setattr__(self, name, series)

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


def simulate(
    net: MultiplexNetwork,
    x0,
    t_max: int = DEFAULT_T_MAX,
    tol: float = DEFAULT_TOL,
    x_bar=None,
    grace: int = GRACE_STEPS,
) -> Trajectory:
    """Run the dynamics until consensus (plus grace steps) or ``t_max``.

    When ``x_bar`` is omitted the predicted limit is computed from the
    network itself, so the error series comes for free on any network the
    analysis accepts; on networks it rejects the error series is simply
    left out.
    """
    x = _check_opinions(net, x0)
    if t_max < 1:
        raise ValueError("t_max must be at least 1")
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")

    if x_bar is None:
        try:
            from .analysis import analyze

            x_bar = analyze(net, x).prediction.x_bar
        except (AssumptionViolatedError, UnsupportedConfigurationError):
            x_bar = None
    else:
        x_bar = np.asarray(x_bar, dtype=float)

    odd_matrix = layer_adjacency(net, "layer1").entries
    even_matrix = multiplex_adjacency(net, net.activation_period).entries
    period = net.activation_period

    states = [x]
    converged_at: int | None = None
    stop_at = t_max
    t = 1
    while t <= stop_at:
        active = even_matrix if t % period == 0 else odd_matrix
        x = active @ x
        states.append(x)
        if converged_at is None and float(x.max() - x.min()) < tol:
            converged_at = t
            stop_at = min(t_max, t + grace)
        t += 1

    stacked = np.vstack(states)
    err = (
        np.max(np.abs(stacked - x_bar), axis=1) if x_bar is not None else None
    )
    return Trajectory(
        times=tuple(range(len(states))),
        states=stacked,
        converged_at=converged_at,
        err_series=err,
    )


def cost(net: MultiplexNetwork, x, i: int, t: int, candidate: float | None = None) -> float:
    """Quadratic disagreement cost of agent ``i`` against its neighbors at step ``t``.

    Layer-1 steps charge half the sum of squared deviations from the
    layer-1 neighbors.  On both-layers steps each layer's sum enters
    normalized by its own neighbor count, so the two layers weigh equally
    regardless of how many neighbors they hold; minimizing this in the
    agent's own opinion reproduces the half-and-half averaging of the
    update rule.

    ``candidate`` evaluates the cost at a hypothetical opinion for agent
    ``i`` while every neighbor (the agent itself included, when it has a
    self-loop) stays at its current value — the function an agent
    minimizes when choosing its next opinion.  By default the current
    opinion is used, so self-loop terms contribute nothing.
    """
    x = np.asarray(x, dtype=float)
    if t < 1:
        raise ValueError("time steps are counted from 1")
    own = x[i] if candidate is None else float(candidate)
    if t % net.activation_period == 0:
        total = 0.0
        for which in ("layer1", "layer2"):
            nbrs = sorted(neighbor_set(net, i, which))
            if not nbrs:
                raise StructuralError(
                    f"agent {net.agents[i].label!r} has no neighbors on {which}"
                )
            diffs = own - x[nbrs]
            total += float(diffs @ diffs) / len(nbrs)
        return 0.5 * total
    nbrs = sorted(neighbor_set(net, i, "layer1"))
    if not nbrs:
        raise StructuralError(
            f"agent {net.agents[i].label!r} has no neighbors on layer1"
        )
    diffs = own - x[nbrs]
    return 0.5 * float(diffs @ diffs)


def best_response(net: MultiplexNetwork, x, i: int, t: int) -> float:
    """The cost-minimizing opinion for agent ``i``: its next value under the dynamics.

    Equals entry i of the active matrix applied to ``x``.
    """
    x = np.asarray(x, dtype=float)
    if t < 1:
        raise ValueError("time steps are counted from 1")
    if t % net.activation_period == 0:
        acc = 0.0
        for which in ("layer1", "layer2"):
            nbrs = sorted(neighbor_set(net, i, which))
            if not nbrs:
                raise StructuralError(
                    f"agent {net.agents[i].label!r} has no neighbors on {which}"
                )
            acc += float(np.mean(x[nbrs]))
        return 0.5 * acc
    nbrs = sorted(neighbor_set(net, i, "layer1"))
    if not nbrs:
        raise StructuralError(
            f"agent {net.agents[i].label!r} has no neighbors on layer1"
        )
    return float(np.mean(x[nbrs]))


@dataclass(frozen=True)
class BoundParameters:
    """Inputs to the per-step envelope: prefactor, rate, and the two norms.

    ``a1_norm1`` is the induced 1-norm of the layer-1 matrix; it multiplies
    the bound on odd steps, where the trajectory sits one layer-1 step past
    an even time.
    """

    u: float
    q: float
    norm_x0: float
    a1_norm1: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.q < 1.0):
            raise ValueError("the rate q must lie in [0, 1)")
        if self.u < 0.0 or self.norm_x0 < 0.0 or self.a1_norm1 < 0.0:
            raise ValueError("bound parameters must be non-negative")


def bound_value(params: BoundParameters, t: int) -> float:
    """Envelope at step ``t``: 2 U ||A1||_1^(t mod 2) q^floor(t/2) ||x0||_2."""
    if t < 0:
        raise ValueError("time must be non-negative")
    parity = params.a1_norm1 if t % 2 else 1.0
    return 2.0 * params.u * parity * params.q ** (t // 2) * params.norm_x0


def bound_series(params: BoundParameters, times) -> np.ndarray:
    return np.array([bound_value(params, t) for t in times])


def with_bound(trajectory: Trajectory, params: BoundParameters) -> Trajectory:
    """Copy of the trajectory carrying the envelope evaluated at its steps."""
    return dataclasses.replace(
        trajectory, bound_series=bound_series(params, trajectory.times)
    )


@dataclass(frozen=True)
class Calibration:
    """Two prefactor choices: the smallest dominating one and the t=0 prior."""

    u_min: float
    u_prior: float


def calibrate_u(x0, x_bar, err_series, q: float, a1_norm1: float) -> Calibration:
    """Fit the envelope prefactor U to an observed error series.

    ``u_min`` is the smallest U whose envelope dominates every recorded
    error value; steps where the envelope is structurally zero (q = 0 past
    step 1) cannot constrain U and are skipped.  ``u_prior`` is the
    closed-form t = 0 choice ||x0 - x_bar||_inf / (2 ||x0||_2).  A rate at
    or above 1, or an error series that fails to decay, cannot be
    calibrated.
    """
    if q >= 1.0:
        raise CalibrationError("the contraction factor must be below 1")
    x0 = np.asarray(x0, dtype=float)
    x_bar = np.asarray(x_bar, dtype=float)
    err = np.asarray(err_series, dtype=float)
    norm_x0 = vector_norm(x0, 2)
    if norm_x0 == 0.0:
        return Calibration(u_min=0.0, u_prior=0.0)
    if err.size >= 2 and err[-1] > err[0] + 1e-12:
        raise CalibrationError("the error series does not decay")
    u_prior = vector_norm(x0 - x_bar, np.inf) / (2.0 * norm_x0)
    u_min = 0.0
    for t, e in enumerate(err):
        parity = a1_norm1 if t % 2 else 1.0
        denom = 2.0 * parity * q ** (t // 2) * norm_x0
        if denom > 0.0:
            u_min = max(u_min, float(e) / denom)
    return Calibration(u_min=u_min, u_prior=u_prior)
