"""Limit analysis of the periodic dynamics via its two-step chain.

With activation period 2 the trajectory factors through powers of a single
matrix C (the both-layers step composed with the layer-1 step).  Reading C
as a Markov chain over agents: its unique closed communication class plays
the absorbing role, everything else is transient, and the opinions settle
on the consensus value picked out by the stationary weights of the closed
block.  The contraction factor of the transient part gives the geometric
rate used by the convergence bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AssumptionViolatedError,
    NumericalInconsistencyError,
    UnsupportedConfigurationError,
)
from .matrices import (
    Distribution,
    StochasticMatrix,
    induced_norm,
    layer_adjacency,
    matmul,
    multiplex_adjacency,
    spectral_radius,
    stationary_distribution,
)
from .network import CommClass, MultiplexNetwork, ValidationReport, validate_assumptions

__all__ = [
    "ANALYSIS_PERIOD",
    "LIMIT_VERIFY_TOL",
    "CanonicalForm",
    "FixedPointPrediction",
    "AnalysisReport",
    "two_step_matrix",
    "chain_classes",
    "absorbing_structure",
    "canonical_form",
    "reconstruct",
    "limit_matrix",
    "predicted_fixed_point",
    "contraction_factor",
    "analyze",
]

ANALYSIS_PERIOD = 2
LIMIT_VERIFY_TOL = 1e-8
_POWER_DECAY_TOL = 1e-10
_MAX_VERIFY_SQUARINGS = 20  # brute-force horizon 2**20


def two_step_matrix(net: MultiplexNetwork) -> StochasticMatrix:
    """The chain matrix C governing states at even times: both-layers step after a layer-1 step.

    Only defined for activation period 2; the caller is expected to have
    validated the network first.
    """
    if net.activation_period != ANALYSIS_PERIOD:
        raise UnsupportedConfigurationError(
            "closed-form analysis requires activation period 2, "
            f"got {net.activation_period}"
        )
    return matmul(multiplex_adjacency(net, 2), layer_adjacency(net, "layer1"))


def chain_classes(c) -> tuple[CommClass, ...]:
    """Communication classes of the chain on C, with closed flags.

    Chain direction: state i steps to state j whenever C[i, j] > 0 (i reads
    weight from j), which is the reverse of the influence arrows.
    """
    from .network import strongly_connected_components

    m = c.entries if isinstance(c, StochasticMatrix) else np.asarray(c, dtype=float)
    n = m.shape[0]
    edges = [(i, j) for i in range(n) for j in range(n) if m[i, j] > 0.0]
    return tuple(strongly_connected_components(n, edges))


def absorbing_structure(c) -> tuple[list[tuple[int, ...]], tuple[int, ...]]:
    """Split the chain's states into closed classes and transient states.

    A qualifying network produces exactly one closed class; finding more
    means the opinions cannot agree globally, so that is rejected here.
    """
    blocks = chain_classes(c)
    closed = [b.members for b in blocks if b.closed]
    transient = sorted(
        m for b in blocks if not b.closed for m in b.members
    )
    if len(closed) != 1:
        raise AssumptionViolatedError(
            f"expected exactly one closed communication class, found {len(closed)}",
            classes=closed,
        )
    return closed, tuple(transient)


@dataclass(frozen=True)
class CanonicalForm:
    """C reordered as [[P, 0], [R, Q]]: closed class first, then transients.

    ``permutation`` lists the original agent index at each canonical
    position.  P is the closed block (row-stochastic), Q the transient
    block (substochastic), R the transient-to-closed coupling.
    """

    permutation: tuple[int, ...]
    p_block: StochasticMatrix
    r_block: np.ndarray
    q_block: StochasticMatrix
    closed_class: tuple[int, ...]
    transient: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.permutation)


def canonical_form(c) -> CanonicalForm:
    """Permute C into absorbing canonical form (members sorted by index)."""
    closed_classes, transient = absorbing_structure(c)
    closed = tuple(closed_classes[0])
    perm = closed + transient
    m = c.entries if isinstance(c, StochasticMatrix) else np.asarray(c, dtype=float)
    idx = np.array(perm, dtype=int)
    permuted = m[np.ix_(idx, idx)]
    k = len(closed)
    p = permuted[:k, :k]
    r = np.array(permuted[k:, :k])
    r.setflags(write=False)
    q = permuted[k:, k:]
    return CanonicalForm(
        permutation=perm,
        p_block=StochasticMatrix(entries=p, kind="row-stochastic"),
        r_block=r,
        q_block=StochasticMatrix(
            entries=q, kind="substochastic" if q.size else "general"
        ),
        closed_class=closed,
        transient=transient,
    )


def reconstruct(form: CanonicalForm) -> np.ndarray:
    """Undo the canonical permutation; reproduces the original C exactly."""
    n = form.n
    k = len(form.closed_class)
    permuted = np.zeros((n, n))
    permuted[:k, :k] = form.p_block.entries
    permuted[k:, :k] = form.r_block
    permuted[k:, k:] = form.q_block.entries
    idx = np.array(form.permutation, dtype=int)
    out = np.zeros((n, n))
    out[np.ix_(idx, idx)] = permuted
    return out


def _closed_stationary(form: CanonicalForm) -> Distribution:
    return stationary_distribution(form.p_block)


def _extended_stationary(form: CanonicalForm, pi: Distribution) -> np.ndarray:
    ext = np.zeros(form.n)
    ext[list(form.closed_class)] = pi.weights
    return ext


def limit_matrix(form: CanonicalForm) -> StochasticMatrix:
    """lim C^t: every row equals the stationary weights, zero-padded to all agents.

    The formula is verified against brute force before being returned: the
    transient block and the deflated closed block are squared until their
    norms drop below 1e-10 (horizon capped at 2^20), and C raised to that
    power must match the limit to 1e-8, else the chain mixes too slowly or
    is periodic and we refuse to report a limit.
    """
    pi = _closed_stationary(form)
    ext = _extended_stationary(form, pi)
    n = form.n
    limit = np.tile(ext, (n, 1))

    deflated = form.p_block.entries - np.outer(
        np.ones(form.p_block.n), pi.weights
    )
    q_power = np.array(form.q_block.entries)
    p_power = deflated
    squarings = 0

    def decayed(mat: np.ndarray) -> bool:
        return mat.size == 0 or induced_norm(mat, np.inf) < _POWER_DECAY_TOL

    while squarings < _MAX_VERIFY_SQUARINGS and not (
        decayed(p_power) and decayed(q_power)
    ):
        p_power = p_power @ p_power
        if q_power.size:
            q_power = q_power @ q_power
        squarings += 1

    c_power = reconstruct(form)
    for _ in range(squarings):
        c_power = c_power @ c_power
    gap = induced_norm(c_power - limit, np.inf)
    if gap >= LIMIT_VERIFY_TOL:
        raise NumericalInconsistencyError(
            f"chain power at horizon 2^{squarings} differs from the predicted "
            f"limit by {gap:.3e}"
        )
    return StochasticMatrix(entries=limit, kind="row-stochastic")


@dataclass(frozen=True)
class FixedPointPrediction:
    """Predicted limit profile: a consensus at the stationary mix of the closed block."""

    x_bar: np.ndarray
    pi: Distribution
    mode: str  # "leader" when the closed class is a single agent

    @property
    def consensus_value(self) -> float:
        return float(self.x_bar[0])


def predicted_fixed_point(
    form: CanonicalForm, x0, limit: StochasticMatrix | None = None
) -> FixedPointPrediction:
    """Apply the limit matrix to the initial profile.

    Every agent lands on the same value: the stationary-weighted mean of
    the closed class's initial opinions (the leader's own value when the
    closed class is a singleton).
    """
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (form.n,):
        raise ValueError(
            f"initial profile has shape {x0.shape}, expected ({form.n},)"
        )
    if limit is None:
        limit = limit_matrix(form)
    x_bar = limit.entries @ x0
    x_bar.setflags(write=False)
    pi = _closed_stationary(form)
    mode = "leader" if len(form.closed_class) == 1 else "absorbing-class"
    return FixedPointPrediction(x_bar=x_bar, pi=pi, mode=mode)


def contraction_factor(form: CanonicalForm) -> float:
    """Geometric rate of the even-time subsequence.

    Spectral radius of the transient block; when the closed class has more
    than one member, the closed block deflated by its stationary projector
    competes as well and the larger radius wins.  An empty transient block
    contributes 0.
    """
    q_radius = spectral_radius(form.q_block) if form.q_block.n else 0.0
    if len(form.closed_class) == 1:
        return q_radius
    pi = _closed_stationary(form)
    deflated = form.p_block.entries - np.outer(np.ones(form.p_block.n), pi.weights)
    return max(q_radius, spectral_radius(deflated))


@dataclass(frozen=True)
class AnalysisReport:
    """Everything the limit analysis produces for one network and profile."""

    validation: ValidationReport
    classes: tuple[CommClass, ...]
    canonical: CanonicalForm
    limit: StochasticMatrix
    prediction: FixedPointPrediction
    contraction: float


def analyze(net: MultiplexNetwork, x0) -> AnalysisReport:
    """Validate, build the two-step chain, and predict the limit profile.

    Raises :class:`AssumptionViolatedError` when validation reports
    violations, and :class:`UnsupportedConfigurationError` for activation
    periods other than 2.
    """
    report = validate_assumptions(net)
    if not report.ok:
        summary = "; ".join(v.message for v in report.violations)
        raise AssumptionViolatedError(
            f"network fails validation: {summary}", violations=report.violations
        )
    chain = two_step_matrix(net)
    blocks = chain_classes(chain)
    form = canonical_form(chain)
    limit = limit_matrix(form)
    prediction = predicted_fixed_point(form, x0, limit=limit)
    q = contraction_factor(form)
    return AnalysisReport(
        validation=report,
        classes=blocks,
        canonical=form,
        limit=limit,
        prediction=prediction,
        contraction=q,
    )
