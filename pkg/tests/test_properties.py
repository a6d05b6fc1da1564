"""Hypothesis checks for module invariants beyond the acceptance suite."""

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from muxdyn import (
    BoundParameters,
    analyze,
    best_response,
    bound_series,
    calibrate_u,
    induced_norm,
    layer_adjacency,
    simulate,
    step,
)

from conftest import random_valid_network


@st.composite
def valid_network(draw, max_agents=10):
    n = draw(st.integers(min_value=2, max_value=max_agents))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    mode = draw(st.sampled_from(["leader", "class"]))
    rng = np.random.default_rng(seed)
    return random_valid_network(rng, n=n, mode=mode)


@given(valid_network())
@settings(max_examples=50, deadline=None, derandomize=True)
def test_best_response_vector_matches_dynamics(pair):
    net, x0 = pair
    for t in (1, 2):
        responses = np.array([best_response(net, x0, i, t) for i in range(net.n)])
        assert np.max(np.abs(responses - step(net, x0, t))) < 1e-12


@given(valid_network(max_agents=8))
@settings(max_examples=50, deadline=None, derandomize=True)
def test_converged_profile_matches_prediction(pair):
    net, x0 = pair
    tol = 1e-9
    x_bar = analyze(net, x0).prediction.x_bar
    traj = simulate(net, x0, tol=tol, x_bar=x_bar)
    assume(traj.converged_at is not None)
    assert np.max(np.abs(traj.final - x_bar)) < 10 * tol


@given(valid_network(max_agents=8))
@settings(max_examples=50, deadline=None, derandomize=True)
def test_calibrated_envelope_dominates(pair):
    net, x0 = pair
    report = analyze(net, x0)
    assume(0.0 < report.contraction < 1.0)
    traj = simulate(net, x0, tol=1e-9, x_bar=report.prediction.x_bar)
    a1n = induced_norm(layer_adjacency(net, "layer1"), 1)
    cal = calibrate_u(
        x0, report.prediction.x_bar, traj.err_series, report.contraction, a1n
    )
    params = BoundParameters(
        u=cal.u_min,
        q=report.contraction,
        norm_x0=float(np.linalg.norm(x0)),
        a1_norm1=a1n,
    )
    envelope = bound_series(params, traj.times)
    assert np.all(envelope >= traj.err_series - 1e-12)


@given(valid_network(), st.integers(min_value=1, max_value=6))
@settings(max_examples=50, deadline=None, derandomize=True)
def test_opinions_never_leave_the_initial_hull(pair, horizon):
    net, x0 = pair
    lo, hi = float(np.min(x0)), float(np.max(x0))
    x = x0
    for t in range(1, horizon + 1):
        x = step(net, x, t)
        assert np.min(x) >= lo - 1e-12
        assert np.max(x) <= hi + 1e-12
