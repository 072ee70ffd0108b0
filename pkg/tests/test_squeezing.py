import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinsqueeze import (
    build_operators,
    coherent_state_z,
    evolve_twist,
    find_optimum,
    rotate,
    squeezing_parameter,
)
from spinsqueeze.squeezing import (
    MeanSpinVanishing,
    SqueezingSample,
    SqueezingTrace,
    transverse_basis,
)

from conftest import random_state


def brute_force_xi2(state, ops, n_angles=3000):
    """Independent oracle: scan transverse directions for the minimal variance."""
    amps = state.amplitudes
    vx, vy, vz = ops.jx @ amps, ops.jy @ amps, ops.jz @ amps
    mean = np.array([np.vdot(amps, v).real for v in (vx, vy, vz)])
    u = mean / np.linalg.norm(mean)
    n1, n2 = transverse_basis(mean)
    best = np.inf
    for phi in np.linspace(0, np.pi, n_angles):
        direction = np.cos(phi) * n1 + np.sin(phi) * n2
        w = direction[0] * vx + direction[1] * vy + direction[2] * vz
        var = np.vdot(w, w).real - np.vdot(amps, w).real ** 2
        best = min(best, var)
    return 2 * best / ops.total_spin


@pytest.mark.parametrize("n", [1, 2, 5, 40])
def test_coherent_state_is_unsqueezed(n):
    ops = build_operators(n)
    sample = squeezing_parameter(coherent_state_z(n), ops)
    assert sample.xi2 == pytest.approx(1.0, abs=1e-9)
    np.testing.assert_allclose(sample.mean_spin, [0, 0, n / 2], atol=1e-12)
    # degenerate covariance: deterministic first-transverse-axis convention
    np.testing.assert_allclose(sample.min_variance_direction, [1, 0, 0], atol=1e-12)


def test_two_spin_twisting_closed_form_and_oracle():
    ops = build_operators(2)
    for t in np.linspace(0.02, 0.7, 12):
        state = evolve_twist(coherent_state_z(2), 1.0, t)
        sample = squeezing_parameter(state, ops, t=t)
        assert sample.xi2 == pytest.approx(1 - abs(np.sin(2 * t)), abs=1e-10)
        assert sample.xi2 == pytest.approx(brute_force_xi2(state, ops), abs=1e-6)


@settings(max_examples=20, deadline=None)
@given(theta=st.floats(-3, 3))
def test_rotated_coherent_state_stays_unsqueezed(theta):
    ops = build_operators(12)
    state = rotate(coherent_state_z(12), "y", theta)
    assert squeezing_parameter(state, ops).xi2 == pytest.approx(1.0, abs=1e-9)


@settings(max_examples=15, deadline=None)
@given(axis=st.sampled_from(["x", "y"]), angle=st.floats(-3, 3))
def test_rotational_covariance(axis, angle):
    ops = build_operators(10)
    squeezed = evolve_twist(coherent_state_z(10), 1.0, 0.08)
    base = squeezing_parameter(squeezed, ops).xi2
    rotated = rotate(squeezed, axis, angle)
    assert squeezing_parameter(rotated, ops).xi2 == pytest.approx(base, abs=1e-9)


def test_basis_choice_is_irrelevant():
    ops = build_operators(9)
    state = evolve_twist(coherent_state_z(9), 1.0, 0.05)
    mean = squeezing_parameter(state, ops).mean_spin
    n1, n2 = transverse_basis(mean)
    default = squeezing_parameter(state, ops).xi2
    for phi in (0.3, 1.1, 2.5):
        m1 = np.cos(phi) * n1 + np.sin(phi) * n2
        m2 = -np.sin(phi) * n1 + np.cos(phi) * n2
        alt = squeezing_parameter(state, ops, basis=(m1, m2)).xi2
        assert alt == pytest.approx(default, abs=1e-10)


def test_direction_is_transverse_unit_vector():
    ops = build_operators(9)
    state = evolve_twist(coherent_state_z(9), 1.0, 0.05)
    sample = squeezing_parameter(state, ops)
    assert np.linalg.norm(sample.min_variance_direction) == pytest.approx(1.0, abs=1e-12)
    assert abs(np.dot(sample.min_variance_direction, sample.mean_spin)) <= 1e-9 * np.linalg.norm(
        sample.mean_spin
    )


def test_minimum_bounds_any_fixed_direction():
    ops = build_operators(9)
    state = evolve_twist(coherent_state_z(9), 1.0, 0.05)
    sample = squeezing_parameter(state, ops)
    mean = sample.mean_spin
    n1, n2 = transverse_basis(mean)
    amps = state.amplitudes
    for phi in np.linspace(0, np.pi, 17):
        d = np.cos(phi) * n1 + np.sin(phi) * n2
        w = d[0] * (ops.jx @ amps) + d[1] * (ops.jy @ amps) + d[2] * (ops.jz @ amps)
        var = np.vdot(w, w).real - np.vdot(amps, w).real ** 2
        assert sample.xi2 <= 2 * var / ops.total_spin + 1e-12


def test_mean_spin_vanishing_raises():
    ops = build_operators(2)
    state = evolve_twist(coherent_state_z(2), 1.0, np.pi / 4)
    with pytest.raises(MeanSpinVanishing):
        squeezing_parameter(state, ops)


def _trace(samples):
    return SqueezingTrace(tuple(samples), "test", 2, 1, "grid")


def _sample(t, xi2):
    return SqueezingSample(t=t, xi2=xi2, mean_spin=np.zeros(3), min_variance_direction=np.zeros(3))


def test_find_optimum_interior_minimum():
    trace = _trace([_sample(t, x) for t, x in [(0, 1.0), (1, 0.4), (2, 0.1), (3, 0.5)]])
    opt = find_optimum(trace)
    assert (opt.t_opt, opt.xi2_min) == (2, 0.1)


def test_find_optimum_tie_breaks_earliest():
    trace = _trace([_sample(t, x) for t, x in [(0, 1.0), (1, 0.2), (2, 0.2)]])
    assert find_optimum(trace).t_opt == 1


def test_find_optimum_empty_trace():
    with pytest.raises(ValueError):
        find_optimum(_trace([]))


def test_two_spin_optimum_approaches_quarter_turn():
    ops = build_operators(2)
    samples = []
    for t in np.linspace(0, 0.784, 1200):
        state = evolve_twist(coherent_state_z(2), 1.0, t)
        samples.append(squeezing_parameter(state, ops, t=t))
    opt = find_optimum(_trace(samples))
    assert opt.t_opt == pytest.approx(np.pi / 4, abs=0.01)
    assert opt.xi2_min <= 0.01


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_random_states_match_brute_force(seed):
    ops = build_operators(8)
    state = random_state(8, seed)
    try:
        sample = squeezing_parameter(state, ops)
    except MeanSpinVanishing:
        return
    assert sample.xi2 == pytest.approx(brute_force_xi2(state, ops), abs=2e-5)
