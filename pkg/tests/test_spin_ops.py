import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinsqueeze import build_operators, coherent_state_z, expectation
from spinsqueeze.spin_ops import (
    NumericalConsistencyError,
    apply_jx,
    apply_jy,
    apply_jz,
    mean_spin_vector,
)

from conftest import random_state


def test_single_spin_matrices():
    ops = build_operators(1)
    np.testing.assert_allclose(np.diag(ops.jz), [0.5, -0.5])
    np.testing.assert_allclose(ops.jx, [[0, 0.5], [0.5, 0]], atol=1e-15)
    np.testing.assert_allclose(ops.jy, [[0, -0.5j], [0.5j, 0]], atol=1e-15)


def test_two_spin_ladder_coefficients():
    ops = build_operators(2)
    np.testing.assert_allclose(np.diag(ops.jz), [1.0, 0.0, -1.0])
    off = np.diag(np.asarray(ops.jx), 1)
    np.testing.assert_allclose(off, [1 / np.sqrt(2), 1 / np.sqrt(2)])


@pytest.mark.parametrize("n", [1, 2, 3, 7, 24, 50])
def test_casimir_identity(n):
    ops = build_operators(n)
    j = n / 2
    total = ops.jx @ ops.jx + ops.jy @ ops.jy + ops.jz @ ops.jz
    assert np.abs(total - j * (j + 1) * np.eye(n + 1)).max() <= 1e-9


@settings(max_examples=25, deadline=None)
@given(n=st.integers(min_value=1, max_value=100))
def test_commutator_and_hermiticity(n):
    ops = build_operators(n)
    for mat in (ops.jx, ops.jy, ops.jz):
        assert np.abs(mat - mat.conj().T).max() <= 1e-12
    comm = ops.jx @ ops.jy - ops.jy @ ops.jx - 1j * ops.jz
    assert np.abs(comm).max() <= 1e-10


def test_twist_matches_dense_difference_and_is_pentadiagonal():
    ops = build_operators(13)
    dense = ops.jx @ ops.jx - ops.jy @ ops.jy
    assert np.abs(ops.twist_xy - dense).max() <= 1e-12
    # only couplings two steps apart; everything else exactly zero
    tw = np.asarray(ops.twist_xy)
    for offset in range(14):
        band = np.diag(tw, offset)
        if offset == 2:
            assert np.all(band != 0)
        else:
            assert np.all(band == 0)


def test_twist_parity_blocks_do_not_couple():
    tw = np.asarray(build_operators(17).twist_xy)
    even = np.arange(0, 18, 2)
    odd = np.arange(1, 18, 2)
    assert np.all(tw[np.ix_(even, odd)] == 0)
    assert np.all(tw[np.ix_(odd, even)] == 0)


@pytest.mark.parametrize("bad", [0, -3])
def test_build_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        build_operators(bad)


def test_build_rejects_oversized():
    with pytest.raises(ValueError):
        build_operators(10**7)


def test_coherent_state_is_highest_weight():
    state = coherent_state_z(4)
    np.testing.assert_array_equal(state.amplitudes, [1, 0, 0, 0, 0])
    ops = build_operators(4)
    np.testing.assert_allclose(mean_spin_vector(ops, state), [0, 0, 2], atol=1e-14)


def test_expectation_examples():
    ops = build_operators(6)
    state = coherent_state_z(6)
    assert expectation(state, ops.jz) == pytest.approx(3.0, abs=1e-12)
    assert expectation(state, np.asarray(ops.jx @ ops.jx)) == pytest.approx(1.5, abs=1e-12)
    rand = random_state(6, seed=3)
    assert expectation(rand, np.eye(7, dtype=complex)) == pytest.approx(1.0, abs=1e-12)


def test_expectation_dimension_mismatch():
    with pytest.raises(ValueError):
        expectation(coherent_state_z(4), np.eye(3))


def test_expectation_rejects_imaginary_part():
    with pytest.raises(NumericalConsistencyError):
        expectation(coherent_state_z(2), 1j * np.eye(3))


@settings(max_examples=20, deadline=None)
@given(n=st.integers(min_value=1, max_value=40), seed=st.integers(0, 2**31))
def test_banded_applications_match_dense(n, seed):
    ops = build_operators(n)
    amps = random_state(n, seed).amplitudes
    np.testing.assert_allclose(apply_jx(ops, amps), ops.jx @ amps, atol=1e-12)
    np.testing.assert_allclose(apply_jy(ops, amps), ops.jy @ amps, atol=1e-12)
    np.testing.assert_allclose(apply_jz(ops, amps), ops.jz @ amps, atol=1e-12)


def test_operator_arrays_are_immutable():
    ops = build_operators(5)
    with pytest.raises(ValueError):
        ops.jx[0, 0] = 1.0


def test_state_dimension_is_validated():
    from spinsqueeze.spin_ops import state_from_amplitudes

    state = state_from_amplitudes(2, [1.0, 0.0, 0.0])
    assert state.norm() == pytest.approx(1.0)
    with pytest.raises(ValueError):
        state_from_amplitudes(2, [1.0, 0.0])
