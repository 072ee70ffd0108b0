import numpy as np
import pytest

from spinsqueeze import find_optimum, run_many, run_trace, tat_optimum, time_cost
from spinsqueeze.experiments import (
    ExperimentSpec,
    _loglog_fit,
    default_t_total,
    effective_counterpart,
    nc_convergence,
    oat_optimum,
    relative_error_curve,
    scaling_fit,
    strength_divisor,
    strobe_indices,
    validate_spec,
)
from spinsqueeze.schedules import S_PARAM
from spinsqueeze.squeezing import MeanSpinVanishing


def test_spec_validation():
    good = ExperimentSpec("schemeA", 10, 5, 0.1)
    validate_spec(good)
    for bad in (
        ExperimentSpec("nope", 10, 5, 0.1),
        ExperimentSpec("schemeA", 0, 5, 0.1),
        ExperimentSpec("schemeA", 10, 0, 0.1),
        ExperimentSpec("schemeA", 10, 5, 0.0),
        ExperimentSpec("schemeA", 10, 5, 0.1, chi=-1.0),
        ExperimentSpec("schemeA", 10, 5, 0.1, sampling="sometimes"),
        ExperimentSpec("schemeA", 10, 5, 0.1, sampling="fine", subsamples=0),
    ):
        with pytest.raises(ValueError):
            validate_spec(bad)


def test_traces_are_deterministic():
    spec = ExperimentSpec("schemeB", 30, 8, 0.1, sampling="fine", subsamples=4)
    a, b = run_trace(spec), run_trace(spec)
    assert all(
        s.xi2 == t.xi2 and np.array_equal(s.mean_spin, t.mean_spin)
        for s, t in zip(a.samples, b.samples)
    )


def test_stroboscopic_slice_of_fine_run_is_bit_identical():
    fine = ExperimentSpec("schemeA", 24, 9, 0.06, sampling="fine", subsamples=5)
    strobe = ExperimentSpec("schemeA", 24, 9, 0.06)
    tf, ts = run_trace(fine), run_trace(strobe)
    idx = strobe_indices(fine)
    assert np.array_equal(tf.xi2()[idx], ts.xi2())
    assert np.array_equal(tf.times()[idx], ts.times())


def test_sample_counts_and_time_grid():
    spec = ExperimentSpec("liu1", 12, 6, 0.3, sampling="fine", subsamples=3)
    trace = run_trace(spec)
    assert len(trace.samples) == 6 * 4 + 1
    times = trace.times()
    assert np.all(np.diff(times) > 0)
    assert times[0] == 0.0
    assert times[-1] == pytest.approx(0.3, rel=1e-12)


def test_ideal_runs_share_grid_with_pulse_runs():
    seq = ExperimentSpec("schemeA", 16, 7, 0.12)
    eff = effective_counterpart(seq)
    assert eff.scheme == "ideal-TAT"
    assert eff.divisor == pytest.approx(3.0)
    curve = relative_error_curve(seq, eff)
    assert curve.times.shape == (8,)
    assert np.all(curve.relative_errors >= 0)


def test_identical_specs_give_zero_error():
    spec = ExperimentSpec("ideal-TAT", 14, 6, 0.2)
    curve = relative_error_curve(spec, spec)
    np.testing.assert_array_equal(curve.relative_errors, np.zeros(7))


def test_grid_mismatch_rejected():
    a = ExperimentSpec("schemeA", 16, 7, 0.12)
    b = ExperimentSpec("ideal-TAT", 16, 8, 0.12)
    with pytest.raises(ValueError, match="grid mismatch"):
        relative_error_curve(a, b)
    c = ExperimentSpec("ideal-TAT", 18, 7, 0.12)
    with pytest.raises(ValueError, match="grid mismatch"):
        relative_error_curve(a, c)


def test_mean_spin_vanishing_reports_sample_index():
    with pytest.raises(MeanSpinVanishing, match="sample 1"):
        run_trace(ExperimentSpec("ideal-OAT", 2, 2, np.pi))


def test_nc_convergence_trend():
    n = 60
    ideal = tat_optimum(n)
    t_total = 1.2 * 3 * ideal.t_opt
    for scheme in ("schemeA", "liu1"):
        rows = nc_convergence(scheme, n, 1.0, t_total, [10, 20, 40, 80])
        errors = [r.rel_error for r in rows]
        for coarse, finer in zip(errors, errors[1:]):
            assert finer <= coarse * 1.05  # non-increasing up to 5% jitter


def test_loglog_fit_flat_data():
    fit = _loglog_fit(np.array([10.0, 20.0, 40.0, 80.0]), np.full(4, 3.7))
    assert fit.exponent == pytest.approx(0.0, abs=1e-12)
    assert fit.intercept == pytest.approx(np.log(3.7), abs=1e-12)


def test_scaling_fit_needs_enough_points():
    with pytest.raises(ValueError):
        scaling_fit("ideal-TAT", [50, 100])


def test_oat_scaling_exponent_small_sweep():
    fit = scaling_fit("ideal-OAT", [50, 100, 200, 400])
    assert fit.exponent == pytest.approx(-2 / 3, abs=0.1)
    assert fit.r_squared > 0.99


def test_time_cost_ratio_is_spin_number_independent():
    ratio_small = time_cost("schemeB", 40) / time_cost("schemeA", 40)
    ratio_large = time_cost("schemeB", 120) / time_cost("schemeA", 120)
    expected = (12 * S_PARAM - 3) / 3
    assert ratio_small == pytest.approx(expected, rel=1e-12)
    assert ratio_large == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(4.405, abs=1e-3)


def test_time_cost_rejects_plain_twisting_baseline():
    with pytest.raises(ValueError):
        time_cost("ideal-OAT", 40)


def test_strength_divisors():
    assert strength_divisor("liu1") == pytest.approx(3.0)
    assert strength_divisor("schemeA") == pytest.approx(3.0)
    assert strength_divisor("schemeB") == pytest.approx(12 * S_PARAM - 3)
    assert strength_divisor("ideal-TAT") == pytest.approx(1.0)
    assert strength_divisor("general", order=6) > strength_divisor("general", order=4)


def test_default_t_total_covers_the_optimum():
    n = 40
    assert default_t_total("schemeA", n) == pytest.approx(1.5 * 3 * tat_optimum(n).t_opt)
    assert default_t_total("ideal-OAT", n) == pytest.approx(1.5 * oat_optimum(n).t_opt)


def test_run_many_preserves_order_and_matches_sequential():
    specs = [
        ExperimentSpec("schemeA", 12, 4, 0.1),
        ExperimentSpec("liu1", 12, 4, 0.1),
        ExperimentSpec("ideal-TAT", 12, 4, 0.1),
    ]
    sequential = run_many(specs)
    parallel = run_many(specs, max_workers=2)
    for seq, par in zip(sequential, parallel):
        assert seq.scheme == par.scheme
        np.testing.assert_array_equal(seq.xi2(), par.xi2())


def test_general_scheme_runs():
    spec = ExperimentSpec("general", 14, 5, 0.4, order=6)
    trace = run_trace(spec)
    assert len(trace.samples) == 6
    opt = find_optimum(trace)
    assert 0 <= opt.xi2_min <= 1.0
