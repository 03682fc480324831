"""Randomized patrol radius: convexity inequality, estimators, time averages."""

import math

import numpy as np
import pytest

from patrolgeom import CircularPatrolScenario
from patrolgeom.circular import mc_probability
from patrolgeom.randomradius import (PiecewiseRadiusProcess, RadiusDistribution,
                                     asymptotic_probability_randomized,
                                     ergodic_time_average, jensen_sides,
                                     mc_probability_random_radius,
                                     validate_process)
from patrolgeom.scenario import ValidationError

TWO_POINT = [(0.9, 0.5), (1.1, 0.5)]


def _random_mean_one_distribution(rng) -> RadiusDistribution:
    m = int(rng.integers(2, 5))
    weights = rng.uniform(0.2, 1.0, m)
    weights /= math.fsum(weights)
    ks = rng.uniform(0.3, 3.0, m)
    ks /= math.fsum(w * k for w, k in zip(weights, ks))
    return RadiusDistribution.from_atoms(list(zip(ks.tolist(),
                                                  weights.tolist())))


def test_from_atoms_validation():
    with pytest.raises(ValidationError, match="at least one atom"):
        RadiusDistribution.from_atoms([])
    with pytest.raises(ValidationError, match="multipliers must be positive"):
        RadiusDistribution.from_atoms([(0.0, 1.0)])
    with pytest.raises(ValidationError, match="weights must be positive"):
        RadiusDistribution.from_atoms([(1.0, 0.0)])
    with pytest.raises(ValidationError, match="weights must sum to 1"):
        RadiusDistribution.from_atoms([(1.0, 0.6), (1.0, 0.5)])
    with pytest.raises(ValidationError, match="mean must equal 1"):
        RadiusDistribution.from_atoms([(0.9, 0.5), (1.3, 0.5)])
    with pytest.raises(ValidationError, match="k_minus"):
        RadiusDistribution.from_atoms(TWO_POINT, k_minus=0.95)
    with pytest.raises(ValidationError, match="k_plus"):
        RadiusDistribution.from_atoms(TWO_POINT, k_plus=1.05)


def test_from_atoms_defaults_bounds_to_support():
    d = RadiusDistribution.from_atoms(TWO_POINT)
    assert d.k_minus == 0.9
    assert d.k_plus == 1.1
    wide = RadiusDistribution.from_atoms(TWO_POINT, k_minus=0.5, k_plus=2.0)
    assert wide.k_minus == 0.5
    assert wide.k_plus == 2.0


def test_mean_inverse_two_point_value():
    d = RadiusDistribution.from_atoms(TWO_POINT)
    assert d.mean_inverse() == pytest.approx(100.0 / 99.0, abs=1e-15)
    assert d.mean_inverse() == pytest.approx(1.0101010101010102, abs=1e-15)


def test_cumulative_weights_end_at_one():
    d = RadiusDistribution.from_atoms([(0.8, 0.25), (1.0, 0.5), (1.2, 0.25)])
    cum = d.cumulative_weights()
    assert cum == pytest.approx([0.25, 0.75, 1.0], abs=1e-12)


def test_jensen_sides_degenerate_distribution_is_an_equality():
    d = RadiusDistribution.from_atoms([(1.0, 1.0)])
    lhs, rhs = jensen_sides(d, 5.0, 100.0)
    assert lhs == rhs == pytest.approx(0.05, abs=1e-15)


def test_jensen_sides_two_point_value():
    lhs, rhs = jensen_sides(RadiusDistribution.from_atoms(TWO_POINT),
                            5.0, 100.0)
    assert rhs == pytest.approx(0.05, abs=1e-15)
    assert lhs == pytest.approx(0.05050505050505051, abs=1e-15)


def test_jensen_inequality_holds_for_random_distributions():
    rng = np.random.default_rng(271828)
    for _ in range(1000):
        d = _random_mean_one_distribution(rng)
        lhs, rhs = jensen_sides(d, 1.0, 50.0)
        assert lhs >= rhs - 1e-15
        spread = max(k for k, _ in d.atoms) - min(k for k, _ in d.atoms)
        if spread > 1e-6:
            assert lhs > rhs


def test_jensen_sides_rejects_radius_at_or_beyond_smallest_ring():
    d = RadiusDistribution.from_atoms(TWO_POINT)
    with pytest.raises(ValidationError, match="r < k_minus"):
        jensen_sides(d, 95.0, 100.0)
    with pytest.raises(ValidationError, match="must be positive"):
        jensen_sides(d, -1.0, 100.0)


def test_randomized_asymptotic_reference_value(ref_circular):
    d = RadiusDistribution.from_atoms(TWO_POINT)
    p = asymptotic_probability_randomized(ref_circular, d)
    assert p == pytest.approx(0.3594760320288773, abs=1e-12)


def test_randomized_asymptotic_caps_at_one():
    d = RadiusDistribution.from_atoms(TWO_POINT)
    s = CircularPatrolScenario(R=100.0, r=5.0, n=29, v=2.0, u=1.0)
    assert asymptotic_probability_randomized(s, d) == 1.0


def test_randomized_never_below_fixed_radius(ref_circular):
    from patrolgeom.circular import asymptotic_summary
    rng = np.random.default_rng(55)
    fixed = asymptotic_summary(ref_circular).p_asym
    for _ in range(50):
        d = _random_mean_one_distribution(rng)
        if ref_circular.r >= d.k_minus * ref_circular.R:
            continue
        assert asymptotic_probability_randomized(ref_circular, d) >= \
            fixed - 1e-12


def test_mc_degenerate_distribution_matches_fixed_radius(ref_circular):
    d = RadiusDistribution.from_atoms([(1.0, 1.0)])
    random_est = mc_probability_random_radius(ref_circular, d, 100_000, seed=7)
    fixed_est = mc_probability(ref_circular, 100_000, seed=7)
    combined = math.hypot(random_est.stderr, fixed_est.stderr)
    assert abs(random_est.mean - fixed_est.mean) < 3.0 * combined


def test_mc_static_ring_matches_mixture_of_closed_forms(static_circular):
    # with v = 0 each radius state contributes (n/pi) asin(r / (k R))
    d = RadiusDistribution.from_atoms(TWO_POINT)
    expected = math.fsum(p * (static_circular.n / math.pi)
                         * math.asin(static_circular.r / (k * static_circular.R))
                         for k, p in d.atoms)
    est = mc_probability_random_radius(static_circular, d, 200_000, seed=3)
    assert abs(est.mean - expected) < 3.0 * est.stderr


def test_mc_random_radius_deterministic_across_workers(ref_circular):
    d = RadiusDistribution.from_atoms(TWO_POINT)
    a = mc_probability_random_radius(ref_circular, d, 30_000, seed=9)
    b = mc_probability_random_radius(ref_circular, d, 30_000, seed=9,
                                     workers=3)
    assert a == b


def test_mc_random_radius_rejects_overlapping_radius(ref_circular):
    d = RadiusDistribution.from_atoms(TWO_POINT)
    s = CircularPatrolScenario(R=100.0, r=95.0, n=1, v=2.0, u=1.0)
    with pytest.raises(ValidationError, match="r < k_minus"):
        mc_probability_random_radius(s, d, 100, seed=0)


def test_process_validation():
    with pytest.raises(ValidationError, match="at least one state"):
        validate_process(PiecewiseRadiusProcess((), 1.0, 200.0))
    with pytest.raises(ValidationError, match="positive multipliers"):
        validate_process(PiecewiseRadiusProcess((1.0, -0.5), 1.0, 200.0))
    with pytest.raises(ValidationError, match="dwell must be positive"):
        validate_process(PiecewiseRadiusProcess((1.0,), 0.0, 200.0))
    with pytest.raises(ValidationError, match="horizon >= 100"):
        validate_process(PiecewiseRadiusProcess((1.0,), 1.0, 99.0))
    with pytest.raises(ValidationError, match="transition must be"):
        validate_process(PiecewiseRadiusProcess((1.0,), 1.0, 200.0,
                                                transition="markov"))


def test_ergodic_average_single_state_is_exact():
    proc = PiecewiseRadiusProcess((1.0,), 1.0, 500.0)
    avg, ensemble = ergodic_time_average(proc, seed=0)
    assert avg == pytest.approx(1.0, abs=1e-12)
    assert ensemble == 1.0


def test_ergodic_average_cyclic_visits_states_evenly():
    proc = PiecewiseRadiusProcess((0.9, 1.1), 1.0, 1000.0,
                                  transition="cyclic")
    avg, ensemble = ergodic_time_average(proc, seed=0)
    assert ensemble == pytest.approx(100.0 / 99.0, abs=1e-12)
    assert abs(avg - ensemble) < 1e-3


def test_ergodic_average_random_transitions_settle():
    states = (0.9, 1.1)
    proc = PiecewiseRadiusProcess(states, 1.0, 10_000.0, transition="random")
    avg, ensemble = ergodic_time_average(proc, seed=0)
    inverses = [1.0 / k for k in states]
    mu = math.fsum(inverses) / len(inverses)
    sd = math.sqrt(math.fsum((x - mu) ** 2 for x in inverses) / len(inverses))
    assert abs(avg - ensemble) < 5.0 * sd / math.sqrt(10_000.0)
