import numpy as np
import pytest

from blochcontract import presets
from blochcontract.analysis import positive_tolerance, steady_state, symmetric_spectrum, witness_state
from blochcontract.basis import build_basis, hs_distance, reduced
from blochcontract.dynamics import (
    default_grid,
    distance_series,
    integrate_ode,
    monotonicity_check,
    propagate,
)
from blochcontract.superop import LindbladSystem, build_bloch_system

from conftest import random_density, random_hermitian, random_matrix, random_system


def test_steady_state_is_fixed_point():
    bloch = build_bloch_system(presets.example1())
    s = steady_state(bloch).vector
    traj = propagate(bloch, s, default_grid())
    np.testing.assert_allclose(traj.states, np.tile(s, (400, 1)), atol=1e-12)


def test_grid_validation():
    bloch = build_bloch_system(presets.example4())
    s0 = np.zeros(8)
    for bad in ([], [0.1, 0.2], [0, 0.5, 0.5], [0, np.inf]):
        with pytest.raises(ValueError):
            propagate(bloch, s0, bad)
    with pytest.raises(ValueError):
        propagate(bloch, 5 * np.ones(8), [0, 1])


def test_example4_hs_norm_dip():
    bloch = build_bloch_system(presets.example4())
    s0 = reduced(np.diag([0, 0, 1.0]), bloch.basis)
    traj = propagate(bloch, s0, default_grid(30, 600))
    norm = traj.hs_norm
    assert abs(norm[0] - 1) < 1e-12
    assert norm.min() < 1 - 1e-3
    assert abs(norm[-1] - 1) < 1e-6
    i = np.argmin(norm)
    assert np.all(np.diff(norm[: i + 1]) <= 1e-12)
    assert np.all(np.diff(norm[i:]) >= -1e-12)


def test_example1_witness_distance():
    bloch = build_bloch_system(presets.example1())
    w = witness_state(bloch, alpha=1 / 9)
    # slowest mode of A decays at rate ~0.164, so 1e-6 needs t ~ 84
    times = default_grid(120, 2400)
    t1 = propagate(bloch, w.state, times)
    t2 = propagate(bloch, w.reference, times)
    d = distance_series(t1, t2)
    assert d[1] > d[0]
    assert d[-1] < 1e-6 * d.max()
    mono = monotonicity_check(bloch, t1, t2)
    assert not mono.monotone
    assert mono.first_violation_time == 0.0
    assert abs(mono.derivative[0] - w.initial_rate) < 1e-10


def test_distance_series_matches_density_matrices(rng):
    system = random_system(rng, 3)
    bloch = build_bloch_system(system)
    times = default_grid(5, 20)
    t1 = propagate(bloch, reduced(random_density(rng, 3), bloch.basis), times)
    t2 = propagate(bloch, reduced(random_density(rng, 3), bloch.basis), times)
    d = distance_series(t1, t2)
    R1, R2 = t1.density_matrices(bloch.basis), t2.density_matrices(bloch.basis)
    for i in range(len(times)):
        assert abs(d[i] - hs_distance(R1[i], R2[i])) < 1e-12
    np.testing.assert_array_equal(distance_series(t1, t1), 0)
    assert monotonicity_check(bloch, t1, t1).monotone
    other = propagate(bloch, t1.states[0], default_grid(5, 21))
    with pytest.raises(ValueError):
        distance_series(t1, other)


def test_unitary_distance_constant(rng):
    bloch = build_bloch_system(LindbladSystem(random_hermitian(rng, 3), ()))
    times = default_grid(10, 50)
    t1 = propagate(bloch, reduced(random_density(rng, 3), bloch.basis), times)
    t2 = propagate(bloch, reduced(random_density(rng, 3), bloch.basis), times)
    d = distance_series(t1, t2)
    np.testing.assert_allclose(d, d[0], atol=1e-10)


def test_example3_distance_nonincreasing(rng):
    bloch = build_bloch_system(presets.example3())
    times = default_grid(10, 200)
    for _ in range(10):
        t1 = propagate(bloch, reduced(random_density(rng, 3), bloch.basis), times)
        t2 = propagate(bloch, reduced(random_density(rng, 3), bloch.basis), times)
        assert np.all(np.diff(distance_series(t1, t2)) <= 1e-12)
        assert monotonicity_check(bloch, t1, t2).monotone


def test_example4_any_pair_monotone(rng):
    bloch = build_bloch_system(presets.example4())
    times = default_grid(10, 100)
    for _ in range(20):
        t1 = propagate(bloch, reduced(random_density(rng, 3), bloch.basis), times)
        t2 = propagate(bloch, reduced(random_density(rng, 3), bloch.basis), times)
        assert monotonicity_check(bloch, t1, t2).monotone


@pytest.mark.parametrize("N", [2, 3, 4])
def test_exponential_matches_ode(N, rng):
    times = default_grid(10, 41)
    for _ in range(5):
        bloch = build_bloch_system(random_system(rng, N))
        s0 = reduced(random_density(rng, N), bloch.basis)
        exact = propagate(bloch, s0, times).states
        np.testing.assert_allclose(exact, integrate_ode(bloch, s0, times), atol=1e-8)


def test_singular_generator_uses_augmented_system(rng):
    bloch = build_bloch_system(presets.example3())
    assert not steady_state(bloch).unique
    s0 = reduced(random_density(rng, 3), bloch.basis)
    times = default_grid(10, 41)
    np.testing.assert_allclose(propagate(bloch, s0, times).states, integrate_ode(bloch, s0, times), atol=1e-8)


def test_semigroup(rng):
    bloch = build_bloch_system(random_system(rng, 3))
    s0 = reduced(random_density(rng, 3), bloch.basis)
    a = propagate(bloch, s0, [0, 1.3, 3.0]).states
    b = propagate(bloch, a[1], [0, 1.7]).states
    np.testing.assert_allclose(a[2], b[1], atol=1e-10)


def test_physical_along_flow(rng):
    times = default_grid(10, 60)
    for _ in range(20):
        N = int(rng.integers(2, 5))
        bloch = build_bloch_system(random_system(rng, N))
        traj = propagate(bloch, reduced(random_density(rng, N, rank=1), bloch.basis), times)
        for rho in traj.density_matrices(bloch.basis):
            assert abs(np.trace(rho) - 1) < 1e-12
            assert np.linalg.eigvalsh(rho)[0] >= -1e-8


def test_convergence_rate():
    times = default_grid(20, 81)
    for make in (presets.example1, presets.example4):
        bloch = build_bloch_system(make())
        delta = -np.linalg.eigvals(bloch.a_matrix).real.max() * 0.99
        ss = steady_state(bloch).vector
        s0 = reduced(np.diag([0, 0, 1.0]), bloch.basis)
        err = np.linalg.norm(propagate(bloch, s0, times).states - ss, axis=1)
        C = max(err / np.exp(-delta * times))
        assert C < 100 * max(err[0], 1)


def test_global_verdict_consistency(rng):
    times = default_grid(2, 21)
    for _ in range(30):
        bloch = build_bloch_system(LindbladSystem.dissipative(random_matrix(rng, 3)))
        contractive = symmetric_spectrum(bloch)[-1] <= positive_tolerance(bloch.a_matrix)
        all_monotone = True
        for _ in range(20):
            t1 = propagate(bloch, reduced(random_density(rng, 3), bloch.basis), times)
            t2 = propagate(bloch, reduced(random_density(rng, 3), bloch.basis), times)
            all_monotone &= monotonicity_check(bloch, t1, t2).monotone
        w = witness_state(bloch)
        if w is not None:
            t1 = propagate(bloch, w.state, times)
            t2 = propagate(bloch, w.reference, times)
            all_monotone &= monotonicity_check(bloch, t1, t2).monotone
        assert all_monotone == contractive
