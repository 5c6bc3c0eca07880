import math

import numpy as np
import pytest

from config.cases import EVOLUTION_CASES
from core.errors import ConfigError, PoleInIntervalError
from entities.field import ComplexField
from systems import analytic
from systems.convergence import run_case
from systems.solver import (CoefficientIntegral, DiagnosticsRecorder, EvolveConfig, check_pole_free,
                            energy, energy_rate, evolve, mass, nonlinear_substep, strang_step)


def random_field(grid, rng, time=0.0):
    samples = rng.normal(size=grid.n) + 1j * rng.normal(size=grid.n)
    return ComplexField(grid, samples, time)


def test_plane_wave_is_exact_without_nonlinearity(small_grid):
    wave = analytic.plane_wave(3.0)
    start = ComplexField.from_solution(wave, small_grid, 0.0)
    final = evolve(start, EvolveConfig(0.0, 0.5, 0.01, '0'))
    assert final.time == 0.5
    assert np.max(np.abs(final.samples - wave(0.5, small_grid.x))) < 1e-12


def test_plane_wave_picks_up_the_nonlinear_phase(small_grid):
    amplitude = 0.7
    start = ComplexField.from_solution(analytic.plane_wave(2.0, amplitude), small_grid, 0.0)
    final = evolve(start, EvolveConfig(0.0, 1.0, 0.01, '1'))
    x = small_grid.x
    expected = amplitude * np.exp(1j * (2.0 * x - 4.0 + amplitude ** 2))
    assert np.max(np.abs(final.samples - expected)) < 1e-10


def test_zero_field_stays_zero(small_grid):
    final = evolve(ComplexField.zeros(small_grid, 1.0), EvolveConfig(1.0, 2.0, 0.1, '1/t'))
    assert not np.any(final.samples)


def test_mass_is_conserved_for_rough_data(small_grid, rng):
    start = random_field(small_grid, rng, time=1.0)
    final = evolve(start, EvolveConfig(1.0, 2.0, 0.01, '1/t'))
    assert mass(final) == pytest.approx(mass(start), rel=1e-12)


def test_strang_step_is_reversible(small_grid, rng):
    start = random_field(small_grid, rng, time=1.0)
    forward = strang_step(start, '1/t', 0.05)
    assert forward.time == pytest.approx(1.05)
    back = strang_step(forward, '1/t', -0.05)
    assert back.time == pytest.approx(1.0)
    assert np.max(np.abs(back.samples - start.samples)) < 1e-12


def test_nonlinear_substep_keeps_modulus(rng):
    samples = rng.normal(size=32) + 1j * rng.normal(size=32)
    rotated = nonlinear_substep(samples, 0.37)
    np.testing.assert_allclose(np.abs(rotated), np.abs(samples), rtol=1e-14)


@pytest.mark.parametrize('F, kind, a, b, expected', [
    ('1', 'constant', 0.0, 2.5, 2.5),
    ('3/2', 'constant', 1.0, 3.0, 3.0),
    ('0', 'constant', 1.0, 3.0, 0.0),
    ('1/t', 'logarithmic', 1.0, 2.0, math.log(2.0)),
    ('1/(2*t+3)', 'logarithmic', 0.0, 1.0, 0.5 * math.log(5.0 / 3.0)),
    ('1/t', 'logarithmic', -2.0, -1.0, -math.log(2.0)),
    ('t^2', 'gauss', 0.0, 1.0, 1.0 / 3.0),
    ('t^3 - t', 'gauss', -1.0, 2.0, 15.0 / 4.0 - 3.0 / 2.0),
])
def test_coefficient_integral(F, kind, a, b, expected):
    integral = CoefficientIntegral(F)
    assert integral.kind == kind
    assert integral(a, b) == pytest.approx(expected, rel=1e-14, abs=1e-15)


def test_coefficient_integral_of_transcendental_F():
    integral = CoefficientIntegral('exp(t)')
    assert integral.kind == 'gauss'
    # two Gauss nodes per step; the error shrinks like h^5
    assert integral(0.0, 0.01) == pytest.approx(math.expm1(0.01), rel=1e-10)


@pytest.mark.parametrize('F, t0, t1', [
    ('1/t', -1.0, 1.0),
    ('1/t', 0.005, 1.0),
    ('1/(t-1.005)', 0.0, 1.0),
    ('1/(t^2-4)', 0.0, 3.0),
])
def test_pole_in_interval_is_rejected(F, t0, t1):
    with pytest.raises(PoleInIntervalError):
        EvolveConfig(t0, t1, 0.01, F)


def test_pole_outside_interval_is_accepted():
    check_pole_free('1/t', 0.5, 2.0)
    check_pole_free('1/(t^2+1)', -5.0, 5.0)
    check_pole_free('exp(t)', -1.0, 1.0)


def test_config_validation():
    with pytest.raises(ConfigError):
        EvolveConfig(0.0, 1.0, 0.0)
    with pytest.raises(ConfigError):
        EvolveConfig(0.0, 1.0, -1e-3)
    cfg = EvolveConfig(0.0, 1.0, 0.3)
    assert cfg.steps == 3
    assert cfg.step == pytest.approx(1.0 / 3.0)
    assert EvolveConfig(1.0, 0.0, 0.25).step == pytest.approx(-0.25)
    assert cfg.to_dict()['F'] == '1'


def test_start_time_must_match(small_grid):
    start = ComplexField.zeros(small_grid, 0.0)
    with pytest.raises(ConfigError):
        evolve(start, EvolveConfig(1.0, 2.0, 0.1))


def test_backward_run_returns_to_start(soliton_grid):
    soliton = analytic.standing_soliton(0.0)
    start = ComplexField.from_solution(soliton, soliton_grid, 0.5)
    final = evolve(start, EvolveConfig(0.5, 0.0, 1e-3, '1'))
    assert final.time == 0.0
    assert np.max(np.abs(final.samples - soliton(0.0, soliton_grid.x))) < 1e-6


@pytest.mark.parametrize('case', sorted(EVOLUTION_CASES))
def test_evolution_cases_meet_their_tolerance(case):
    result, final, recorder = run_case(case)
    assert result.linf < EVOLUTION_CASES[case]['tolerance']
    assert result.mass_drift < 1e-10
    assert final.time == EVOLUTION_CASES[case]['t1']
    assert recorder.times[0] == EVOLUTION_CASES[case]['t0']


def test_travelling_error_is_second_order_in_dt():
    coarse, _, _ = run_case('travelling', dt=1e-3)
    fine, _, _ = run_case('travelling', dt=5e-4)
    assert 3.5 < coarse.linf / fine.linf < 4.5
    assert coarse.linf > EVOLUTION_CASES['travelling']['tolerance']
    assert EVOLUTION_CASES['travelling']['dt'] == 2.5e-4


def test_soliton_energy_is_conserved():
    result, _, _ = run_case('standing')
    assert result.energy_drift < 1e-8


def test_energy_rate_sign(soliton_grid):
    u = ComplexField.from_solution(analytic.td_soliton(0.0), soliton_grid, 1.5)
    assert energy_rate(u, '1/t') > 0
    assert energy_rate(u, 't') < 0
    assert energy_rate(u, '1') == 0


def test_standing_soliton_energy(soliton_grid):
    # int |g'|^2 - g^4/2 for g = sqrt2 sech x is 4/3 - 8/3
    u = ComplexField.from_solution(analytic.standing_soliton(0.0), soliton_grid, 0.0)
    assert energy(u, 1.0) == pytest.approx(-4.0 / 3.0, rel=1e-10)
    assert mass(u) == pytest.approx(4.0, rel=1e-12)


def test_diagnostics_recorder(small_grid):
    recorder = DiagnosticsRecorder('1', every=5)
    start = ComplexField.from_solution(analytic.plane_wave(1.0, 0.5), small_grid, 0.0)
    evolve(start, EvolveConfig(0.0, 0.2, 0.01), on_step=recorder)
    assert recorder.times == pytest.approx([0.0, 0.05, 0.1, 0.15, 0.2])
    report = recorder.to_dict()
    assert sorted(report) == ['energy', 'energy_rate', 'mass', 't']
    assert len(report['mass']) == 5
    np.testing.assert_allclose(report['mass'], report['mass'][0], rtol=1e-13)
