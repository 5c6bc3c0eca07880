import math

import numpy as np
import pytest

from config.cases import RESIDUAL_TOLERANCE
from core.errors import ConfigError, DomainError
from entities.field import ComplexField, GridSpec
from systems import analytic
from systems.checks import random_points

CLOSED_FORMS = [
    (analytic.standing_soliton(0.0), '1', (-2.0, 2.0)),
    (analytic.standing_soliton(1.5), '1', (-2.0, 2.0)),
    (analytic.travelling_soliton(1.0, 1.0), '1', (-2.0, 2.0)),
    (analytic.travelling_soliton(-0.75, 0.5), '1', (-2.0, 2.0)),
    (analytic.td_soliton(0.0), '1/t', (0.5, 2.0)),
    (analytic.td_soliton(-1.0), '1/t', (0.5, 2.0)),
    (analytic.plane_wave(2.0), '0', (-2.0, 2.0)),
    (analytic.zero_solution(), 't^2', (-2.0, 2.0)),
]


@pytest.mark.parametrize('solution, F, times', CLOSED_FORMS)
def test_exact_residuals_vanish(solution, F, times):
    residual = analytic.pde_residual(solution, F, random_points(times))
    assert np.max(np.abs(residual)) < RESIDUAL_TOLERANCE


def test_travelling_envelope_moves_against_k():
    u = analytic.travelling_soliton(1.0, 1.0)
    x = np.linspace(-10.0, 10.0, 2001)
    crest = x[np.argmax(np.abs(u(1.0, x)))]
    assert crest == pytest.approx(-2.0, abs=0.01)


def test_standing_soliton_solves_the_wrong_equation_badly():
    residual = analytic.pde_residual(analytic.standing_soliton(), '1/t', random_points((0.5, 2.0)))
    assert np.max(np.abs(residual)) > 1e-2


@pytest.mark.parametrize('solution, t', [(analytic.standing_soliton(0.5), 0.3),
                                         (analytic.travelling_soliton(1.0, 1.0), -0.4),
                                         (analytic.td_soliton(1.0), 1.2)])
def test_exact_partials_match_finite_differences(solution, t):
    x = np.linspace(-4.0, 4.0, 41)
    _, u_t, u_x, u_xx = solution.partials(t, x)
    fd_t, fd_x, fd_xx = analytic.finite_difference_partials(solution, t, x)
    for exact, approx in ((u_t, fd_t), (u_x, fd_x), (u_xx, fd_xx)):
        assert np.max(np.abs(exact - approx)) < 1e-6 * (1 + np.max(np.abs(exact)))


def test_td_soliton_has_positive_times_only():
    with pytest.raises(DomainError):
        analytic.td_soliton()(-0.5, 0.0)


def test_travelling_soliton_parameter_check():
    with pytest.raises(ConfigError):
        analytic.travelling_soliton(0.5, -1.0)


def test_gridded_residual_of_a_sampled_solution(soliton_grid):
    residual = analytic.solution_residual_on_grid(analytic.standing_soliton(), '1', soliton_grid, 0.3, 1e-4)
    assert np.max(np.abs(residual)) < 1e-6
    residual = analytic.solution_residual_on_grid(analytic.td_soliton(), '1/t', soliton_grid, 1.5, 1e-4)
    assert np.max(np.abs(residual)) < 1e-6


def test_gridded_residual_from_solver_half_steps(soliton_grid):
    field = ComplexField.from_solution(analytic.standing_soliton(), soliton_grid, 0.0)
    residual = analytic.gridded_residual(field, '1', 1e-4)
    assert np.max(np.abs(residual)) < 1e-6


def test_sech_profile_solves_the_steady_equation():
    xs = np.random.default_rng(1).uniform(-10.0, 10.0, size=200)
    for x0 in (0.0, 2.0, -3.0):
        assert np.max(np.abs(analytic.ode_residual_g(analytic.sech_profile(x0), xs))) < 1e-12


def test_reduced_profile_residuals():
    points = random_points((0.5, 2.0))
    for x0 in (0.0, 1.0):
        first, second = analytic.ansatz_reduction_residuals(analytic.reduced_soliton_profile(x0), points)
        assert np.max(np.abs(first)) < 1e-10
        assert np.max(np.abs(second)) < 1e-10


def test_lifted_profile_of_a_non_solution_fails_the_first_equation():
    g = analytic.SteadyProfile(g=lambda x: np.exp(-x * x), g_x=lambda x: -2 * x * np.exp(-x * x),
                               g_xx=lambda x: (4 * x * x - 2) * np.exp(-x * x))
    first, second = analytic.ansatz_reduction_residuals(analytic.lift_steady_profile(g), random_points((0.5, 2.0)))
    assert np.max(np.abs(first)) > 1e-3
    assert np.max(np.abs(second)) < 1e-10


def test_ansatz_reduction_is_singular_at_zero():
    with pytest.raises(DomainError):
        analytic.ansatz_reduction_residuals(analytic.zero_profile(), [(0.0, 1.0)])


def test_mass_of_the_standing_soliton(soliton_grid):
    # int 2 sech^2 = 4
    assert analytic.mass_on_grid(analytic.standing_soliton(), soliton_grid, 0.7) == pytest.approx(4.0, rel=1e-12)


def test_solution_specs():
    u = analytic.parse_solution_spec('travelling:k=1,v=1')
    assert u.params['a'] == pytest.approx(math.sqrt(2))
    assert analytic.parse_solution_spec('standing').params == {'x0': 0.0}
    assert analytic.parse_solution_spec('td:x0=2').kind == 'td_soliton'
    with pytest.raises(ConfigError):
        analytic.parse_solution_spec('kink:x0=1')
    with pytest.raises(ConfigError):
        analytic.parse_solution_spec('standing:x0')
    with pytest.raises(ConfigError):
        analytic.parse_solution_spec('standing:x0=abc')
    with pytest.raises(ConfigError):
        analytic.parse_solution_spec('standing:k=1')


def test_residual_needs_a_known_solution_type():
    with pytest.raises(TypeError):
        analytic.pde_residual(object(), '1', [])


def test_small_grid_is_enough_for_the_closed_forms():
    grid = GridSpec(-16.0, 16.0, 256)
    mass = analytic.mass_on_grid(analytic.td_soliton(), grid, 1.0)
    assert mass == pytest.approx(4.0, rel=1e-9)
