import math
from fractions import Fraction

import numpy as np
import pytest

from core.errors import ConfigError, DomainError, SingularTransformError
from entities.field import ComplexField
from systems import analytic
from systems import transform as tr

POSITIVE = np.linspace(0.5, 2.0, 16)
XS = np.linspace(-10.0, 10.0, 201)


def _max_difference(first, second, times=POSITIVE, xs=XS):
    return max(float(np.max(np.abs(first(t, xs) - second(t, xs)))) for t in times)


def test_parse_and_print():
    assert tr.TransformSpec.parse('T(1);E(1);T(1)') == tr.DMAP
    assert tr.TransformSpec.parse(' Dmap ') == tr.DMAP
    assert tr.TransformSpec.parse('id').primitives == ()
    spec = tr.TransformSpec.parse('D(1/2); B(-3)')
    assert spec.primitives == (tr.Dilatation(0.5), tr.Boost(-3.0))
    assert tr.TransformSpec.parse(spec.to_text()) == spec
    assert tr.TransformSpec().to_text() == 'id'


@pytest.mark.parametrize('text', ['X(1)', 'T(t)', 'T', 'E(1', 'D(0)'])
def test_parse_errors(text):
    with pytest.raises(ConfigError):
        tr.TransformSpec.parse(text)


@pytest.mark.parametrize('x0', [0.0, 1.0, -2.0])
def test_inversion_map_turns_standing_into_td_soliton(x0):
    image = tr.theorem2_map(analytic.standing_soliton(x0))
    assert image.domain == (0.0, math.inf)
    assert _max_difference(image, analytic.td_soliton(x0)) < 1e-12


def test_inversion_map_image_solves_the_reciprocal_equation():
    image = tr.theorem2_map(analytic.travelling_soliton(0.5, 1.0))
    for t in (0.8, 1.5):
        u = image(t, XS)
        u_t = (image(t + 1e-5, XS) - image(t - 1e-5, XS)) / 2e-5
        h = 1e-4
        u_xx = (image(t, XS + h) - 2 * u + image(t, XS - h)) / h ** 2
        residual = 1j * u_t + u_xx + np.abs(u) ** 2 * u / t
        assert np.max(np.abs(residual)) < 1e-4


def test_inversion_map_rejects_the_other_branch():
    image = tr.theorem2_map(analytic.standing_soliton())
    with pytest.raises(DomainError):
        image(-1.0, 0.0)
    with pytest.raises(DomainError):
        tr.theorem2_map(analytic.td_soliton(), 'forward')
    with pytest.raises(ConfigError):
        tr.theorem2_map(analytic.standing_soliton(), 'sideways')


def test_inversion_map_needs_times_on_its_branch():
    with pytest.raises(DomainError):
        tr.theorem2_map(analytic.standing_soliton(0.0).restrict(1.0, 2.0))
    with pytest.raises(DomainError):
        tr.theorem2_map(analytic.standing_soliton(0.0).restrict(-2.0, -1.0), 'inverse')
    image = tr.theorem2_map(analytic.standing_soliton(0.0).restrict(-2.0, 1.0))
    assert image.domain == (0.5, math.inf)


def test_inverse_undoes_forward():
    psi = analytic.standing_soliton(0.5)
    back = tr.theorem2_map(tr.theorem2_map(psi), 'inverse')
    assert _max_difference(back, psi, times=-1.0 / POSITIVE) < 1e-13


def test_inversion_map_preserves_mass(soliton_grid):
    psi = analytic.travelling_soliton(0.25, 1.0)
    image = tr.theorem2_map(psi)
    for s in (-1.0, -0.5):
        before = analytic.mass_on_grid(psi, soliton_grid, s)
        after = analytic.mass_on_grid(image, soliton_grid, -1.0 / s)
        assert after == pytest.approx(before, rel=1e-8)


def test_decomposition_acts_as_inversion(rng):
    for _ in range(100):
        t = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 5.0))
        x = float(rng.uniform(-10.0, 10.0))
        got = tr.coordinate_action(tr.DMAP, t, x)
        assert got == pytest.approx((-1.0 / t, -x / t), rel=1e-14, abs=1e-14)


def test_decomposition_is_singular_at_zero():
    with pytest.raises(SingularTransformError):
        tr.coordinate_action(tr.DMAP, 0.0, 1.0)


@pytest.mark.parametrize('x0', [0.0, 1.0, -2.0])
def test_active_chain_is_the_inversion_map_up_to_parity(x0):
    psi = analytic.standing_soliton(x0)
    chain = tr.apply(tr.DMAP, psi, target=(0.0, math.inf))
    image = tr.theorem2_map(psi)
    assert _max_difference(chain, lambda t, x: image(t, -x)) < 1e-12
    assert _max_difference(chain, analytic.td_soliton(-x0)) < 1e-12


def test_chain_needs_a_branch():
    with pytest.raises(SingularTransformError):
        tr.apply(tr.DMAP, analytic.standing_soliton())


def test_interval_mapping():
    assert tr.map_interval(tr.DMAP, (-math.inf, 0.0)) == (0.0, math.inf)
    assert tr.map_interval(tr.DMAP, (0.0, math.inf), inverse=True) == (-math.inf, 0.0)
    assert tr.map_interval(tr.TransformSpec.parse('D(2)'), (1.0, 2.0)) == (4.0, 8.0)
    with pytest.raises(SingularTransformError):
        tr.map_interval(tr.TransformSpec.parse('E(1)'), (-1.0, 2.0))


def test_mobius_matrices():
    matrix = tr.mobius_matrix(tr.DMAP)
    assert np.allclose(matrix, [[0.0, 1.0], [-1.0, 0.0]])
    for spec in ('D(3)', 'E(-0.5)', 'T(2)', 'D(2);E(0.25);T(-1)'):
        assert np.linalg.det(tr.mobius_matrix(tr.TransformSpec.parse(spec))) == pytest.approx(1.0)
    with pytest.raises(ConfigError):
        tr.mobius_matrix(tr.galilean_boost(1.0))
    with pytest.raises(SingularTransformError):
        tr.mobius_action(matrix, 0.0, 1.0)


@pytest.mark.parametrize('first, second', [('D(2)', 'E(0.3)'), ('T(1);E(-1)', 'D(0.5);T(2)'), ('E(0.2)', 'E(-0.7)')])
def test_composition_follows_the_matrix_product(first, second):
    a, b = tr.TransformSpec.parse(first), tr.TransformSpec.parse(second)
    both = tr.compose(a, b)
    assert np.allclose(tr.mobius_matrix(both), tr.mobius_matrix(b) @ tr.mobius_matrix(a))
    for t, x in ((0.1, 1.0), (-0.4, -2.0), (0.7, 0.5)):
        assert tr.coordinate_action(both, t, x) == pytest.approx(
            tr.mobius_action(tr.mobius_matrix(both), t, x), rel=1e-12)


def test_applying_a_composition_equals_applying_in_turn():
    a = tr.TransformSpec.parse('D(0.5);T(0.3)')
    b = tr.TransformSpec.parse('E(0.2);B(1)')
    psi = analytic.travelling_soliton(1.0, 1.0)
    together = tr.apply(tr.compose(a, b), psi, target=(-1.0, 1.0))
    in_turn = tr.apply(b, tr.apply(a, psi), target=(-1.0, 1.0))
    assert _max_difference(together, in_turn, times=(-0.5, 0.2, 0.9)) < 1e-12


@pytest.mark.parametrize('text', ['T(0.7)', 'D(1.5)', 'E(0.5)', 'B(2)', 'D(0.8);E(-0.3);B(-1)'])
def test_free_solutions_stay_free(text, free_gaussian, soliton_grid):
    spec = tr.TransformSpec.parse(text)
    image = tr.apply(spec, free_gaussian, target=(-1.0, 1.0))
    residual = analytic.solution_residual_on_grid(image, '0', soliton_grid, 0.3, 1e-5)
    assert np.max(np.abs(residual)) < 1e-6


@pytest.mark.parametrize('text', ['T(0.7)', 'D(1.5)', 'B(-1.5)'])
def test_cubic_equation_symmetries(text, soliton_grid):
    image = tr.apply(tr.TransformSpec.parse(text), analytic.standing_soliton(0.5))
    residual = analytic.solution_residual_on_grid(image, '1', soliton_grid, 0.4, 1e-5)
    assert np.max(np.abs(residual)) < 1e-6


def test_chain_image_solves_the_reciprocal_equation(soliton_grid):
    image = tr.apply(tr.DMAP, analytic.standing_soliton(1.0), target=(0.0, math.inf))
    residual = analytic.solution_residual_on_grid(image, '1/t', soliton_grid, 1.5, 1e-4)
    assert np.max(np.abs(residual)) < 1e-6


@pytest.mark.parametrize('c', [-1.5, 0.5, 2.0])
def test_boosted_standing_soliton_travels(c):
    k, v = tr.boosted_soliton_parameters(c)
    assert (k, v) == pytest.approx((-c / 2, 1 - c * c / 4))
    boosted = tr.apply(tr.galilean_boost(c), analytic.standing_soliton(0.0))
    times = np.linspace(-1.0, 1.0, 9)
    assert _max_difference(boosted, analytic.travelling_soliton(k, v), times=times) < 1e-12


def test_boost_constants_are_calibrated():
    assert tr.calibrate_boost_constants() == (Fraction(1, 2), Fraction(-1, 4))
    assert (tr.BOOST_ALPHA, tr.BOOST_BETA) == tr.calibrate_boost_constants((5, -7))


def test_transform_field_matches_the_closed_form(soliton_grid):
    start = ComplexField.from_solution(analytic.standing_soliton(0.0), soliton_grid, -1.0)
    mapped = tr.transform_field(tr.DMAP, start)
    assert mapped.time == pytest.approx(1.0)
    lo, hi = soliton_grid.support_interval()
    assert (mapped.grid.x_min, mapped.grid.x_max) == pytest.approx((lo, hi))
    expected = analytic.td_soliton(0.0)(mapped.time, mapped.grid.x)
    assert np.max(np.abs(mapped.samples - expected)) < 1e-10


def test_dilatation_needs_a_nonzero_scale():
    with pytest.raises(ConfigError):
        tr.Dilatation(0.0)
