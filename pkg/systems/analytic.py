"""
Closed-form solitons, the ansatz reduction chain and residual oracles
"""
from functools import singledispatch
import logging
import math

import numpy as np

from config.settings import FD_STEP
from core import expr as ex
from core.errors import ConfigError, DomainError
from core.parser import parse
from entities.field import ComplexField, FieldTriple
from entities.solution import AnalyticSolution, Profile, SteadyProfile

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
POSITIVE_TIMES = (0.0, math.inf)


def _sech(y):
    return 1.0 / np.cosh(y)


def standing_soliton(x0=0.0):
    """u = sqrt(2) e^{it} / cosh(x - x0), a solution of the F = 1 equation"""
    x0 = float(x0)

    def u(t, x):
        return SQRT2 * np.exp(1j * t) * _sech(x - x0)

    def u_t(t, x):
        return 1j * u(t, x)

    def u_x(t, x):
        return -u(t, x) * np.tanh(x - x0)

    def u_xx(t, x):
        return u(t, x) * (1.0 - 2.0 * _sech(x - x0) ** 2)

    return AnalyticSolution('standing', {'x0': x0}, u, u_t, u_x, u_xx)


def travelling_soliton(k, v):
    """u = e^{i(vt - kx)} sqrt(2) a / cosh(a(x + 2kt)), a = sqrt(k^2 + v)

    The crest moves along x = -2kt, the group velocity of the carrier e^{-ikx}.
    """
    k, v = float(k), float(v)
    if k * k + v <= 0:
        raise ConfigError(f"travelling soliton needs k^2 + v > 0, got k={k}, v={v}")
    a = math.sqrt(k * k + v)

    def u(t, x):
        return np.exp(1j * (v * t - k * x)) * SQRT2 * a * _sech(a * (x + 2.0 * k * t))

    def u_t(t, x):
        return u(t, x) * (1j * v - 2.0 * a * k * np.tanh(a * (x + 2.0 * k * t)))

    def _g(t, x):
        return -1j * k - a * np.tanh(a * (x + 2.0 * k * t))

    def u_x(t, x):
        return u(t, x) * _g(t, x)

    def u_xx(t, x):
        return u(t, x) * (_g(t, x) ** 2 - a * a * _sech(a * (x + 2.0 * k * t)) ** 2)

    return AnalyticSolution('travelling', {'k': k, 'v': v, 'a': a}, u, u_t, u_x, u_xx)


def td_soliton(x0=0.0):
    """Soliton of i u_t + u_xx + (1/t)|u|^2 u = 0 on t > 0

    u = e^{i(x^2/4t - 1/t)} / sqrt(t) * sqrt(2) / cosh(-x/t - x0)
    """
    x0 = float(x0)

    def _y(t, x):
        return -x / t - x0

    def u(t, x):
        theta = x * x / (4.0 * t) - 1.0 / t
        return np.exp(1j * theta) / math.sqrt(t) * SQRT2 * _sech(_y(t, x))

    def u_t(t, x):
        theta_t = -x * x / (4.0 * t * t) + 1.0 / (t * t)
        return u(t, x) * (-0.5 / t + 1j * theta_t - np.tanh(_y(t, x)) * x / (t * t))

    def _h(t, x):
        return 1j * x / (2.0 * t) + np.tanh(_y(t, x)) / t

    def u_x(t, x):
        return u(t, x) * _h(t, x)

    def u_xx(t, x):
        h_x = 0.5j / t - _sech(_y(t, x)) ** 2 / (t * t)
        return u(t, x) * (_h(t, x) ** 2 + h_x)

    return AnalyticSolution('td_soliton', {'x0': x0, 'a': 1.0, 'b': 0.0},
                            u, u_t, u_x, u_xx, POSITIVE_TIMES)


def zero_solution():
    def zero(t, x):
        return np.zeros(np.shape(x), dtype=complex)

    return AnalyticSolution('zero', {}, zero, zero, zero, zero)


def plane_wave(kappa, amplitude=1.0):
    """Free-equation mode amplitude * e^{i(kappa x - kappa^2 t)}"""
    kappa, amplitude = float(kappa), complex(amplitude)

    def u(t, x):
        return amplitude * np.exp(1j * (kappa * x - kappa * kappa * t))

    return AnalyticSolution('plane_wave', {'kappa': kappa}, u,
                            lambda t, x: -1j * kappa * kappa * u(t, x),
                            lambda t, x: 1j * kappa * u(t, x),
                            lambda t, x: -kappa * kappa * u(t, x))


# ----------------------------------------------------------- residuals

def _coefficient(F, t):
    if isinstance(F, str):
        F = parse(F)
    if isinstance(F, ex.Expr):
        return ex.evaluate_real(F, t)
    return float(F)


@singledispatch
def pde_residual(solution, F, points=None):
    """i u_t + u_xx + F(t)|u|^2 u

    AnalyticSolution: `points` is a list of (t, x) pairs, exact partials
    are used and a complex array comes back, one value per point.
    FieldTriple: spectral x-derivatives, central difference in t, one
    value per grid point of the middle slice (`points` ignored).
    """
    raise TypeError(f"no residual oracle for {type(solution).__name__}")


@pde_residual.register(AnalyticSolution)
def _(solution, F, points=None):
    out = np.empty(len(points), dtype=complex)
    for k, (t, x) in enumerate(points):
        u, u_t, _, u_xx = solution.partials(t, x)
        out[k] = 1j * u_t + u_xx + _coefficient(F, t) * abs(u) ** 2 * u
    return out


@pde_residual.register(FieldTriple)
def _(triple, F, points=None):
    center = triple.center
    u = center.samples
    u_xx = center.derivative(2)
    return 1j * triple.time_derivative() + u_xx + _coefficient(F, center.time) * np.abs(u) ** 2 * u


def gridded_residual(field, F, step=FD_STEP):
    """Residual of a single slice, neighbours from two solver half-steps"""
    from systems.solver import strang_step

    before = strang_step(field, F, -step)
    after = strang_step(field, F, step)
    return pde_residual(FieldTriple(before, field, after, step), F)


def solution_residual_on_grid(solution, F, grid, t, step=FD_STEP):
    """Residual of any evaluator sampled at t-h, t, t+h on a grid"""
    return pde_residual(FieldTriple.from_solution(solution, grid, t, step), F)


# -------------------------------------------------- ansatz reduction chain

def sech_profile(x0=0.0):
    """g = sqrt(2) sech(x - x0), the decaying solution of g'' - g + g^3 = 0"""
    x0 = float(x0)
    return SteadyProfile(
        g=lambda x: SQRT2 * _sech(x - x0),
        g_x=lambda x: -SQRT2 * _sech(x - x0) * np.tanh(x - x0),
        g_xx=lambda x: SQRT2 * _sech(x - x0) * (1.0 - 2.0 * _sech(x - x0) ** 2),
        name=f"sqrt2_sech(x-{x0})")


def constant_profile(value=1.0):
    value = float(value)
    return SteadyProfile(g=lambda x: np.full(np.shape(x), value),
                         g_x=lambda x: np.zeros(np.shape(x)),
                         g_xx=lambda x: np.zeros(np.shape(x)),
                         name=f"const({value})")


def lift_steady_profile(g):
    """f(t, x) = t^{-1/2} g(-x/t), the t > 0 lift of a steady profile"""
    def f(t, x):
        return g.g(-x / t) / math.sqrt(t)

    def f_t(t, x):
        return -0.5 * f(t, x) / t + g.g_x(-x / t) * x / (t * t) / math.sqrt(t)

    def f_x(t, x):
        return -g.g_x(-x / t) / t / math.sqrt(t)

    def f_xx(t, x):
        return g.g_xx(-x / t) / (t * t) / math.sqrt(t)

    return Profile(f, f_t, f_x, f_xx, name=f"lift({g.name})")


def ode_residual_g(g, xs):
    """g'' - g + g^3 pointwise"""
    xs = np.asarray(xs, dtype=float)
    value = g.g(xs)
    return g.g_xx(xs) - value + value ** 3


def ansatz_reduction_residuals(f, points):
    """Real and imaginary parts of the t-dependent equation under u = e^{i(x^2/4t - 1/t)} f

    Returns (f_xx - f/t^2 + f^3/t, f_t + (x/t) f_x + f/(2t)) per point.
    """
    first, second = [], []
    for t, x in points:
        if t == 0:
            raise DomainError("ansatz reduction is singular at t = 0")
        value = f.f(t, x)
        first.append(f.f_xx(t, x) - value / (t * t) + value ** 3 / t)
        second.append(f.f_t(t, x) + (x / t) * f.f_x(t, x) + value / (2.0 * t))
    return np.asarray(first, dtype=float), np.asarray(second, dtype=float)


def zero_profile():
    zero = lambda t, x: 0.0 * x  # noqa: E731
    return Profile(zero, zero, zero, zero, name='zero')


def reduced_soliton_profile(x0=0.0):
    """f = t^{-1/2} sqrt(2) sech(-x/t - x0)

    The lift of g = sqrt(2) sech(y - x0) evaluated at y = -x/t.
    """
    return lift_steady_profile(sech_profile(x0))


def mass_on_grid(solution, grid, t):
    """h * sum |u|^2 of an evaluator sampled on a grid"""
    samples = ComplexField.from_solution(solution, grid, t).samples
    return float(grid.spacing * np.sum(np.abs(samples) ** 2))


def finite_difference_partials(solution, t, x, step=FD_STEP):
    """Central differences (u_t, u_x, u_xx) for cross-checking exact partials

    u_xx differences the exact u_x; a second difference of u at this step
    would be dominated by roundoff.
    """
    def central(fn, dt, dx):
        return (fn(t + dt, x + dx) - fn(t - dt, x - dx)) / (2 * step)

    return (central(solution, step, 0.0),
            central(solution, 0.0, step),
            central(solution.u_x, 0.0, step))


SOLUTION_BUILDERS = {
    'standing': standing_soliton,
    'travelling': travelling_soliton,
    'td': td_soliton,
    'td-soliton': td_soliton,
    'plane': plane_wave,
    'zero': zero_solution,
}


def build_solution(kind, params=None):
    """Closed-form solution by name with keyword parameters"""
    if kind not in SOLUTION_BUILDERS:
        raise ConfigError(f"unknown solution {kind!r}; expected one of {sorted(SOLUTION_BUILDERS)}")
    try:
        return SOLUTION_BUILDERS[kind](**(params or {}))
    except TypeError as exc:
        raise ConfigError(f"bad parameters {params} for {kind}: {exc}") from exc


def parse_solution_spec(text):
    """'travelling:k=1,v=1' -> travelling_soliton(k=1.0, v=1.0)"""
    kind, _, rest = text.partition(':')
    params = {}
    for item in filter(None, (part.strip() for part in rest.split(','))):
        name, sep, value = item.partition('=')
        if not sep:
            raise ConfigError(f"expected name=value in {text!r}, got {item!r}")
        try:
            params[name.strip()] = float(value)
        except ValueError as exc:
            raise ConfigError(f"parameter {name.strip()!r} in {text!r} is not a number") from exc
    return build_solution(kind.strip(), params)
