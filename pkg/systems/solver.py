"""
Strang split-step Fourier integrator for i u_t + u_xx + F(t)|u|^2 u = 0

Linear half-steps are exact in Fourier space, the nonlinear step is an
exact phase rotation u -> u exp(i |u|^2 int F dt).
"""
from dataclasses import dataclass, field
import logging
import math

import numpy as np

from config.settings import POLE_GUARD
from core import expr as ex
from core.errors import ConfigError, NotRationalError, PoleError, PoleInIntervalError, SolverInstabilityError
from core.parser import parse
from core.polynomial import rational_normal_form

logger = logging.getLogger(__name__)

GAUSS_NODES, GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(2)
POLE_SCAN_POINTS = 2000


def as_coefficient(F):
    if isinstance(F, str):
        return parse(F)
    return ex.as_expr(F)


class CoefficientIntegral:
    """int_a^b F(t) dt, closed form for c and c/(t + d), Gauss-Legendre otherwise"""

    def __init__(self, F):
        self.F = as_coefficient(F)
        self.kind = 'gauss'
        self._constant = None
        self._shift = None
        try:
            normal = rational_normal_form(self.F)
        except NotRationalError:
            normal = None
        if normal is not None and normal.numerator.degree <= 0 and normal.denominator.degree <= 1:
            numerator = normal.numerator.leading if not normal.numerator.is_zero() else None
            if numerator is None or numerator.is_real():
                self._constant = 0.0 if numerator is None else float(numerator.re)
                if normal.denominator.degree == 0:
                    self.kind = 'constant'
                else:
                    self.kind = 'logarithmic'
                    self._shift = float(normal.denominator.coeffs[0].re)
        logger.debug("integrating F=%s with the %s rule", ex.to_string(self.F), self.kind)

    def __call__(self, a, b):
        if self.kind == 'constant':
            return self._constant * (b - a)
        if self.kind == 'logarithmic':
            return self._constant * math.log(abs((b + self._shift) / (a + self._shift)))
        half = 0.5 * (b - a)
        mid = 0.5 * (a + b)
        return half * sum(w * ex.evaluate_real(self.F, mid + half * node)
                          for node, w in zip(GAUSS_NODES, GAUSS_WEIGHTS))


def coefficient_poles(F):
    """Real poles of a rational F; None when F is not rational"""
    try:
        return rational_normal_form(as_coefficient(F)).poles()
    except NotRationalError:
        return None


def check_pole_free(F, t0, t1, guard=POLE_GUARD):
    """Reject intervals with a pole of F closer than `guard`"""
    F = as_coefficient(F)
    lo, hi = min(t0, t1) - guard, max(t0, t1) + guard
    poles = coefficient_poles(F)
    if poles is not None:
        inside = [p for p in poles if lo < p < hi]
        if inside:
            raise PoleInIntervalError(f"F={ex.to_string(F)} has a pole at t={inside[0]:.6g} "
                                      f"within {guard} of [{min(t0, t1)}, {max(t0, t1)}]")
        return
    for t in np.linspace(lo, hi, POLE_SCAN_POINTS):
        try:
            ex.evaluate_real(F, float(t))
        except PoleError as exc:
            raise PoleInIntervalError(f"F={ex.to_string(F)} is singular near t={t:.6g}") from exc


@dataclass
class EvolveConfig:
    t0: float
    t1: float
    dt: float
    F: object = '1'
    pole_guard: float = POLE_GUARD

    def __post_init__(self):
        self.F = as_coefficient(self.F)
        self.t0, self.t1, self.dt = float(self.t0), float(self.t1), float(self.dt)
        if not self.dt > 0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        check_pole_free(self.F, self.t0, self.t1, self.pole_guard)

    @property
    def steps(self):
        return max(1, int(round(abs(self.t1 - self.t0) / self.dt)))

    @property
    def step(self):
        """Signed step actually taken"""
        return (self.t1 - self.t0) / self.steps

    def to_dict(self):
        return {'t0': self.t0, 't1': self.t1, 'dt': self.dt, 'F': ex.to_string(self.F),
                'pole_guard': self.pole_guard, 'steps': self.steps}


def _linear_factor(grid, tau):
    k = grid.wavenumbers
    return np.exp(-1j * k * k * tau)


def nonlinear_substep(samples, phase_integral):
    return samples * np.exp(1j * np.abs(samples) ** 2 * phase_integral)


def strang_step(u, F, dt, integral=None):
    """One step of size dt (either sign) starting at u.time"""
    integral = integral or CoefficientIntegral(F)
    half = _linear_factor(u.grid, 0.5 * dt)
    samples = np.fft.ifft(half * np.fft.fft(u.samples))
    samples = nonlinear_substep(samples, integral(u.time, u.time + dt))
    samples = np.fft.ifft(half * np.fft.fft(samples))
    return u.copy(samples=samples, time=u.time + dt)


def evolve(u0, cfg, on_step=None):
    """Integrate from cfg.t0 to cfg.t1

    on_step(k, field) is called after every step with the running slice
    (and once with k = 0 for the initial data).
    """
    if abs(u0.time - cfg.t0) > 1e-12 * max(1.0, abs(cfg.t0)):
        raise ConfigError(f"initial field is stamped t={u0.time}, run starts at t0={cfg.t0}")
    steps, h = cfg.steps, cfg.step
    integral = CoefficientIntegral(cfg.F)
    half = _linear_factor(u0.grid, 0.5 * h)
    samples = u0.samples.copy()
    t = cfg.t0
    report_every = max(1, steps // 10)
    if on_step is not None:
        on_step(0, u0.copy(time=cfg.t0))
    logger.info("evolving %d steps of %.3g from t=%.6g to t=%.6g, F=%s",
                steps, h, cfg.t0, cfg.t1, ex.to_string(cfg.F))
    for k in range(1, steps + 1):
        t_next = cfg.t0 + k * h
        samples = np.fft.ifft(half * np.fft.fft(samples))
        samples = nonlinear_substep(samples, integral(t, t_next))
        samples = np.fft.ifft(half * np.fft.fft(samples))
        t = t_next
        if not np.all(np.isfinite(samples)):
            raise SolverInstabilityError(f"non-finite samples after step {k} at t={t:.6g}")
        if on_step is not None:
            on_step(k, u0.copy(samples=samples.copy(), time=t))
        if k % report_every == 0:
            logger.info("step %d/%d, t=%.6g", k, steps, t)
    return u0.copy(samples=samples, time=cfg.t1)


# ----------------------------------------------------------- diagnostics

def mass(u):
    """Discrete mass h sum |u|^2"""
    return float(u.grid.spacing * np.sum(np.abs(u.samples) ** 2))


def energy(u, F_at_t):
    """h sum(|u_x|^2 - (F/2)|u|^4)"""
    u_x = u.derivative(1)
    density = np.abs(u_x) ** 2 - 0.5 * F_at_t * np.abs(u.samples) ** 4
    return float(u.grid.spacing * np.sum(density))


def energy_rate(u, F, t=None):
    """dE/dt = -(F_t/2) int |u|^4"""
    t = u.time if t is None else t
    F_t = ex.evaluate_real(ex.differentiate(as_coefficient(F)), t)
    return float(-0.5 * F_t * u.grid.spacing * np.sum(np.abs(u.samples) ** 4))


@dataclass
class DiagnosticsRecorder:
    """on_step callback collecting mass and energy every `every` steps"""
    F: object
    every: int = 1
    times: list = field(default_factory=list)
    masses: list = field(default_factory=list)
    energies: list = field(default_factory=list)
    rates: list = field(default_factory=list)

    def __post_init__(self):
        self.F = as_coefficient(self.F)

    def __call__(self, k, u):
        if k % self.every:
            return
        self.times.append(u.time)
        self.masses.append(mass(u))
        self.energies.append(energy(u, ex.evaluate_real(self.F, u.time)))
        self.rates.append(energy_rate(u, self.F))

    def to_dict(self):
        return {'t': list(self.times), 'mass': list(self.masses),
                'energy': list(self.energies), 'energy_rate': list(self.rates)}
