"""
Numerical cross-checks against closed forms

Error tables for the preset evolution cases and the commuting square
between the F = 1 and F = 1/t equations.
"""
from dataclasses import dataclass, field
import logging
import math

import numpy as np

from config.cases import EVOLUTION_CASES, THEOREM2_CASE
from config.settings import SUPPORT_FRACTION
from core.errors import ConfigError
from core.utils import fit_order, l2_error, linf_error, relative_drift
from entities.field import ComplexField, GridSpec
from systems.analytic import build_solution
from systems.solver import DiagnosticsRecorder, EvolveConfig, evolve
from systems.transform import theorem2_map

logger = logging.getLogger(__name__)


def resolve_case(case):
    """Preset name or explicit case dict"""
    if isinstance(case, str):
        if case not in EVOLUTION_CASES:
            raise ConfigError(f"unknown case {case!r}; expected one of {sorted(EVOLUTION_CASES)}")
        return dict(EVOLUTION_CASES[case])
    return dict(case)


def grid_from(spec, n=None):
    return GridSpec(float(spec['x_min']), float(spec['x_max']), int(n or spec['n']))


@dataclass
class RunResult:
    """One evolution compared with its closed-form reference"""
    dt: float
    n: int
    linf: float
    l2: float
    mass_drift: float
    energy_drift: float

    def to_dict(self):
        return {'dt': self.dt, 'n': self.n, 'linf': self.linf, 'l2': self.l2,
                'mass_drift': self.mass_drift, 'energy_drift': self.energy_drift}


def run_case(case, dt=None, n=None, record_every=0):
    """Evolve a case from its reference at t0 and compare at t1"""
    case = resolve_case(case)
    solution = build_solution(case['solution'], case.get('params'))
    grid = grid_from(case['grid'], n)
    cfg = EvolveConfig(case['t0'], case['t1'], dt or case['dt'], case['F'])
    start = ComplexField.from_solution(solution, grid, cfg.t0)
    recorder = DiagnosticsRecorder(cfg.F, every=record_every or max(1, cfg.steps // 10))
    final = evolve(start, cfg, on_step=recorder)
    recorder(0, final)
    expected = solution(cfg.t1, grid.x)
    result = RunResult(cfg.dt, grid.n,
                       linf_error(final.samples, expected),
                       l2_error(final.samples, expected, grid.spacing),
                       relative_drift(recorder.masses),
                       relative_drift(recorder.energies))
    return result, final, recorder


@dataclass
class ConvergenceTable:
    case: str
    rows: list = field(default_factory=list)
    temporal_order: float = math.nan
    spatial_spread: float = math.nan

    def to_dict(self):
        return {'case': self.case, 'rows': [r.to_dict() for r in self.rows],
                'temporal_order': self.temporal_order, 'spatial_spread': self.spatial_spread}


def convergence_study(case, dts, ns):
    """Error table over dt and grid size

    The temporal order is fitted on the finest grid; the spatial spread is
    the largest relative change of the error across grids at the smallest dt.
    """
    name = case if isinstance(case, str) else case.get('solution', 'custom')
    table = ConvergenceTable(name)
    for n in ns:
        for dt in dts:
            result, _, _ = run_case(case, dt=dt, n=n)
            table.rows.append(result)
            logger.info("%s: n=%d dt=%.3g linf=%.3e", name, n, dt, result.linf)
    finest = max(ns)
    temporal = [r for r in table.rows if r.n == finest]
    if len(temporal) >= 2:
        table.temporal_order = fit_order([r.dt for r in temporal], [r.linf for r in temporal])
    smallest = min(dts)
    spatial = [r.linf for r in table.rows if r.dt == smallest]
    if len(spatial) >= 2:
        table.spatial_spread = float((max(spatial) - min(spatial)) / max(spatial))
    return table


@dataclass
class CommutingSquare:
    """Evolve-then-map against map-then-evolve"""
    linf: float
    mapped_first: ComplexField
    evolved_first: ComplexField
    tolerance: float

    @property
    def passed(self):
        return self.linf < self.tolerance

    def to_dict(self):
        return {'linf': self.linf, 'tolerance': self.tolerance, 'passed': self.passed,
                't': self.mapped_first.time, 'grid': self.mapped_first.grid.to_dict()}


def commuting_square(case=None, dt=None, n=None):
    """Numerical form of the conjugation between the F = 1 and F = 1/t equations

    Path A evolves psi under F = 1 from s0 to s1 and maps the gridded result
    to t = -1/s1. Path B maps psi(s0) to t = -1/s0 and evolves under
    F = 1/t. The two are compared on the central part of the grid.
    """
    case = dict(THEOREM2_CASE if case is None else case)
    psi = build_solution(case['solution'], case.get('params'))
    grid = grid_from(case['grid'], n)
    dt = dt or case['dt']
    s0, s1 = float(case['s0']), float(case['s1'])
    if not s0 < s1 < 0:
        raise ConfigError(f"commuting square needs s0 < s1 < 0, got {s0}, {s1}")
    t0, t1 = -1.0 / s0, -1.0 / s1

    # path A
    psi_start = ComplexField.from_solution(psi, grid, s0)
    psi_end = evolve(psi_start, EvolveConfig(s0, s1, dt, '1'))
    x = grid.x
    interpolated = psi_end.interpolate(-x / t1)
    evolved_first = ComplexField(grid, np.exp(1j * x * x / (4.0 * t1)) / math.sqrt(t1) * interpolated, t1)

    # path B
    image = theorem2_map(psi)
    u_start = ComplexField.from_solution(image, grid, t0)
    mapped_first = evolve(u_start, EvolveConfig(t0, t1, dt, '1/t'))

    mask = grid.central_mask(SUPPORT_FRACTION)
    linf = linf_error(mapped_first.samples[mask], evolved_first.samples[mask])
    logger.info("commuting square: linf=%.3e on the central %.0f%% of the grid",
                linf, 100 * SUPPORT_FRACTION)
    return CommutingSquare(linf, mapped_first, evolved_first, float(case['tolerance']))
