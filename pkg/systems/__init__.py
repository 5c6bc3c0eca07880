"""
Analysis systems: Painleve test, closed forms, symmetry maps, solver and checks
"""
from systems.painleve import theorem1_check, PainleveReport
from systems.analytic import build_solution, pde_residual
from systems.transform import TransformSpec, apply, theorem2_map, galilean_boost
from systems.solver import EvolveConfig, evolve, mass, energy
from systems.manifest import RunManifest
from systems.settings import RunSettings

__all__ = [
    'theorem1_check',
    'PainleveReport',
    'build_solution',
    'pde_residual',
    'TransformSpec',
    'apply',
    'theorem2_map',
    'galilean_boost',
    'EvolveConfig',
    'evolve',
    'mass',
    'energy',
    'RunManifest',
    'RunSettings'
]
