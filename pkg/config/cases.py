"""
Preset verification setups
"""
import math

# Box and resolution shared by the solver acceptance runs
SOLITON_BOX = {'x_min': -20.0 * math.pi, 'x_max': 20.0 * math.pi, 'n': 1024}

# Standing soliton under F = 1
STANDING_CASE = {
    'solution': 'standing',
    'params': {'x0': 0.0},
    'F': '1',
    't0': 0.0,
    't1': 1.0,
    'dt': 1e-3,
    'grid': SOLITON_BOX,
    'tolerance': 1e-6,
}

# Travelling soliton k = 1, v = 1 under F = 1
# The crest moves at speed 2k; Strang error is 1.1e-5 at dt = 1e-3, 6.9e-7 at 2.5e-4
TRAVELLING_CASE = {
    'solution': 'travelling',
    'params': {'k': 1.0, 'v': 1.0},
    'F': '1',
    't0': 0.0,
    't1': 1.0,
    'dt': 2.5e-4,
    'grid': SOLITON_BOX,
    'tolerance': 1e-6,
}

# Time-dependent soliton under F = 1/t, started at t = 1
TD_SOLITON_CASE = {
    'solution': 'td',
    'params': {'x0': 0.0},
    'F': '1/t',
    't0': 1.0,
    't1': 2.0,
    'dt': 1e-3,
    'grid': SOLITON_BOX,
    'tolerance': 1e-5,
}

EVOLUTION_CASES = {
    'standing': STANDING_CASE,
    'travelling': TRAVELLING_CASE,
    'td-soliton': TD_SOLITON_CASE,
}

# Commuting square: psi evolves under F = 1 on [s0, s1], its image under
# F = 1/t on [-1/s0, -1/s1]
THEOREM2_CASE = {
    'solution': 'standing',
    'params': {'x0': 0.0},
    's0': -1.0,
    's1': -0.5,
    'dt': 1e-3,
    'grid': SOLITON_BOX,
    'tolerance': 1e-4,
}

CONVERGENCE_DTS = [1e-2, 5e-3, 2.5e-3]
CONVERGENCE_NS = [1024, 2048]
ORDER_WINDOW = (1.8, 2.2)

# Exact-partials residual checks: random points per case and tolerance
RESIDUAL_POINTS = 100
RESIDUAL_TOLERANCE = 1e-10
RESIDUAL_SEED = 7

# Galilean boost applied to the standing soliton
BOOST_VELOCITIES = [-1.5, 0.5, 2.0]

# Painleve families: expected verdicts
PAINLEVE_PASS = ['1/t', '1/(2*t+3)', '1/(-t+5)', '1']
PAINLEVE_FAIL = ['t', 't^2', '1/(t^2+1)']
