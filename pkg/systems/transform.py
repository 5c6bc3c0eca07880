"""
Schrodinger-group action on wave functions

A TransformSpec is an ordered list of primitives applied to coordinates
left to right. Evaluating a transformed solution at (t', x') walks the
list right to left through the inverse maps to the preimage, collecting
the multipliers on the way (active form).
"""
from dataclasses import dataclass
from fractions import Fraction
import cmath
import logging
import math
import re

import numpy as np

from core import expr as ex
from core.errors import ConfigError, DomainError, SingularTransformError
from core.parser import parse
from core.polynomial import Polynomial
from core.utils import format_float
from entities.field import ComplexField, GridSpec
from entities.solution import FieldSolution, Solution

logger = logging.getLogger(__name__)

# boost phase exp[i(alpha c x + beta c^2 t)] at the primed coordinates
BOOST_ALPHA = Fraction(1, 2)
BOOST_BETA = Fraction(-1, 4)


def _increasing_image(forward, singular, lo, hi, at_infinity):
    """Image of (lo, hi) under an increasing map with one pole

    `singular` is the pole (None when there is none), `at_infinity` the
    common limit of the map at both infinities.
    """
    if singular is not None and lo < singular < hi:
        raise SingularTransformError(f"interval ({lo}, {hi}) crosses the singular time {singular}")

    def image(t, right_end):
        if math.isinf(t):
            return at_infinity if at_infinity is not None else t
        if singular is not None and t == singular:
            return math.inf if right_end else -math.inf
        return forward(t)

    return image(lo, False), image(hi, True)


@dataclass(frozen=True)
class Dilatation:
    """(t, x) -> (delta^2 t, delta x), multiplier 1/delta"""
    delta: float
    symbol = 'D'

    def __post_init__(self):
        if self.delta == 0:
            raise ConfigError("dilatation needs delta != 0")

    @property
    def parameter(self):
        return self.delta

    def forward(self, t, x):
        """Old coordinates to new"""
        return self.delta ** 2 * t, self.delta * x

    def inverse(self, t, x):
        """New coordinates to old"""
        return t / self.delta ** 2, x / self.delta

    def multiplier(self, t, x, t_new, x_new):
        """Amplitude factor on the pulled-back solution"""
        return 1.0 / self.delta

    def map_interval(self, lo, hi, inverse=False):
        """Time interval image; a negative delta still scales by delta^2 > 0"""
        scale = self.delta ** -2 if inverse else self.delta ** 2
        return scale * lo, scale * hi

    def matrix(self):
        """Mobius matrix acting on t"""
        return np.array([[self.delta, 0.0], [0.0, 1.0 / self.delta]])


@dataclass(frozen=True)
class Expansion:
    """(t, x) -> (t, x)/(1 - kappa t)

    Multiplier (1 - kappa t)^(1/2) exp[i kappa x^2 / 4(1 - kappa t)] at the
    unprimed point, principal square root.
    """
    kappa: float
    symbol = 'E'

    @property
    def parameter(self):
        return self.kappa

    def forward(self, t, x):
        """Raises SingularTransformError at t = 1/kappa"""
        denominator = 1.0 - self.kappa * t
        if denominator == 0:
            raise SingularTransformError(f"expansion kappa={self.kappa} is singular at t={t}")
        return t / denominator, x / denominator

    def inverse(self, t, x):
        """Raises SingularTransformError at t = -1/kappa"""
        denominator = 1.0 + self.kappa * t
        if denominator == 0:
            raise SingularTransformError(f"expansion kappa={self.kappa} has no preimage of t={t}")
        return t / denominator, x / denominator

    def multiplier(self, t, x, t_new, x_new):
        """Weight and quadratic phase, evaluated at the old point (t, x)"""
        weight = 1.0 - self.kappa * t
        return cmath.sqrt(weight) * np.exp(1j * self.kappa * np.asarray(x) ** 2 / (4.0 * weight))

    def map_interval(self, lo, hi, inverse=False):
        if self.kappa == 0:
            return lo, hi
        if inverse:
            return _increasing_image(lambda t: t / (1.0 + self.kappa * t), -1.0 / self.kappa,
                                     lo, hi, 1.0 / self.kappa)
        return _increasing_image(lambda t: t / (1.0 - self.kappa * t), 1.0 / self.kappa,
                                 lo, hi, -1.0 / self.kappa)

    def matrix(self):
        return np.array([[1.0, 0.0], [-self.kappa, 1.0]])


@dataclass(frozen=True)
class TimeTranslation:
    """(t, x) -> (t + epsilon, x); the image solves the equation with F(t - epsilon)"""
    epsilon: float
    symbol = 'T'

    @property
    def parameter(self):
        return self.epsilon

    def forward(self, t, x):
        return t + self.epsilon, x

    def inverse(self, t, x):
        return t - self.epsilon, x

    def multiplier(self, t, x, t_new, x_new):
        """No amplitude or phase change"""
        return 1.0

    def map_interval(self, lo, hi, inverse=False):
        shift = -self.epsilon if inverse else self.epsilon
        return lo + shift, hi + shift

    def matrix(self):
        return np.array([[1.0, self.epsilon], [0.0, 1.0]])


@dataclass(frozen=True)
class Boost:
    """(t, x) -> (t, x + c t), phase exp[i(alpha c x' + beta c^2 t')]"""
    c: float
    symbol = 'B'

    @property
    def parameter(self):
        return self.c

    def forward(self, t, x):
        return t, x + self.c * t

    def inverse(self, t, x):
        return t, x - self.c * t

    def multiplier(self, t, x, t_new, x_new):
        """Galilean phase, evaluated at the new point"""
        alpha, beta = float(BOOST_ALPHA), float(BOOST_BETA)
        return np.exp(1j * (alpha * self.c * np.asarray(x_new) + beta * self.c ** 2 * t_new))

    def map_interval(self, lo, hi, inverse=False):
        return lo, hi

    def matrix(self):
        raise ConfigError("boosts act on x alone and have no Mobius matrix")


PRIMITIVES = {cls.symbol: cls for cls in (Dilatation, Expansion, TimeTranslation, Boost)}
_ITEM = re.compile(r'^\s*([A-Za-z]+)\s*(?:\((.*)\))?\s*$')


@dataclass(frozen=True)
class TransformSpec:
    """Ordered composition of primitives; the empty one is the identity"""
    primitives: tuple = ()

    @classmethod
    def parse(cls, text):
        """Parse 'T(1);E(1);T(1)'; 'Dmap' and 'id' are accepted as items

        Parameters are formulas without t, so 'D(1/2)' and 'B(-pi)' work.
        """
        items = []
        for chunk in text.split(';'):
            if not chunk.strip():
                continue
            match = _ITEM.match(chunk)
            if match is None:
                raise ConfigError(f"malformed transform item {chunk.strip()!r}")
            name, argument = match.groups()
            if argument is None:
                if name == 'Dmap':
                    items.extend(DMAP.primitives)
                elif name == 'id':
                    continue
                else:
                    raise ConfigError(f"transform item {name!r} needs a parameter")
                continue
            if name not in PRIMITIVES:
                raise ConfigError(f"unknown transform primitive {name!r}; "
                                  f"expected one of {sorted(PRIMITIVES)} or Dmap")
            value = parse(argument)
            if not ex.is_constant(value):
                raise ConfigError(f"transform parameter {argument!r} depends on t")
            items.append(PRIMITIVES[name](ex.evaluate_real(value, 0.0)))
        return cls(tuple(items))

    def to_text(self):
        if not self.primitives:
            return 'id'
        return ';'.join(f"{p.symbol}({format_float(p.parameter)})" for p in self.primitives)

    def __str__(self):
        return self.to_text()

    def compose(self, other):
        """self first, then other"""
        return TransformSpec(self.primitives + other.primitives)

    def has_boost(self):
        return any(isinstance(p, Boost) for p in self.primitives)


DMAP = TransformSpec((TimeTranslation(1.0), Expansion(1.0), TimeTranslation(1.0)))


def galilean_boost(c):
    return TransformSpec((Boost(float(c)),))


def compose(first, second):
    """Coordinate action of the result is second's action after first's"""
    return first.compose(second)


def coordinate_action(spec, t, x):
    for primitive in spec.primitives:
        t, x = primitive.forward(t, x)
    return t, x


def preimage(spec, t, x):
    for primitive in reversed(spec.primitives):
        t, x = primitive.inverse(t, x)
    return t, x


def map_interval(spec, interval, inverse=False):
    """Time interval carried through the composition (or pulled back with inverse=True)"""
    lo, hi = interval
    primitives = reversed(spec.primitives) if inverse else spec.primitives
    for primitive in primitives:
        lo, hi = primitive.map_interval(lo, hi, inverse)
    return lo, hi


def mobius_matrix(spec):
    """SL(2,R) matrix of a boost-free composition; later primitives multiply on the left"""
    matrix = np.eye(2)
    for primitive in spec.primitives:
        matrix = primitive.matrix() @ matrix
    return matrix


def mobius_action(matrix, t, x):
    (a, b), (c, d) = matrix
    denominator = c * t + d
    if denominator == 0:
        raise SingularTransformError(f"Mobius map is singular at t={t}")
    return (a * t + b) / denominator, x / denominator


class TransformedSolution(Solution):
    """u'(t', x') = multiplier * u(preimage of (t', x'))"""
    kind = 'transformed'

    def __init__(self, spec, base):
        super().__init__(map_interval(spec, base.domain))
        self.spec = spec
        self.base = base

    def pull_back(self, t, x):
        """Preimage of (t, x) and the accumulated multiplier"""
        factor = 1.0
        for primitive in reversed(self.spec.primitives):
            t_old, x_old = primitive.inverse(t, x)
            factor = factor * primitive.multiplier(t_old, x_old, t, x)
            t, x = t_old, x_old
        return t, x, factor

    def evaluate(self, t, x):
        t_old, x_old, factor = self.pull_back(t, x)
        return factor * self.base(t_old, x_old)


def apply(spec, solution, target=None):
    """Transformed evaluator

    With `target` the source is first restricted to the preimage of that
    time interval, which is how a branch of a singular map is chosen.
    """
    if target is not None:
        lo, hi = map_interval(spec, target, inverse=True)
        solution = solution.restrict(lo, hi)
    return TransformedSolution(spec, solution)


def transform_field(spec, complex_field, n=None):
    """Resample a gridded slice through the composition

    The output grid spans the image of the reliable central support of
    the input box at the mapped time.
    """
    lo, hi = complex_field.grid.support_interval()
    t = complex_field.time
    t_new, x_lo = coordinate_action(spec, t, lo)
    _, x_hi = coordinate_action(spec, t, hi)
    x_lo, x_hi = sorted((x_lo, x_hi))
    grid = GridSpec(float(x_lo), float(x_hi), n or complex_field.grid.n)
    image = apply(spec, FieldSolution(complex_field))
    logger.debug("mapped slice t=%r to t=%r on [%r, %r]", t, t_new, x_lo, x_hi)
    return ComplexField(grid, image(t_new, grid.x), t_new)


# ------------------------------------------------------------ inversion map

class InversionSolution(Solution):
    """u(t, x) = t^(-1/2) exp[i x^2/4t] psi(-1/t, -x/t) on t > 0, or its inverse"""

    def __init__(self, source, direction):
        if direction not in ('forward', 'inverse'):
            raise ConfigError(f"direction must be 'forward' or 'inverse', got {direction!r}")
        lo, hi = source.domain
        if direction == 'forward':
            # s in (-inf, 0) maps to t = -1/s in (0, inf)
            usable = lo < 0.0
            domain = (_forward_time(lo), _forward_time(min(hi, 0.0)))
        else:
            usable = hi > 0.0
            domain = (_inverse_time(max(lo, 0.0)), _inverse_time(hi))
        if not usable or not domain[0] < domain[1]:
            raise DomainError(f"{source.kind} has no times on the {direction} branch")
        super().__init__(domain)
        self.kind = f"inversion_{direction}({source.kind})"
        self.source = source
        self.direction = direction

    def evaluate(self, t, x):
        if self.direction == 'forward':
            if t <= 0:
                raise DomainError(f"forward map needs t > 0, got {t}")
            phase = np.exp(1j * x * x / (4.0 * t))
            return phase / math.sqrt(t) * self.source(-1.0 / t, -x / t)
        if t >= 0:
            raise DomainError(f"inverse map needs s < 0, got {t}")
        t_old = -1.0 / t
        x_old = x / t
        return math.sqrt(t_old) * np.exp(-1j * x_old * x_old / (4.0 * t_old)) * self.source(t_old, x_old)


def _forward_time(s):
    if s == -math.inf:
        return 0.0
    if s == 0:
        return math.inf
    return -1.0 / s


def _inverse_time(t):
    if t == 0:
        return -math.inf
    if t == math.inf:
        return 0.0
    return -1.0 / t


def theorem2_map(psi, direction='forward'):
    return InversionSolution(psi, direction)


# ------------------------------------------------------- boost calibration

def _dispersion_mismatch(alpha, beta, kappa):
    """Omega - K^2 as a polynomial in c for a boosted plane wave

    e^{i(kappa y - kappa^2 t)} boosted by c becomes e^{i(K x - Omega t)}
    with K = kappa + alpha c, Omega = kappa^2 + kappa c - beta c^2.
    """
    wavenumber = Polynomial((kappa, alpha))
    frequency = Polynomial((kappa * kappa, kappa, -beta))
    return frequency - wavenumber * wavenumber


def _coefficient(poly, k):
    return poly.coeffs[k].re if k < len(poly.coeffs) else Fraction(0)


def _linear_root(f):
    at_zero, at_one = f(Fraction(0)), f(Fraction(1))
    slope = at_one - at_zero
    if slope == 0:
        raise ConfigError("boost calibration equation is degenerate")
    return -at_zero / slope


def calibrate_boost_constants(kappas=(1, 2, -3)):
    """(alpha, beta) making every boosted free plane wave a free solution

    The c^1 coefficient of the mismatch is linear in alpha, the c^2
    coefficient is then linear in beta; both are solved exactly and the
    result is checked on a few wavenumbers.
    """
    kappa = Fraction(kappas[0])
    alpha = _linear_root(lambda a: _coefficient(_dispersion_mismatch(a, Fraction(0), kappa), 1))
    beta = _linear_root(lambda b: _coefficient(_dispersion_mismatch(alpha, b, kappa), 2))
    for k in kappas:
        if not _dispersion_mismatch(alpha, beta, Fraction(k)).is_zero():
            raise ConfigError(f"boost constants do not calibrate at kappa={k}")
    return alpha, beta


def boosted_soliton_parameters(c):
    """(k, v) of the travelling soliton equal to the boosted standing one"""
    alpha, beta = float(BOOST_ALPHA), float(BOOST_BETA)
    return -alpha * c, 1.0 + beta * c * c
