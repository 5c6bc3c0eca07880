"""
Solution evaluators u(t, x)

Every evaluator carries an open time interval (its domain) and is called
as solution(t, x) with scalar t and scalar or array x.
"""
from dataclasses import dataclass, field, replace
import math

import numpy as np

from core.errors import DomainError

FULL_LINE = (-math.inf, math.inf)


class Solution:
    """Base evaluator: domain bookkeeping and the call contract"""
    kind = 'solution'

    def __init__(self, domain=FULL_LINE):
        lo, hi = domain
        if not lo < hi:
            raise DomainError(f"empty time domain ({lo}, {hi})")
        self.domain = (float(lo), float(hi))

    def check_time(self, t):
        lo, hi = self.domain
        if not lo < t < hi:
            raise DomainError(f"t={t!r} outside the domain ({lo}, {hi}) of {self.kind}")

    def evaluate(self, t, x):
        raise NotImplementedError

    def __call__(self, t, x):
        t = float(t)
        self.check_time(t)
        return self.evaluate(t, np.asarray(x, dtype=float))

    def restrict(self, lo, hi):
        """Same evaluator on a sub-interval of its domain"""
        return RestrictedSolution(self, (max(lo, self.domain[0]), min(hi, self.domain[1])))


class RestrictedSolution(Solution):
    def __init__(self, base, domain):
        super().__init__(domain)
        self.base = base
        self.kind = base.kind

    def evaluate(self, t, x):
        return self.base.evaluate(t, x)

    def __getattr__(self, name):
        # partial derivatives and parameters of the wrapped solution
        if name == 'base':
            raise AttributeError(name)
        return getattr(self.base, name)


@dataclass
class AnalyticSolution(Solution):
    """Closed-form solution with exact partial derivatives

    The partials take (t, x) like the solution itself.
    """
    kind: str = field()
    params: dict
    u: object
    u_t: object
    u_x: object
    u_xx: object
    time_domain: tuple = field(default=FULL_LINE)

    def __post_init__(self):
        Solution.__init__(self, self.time_domain)

    def evaluate(self, t, x):
        return self.u(t, x)

    def partials(self, t, x):
        """(u, u_t, u_x, u_xx) at one time"""
        t = float(t)
        self.check_time(t)
        x = np.asarray(x, dtype=float)
        return self.u(t, x), self.u_t(t, x), self.u_x(t, x), self.u_xx(t, x)

    def restrict(self, lo, hi):
        domain = (max(lo, self.domain[0]), min(hi, self.domain[1]))
        return replace(self, time_domain=domain)


class FieldSolution(Solution):
    """A gridded slice seen as an evaluator at its own time stamp

    Values between grid points come from trigonometric interpolation and
    are only trusted inside the central part of the box.
    """
    kind = 'field'

    def __init__(self, complex_field, time_tolerance=1e-12):
        t = complex_field.time
        width = max(time_tolerance, 1e-12 * max(1.0, abs(t)))
        super().__init__((t - width, t + width))
        self.field = complex_field

    def evaluate(self, t, x):
        return self.field.interpolate(np.atleast_1d(x)).reshape(np.shape(x))


@dataclass
class Profile:
    """Real profile f(t, x) with the partials used by the ansatz reduction"""
    f: object
    f_t: object
    f_x: object
    f_xx: object
    name: str = 'profile'


@dataclass
class SteadyProfile:
    """Time-independent profile g(x) with g' and g''"""
    g: object
    g_x: object
    g_xx: object
    name: str = 'steady'
