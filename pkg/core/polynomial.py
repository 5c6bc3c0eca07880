"""
Polynomials over Q(i) and rational functions in canonical form

A polynomial is a tuple of ComplexRational coefficients, lowest degree
first, with trailing zeros stripped (the zero polynomial is the empty
tuple). A RationalFunction keeps numerator and denominator coprime with
a monic denominator, so equality of canonical forms is equality of
functions and the zero test is exact.
"""
from functools import singledispatch
import logging

import numpy as np

from core import expr as ex
from core.errors import NotRationalError, PoleError
from core.numbers import ComplexRational, ZERO, ONE

logger = logging.getLogger(__name__)


def _strip(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1].is_zero():
        n -= 1
    return tuple(coeffs[:n])


class Polynomial:
    """Dense univariate polynomial in t"""
    __slots__ = ('coeffs',)

    def __init__(self, coeffs=()):
        self.coeffs = _strip([ComplexRational.coerce(c) for c in coeffs])

    @classmethod
    def constant(cls, value):
        return cls((value,))

    @classmethod
    def t(cls):
        return cls((0, 1))

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial"""
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        result = list(a)
        for k, c in enumerate(b):
            result[k] = result[k] + c
        return Polynomial(result)

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ComplexRational):
            return Polynomial([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Polynomial()
        result = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                result[i + j] = result[i + j] + a * b
        return Polynomial(result)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial((ONE,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, divisor):
        """Euclidean division: self = q*divisor + r, deg r < deg divisor"""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self.coeffs)
        quotient = [ZERO] * max(0, len(remainder) - divisor.degree)
        lead = divisor.leading
        while len(remainder) > divisor.degree and remainder:
            shift = len(remainder) - 1 - divisor.degree
            factor = remainder[-1] / lead
            quotient[shift] = factor
            for k, c in enumerate(divisor.coeffs):
                remainder[shift + k] = remainder[shift + k] - factor * c
            remainder = list(_strip(remainder))
        return Polynomial(quotient), Polynomial(remainder)

    def __mod__(self, divisor):
        return self.divmod(divisor)[1]

    def monic(self):
        if self.is_zero():
            return self
        return self * (ONE / self.leading)

    def gcd(self, other):
        """Monic greatest common divisor (Euclid over exact rationals)"""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return Polynomial((ONE,))
        return a.monic()

    def derivative(self):
        return Polynomial([c * k for k, c in enumerate(self.coeffs)][1:])

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, t):
        """Horner evaluation at a float or complex point"""
        value = 0
        for c in reversed(self.coeffs):
            value = value * t + c.to_number()
        return value

    def is_real(self):
        return all(c.is_real() for c in self.coeffs)

    def real_roots(self, tol=1e-9):
        """Approximate real roots (numpy companion matrix)"""
        if self.degree < 1:
            return []
        coeffs = [complex(c) for c in reversed(self.coeffs)]
        roots = np.roots(coeffs)
        return sorted(float(r.real) for r in roots if abs(r.imag) <= tol * max(1.0, abs(r)))

    def to_expr(self):
        result = ex.ZERO
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            result = ex.add(result, ex.mul(ex.const(c), ex.power(ex.T, k)))
        return result

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return ex.to_string(self.to_expr())


class RationalFunction:
    """numerator/denominator, coprime, denominator monic"""
    __slots__ = ('numerator', 'denominator')

    def __init__(self, numerator, denominator=None, canonical=False):
        if denominator is None:
            denominator = Polynomial((ONE,))
        if denominator.is_zero():
            raise PoleError("rational function with zero denominator")
        if not canonical:
            if numerator.is_zero():
                denominator = Polynomial((ONE,))
            else:
                g = numerator.gcd(denominator)
                if g.degree > 0:
                    numerator = numerator.divmod(g)[0]
                    denominator = denominator.divmod(g)[0]
                scale = ONE / denominator.leading
                numerator = numerator * scale
                denominator = denominator * scale
        self.numerator = numerator
        self.denominator = denominator

    @classmethod
    def constant(cls, value):
        return cls(Polynomial((value,)), canonical=True)

    def is_zero(self):
        return self.numerator.is_zero()

    def __add__(self, other):
        if self.denominator == other.denominator:
            return RationalFunction(self.numerator + other.numerator, self.denominator)
        return RationalFunction(self.numerator * other.denominator + other.numerator * self.denominator,
                                self.denominator * other.denominator)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator, canonical=True)

    def __mul__(self, other):
        return RationalFunction(self.numerator * other.numerator,
                                self.denominator * other.denominator)

    def reciprocal(self):
        if self.is_zero():
            raise PoleError("reciprocal of an identically zero expression")
        return RationalFunction(self.denominator, self.numerator)

    def __truediv__(self, other):
        return self * other.reciprocal()

    def __pow__(self, n):
        if n >= 0:
            return RationalFunction(self.numerator ** n, self.denominator ** n, canonical=True)
        inverse = self.reciprocal()
        return RationalFunction(inverse.numerator ** -n, inverse.denominator ** -n, canonical=True)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __call__(self, t):
        d = self.denominator(t)
        if d == 0:
            raise PoleError(f"pole at t={t!r}")
        return self.numerator(t) / d

    def poles(self):
        """Approximate real poles"""
        return self.denominator.real_roots()

    def to_expr(self):
        numerator = self.numerator.to_expr()
        if self.denominator.degree == 0:
            return numerator
        return ex.div(numerator, self.denominator.to_expr())

    def __repr__(self):
        return f"RationalFunction({self.numerator!s}, {self.denominator!s})"

    def __str__(self):
        return ex.to_string(self.to_expr())


@singledispatch
def _normal(e, memo):
    raise NotRationalError(f"{type(e).__name__} is not a rational operation")


def _n(e, memo):
    key = id(e)
    if key not in memo:
        memo[key] = _normal(e, memo)
    return memo[key]


@_normal.register(ex.Constant)
def _(e, memo):
    if not e.exact:
        raise NotRationalError(f"inexact constant {e.value!r}")
    return RationalFunction.constant(e.value)


@_normal.register(ex.Variable)
def _(e, memo):
    return RationalFunction(Polynomial.t(), canonical=True)


@_normal.register(ex.Neg)
def _(e, memo):
    return -_n(e.operand, memo)


@_normal.register(ex.Add)
def _(e, memo):
    return _n(e.left, memo) + _n(e.right, memo)


@_normal.register(ex.Sub)
def _(e, memo):
    return _n(e.left, memo) - _n(e.right, memo)


@_normal.register(ex.Mul)
def _(e, memo):
    return _n(e.left, memo) * _n(e.right, memo)


@_normal.register(ex.Div)
def _(e, memo):
    return _n(e.left, memo) / _n(e.right, memo)


@_normal.register(ex.IntPow)
def _(e, memo):
    return _n(e.base, memo) ** e.exponent


@_normal.register(ex.Exp)
@_normal.register(ex.Sin)
@_normal.register(ex.Cos)
def _(e, memo):
    raise NotRationalError(f"transcendental node {type(e).__name__.lower()}(...)")


def rational_normal_form(e):
    """Canonical coprime (numerator, denominator) of a rational expression

    Raises NotRationalError for transcendental nodes or inexact constants,
    PoleError when a divisor is identically zero.
    """
    return _n(e, {})


def is_identically_zero(e):
    """Exact zero test; NotRationalError when e is not rational"""
    return rational_normal_form(e).is_zero()
