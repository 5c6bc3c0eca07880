"""
Symbolic expressions in the single real variable t

Trees are immutable. Build them with the helper constructors (add, mul, ...)
or with the Python operators, which fold exact constants and drop neutral
elements so derived coefficient expressions stay small.
"""
import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import singledispatch

from core.errors import EvaluationError, PoleError
from core.numbers import ComplexRational


class Expr:
    """Base node"""
    precedence = 5

    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return sub(self, as_expr(other))

    def __rsub__(self, other):
        return sub(as_expr(other), self)

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __truediv__(self, other):
        return div(self, as_expr(other))

    def __rtruediv__(self, other):
        return div(as_expr(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, exponent):
        return power(self, exponent)

    def __str__(self):
        return to_string(self)


@dataclass(frozen=True, eq=True, repr=True)
class Constant(Expr):
    value: object  # ComplexRational (exact) or float/complex (inexact)

    @property
    def exact(self):
        return isinstance(self.value, ComplexRational)


@dataclass(frozen=True, eq=True, repr=True)
class Variable(Expr):
    name: str = 't'


@dataclass(frozen=True, eq=True, repr=True)
class Neg(Expr):
    operand: Expr
    precedence = 3


@dataclass(frozen=True, eq=True, repr=True)
class Add(Expr):
    left: Expr
    right: Expr
    precedence = 1


@dataclass(frozen=True, eq=True, repr=True)
class Sub(Expr):
    left: Expr
    right: Expr
    precedence = 1


@dataclass(frozen=True, eq=True, repr=True)
class Mul(Expr):
    left: Expr
    right: Expr
    precedence = 2


@dataclass(frozen=True, eq=True, repr=True)
class Div(Expr):
    left: Expr
    right: Expr
    precedence = 2


@dataclass(frozen=True, eq=True, repr=True)
class IntPow(Expr):
    base: Expr
    exponent: int
    precedence = 4

    def __post_init__(self):
        if not isinstance(self.exponent, int) or isinstance(self.exponent, bool):
            raise TypeError("IntPow exponent must be an int")


@dataclass(frozen=True, eq=True, repr=True)
class Exp(Expr):
    operand: Expr


@dataclass(frozen=True, eq=True, repr=True)
class Sin(Expr):
    operand: Expr


@dataclass(frozen=True, eq=True, repr=True)
class Cos(Expr):
    operand: Expr


T = Variable()


# ---------------------------------------------------------------- builders

def const(value):
    """Constant node; ints, Fractions and ComplexRationals stay exact"""
    if isinstance(value, Constant):
        return value
    if isinstance(value, (int, Fraction, ComplexRational)) and not isinstance(value, bool):
        return Constant(ComplexRational.coerce(value))
    if isinstance(value, (float, complex)):
        return Constant(value)
    raise TypeError(f"cannot build a constant from {value!r}")


def as_expr(value):
    if isinstance(value, Expr):
        return value
    return const(value)


ZERO = const(0)
ONE = const(1)
I = const(ComplexRational(0, 1))


def _exact_value(e):
    if isinstance(e, Constant) and e.exact:
        return e.value
    return None


def _constant_value(e):
    if isinstance(e, Constant):
        return e.value
    return None


def _fold(a, b, op):
    """Fold two constants; exact when both are exact"""
    va, vb = _constant_value(a), _constant_value(b)
    if va is None or vb is None:
        return None
    if isinstance(va, ComplexRational) and isinstance(vb, ComplexRational):
        return const(op(va, vb))
    return const(op(_as_number(va), _as_number(vb)))


def _as_number(value):
    if isinstance(value, ComplexRational):
        return value.to_number()
    return value


def is_exact_zero(e):
    v = _exact_value(e)
    return v is not None and v.is_zero()


def is_exact_one(e):
    v = _exact_value(e)
    return v is not None and v == 1


def is_constant(e):
    """True when the tree has no Variable node"""
    return not _depends_on_t(e)


def add(a, b):
    folded = _fold(a, b, lambda x, y: x + y)
    if folded is not None:
        return folded
    if is_exact_zero(a):
        return b
    if is_exact_zero(b):
        return a
    if isinstance(b, Neg):
        return Sub(a, b.operand)
    return Add(a, b)


def sub(a, b):
    folded = _fold(a, b, lambda x, y: x - y)
    if folded is not None:
        return folded
    if is_exact_zero(b):
        return a
    if is_exact_zero(a):
        return neg(b)
    if isinstance(b, Neg):
        return Add(a, b.operand)
    return Sub(a, b)


def neg(a):
    v = _constant_value(a)
    if v is not None:
        return const(-v)
    if isinstance(a, Neg):
        return a.operand
    return Neg(a)


def mul(a, b):
    folded = _fold(a, b, lambda x, y: x * y)
    if folded is not None:
        return folded
    if is_exact_zero(a) or is_exact_zero(b):
        return ZERO
    if is_exact_one(a):
        return b
    if is_exact_one(b):
        return a
    if _exact_value(a) == -1:
        return neg(b)
    if _exact_value(b) == -1:
        return neg(a)
    return Mul(a, b)


def div(a, b):
    vb = _constant_value(b)
    if vb is not None and not _is_zero_number(vb):
        folded = _fold(a, b, lambda x, y: x / y)
        if folded is not None:
            return folded
    if is_exact_one(b):
        return a
    if is_exact_zero(a) and not is_exact_zero(b):
        return ZERO
    return Div(a, b)


def _is_zero_number(value):
    if isinstance(value, ComplexRational):
        return value.is_zero()
    return value == 0


def power(base, exponent):
    if isinstance(exponent, bool) or not isinstance(exponent, int):
        raise TypeError("only integer powers are supported")
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    v = _constant_value(base)
    if v is not None and not (_is_zero_number(v) and exponent < 0):
        if isinstance(v, ComplexRational):
            return const(v ** exponent)
        return const(v ** exponent)
    if isinstance(base, IntPow):
        return power(base.base, base.exponent * exponent)
    return IntPow(base, exponent)


def exp(a):
    if is_exact_zero(a):
        return ONE
    return Exp(a)


def sin(a):
    if is_exact_zero(a):
        return ZERO
    return Sin(a)


def cos(a):
    if is_exact_zero(a):
        return ONE
    return Cos(a)


# ---------------------------------------------------------- tree walking

def _walk(e, visit, memo):
    key = id(e)
    if key not in memo:
        memo[key] = visit(e, memo)
    return memo[key]


@singledispatch
def _depends(e, memo):
    raise TypeError(f"unknown node {type(e).__name__}")


@_depends.register(Constant)
def _(e, memo):
    return False


@_depends.register(Variable)
def _(e, memo):
    return True


@_depends.register(Neg)
@_depends.register(Exp)
@_depends.register(Sin)
@_depends.register(Cos)
def _(e, memo):
    return _walk(e.operand, _depends, memo)


@_depends.register(IntPow)
def _(e, memo):
    return _walk(e.base, _depends, memo)


@_depends.register(Add)
@_depends.register(Sub)
@_depends.register(Mul)
@_depends.register(Div)
def _(e, memo):
    return _walk(e.left, _depends, memo) or _walk(e.right, _depends, memo)


def _depends_on_t(e):
    return _walk(e, _depends, {})


@singledispatch
def _transcendental(e, memo):
    raise TypeError(f"unknown node {type(e).__name__}")


@_transcendental.register(Constant)
def _(e, memo):
    return not e.exact


@_transcendental.register(Variable)
def _(e, memo):
    return False


@_transcendental.register(Exp)
@_transcendental.register(Sin)
@_transcendental.register(Cos)
def _(e, memo):
    return True


@_transcendental.register(Neg)
def _(e, memo):
    return _walk(e.operand, _transcendental, memo)


@_transcendental.register(IntPow)
def _(e, memo):
    return _walk(e.base, _transcendental, memo)


@_transcendental.register(Add)
@_transcendental.register(Sub)
@_transcendental.register(Mul)
@_transcendental.register(Div)
def _(e, memo):
    return _walk(e.left, _transcendental, memo) or _walk(e.right, _transcendental, memo)


def is_rational_form(e):
    """True when e only uses exact constants, t and rational operations"""
    return not _walk(e, _transcendental, {})


def node_count(e):
    """Number of distinct nodes (shared subtrees counted once)"""
    memo = {}

    def visit(node, memo):
        for child in _children(node):
            _walk(child, visit, memo)
        return True

    _walk(e, visit, memo)
    return len(memo)


def _children(e):
    if isinstance(e, (Add, Sub, Mul, Div)):
        return (e.left, e.right)
    if isinstance(e, IntPow):
        return (e.base,)
    if isinstance(e, (Neg, Exp, Sin, Cos)):
        return (e.operand,)
    return ()


# -------------------------------------------------------- differentiation

@singledispatch
def _derivative(e, memo):
    raise TypeError(f"cannot differentiate {type(e).__name__}")


def _d(e, memo):
    return _walk(e, _derivative, memo)


@_derivative.register(Constant)
def _(e, memo):
    return ZERO


@_derivative.register(Variable)
def _(e, memo):
    return ONE


@_derivative.register(Neg)
def _(e, memo):
    return neg(_d(e.operand, memo))


@_derivative.register(Add)
def _(e, memo):
    return add(_d(e.left, memo), _d(e.right, memo))


@_derivative.register(Sub)
def _(e, memo):
    return sub(_d(e.left, memo), _d(e.right, memo))


@_derivative.register(Mul)
def _(e, memo):
    return add(mul(_d(e.left, memo), e.right), mul(e.left, _d(e.right, memo)))


@_derivative.register(Div)
def _(e, memo):
    numerator = sub(mul(_d(e.left, memo), e.right), mul(e.left, _d(e.right, memo)))
    return div(numerator, power(e.right, 2))


@_derivative.register(IntPow)
def _(e, memo):
    inner = _d(e.base, memo)
    return mul(mul(const(e.exponent), power(e.base, e.exponent - 1)), inner)


@_derivative.register(Exp)
def _(e, memo):
    return mul(e, _d(e.operand, memo))


@_derivative.register(Sin)
def _(e, memo):
    return mul(cos(e.operand), _d(e.operand, memo))


@_derivative.register(Cos)
def _(e, memo):
    return neg(mul(sin(e.operand), _d(e.operand, memo)))


def differentiate(e, order=1):
    """d^order e / dt^order by structural rules"""
    for _ in range(order):
        e = _d(e, {})
    return e


# ------------------------------------------------------------- evaluation

@singledispatch
def _value(e, t, memo):
    raise TypeError(f"cannot evaluate {type(e).__name__}")


def _v(e, t, memo):
    key = id(e)
    if key not in memo:
        memo[key] = _value(e, t, memo)
    return memo[key]


@_value.register(Constant)
def _(e, t, memo):
    return _as_number(e.value)


@_value.register(Variable)
def _(e, t, memo):
    return t


@_value.register(Neg)
def _(e, t, memo):
    return -_v(e.operand, t, memo)


@_value.register(Add)
def _(e, t, memo):
    return _v(e.left, t, memo) + _v(e.right, t, memo)


@_value.register(Sub)
def _(e, t, memo):
    return _v(e.left, t, memo) - _v(e.right, t, memo)


@_value.register(Mul)
def _(e, t, memo):
    return _v(e.left, t, memo) * _v(e.right, t, memo)


@_value.register(Div)
def _(e, t, memo):
    denominator = _v(e.right, t, memo)
    if denominator == 0:
        raise PoleError(f"division by zero at t={t!r}")
    return _v(e.left, t, memo) / denominator


@_value.register(IntPow)
def _(e, t, memo):
    base = _v(e.base, t, memo)
    if base == 0 and e.exponent < 0:
        raise PoleError(f"zero raised to {e.exponent} at t={t!r}")
    return base ** e.exponent


@_value.register(Exp)
def _(e, t, memo):
    x = _v(e.operand, t, memo)
    return cmath.exp(x) if isinstance(x, complex) else math.exp(x)


@_value.register(Sin)
def _(e, t, memo):
    x = _v(e.operand, t, memo)
    return cmath.sin(x) if isinstance(x, complex) else math.sin(x)


@_value.register(Cos)
def _(e, t, memo):
    x = _v(e.operand, t, memo)
    return cmath.cos(x) if isinstance(x, complex) else math.cos(x)


def evaluate(e, t):
    """Numeric value of e at t (float or complex)

    Raises PoleError instead of ever returning inf or nan.
    """
    try:
        value = _v(e, t, {})
    except ZeroDivisionError as exc:
        raise PoleError(f"division by zero at t={t!r}") from exc
    except OverflowError as exc:
        raise PoleError(f"overflow at t={t!r}") from exc
    except ValueError as exc:
        # sin and cos of an overflowed argument
        raise PoleError(f"undefined value at t={t!r}: {exc}") from exc
    if isinstance(value, complex):
        finite = cmath.isfinite(value)
    else:
        finite = math.isfinite(value)
    if not finite:
        raise PoleError(f"non-finite value at t={t!r}")
    return value


def evaluate_real(e, t):
    """evaluate() for coefficients that must be real-valued"""
    value = evaluate(e, t)
    if isinstance(value, complex):
        if abs(value.imag) > 1e-12 * max(1.0, abs(value.real)):
            raise EvaluationError(f"expected a real value at t={t!r}, got {value!r}")
        return value.real
    return float(value)


# --------------------------------------------------------------- printing

def _format_constant(value):
    if isinstance(value, ComplexRational):
        if value.im == 0:
            r = value.re
            if r.denominator == 1 and r >= 0:
                return str(r.numerator)
            return f"({r})"
        if value.re == 0:
            return f"({value.im}*i)"
        return f"({value})"
    if isinstance(value, complex):
        return f"({value.real!r}+{value.imag!r}*i)"
    text = repr(float(value))
    return f"({text})" if value < 0 else text


def _wrap(e, text, minimum):
    return f"({text})" if e.precedence < minimum else text


@singledispatch
def _text(e, memo):
    raise TypeError(f"cannot print {type(e).__name__}")


def _s(e, memo):
    return _walk(e, _text, memo)


@_text.register(Constant)
def _(e, memo):
    return _format_constant(e.value)


@_text.register(Variable)
def _(e, memo):
    return e.name


@_text.register(Neg)
def _(e, memo):
    return "-" + _wrap(e.operand, _s(e.operand, memo), 2)


@_text.register(Add)
def _(e, memo):
    return f"{_wrap(e.left, _s(e.left, memo), 1)} + {_wrap(e.right, _s(e.right, memo), 2)}"


@_text.register(Sub)
def _(e, memo):
    return f"{_wrap(e.left, _s(e.left, memo), 1)} - {_wrap(e.right, _s(e.right, memo), 2)}"


@_text.register(Mul)
def _(e, memo):
    return f"{_wrap(e.left, _s(e.left, memo), 2)}*{_wrap(e.right, _s(e.right, memo), 3)}"


@_text.register(Div)
def _(e, memo):
    return f"{_wrap(e.left, _s(e.left, memo), 2)}/{_wrap(e.right, _s(e.right, memo), 4)}"


@_text.register(IntPow)
def _(e, memo):
    exponent = str(e.exponent) if e.exponent >= 0 else f"({e.exponent})"
    return f"{_wrap(e.base, _s(e.base, memo), 5)}^{exponent}"


@_text.register(Exp)
def _(e, memo):
    return f"exp({_s(e.operand, memo)})"


@_text.register(Sin)
def _(e, memo):
    return f"sin({_s(e.operand, memo)})"


@_text.register(Cos)
def _(e, memo):
    return f"cos({_s(e.operand, memo)})"


def to_string(e):
    """Infix text that parse() reads back to an equal-valued tree"""
    return _s(e, {})
