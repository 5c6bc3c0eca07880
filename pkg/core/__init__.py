"""
Core symbolic layer: exact constants, expression trees, parsing and normal forms
"""
from core.errors import ToolkitError, ConfigError, ParseError, EvaluationError, DomainError, SolverError
from core.numbers import ComplexRational
from core.parser import parse
from core.polynomial import Polynomial, RationalFunction, rational_normal_form, is_identically_zero

__all__ = [
    'ToolkitError',
    'ConfigError',
    'ParseError',
    'EvaluationError',
    'DomainError',
    'SolverError',
    'ComplexRational',
    'parse',
    'Polynomial',
    'RationalFunction',
    'rational_normal_form',
    'is_identically_zero'
]
