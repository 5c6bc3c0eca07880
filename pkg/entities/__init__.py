"""
Solutions and gridded fields
"""
from entities.field import GridSpec, ComplexField, FieldTriple
from entities.solution import Solution, AnalyticSolution, FieldSolution

__all__ = ['GridSpec', 'ComplexField', 'FieldTriple', 'Solution', 'AnalyticSolution', 'FieldSolution']
