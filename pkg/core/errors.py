"""
Exception hierarchy shared by every module
"""


class ToolkitError(Exception):
    """Base class for all toolkit errors"""


class ConfigError(ToolkitError):
    """Bad run configuration (unknown case, malformed initial data, bad grid)"""


class ParseError(ToolkitError):
    """Formula could not be parsed"""
    def __init__(self, message, position):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class UnknownIdentifierError(ParseError):
    """Formula uses a name the grammar does not know"""
    def __init__(self, name, position):
        super().__init__(f"unknown identifier '{name}'", position)
        self.name = name


class EvaluationError(ToolkitError):
    """Expression evaluation produced no finite value"""


class PoleError(EvaluationError):
    """Expression evaluated at (or overflowed near) a pole"""


class NotRationalError(ToolkitError):
    """Expression is not a rational function of t"""


class SamplingError(ToolkitError):
    """Not enough regular sample points for a probabilistic identity test"""


class DomainError(ToolkitError):
    """Point or interval outside the domain of a solution or transform"""


class SingularTransformError(DomainError):
    """Transform hit its singular locus (1 - kappa*t = 0, or t = 0 for D)"""


class SupportError(DomainError):
    """Gridded field queried outside its reliable central support"""


class SolverError(ToolkitError):
    """Numerical integration could not proceed"""


class PoleInIntervalError(SolverError):
    """Coefficient F(t) has a pole inside the guarded evolution interval"""


class SolverInstabilityError(SolverError):
    """Field samples became non-finite during evolution"""
