"""Exception types raised across chasegate."""

from typing import Optional


class ChasegateError(Exception):
    """Base class for errors the CLI reports as data errors."""
    pass


class ProgramSyntaxError(ChasegateError):
    """Raised when program text does not match the rule grammar."""

    def __init__(self, message: str, line: int, column: int, source: Optional[str] = None):
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")
        self.line = line
        self.column = column


class ProgramError(ChasegateError):
    """Raised when a parsed statement violates a program invariant."""

    def __init__(self, message: str, line: Optional[int] = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line = line


class ChaseConfigError(ChasegateError):
    """Raised for invalid chase caps."""
    pass


class ClassError(ChasegateError):
    """Raised when an operation is applied to a program of the wrong syntactic class."""
    pass


class SimplificationError(ChasegateError):
    """Raised when specialization enumeration exceeds the arity cap."""
    pass


class LinearizationBudgetError(ChasegateError):
    """Raised when linearization registers more types than the configured budget."""
    pass


class BoundCeilingError(ChasegateError):
    """Raised when the bound-based decider would need more atoms than the ceiling allows."""
    pass


class PartitionError(ChasegateError):
    """Raised when a simplification/linearization oracle cannot run (a chase hit its cap)."""
    pass


class GeneratorError(ChasegateError):
    """Raised for invalid generator parameters or TM specs."""
    pass
