"""Depth and size bounds on finite chases of simple linear, linear and guarded programs."""

import math
from dataclasses import dataclass
from typing import Dict, Optional

from ..core.classify import ProgramClass
from ..core.model import Program
from ..errors import ClassError

# Values whose binary expansion would exceed this many bits are kept symbolic.
MAX_EXACT_BITS = 4_000_000

# Exact values wider than this are shown by their expression, not in decimal;
# int-to-str conversion refuses past 4300 digits.
MAX_DECIMAL_BITS = 14_000


@dataclass(frozen=True)
class BigBound:
    """An exact natural number, or a symbolic expression when it is too large to expand."""

    value: Optional[int]
    expression: str

    @classmethod
    def exact(cls, value: int, expression: Optional[str] = None) -> "BigBound":
        if value.bit_length() <= MAX_DECIMAL_BITS:
            return cls(value, str(value))
        return cls(value, expression or f"~2^{value.bit_length()}")

    @property
    def is_exact(self) -> bool:
        return self.value is not None

    def at_most(self, n: int) -> bool:
        """True iff the bound is <= n (symbolic bounds are never)."""
        return self.value is not None and self.value <= n

    def times(self, factor: int) -> "BigBound":
        if factor == 0:
            return BigBound.exact(0)
        if self.value is not None:
            return BigBound.exact(self.value * factor, f"{factor}*({self.expression})")
        return BigBound(None, f"{factor}*({self.expression})")

    def __str__(self) -> str:
        return self.expression


@dataclass(frozen=True)
class Bounds:
    """d: depth bound; f: per-database-atom size factor; size: |D| * f once a database is known."""

    program_class: ProgramClass
    d: BigBound
    f: BigBound
    size: Optional[BigBound] = None

    def for_database(self, db_size: int) -> "Bounds":
        return Bounds(self.program_class, self.d, self.f, self.f.times(db_size))

    def as_dict(self) -> Dict[str, Optional[str]]:
        return {
            "d": str(self.d),
            "f": str(self.f),
            "sizeBound": str(self.size) if self.size is not None else None,
        }


def _power(base: int, exponent: BigBound) -> BigBound:
    if exponent.value is not None:
        small = exponent.value.bit_length() <= 64
        if base <= 1 or (small and exponent.value * math.log2(base) <= MAX_EXACT_BITS):
            return BigBound.exact(base ** exponent.value, f"{base}^({exponent})")
    return BigBound(None, f"{base}^({exponent})")


def depth_bound(program: Program, program_class: ProgramClass) -> BigBound:
    """Largest null depth of a finite chase, from the predicate count p and the maximum arity a.

    simple linear: p*a; linear: p*a^(a+1); guarded: p*a^(2a+1)*2^(p*a^a).
    """
    sch = program.pred_count
    ar = program.max_arity
    if program_class is ProgramClass.SIMPLE_LINEAR:
        return BigBound.exact(sch * ar)
    if program_class is ProgramClass.LINEAR:
        return BigBound.exact(sch * ar ** (ar + 1))
    if program_class is ProgramClass.GUARDED:
        factor = sch * ar ** (2 * ar + 1)
        power = _power(2, BigBound.exact(sch * ar**ar))
        if power.value is not None:
            return BigBound.exact(factor * power.value, f"{factor}*{power}")
        return BigBound(None, f"{factor}*{power}")
    raise ClassError(f"no depth bound for {program_class.label} programs")


def size_factor(program: Program, d: BigBound) -> BigBound:
    """Atoms per database atom in a finite chase: (d+1) * norm^(2*a*(d+1))."""
    norm = program.norm
    ar = program.max_arity
    if d.value is None:
        return BigBound(None, f"(({d})+1)*{norm}^(2*{ar}*(({d})+1))")
    power = _power(norm, BigBound.exact(2 * ar * (d.value + 1)))
    if power.value is None:
        return BigBound(None, f"(({d})+1)*{power}")
    return BigBound.exact((d.value + 1) * power.value, f"(({d})+1)*{power}")


def bounds(program: Program, program_class: ProgramClass) -> Bounds:
    """Depth bound and size factor of program, read as a member of program_class.

    Raises:
        ClassError: For the general class.
    """
    d = depth_bound(program, program_class)
    return Bounds(program_class, d, size_factor(program, d))


def level_bound(program: Program, level: int) -> int:
    """Maximum size of one level of a guarded chase tree: norm^(2*a*(level+1))."""
    return program.norm ** (2 * program.max_arity * (level + 1))
