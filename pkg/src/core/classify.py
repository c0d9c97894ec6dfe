"""Syntactic class recognition: simple linear, linear, guarded, general."""

from enum import Enum

from .model import TGD, Program


class ProgramClass(Enum):
    SIMPLE_LINEAR = "sl"
    LINEAR = "l"
    GUARDED = "g"
    GENERAL = "general"

    @property
    def label(self) -> str:
        return {
            ProgramClass.SIMPLE_LINEAR: "SimpleLinear",
            ProgramClass.LINEAR: "Linear",
            ProgramClass.GUARDED: "Guarded",
            ProgramClass.GENERAL: "General",
        }[self]

    @property
    def order(self) -> int:
        return list(ProgramClass).index(self)

    def within(self, other: "ProgramClass") -> bool:
        """True if every program of this class also belongs to other."""
        return self.order <= other.order

    @classmethod
    def parse(cls, value: str) -> "ProgramClass":
        lowered = value.strip().lower()
        for member in cls:
            if lowered in (member.value, member.label.lower()):
                return member
        raise ValueError(f"Unknown program class: {value!r}")


def classify_tgd(tgd: TGD) -> ProgramClass:
    if len(tgd.body) == 1:
        atom = tgd.body[0]
        if len(set(atom.args)) == len(atom.args):
            return ProgramClass.SIMPLE_LINEAR
        return ProgramClass.LINEAR
    if tgd.guard is not None:
        return ProgramClass.GUARDED
    return ProgramClass.GENERAL


def classify(program: Program) -> ProgramClass:
    """Most specific class containing every TGD; the empty program is simple linear."""
    result = ProgramClass.SIMPLE_LINEAR
    for tgd in program:
        tag = classify_tgd(tgd)
        if tag.order > result.order:
            result = tag
    return result
