"""Terms of the chase: constants, variables and interned labelled nulls."""

import threading
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union


@dataclass(frozen=True, slots=True)
class Constant:
    """A database constant."""

    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Variable:
    """A rule variable."""

    name: str

    def __str__(self) -> str:
        return self.name


# (frontier variable name, term) pairs in the TGD's frontier order.
Binding = Tuple[Tuple[str, "GroundTerm"], ...]


class Null:
    """A labelled null identified by (TGD id, frontier binding, existential variable).

    Instances only come from the interner, so structural equality is identity and
    hashing uses the integer handle.
    """

    __slots__ = ("handle", "tgd_id", "binding", "ex_var", "depth")

    def __init__(self, handle: int, tgd_id: str, binding: Binding, ex_var: str, depth: int):
        self.handle = handle
        self.tgd_id = tgd_id
        self.binding = binding
        self.ex_var = ex_var
        self.depth = depth

    def __eq__(self, other) -> bool:
        return self is other

    def __hash__(self) -> int:
        return self.handle

    def __lt__(self, other: "Null") -> bool:
        return self.handle < other.handle

    def __repr__(self) -> str:
        return f"Null(_:n{self.handle})"

    def __str__(self) -> str:
        return f"_:n{self.handle}"

    def structured(self) -> str:
        """Fully structured rendering, e.g. ``_:r1{Y=b}.Z``."""
        inner = ",".join(f"{var}={_structured(term)}" for var, term in self.binding)
        return f"_:{self.tgd_id}{{{inner}}}.{self.ex_var}"


GroundTerm = Union[Constant, Null]
Term = Union[Constant, Variable, Null]


def _structured(term: GroundTerm) -> str:
    if isinstance(term, Null):
        return term.structured()
    return str(term)


class NullInterner:
    """Hands out one Null per (tgd id, binding, existential variable) key.

    Safe under concurrent insertion; lookups never create nulls.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._nulls: Dict[Tuple[str, Binding, str], Null] = {}

    def intern(self, tgd_id: str, binding: Binding, ex_var: str) -> Null:
        key = (tgd_id, binding, ex_var)
        null = self._nulls.get(key)
        if null is not None:
            return null
        for _, term in binding:
            if isinstance(term, Variable):
                raise ValueError(f"null binding for {tgd_id}.{ex_var} contains variable {term}")
        depth = 1 + max((term_depth(term) for _, term in binding), default=0)
        with self._lock:
            null = self._nulls.get(key)
            if null is None:
                null = Null(len(self._nulls) + 1, tgd_id, binding, ex_var, depth)
                self._nulls[key] = null
        return null

    def lookup(self, tgd_id: str, binding: Binding, ex_var: str) -> Optional[Null]:
        return self._nulls.get((tgd_id, binding, ex_var))

    def __len__(self) -> int:
        return len(self._nulls)


def term_depth(term: Term) -> int:
    """Depth of a ground term: 0 for constants, 1 + max frontier depth for nulls.

    Raises:
        ValueError: If term is a variable.
    """
    if isinstance(term, Constant):
        return 0
    if isinstance(term, Null):
        return term.depth
    raise ValueError(f"depth is undefined for variable {term}")


def is_ground(term: Term) -> bool:
    return not isinstance(term, Variable)
