"""Turing machine encoding: a machine-specific database over one fixed rule set.

The machine halts on the empty input iff the chase of its database with
tm_rules() is finite. Each row of the chase grid is a configuration; Tape and
Head atoms are horizontal edges, L and R atoms connect consecutive rows.

Spec file format (see docs/TM_SPEC.md):

    states: q0 q1
    alphabet: > < _ a
    initial: q0
    q0 _ -> q1 a R
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import pyparsing as pp

from ..core.model import Atom, Program, TGD
from ..core.terms import Constant, Variable
from ..errors import GeneratorError
from ..textio.parser import SourceProgram

logger = logging.getLogger(__name__)

LEFT_END = "▷"
RIGHT_END = "◁"
BLANK = "⊔"
SYMBOL_ALIASES = {">": LEFT_END, "<": RIGHT_END, "_": BLANK}

DIRECTIONS = {"L": "left", "S": "stay", "R": "right"}


def canonical_symbol(symbol: str) -> str:
    return SYMBOL_ALIASES.get(symbol, symbol)


@dataclass
class TmSpec:
    """A deterministic Turing machine: (state, read) -> (state, write, direction)."""

    states: Tuple[str, ...]
    alphabet: Tuple[str, ...]
    initial: str
    transitions: Dict[Tuple[str, str], Tuple[str, str, str]] = field(default_factory=dict)

    def validate(self) -> None:
        """Check the alphabet, the initial state and every transition.

        Raises:
            GeneratorError: On an unknown state, symbol or direction, or a missing
                special symbol.
        """
        for special in (LEFT_END, RIGHT_END, BLANK):
            if special not in self.alphabet:
                raise GeneratorError(f"alphabet must contain {special}")
        if self.initial not in self.states:
            raise GeneratorError(f"initial state {self.initial} is not declared")
        for (state, read), (target, write, direction) in self.transitions.items():
            for s in (state, target):
                if s not in self.states:
                    raise GeneratorError(f"unknown state {s} in transition from ({state}, {read})")
            for a in (read, write):
                if a not in self.alphabet:
                    raise GeneratorError(f"unknown symbol {a} in transition from ({state}, {read})")
            if direction not in DIRECTIONS:
                raise GeneratorError(f"direction must be one of L, S, R, got {direction}")

    def add(self, state: str, read: str, target: str, write: str, direction: str) -> None:
        """Add one transition.

        Raises:
            GeneratorError: If (state, read) already has a transition.
        """
        key = (state, canonical_symbol(read))
        entry = (target, canonical_symbol(write), direction)
        known = self.transitions.get(key)
        if known is not None and known != entry:
            raise GeneratorError(f"nondeterministic machine: ({state}, {key[1]}) has two transitions")
        self.transitions[key] = entry


_TOKEN = pp.Word(pp.printables, exclude_chars="%:")
_HEADER = pp.one_of("states alphabet initial", as_keyword=True)("key") + pp.Suppress(":") + pp.Group(
    pp.OneOrMore(_TOKEN)
)("values")
_TRANSITION = (
    _TOKEN("state")
    + _TOKEN("read")
    + pp.Suppress("->")
    + _TOKEN("target")
    + _TOKEN("write")
    + pp.one_of("L S R", as_keyword=True)("direction")
)
_LINE = (_HEADER | _TRANSITION) + pp.StringEnd()
_LINE.ignore(pp.Regex(r"%.*"))


def parse_tm_spec(text: str) -> TmSpec:
    """Parse a TM spec file.

    Raises:
        GeneratorError: On syntax errors, missing headers, or an invalid or
            nondeterministic machine.
    """
    headers: Dict[str, List[str]] = {}
    transitions = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.split("%", 1)[0].strip():
            continue
        try:
            parsed = _LINE.parse_string(line, parse_all=True)
        except pp.ParseBaseException as e:
            raise GeneratorError(f"TM spec line {lineno}, column {e.col}: {e.msg}") from None
        if "key" in parsed:
            if parsed["key"] in headers:
                raise GeneratorError(f"TM spec line {lineno}: '{parsed['key']}' given twice")
            headers[parsed["key"]] = list(parsed["values"])
        else:
            transitions.append(
                (parsed["state"], parsed["read"], parsed["target"], parsed["write"], parsed["direction"])
            )

    missing = [key for key in ("states", "alphabet", "initial") if key not in headers]
    if missing:
        raise GeneratorError(f"TM spec is missing: {', '.join(missing)}")
    if len(headers["initial"]) != 1:
        raise GeneratorError("TM spec needs exactly one initial state")
    spec = TmSpec(
        states=tuple(headers["states"]),
        alphabet=tuple(canonical_symbol(a) for a in headers["alphabet"]),
        initial=headers["initial"][0],
    )
    for transition in transitions:
        spec.add(*transition)
    spec.validate()
    return spec


def read_tm_spec(path: str) -> TmSpec:
    with open(path, encoding="utf-8") as f:
        return parse_tm_spec(f.read())


def _a(predicate: str, *names: str) -> Atom:
    return Atom(predicate, tuple(Variable(name) for name in names))


def tm_rules() -> Program:
    """The constant-free rule set shared by every machine."""
    trans = _a("Trans", "X1", "X2", "X3", "X4", "X5")
    rules: List[Tuple[List[Atom], List[Atom]]] = [
        # head moves right inside the tape
        (
            [trans, _a("RDir", "X5"), _a("NormSymb", "W"),
             _a("Head", "X", "X1", "Y"), _a("Tape", "X", "X2", "Y"), _a("Tape", "Y", "W", "Z")],
            [_a("L", "X", "XN"), _a("R", "Y", "YN"), _a("R", "Z", "ZN"),
             _a("Tape", "XN", "X4", "YN"), _a("Head", "YN", "X3", "ZN"), _a("Tape", "YN", "W", "ZN")],
        ),
        # head moves right onto the end marker: the tape grows by one blank cell
        (
            [trans, _a("RDir", "X5"), _a("Blank", "U"), _a("End", "W"),
             _a("Head", "X", "X1", "Y"), _a("Tape", "X", "X2", "Y"), _a("Tape", "Y", "W", "Z")],
            [_a("L", "X", "XN"), _a("R", "Y", "YN"), _a("R", "Z", "ZN"),
             _a("Tape", "XN", "X4", "YN"), _a("Head", "YN", "X3", "ZN"),
             _a("Tape", "YN", "U", "ZN"), _a("Tape", "ZN", "W", "WN")],
        ),
        (
            [trans, _a("LDir", "X5"),
             _a("Tape", "X", "W", "Y"), _a("Head", "Y", "X1", "Z"), _a("Tape", "Y", "X2", "Z")],
            [_a("R", "X", "XN"), _a("R", "Y", "YN"), _a("L", "Z", "ZN"),
             _a("Head", "XN", "X3", "YN"), _a("Tape", "XN", "W", "YN"), _a("Tape", "YN", "X4", "ZN")],
        ),
        (
            [trans, _a("SDir", "X5"), _a("Head", "X", "X1", "Y"), _a("Tape", "X", "X2", "Y")],
            [_a("L", "X", "XN"), _a("R", "Y", "YN"), _a("Head", "XN", "X3", "YN"), _a("Tape", "XN", "X4", "YN")],
        ),
        # untouched cells left and right of the head are copied to the next row
        (
            [_a("Tape", "X", "Z", "Y"), _a("L", "Y", "YN")],
            [_a("L", "X", "XN"), _a("Tape", "XN", "Z", "YN")],
        ),
        (
            [_a("Tape", "X", "Z", "Y"), _a("R", "X", "XN")],
            [_a("Tape", "XN", "Z", "YN"), _a("R", "Y", "YN")],
        ),
    ]
    return Program(TGD(f"r{k}", tuple(body), tuple(head)) for k, (body, head) in enumerate(rules, start=1))


def _f(predicate: str, *names: str) -> Atom:
    return Atom(predicate, tuple(Constant(name) for name in names))


def tm_database(spec: TmSpec) -> List[Atom]:
    """Transition table, initial configuration on the empty input, and marker facts."""
    facts: List[Atom] = []
    for (state, read), (target, write, direction) in sorted(spec.transitions.items()):
        facts.append(_f("Trans", state, read, target, write, DIRECTIONS[direction]))
    facts += [
        _f("Tape", "c0", LEFT_END, "c1"),
        _f("Tape", "c1", BLANK, "c2"),
        _f("Head", "c1", spec.initial, "c2"),
        _f("Tape", "c2", RIGHT_END, "c3"),
        _f("LDir", DIRECTIONS["L"]),
        _f("SDir", DIRECTIONS["S"]),
        _f("RDir", DIRECTIONS["R"]),
        _f("Blank", BLANK),
        _f("End", RIGHT_END),
    ]
    facts.extend(_f("NormSymb", a) for a in spec.alphabet if a not in (LEFT_END, RIGHT_END))
    return facts


def gen_tm(spec: TmSpec) -> SourceProgram:
    """The encoded machine database together with the fixed rule set.

    The machine is assumed never to move left of the first cell; that is not checked.

    Raises:
        GeneratorError: If the spec is invalid.
    """
    spec.validate()
    facts = tm_database(spec)
    logger.debug(f"Encoded a machine with {len(spec.states)} states and {len(spec.transitions)} transitions")
    return SourceProgram.of(facts, tm_rules())
