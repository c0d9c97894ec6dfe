"""Lower-bound instance families and the depth family.

Each generator returns a SourceProgram so the result can be rendered with
render_program and parsed back.
"""

import logging
from typing import List, Optional, Sequence

from ..config import Config
from ..core.model import Atom, Program, TGD
from ..core.terms import Constant, Variable
from ..errors import GeneratorError
from ..textio.parser import SourceProgram

logger = logging.getLogger(__name__)


def _a(predicate: str, *names: str) -> Atom:
    """Rule atom over variables."""
    return Atom(predicate, tuple(Variable(name) for name in names))


def _f(predicate: str, *names: str) -> Atom:
    """Database fact over constants."""
    return Atom(predicate, tuple(Constant(name) for name in names))


def _vs(prefix: str, count: int) -> List[str]:
    return [f"{prefix}{k}" for k in range(1, count + 1)]


class _RuleList:
    """Collects TGDs with sequential ids r1, r2, ..."""

    def __init__(self):
        self.tgds: List[TGD] = []

    def add(self, body: Sequence[Atom], head: Sequence[Atom]) -> None:
        self.tgds.append(TGD(f"r{len(self.tgds) + 1}", tuple(body), tuple(head)))

    def program(self) -> Program:
        return Program(self.tgds)


def _require_positive(**params: int) -> None:
    for name, value in params.items():
        if value < 1:
            raise GeneratorError(f"{name} must be at least 1, got {value}")


def gen_sl_lower(ell: int, n: int, m: int) -> SourceProgram:
    """Simple linear family whose chase has ell * m^(n*m) atoms over R_n.

    From every tuple over R_i the swap and collapse rules derive all m^m
    rearrangements of its nulls; each R_i tuple then starts a fresh R_{i+1} tuple.

    Raises:
        GeneratorError: If a parameter is below 1.
    """
    _require_positive(ell=ell, n=n, m=m)
    xs = _vs("X", m)
    rules = _RuleList()
    rules.add([_a("R0", "X")], [_a("R0", "X"), _a("R1", *_vs("Y", m))])
    for i in range(1, n + 1):
        pred = f"R{i}"
        # j = 1 gives the identity twice
        for j in range(1, m + 1):
            swapped = list(xs)
            swapped[0], swapped[j - 1] = xs[j - 1], xs[0]
            rules.add([_a(pred, *xs)], [_a(pred, *swapped)])
            collapsed = [xs[j - 1]] + xs[1:]
            rules.add([_a(pred, *xs)], [_a(pred, *collapsed)])
    for i in range(1, n):
        rules.add([_a(f"R{i}", *xs)], [_a(f"R{i}", *xs), _a(f"R{i + 1}", *_vs("Z", m))])
    facts = [_f("R0", f"c{k}") for k in range(1, ell + 1)]
    logger.debug(f"Generated simple linear lower-bound family l={ell} n={n} m={m}")
    return SourceProgram.of(facts, rules.program())


def gen_linear_lower(ell: int, n: int, m: int) -> SourceProgram:
    """Linear family over predicates of arity m+3 implementing n chained binary counters.

    An R_i atom (b_1..b_m, y, z, u) holds an m-bit counter whose bits are the
    nulls y (zero) and z (one). Every increment is derived twice, so the value
    2^m - 1 is reached by 2^(2^m - 1) atoms per R_i tuple it started from.

    Raises:
        GeneratorError: If a parameter is below 1.
    """
    _require_positive(ell=ell, n=n, m=m)
    rules = _RuleList()
    rules.add([_a("R0", "X")], [_a("R0", "X"), _a("R1", *["Y"] * m, "Y", "Z", "Y")])
    for i in range(1, n + 1):
        pred = f"R{i}"
        for j in range(m):
            prefix = _vs("X", m - j - 1)
            body = _a(pred, *prefix, "Y", *["Z"] * j, "Y", "Z", "U")
            flipped = [*prefix, "Z", *["Y"] * j, "Y", "Z"]
            rules.add([body], [body, _a(pred, *flipped, "V"), _a(pred, *flipped, "W")])
    for i in range(1, n):
        full = _a(f"R{i}", *["X"] * m, "Y", "X", "Z")
        rules.add([full], [full, _a(f"R{i + 1}", *["V"] * m, "V", "W", "V")])
    facts = [_f("R0", f"c{k}") for k in range(1, ell + 1)]
    logger.debug(f"Generated linear lower-bound family l={ell} n={n} m={m}")
    return SourceProgram.of(facts, rules.program())


def gen_guarded_lower(ell: int, n: int, m: int, limit: Optional[int] = None) -> SourceProgram:
    """Guarded family: strata of binary trees with depth and stratum counters.

    Node(x,y,z,o) says y is a child of x, with z and o the nulls or constants
    standing for 0 and 1. A tree's depth counter has 2^m digits addressed by
    m-bit ids (Did, Succ, Depth); a node with a zero digit gets two children.
    The n-bit stratum counter (S_1..S_n) is incremented for every new root.

    Raises:
        GeneratorError: If a parameter is below 1 or n, m exceed the limit
            (Config.GUARDED_PARAM_LIMIT by default).
    """
    _require_positive(ell=ell, n=n, m=m)
    limit = Config.GUARDED_PARAM_LIMIT if limit is None else limit
    if n > limit or m > limit:
        raise GeneratorError(
            f"guarded family grows triple-exponentially; n={n}, m={m} exceed the limit {limit}"
        )

    ws = _vs("W", m)
    vs = _vs("V", m)
    node = _a("Node", "X", "Y", "Z", "O")
    did = _a("Did", "X", "Y", "Z", "O", *ws)
    succ = _a("Succ", "X", "Y", "Z", "O", *ws, *vs)
    top = ["O"] * m

    rules = _RuleList()
    rules.add(
        [_a("Node", "X", "X", "Z", "O")],
        [_a("Root", "X")] + [_a(f"S{i}", "X", "Z") for i in range(1, n + 1)],
    )

    # digit ids
    rules.add([node], [_a("Did", "X", "Y", "Z", "O", *["Z"] * m)])
    for i in range(m):
        before, after = ws[:i], ws[i + 1:]
        rules.add(
            [_a("Did", "X", "Y", "Z", "O", *before, "Z", *after)],
            [_a("Did", "X", "Y", "Z", "O", *before, "O", *after)],
        )
    for i in range(m):
        before, rest = ws[:i], m - i - 1
        rules.add(
            [_a("Did", "X", "Y", "Z", "O", *before, "Z", *["O"] * rest)],
            [
                _a(
                    "Succ", "X", "Y", "Z", "O",
                    *before, "Z", *["O"] * rest,
                    *before, "O", *["Z"] * rest,
                )
            ],
        )
    rules.add([did, _a("Root", "Y")], [_a("Depth", "Y", *ws, "Z")])

    # tree growth
    for i in range(1, n + 1):
        rules.add([node, _a(f"S{i}", "Y", "Z")], [_a("NonMaxStratum", "Y")])
    rules.add([_a("Did", "U", "X", "Z", "O", *ws), _a("Depth", "X", *ws, "Z")], [_a("NonMaxDepth", "X")])
    rules.add(
        [node, _a("NonMaxDepth", "Y")],
        [
            _a("Node", "Y", "C1", "Z", "O"),
            _a("NonRoot", "C1"),
            _a("Node", "Y", "C2", "Z", "O"),
            _a("NonRoot", "C2"),
        ],
    )
    for i in range(1, n + 1):
        for bit in ("Z", "O"):
            rules.add([node, _a("NonRoot", "Y"), _a(f"S{i}", "X", bit)], [_a(f"S{i}", "Y", bit)])

    # depth counter of a child: parent's depth plus one
    rules.add([_a("Did", "X", "Y", "Z", "O", *top), _a("Depth", "Y", *top, "Z")], [_a("DPivot", "Y", *top)])
    rules.add([_a("Did", "X", "Y", "Z", "O", *top), _a("Depth", "Y", *top, "O")], [_a("DChange", "Y", *top)])
    rules.add([succ, _a("DChange", "Y", *vs), _a("Depth", "Y", *ws, "Z")], [_a("DPivot", "Y", *ws)])
    rules.add([succ, _a("DChange", "Y", *vs), _a("Depth", "Y", *ws, "O")], [_a("DChange", "Y", *ws)])
    rules.add([succ, _a("DPivot", "Y", *vs)], [_a("DCopy", "Y", *ws)])
    rules.add([succ, _a("DCopy", "Y", *vs)], [_a("DCopy", "Y", *ws)])
    rules.add([did, _a("NonRoot", "Y"), _a("DChange", "X", *ws)], [_a("Depth", "Y", *ws, "Z")])
    rules.add([did, _a("NonRoot", "Y"), _a("DPivot", "X", *ws)], [_a("Depth", "Y", *ws, "O")])
    for bit in ("Z", "O"):
        rules.add(
            [did, _a("NonRoot", "Y"), _a("DCopy", "X", *ws), _a("Depth", "X", *ws, bit)],
            [_a("Depth", "Y", *ws, bit)],
        )

    # new strata
    rules.add([node, _a("NonMaxStratum", "Y")], [_a("Node", "Y", "R", "Z", "O"), _a("NewRoot", "R")])
    rules.add([_a("NewRoot", "X")], [_a("Root", "X")])
    rules.add([node, _a(f"S{n}", "Y", "Z")], [_a(f"SPivot{n}", "Y")])
    rules.add([node, _a(f"S{n}", "Y", "O")], [_a(f"SChange{n}", "Y")])
    for i in range(2, n + 1):
        lower = i - 1
        rules.add([node, _a(f"SChange{i}", "Y"), _a(f"S{lower}", "Y", "Z")], [_a(f"SPivot{lower}", "Y")])
        rules.add([node, _a(f"SChange{i}", "Y"), _a(f"S{lower}", "Y", "O")], [_a(f"SChange{lower}", "Y")])
        rules.add([node, _a(f"SPivot{i}", "Y")], [_a(f"SCopy{lower}", "Y")])
        rules.add([node, _a(f"SCopy{i}", "Y")], [_a(f"SCopy{lower}", "Y")])
    for i in range(1, n + 1):
        new_root = [node, _a("NewRoot", "Y")]
        rules.add(new_root + [_a(f"SChange{i}", "X")], [_a(f"S{i}", "Y", "Z")])
        rules.add(new_root + [_a(f"SPivot{i}", "X")], [_a(f"S{i}", "Y", "O")])
        for bit in ("Z", "O"):
            rules.add(new_root + [_a(f"SCopy{i}", "X"), _a(f"S{i}", "X", bit)], [_a(f"S{i}", "Y", bit)])

    facts = [_f("Node", f"c{k}", f"c{k}", "0", "1") for k in range(1, ell + 1)]
    program = rules.program()
    logger.debug(f"Generated guarded lower-bound family l={ell} n={n} m={m}: {len(program)} rules")
    return SourceProgram.of(facts, program)


def gen_depth_family(n: int) -> SourceProgram:
    """Facts P(a1,b,b), R(a1,a2), ..., R(a{n-1},an) with R(X,Y), P(X,Z,V) -> exists W: P(Y,W,Z).

    The chase walks the R chain and reaches maxdepth n - 1.

    Raises:
        GeneratorError: If n < 2.
    """
    if n < 2:
        raise GeneratorError(f"depth family needs n >= 2, got {n}")
    facts = [_f("P", "a1", "b", "b")]
    facts.extend(_f("R", f"a{k}", f"a{k + 1}") for k in range(1, n))
    rules = _RuleList()
    rules.add([_a("R", "X", "Y"), _a("P", "X", "Z", "V")], [_a("P", "Y", "W", "Z")])
    return SourceProgram.of(facts, rules.program())
