"""Seeded random programs for property tests and validation runs."""

import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Optional

from ..core.classify import ProgramClass
from ..core.model import Atom, Program, TGD
from ..core.terms import Constant, Variable
from ..errors import GeneratorError
from ..textio.parser import SourceProgram

logger = logging.getLogger(__name__)


@dataclass
class RandomParams:
    """Shape of a random instance.

    acyclic: True orients every rule from lower to strictly higher predicates,
    False leaves rules unconstrained, None decides per seed with a coin flip.
    """

    program_class: ProgramClass = ProgramClass.SIMPLE_LINEAR
    preds: int = 3
    max_arity: int = 3
    tgds: int = 4
    facts: int = 6
    constants: int = 4
    existential_rate: float = 0.3
    acyclic: Optional[bool] = None

    def validate(self) -> None:
        if self.program_class is ProgramClass.GENERAL:
            raise GeneratorError("random programs are simple linear, linear or guarded")
        for name in ("preds", "max_arity", "tgds", "constants"):
            if getattr(self, name) < 1:
                raise GeneratorError(f"{name} must be at least 1")
        if self.facts < 0:
            raise GeneratorError("facts must not be negative")
        if self.acyclic and self.preds < 2:
            raise GeneratorError("acyclic programs need at least two predicates")


class _RandomProgram:
    def __init__(self, params: RandomParams, rng: random.Random, acyclic: bool):
        self.params = params
        self.rng = rng
        self.acyclic = acyclic
        self.names = [f"P{k}" for k in range(params.preds)]
        self.arities: Dict[str, int] = {name: rng.randint(1, params.max_arity) for name in self.names}

    def _body_variables(self, arity: int) -> List[Variable]:
        if self.params.program_class is ProgramClass.SIMPLE_LINEAR:
            return [Variable(f"X{k}") for k in range(1, arity + 1)]
        if self.params.program_class is ProgramClass.LINEAR and arity > 1:
            pool_size = self.rng.randint(1, arity - 1)
        else:
            pool_size = self.rng.randint(1, arity)
        pool = [Variable(f"X{k}") for k in range(1, pool_size + 1)]
        return [self.rng.choice(pool) for _ in range(arity)]

    def tgd(self, tgd_id: str) -> TGD:
        rng = self.rng
        body_pool = self.names[:-1] if self.acyclic else self.names
        guard_pred = rng.choice(body_pool)
        guard = Atom(guard_pred, tuple(self._body_variables(self.arities[guard_pred])))
        body = [guard]
        guard_vars = list(guard.variables())
        if self.params.program_class is ProgramClass.GUARDED:
            for _ in range(rng.randint(0, 2)):
                pred = rng.choice(body_pool)
                args = tuple(rng.choice(guard_vars) for _ in range(self.arities[pred]))
                body.append(Atom(pred, args))

        top = max(self.names.index(atom.predicate) for atom in body)
        head_pool = self.names[top + 1:] if self.acyclic else self.names
        existentials = [Variable("Z1"), Variable("Z2")]
        head = []
        for _ in range(rng.randint(1, 2)):
            pred = rng.choice(head_pool)
            args = []
            for _ in range(self.arities[pred]):
                if rng.random() < self.params.existential_rate:
                    args.append(rng.choice(existentials))
                else:
                    args.append(rng.choice(guard_vars))
            head.append(Atom(pred, tuple(args)))
        return TGD(tgd_id, tuple(body), tuple(head))

    def facts(self) -> List[Atom]:
        constants = [Constant(f"c{k}") for k in range(1, self.params.constants + 1)]
        facts = []
        for _ in range(self.params.facts):
            pred = self.rng.choice(self.names)
            facts.append(Atom(pred, tuple(self.rng.choice(constants) for _ in range(self.arities[pred]))))
        return facts


def gen_random(params: RandomParams, seed: int) -> SourceProgram:
    """A reproducible random instance of the requested class.

    In acyclic mode head predicates come strictly after every body predicate,
    so the dependency graph has no cycle at all.

    Raises:
        GeneratorError: For the general class or nonsensical sizes.
    """
    params.validate()
    rng = random.Random(seed)
    acyclic = params.acyclic if params.acyclic is not None else rng.random() < 0.5
    if params.preds < 2:
        acyclic = False
    builder = _RandomProgram(params, rng, acyclic)
    program = Program(builder.tgd(f"r{k}") for k in range(1, params.tgds + 1))
    facts = builder.facts()
    logger.debug(f"Random {params.program_class.label} instance for seed {seed} (acyclic={acyclic})")
    return SourceProgram.of(facts, program)


def is_acyclic_instance(params: RandomParams, seed: int) -> bool:
    """Whether gen_random(params, seed) was built in acyclic mode."""
    if params.acyclic is not None:
        return params.acyclic and params.preds >= 2
    return params.preds >= 2 and random.Random(seed).random() < 0.5
