"""Machine-readable (JSON) results for --json output."""

import json
from typing import Any, Dict, Optional

from .. import __version__
from ..chase.engine import ChaseOutcome
from ..core.classify import ProgramClass, classify
from ..core.model import Program
from ..termination.bounds import bounds
from .render import NullNamer, render_atom


def _dumps(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False)


def verdict_document(verdict) -> Dict[str, Any]:
    """{version, verdict, class, method, stats, witness, bounds, notes} for a termination Verdict."""
    return {
        "version": __version__,
        "verdict": verdict.answer.value,
        "class": verdict.program_class.label,
        "method": verdict.method.value,
        "stats": verdict.stats,
        "witness": verdict.witness.as_dict() if verdict.witness else None,
        "bounds": verdict.bounds.as_dict() if verdict.bounds else None,
        "notes": list(verdict.notes),
    }


def verdict_json(verdict) -> str:
    return _dumps(verdict_document(verdict))


def chase_document(outcome: ChaseOutcome, program: Program, structured: bool = False) -> Dict[str, Any]:
    """The decide keys plus {status, cap, instance}. A finished chase reads as Terminates, a capped one as Unknown."""

    program_class = classify(program)
    limits = None
    if program_class is not ProgramClass.GENERAL:
        limits = bounds(program, program_class).for_database(len(outcome.database)).as_dict()
    namer = NullNamer(structured=structured)
    return {
        "version": __version__,
        "verdict": "Terminates" if outcome.finished else "Unknown",
        "class": program_class.label,
        "status": outcome.status.value,
        "stats": outcome.stats(),
        "witness": None,
        "bounds": limits,
        "cap": outcome.cap_report() if outcome.cap_fired else None,
        "instance": [render_atom(atom, namer) for atom in outcome.atoms],
    }


def chase_json(outcome: ChaseOutcome, program: Program, structured: bool = False) -> str:
    return _dumps(chase_document(outcome, program, structured))


def forest_json(outcome: ChaseOutcome, namer: Optional[NullNamer] = None) -> str:
    """The chase forest as a list of {parent, child} edges in production order."""
    namer = namer or NullNamer()
    edges = [
        {"parent": render_atom(parent, namer), "child": render_atom(child, namer)}
        for parent, child in outcome.forest_edges()
    ]
    return _dumps({"version": __version__, "edges": edges})
