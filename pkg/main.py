#!/usr/bin/env python3
"""
chasegate - semi-oblivious chase and non-uniform termination

Usage:
    chasegate parse FILE                    # Parse, classify and re-render a program
    chasegate chase FILE [--json]           # Run the chase
    chasegate decide FILE [--method bound]  # Is the chase finite?
    chasegate simplify FILE                 # Simplify a linear program
    chasegate linearize FILE                # Linearize a guarded program
    chasegate ucq FILE                      # Database-independent termination query
    chasegate gen sl-lb --l 2 --n 2 --m 2   # Generate an instance family
    chasegate gen tm SPECFILE               # Encode a Turing machine
    chasegate validate --kind sl --count 200  # Store a seeded corpus run
    chasegate status                        # Summarize stored runs

FILE may be '-' for standard input.

Exit codes:
    0   Terminates (chase: Finished)
    1   Diverges
    2   Unknown (chase: CapExceeded)
    64  usage error
    65  data error (bad program, wrong class, refused bound method, I/O)
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from src.config import Config
from src.errors import ChasegateError

EXIT_OK = 0
EXIT_UNKNOWN = 2
EXIT_USAGE = 64
EXIT_DATA = 65


class UsageError(Exception):
    """Raised for flag combinations argparse cannot reject on its own."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"Error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _emit(text: str, output: Optional[str]) -> None:
    """Write text to output, or stdout when output is None or '-'."""
    if output and output != "-":
        with open(output, "w", encoding="utf-8") as f:
            f.write(text)
        print(f"Wrote {output}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _caps(args):
    from src.chase.engine import ChaseCaps

    max_atoms = args.max_atoms if args.max_atoms is not None else Config.MAX_ATOMS
    max_steps = args.max_steps if args.max_steps is not None else Config.MAX_STEPS
    return ChaseCaps.of(max_atoms, max_steps)


def _load(path: str):
    from src.textio.parser import read_program

    return read_program(path)


def cmd_parse(args) -> int:
    """Parse a program and print it normalized, with its class on stderr."""
    from src.core.classify import classify
    from src.textio.render import render_program

    source = _load(args.file)
    print(f"% {len(source.facts)} facts, {len(source.program)} rules, class {classify(source.program).label}",
          file=sys.stderr)
    _emit(render_program(source), args.output)
    return EXIT_OK


def cmd_chase(args) -> int:
    """Run the semi-oblivious chase."""
    from src.chase.engine import Strategy, run_chase
    from src.textio.render import render_instance
    from src.textio.results import chase_json, forest_json

    if args.seed is not None and args.strategy != "random":
        raise UsageError("--seed only applies to --strategy random")
    source = _load(args.file)
    outcome = run_chase(
        source.database,
        source.program,
        _caps(args),
        strategy=Strategy(args.strategy),
        seed=args.seed,
    )
    if args.json:
        _emit(chase_json(outcome, source.program, structured=args.structured) + "\n", args.output)
    else:
        stats = outcome.stats()
        text = render_instance(outcome.atoms, structured=args.structured)
        text += (
            f"% {outcome.status.value}: atoms {stats['atoms']}, maxdepth {stats['maxdepth']}, "
            f"steps {stats['steps']}\n"
        )
        _emit(text, args.output)
    if args.emit_forest:
        with open(args.emit_forest, "w", encoding="utf-8") as f:
            f.write(forest_json(outcome) + "\n")
    if not outcome.finished:
        print(f"Chase stopped at the {outcome.cap_fired} cap", file=sys.stderr)
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_decide(args) -> int:
    """Decide whether the chase of the program's facts and rules is finite."""
    from src.core.classify import ProgramClass
    from src.termination.decide import Method, decide
    from src.textio.results import verdict_json

    source = _load(args.file)
    requested = None if args.program_class == "auto" else ProgramClass.parse(args.program_class)
    verdict = decide(
        source.database,
        source.program,
        program_class=requested,
        method=Method(args.method),
        caps=_caps(args),
        ceiling=args.ceiling,
    )
    if args.json:
        print(verdict_json(verdict))
        return verdict.exit_code

    print(verdict.answer.value)
    print(f"class: {verdict.program_class.label}, method: {verdict.method.value}")
    if verdict.witness is not None:
        print(f"witness: {verdict.witness}")
    if verdict.bounds is not None:
        print(f"bounds: d = {verdict.bounds.d}, f = {verdict.bounds.f}, |D| * f = {verdict.bounds.size}")
    if verdict.stats is not None:
        print(f"chase: {verdict.stats}")
    for note in verdict.notes:
        print(f"note: {note}")
    return verdict.exit_code


def cmd_simplify(args) -> int:
    """Print the simplified facts and rules."""
    from src.simplification.simplify import simplify_program
    from src.textio.parser import SourceProgram
    from src.textio.render import render_program

    source = _load(args.file)
    simple_db, simple_rules = simplify_program(source.database, source.program, args.arity_cap)
    facts = sorted(simple_db, key=str)
    _emit(render_program(SourceProgram.of(facts, simple_rules)), args.output)
    return EXIT_OK


def _types_path(types: Optional[str], output: Optional[str]) -> Optional[str]:
    """Where the linearization type table goes: --types, else beside -o, else nowhere."""
    if types:
        return types
    if output and output != "-":
        return str(Path(output).with_suffix(".types.json"))
    return None


def cmd_linearize(args) -> int:
    """Print the linearized facts and rules and write the type table as JSON."""
    from src.linearization.linearize import linearize_program
    from src.textio.parser import SourceProgram
    from src.textio.render import render_program

    source = _load(args.file)
    lin = linearize_program(
        source.database,
        source.program,
        _caps(args),
        full_type_enum=args.full_type_enum,
        budget=args.budget,
    )
    facts = sorted(lin.database, key=str)
    _emit(render_program(SourceProgram.of(facts, lin.program)), args.output)
    types_path = _types_path(args.types, args.output)
    if types_path:
        with open(types_path, "w", encoding="utf-8") as f:
            json.dump(lin.sidecar(), f, indent=2, ensure_ascii=False)
            f.write("\n")
        print(f"Wrote {types_path}", file=sys.stderr)
    print(f"% {len(lin.types)} types, {len(lin.program)} linear rules", file=sys.stderr)
    return EXIT_OK


def cmd_ucq(args) -> int:
    """Print the UCQ satisfied exactly by databases with a non-terminating chase."""
    from src.analysis.ucq import UcqVariant, build_ucq
    from src.core.classify import ProgramClass, classify

    source = _load(args.file)
    program_class = classify(source.program)
    variant = UcqVariant.SL if program_class is ProgramClass.SIMPLE_LINEAR else UcqVariant.LINEAR_SIMPLIFIED
    _emit(build_ucq(source.program, variant).render(), args.output)
    return EXIT_OK


def cmd_gen(args) -> int:
    """Generate an instance family, a TM encoding or a random program."""
    from src import generators
    from src.core.classify import ProgramClass
    from src.textio.render import render_program

    family = args.family
    if family == "sl-lb":
        source = generators.gen_sl_lower(args.l, args.n, args.m)
    elif family == "lin-lb":
        source = generators.gen_linear_lower(args.l, args.n, args.m)
    elif family == "g-lb":
        source = generators.gen_guarded_lower(args.l, args.n, args.m, limit=args.limit)
    elif family == "depth":
        source = generators.gen_depth_family(args.n)
    elif family == "tm":
        source = generators.gen_tm(generators.read_tm_spec(args.spec))
    else:
        params = generators.RandomParams(
            program_class=ProgramClass.parse(args.program_class),
            preds=args.preds,
            max_arity=args.max_arity,
            tgds=args.tgds,
            facts=args.facts,
            acyclic=args.acyclic,
        )
        source = generators.gen_random(params, args.seed)
    _emit(render_program(source), args.output)
    return EXIT_OK


def cmd_validate(args) -> int:
    """Run and store a seeded validation corpus."""
    from src.validation.database import ValidationDatabase
    from src.validation.runner import ValidationRunner

    runner = ValidationRunner(ValidationDatabase(args.db), _caps(args))
    print(f"Validating {args.count} {args.kind} instances from seed {args.seed}...")
    summary = runner.run(args.kind, args.count, args.seed)
    print(
        f"Run {summary['run_id']}: {summary['total']} instances, {summary['agreements']} agree, "
        f"{summary['refusals']} undecided, {summary['disagreements']} disagree"
    )
    return EXIT_OK if summary["disagreements"] == 0 else EXIT_DATA


def cmd_status(args) -> int:
    """Show stored validation runs."""
    from src.validation.analytics import ValidationAnalytics
    from src.validation.database import ValidationDatabase

    summary = ValidationAnalytics(ValidationDatabase(args.db)).summary()
    print("=== chasegate validation status ===\n")
    if not summary["kinds"]:
        print("  no finished runs")
    for kind, entry in summary["kinds"].items():
        print(f"--- {kind} ---")
        print(f"  runs: {entry['runs']}, instances: {entry['total']}")
        print(f"  agree: {entry['agreements']}, undecided: {entry['refusals']}, disagree: {entry['disagreements']}")
        if entry["agreement_rate"] is not None:
            print(f"  agreement rate: {entry['agreement_rate']:.2%}")
        if entry["max_chase_atoms"] is not None:
            print(f"  chase atoms: median {entry['median_chase_atoms']}, max {entry['max_chase_atoms']}")
    latest = summary["latest"]
    if latest:
        print(f"\nlatest run: {latest['id']} ({latest['kind']}, started {latest['started_at']})")
    return EXIT_OK


def _add_caps(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-atoms", type=int, default=None, help="Atom cap (default CHASEGATE_MAX_ATOMS)")
    parser.add_argument("--max-steps", type=int, default=None, help="Step cap (default 10 x max atoms)")


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-o", "--output", default=None, help="Write to PATH instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="chasegate",
        description="Semi-oblivious chase and non-uniform termination for (guarded) TGDs.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Log progress at INFO level")
    subparsers = parser.add_subparsers(dest="command", help="Available commands", parser_class=_ArgumentParser)

    parse_parser = subparsers.add_parser("parse", help="Parse, classify and re-render a program")
    parse_parser.add_argument("file")
    _add_output(parse_parser)

    chase_parser = subparsers.add_parser("chase", help="Run the semi-oblivious chase")
    chase_parser.add_argument("file")
    chase_parser.add_argument("--json", action="store_true", help="Machine-readable result")
    chase_parser.add_argument("--strategy", choices=["fifo", "lifo", "random"], default="fifo")
    chase_parser.add_argument("--seed", type=int, default=None, help="Seed for --strategy random")
    chase_parser.add_argument("--structured", action="store_true", help="Render nulls by their derivation")
    chase_parser.add_argument("--emit-forest", metavar="PATH", default=None, help="Write the chase forest as JSON")
    _add_caps(chase_parser)
    _add_output(chase_parser)

    decide_parser = subparsers.add_parser("decide", help="Decide chase termination")
    decide_parser.add_argument("file")
    decide_parser.add_argument(
        "--class", dest="program_class", choices=["auto", "sl", "l", "g", "general"], default="auto"
    )
    decide_parser.add_argument("--method", choices=["characterization", "bound"], default="characterization")
    decide_parser.add_argument("--ceiling", type=int, default=None, help="Atom ceiling for the bound method")
    decide_parser.add_argument("--json", action="store_true", help="Machine-readable verdict")
    _add_caps(decide_parser)

    simplify_parser = subparsers.add_parser("simplify", help="Simplify a linear program")
    simplify_parser.add_argument("file")
    simplify_parser.add_argument("--arity-cap", type=int, default=None)
    _add_output(simplify_parser)

    linearize_parser = subparsers.add_parser("linearize", help="Linearize a guarded program")
    linearize_parser.add_argument("file")
    linearize_parser.add_argument("--full-type-enum", action="store_true", help="Use every type, not only reachable ones")
    linearize_parser.add_argument("--budget", type=int, default=None, help="Maximum number of types")
    linearize_parser.add_argument("--types", metavar="PATH", default=None, help="Type table path (default: next to -o as .types.json)")
    _add_caps(linearize_parser)
    _add_output(linearize_parser)

    ucq_parser = subparsers.add_parser("ucq", help="Print the termination UCQ of a (simple) linear program")
    ucq_parser.add_argument("file")
    _add_output(ucq_parser)

    gen_parser = subparsers.add_parser("gen", help="Generate instances")
    families = gen_parser.add_subparsers(dest="family", required=True, parser_class=_ArgumentParser)
    for name, help_text in (
        ("sl-lb", "Simple linear lower-bound family"),
        ("lin-lb", "Linear lower-bound family"),
        ("g-lb", "Guarded lower-bound family"),
    ):
        family = families.add_parser(name, help=help_text)
        family.add_argument("--l", type=int, default=1, help="Number of database atoms")
        family.add_argument("--n", type=int, default=1)
        family.add_argument("--m", type=int, default=1)
        _add_output(family)
        if name == "g-lb":
            family.add_argument("--limit", type=int, default=None, help="Override the n, m guard")
    depth = families.add_parser("depth", help="Depth family over an n-constant chain")
    depth.add_argument("--n", type=int, required=True)
    _add_output(depth)
    tm = families.add_parser("tm", help="Turing machine encoding")
    tm.add_argument("spec", help="TM spec file (docs/TM_SPEC.md)")
    _add_output(tm)
    random_parser = families.add_parser("random", help="Seeded random program")
    random_parser.add_argument("--seed", type=int, required=True)
    random_parser.add_argument("--class", dest="program_class", choices=["sl", "l", "g"], default="sl")
    random_parser.add_argument("--preds", type=int, default=3)
    random_parser.add_argument("--max-arity", type=int, default=3)
    random_parser.add_argument("--tgds", type=int, default=4)
    random_parser.add_argument("--facts", type=int, default=6)
    orientation = random_parser.add_mutually_exclusive_group()
    orientation.add_argument("--acyclic", dest="acyclic", action="store_true", default=None)
    orientation.add_argument("--cyclic", dest="acyclic", action="store_false")
    _add_output(random_parser)

    validate_parser = subparsers.add_parser("validate", help="Run and store a seeded validation corpus")
    validate_parser.add_argument("--kind", choices=["sl", "l", "simplify", "linearize"], required=True)
    validate_parser.add_argument("--count", type=int, default=100)
    validate_parser.add_argument("--seed", type=int, default=0, help="First seed")
    validate_parser.add_argument("--db", default=None, help="Results database (default CHASEGATE_RESULTS_DB)")
    _add_caps(validate_parser)

    status_parser = subparsers.add_parser("status", help="Summarize stored validation runs")
    status_parser.add_argument("--db", default=None, help="Results database (default CHASEGATE_RESULTS_DB)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.INFO if args.verbose else getattr(logging, Config.LOG_LEVEL, logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    commands: Dict[str, Callable] = {
        "parse": cmd_parse,
        "chase": cmd_chase,
        "decide": cmd_decide,
        "simplify": cmd_simplify,
        "linearize": cmd_linearize,
        "ucq": cmd_ucq,
        "gen": cmd_gen,
        "validate": cmd_validate,
        "status": cmd_status,
    }

    try:
        Config.validate_caps()
        return commands[args.command](args)
    except UsageError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ChasegateError, ValueError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
