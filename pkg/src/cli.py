"""
Command-line entry point.

Usage:
    python -m src.cli [--json] [-v] [--config FILE] <command> ...

Exit codes: 0 success (checked, proved, equal), 1 usage or input error,
2 inconclusive (search exhausted, matrices differ, prover did not prove).
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, TextIO

from src.atp import dispatch
from src.axioms import Equation, standard_axioms
from src.coherence import normalize_coherence
from src.config import load_config
from src.khovanov import load_table, tangle_polynomial
from src.loop_braid import (check_relations, concat_reduce, cycle_notation, format_word,
                            parse_word, to_permutations)
from src.presets import PresetError, resolve_equation
from src.prover import ProofTrace, SearchBudget, prove_equal
from src.reporter import (exhausted_to_dict, export_table_csv,
                          polynomial_to_dict, trace_to_dict)
from src.semantics import MODEL_REGISTRY, evaluate, load_model, validate_model
from src.syntax import parse_term
from src.szs import parse_szs
from src.terms import format_object, format_term, typecheck
from src.tptp import emit, encodable_axioms, encode_equation

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2

# Every domain error derives from ValueError
DOMAIN_ERRORS = (ValueError, OSError)


class UsageError(Exception):
    """Raised instead of exiting when arguments do not parse."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class _Output:
    """Collects text or JSON output for one invocation."""

    def __init__(self, stream: TextIO, as_json: bool):
        self.stream = stream
        self.as_json = as_json

    def text(self, line: str = '') -> None:
        if not self.as_json:
            self.stream.write(line + '\n')

    def data(self, payload: Dict) -> None:
        if self.as_json:
            json.dump(payload, self.stream, indent=2)
            self.stream.write('\n')


def _cmd_check(args, out: _Output) -> int:
    term = parse_term(args.term)
    dom, cod = typecheck(term, strict=args.strict)
    out.text(f"{format_object(dom)} -> {format_object(cod)}")
    out.data({
        'term': format_term(term),
        'dom': format_object(dom),
        'cod': format_object(cod),
        'normal_form': format_term(normalize_coherence(term)),
    })
    return EXIT_OK


def _cmd_prove(args, out: _Output) -> int:
    eq = resolve_equation(args.equation)
    search = args.config.search
    budget = SearchBudget(
        max_states=search.max_states if args.budget is None else args.budget,
        size_factor=search.size_factor if args.size_factor is None else args.size_factor)
    result = prove_equal(eq, budget)
    if isinstance(result, ProofTrace):
        if args.trace_out:
            result.write(args.trace_out)
        out.text(result.to_text().rstrip('\n'))
        out.data(trace_to_dict(result))
        return EXIT_OK
    out.text(f"not proved: {result.reason} ({result.states} states, "
             f"{result.pruned} pruned, size cap {result.size_cap})")
    out.data(exhausted_to_dict(result))
    return EXIT_INCONCLUSIVE


def _matrix_rows(matrix) -> List[List[str]]:
    return [[str(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]


def _cmd_eval(args, out: _Output) -> int:
    term = parse_term(args.term)
    model = load_model(args.model)
    value = evaluate(term, model)
    rows = _matrix_rows(value.matrix)
    out.text(f"{format_object(value.dom)} -> {format_object(value.cod)} "
             f"({value.shape[0]}x{value.shape[1]}) in {model.name}")
    for row in rows:
        out.text(' '.join(row))
    out.data({'model': model.name, 'dom': format_object(value.dom),
              'cod': format_object(value.cod), 'matrix': rows})
    return EXIT_OK


def _cmd_oracle_eq(args, out: _Output) -> int:
    eq = resolve_equation(args.equation)
    names = args.model or sorted(MODEL_REGISTRY)
    verdicts = {}
    for name in names:
        model = load_model(name)
        verdicts[model.name] = evaluate(eq.lhs, model) == evaluate(eq.rhs, model)
        out.text(f"{model.name}: {'equal' if verdicts[model.name] else 'different'}")
    equal = all(verdicts.values())
    out.data({'equation': str(eq), 'equal': equal, 'models': verdicts})
    return EXIT_OK if equal else EXIT_INCONCLUSIVE


def _selected_axioms(eq: Equation, names: List[str], strict_tptp: bool):
    if not names:
        return []
    rules = standard_axioms()
    if names == ['all']:
        return encodable_axioms(eq, rules, strict_tptp)
    chosen = [rule for rule in rules
              if any(rule.name == n or rule.name.startswith(n + '.') for n in names)]
    if not chosen:
        raise PresetError(f"no rules match {', '.join(names)}")
    return chosen


def _problem(args):
    eq = resolve_equation(args.equation)
    axioms = _selected_axioms(eq, args.axiom, args.strict_tptp)
    header = [f"{eq.name or 'equation'}: {eq}"]
    return eq, encode_equation(eq, axioms, strict_tptp=args.strict_tptp,
                               conjecture_name=args.conjecture_name, header=header)


def _cmd_emit_tptp(args, out: _Output) -> int:
    _, problem = _problem(args)
    text = emit(problem)
    if args.output:
        Path(args.output).parent.mkdir(parents=True, exist_ok=True)
        Path(args.output).write_text(text)
        out.text(f"wrote {len(problem.formulas)} formulas to {args.output}")
    else:
        out.text(text.rstrip('\n'))
    out.data({'formulas': len(problem.formulas), 'output': args.output, 'problem': text})
    return EXIT_OK


def _szs_lines(results) -> List[str]:
    lines = []
    for r in results:
        times = '' if r.cpu is None else f"\tcpu={r.cpu}\twc={r.wallclock}"
        lines.append(f"{r.problem}\t{r.prover or '-'}\t{r.status.value}{times}")
    return lines


def _cmd_parse_szs(args, out: _Output) -> int:
    text = sys.stdin.read() if args.file == '-' else Path(args.file).read_text()
    results = parse_szs(text)
    for line in _szs_lines(results):
        out.text(line)
    out.data({'results': [r.to_dict() for r in results]})
    return EXIT_OK


def _cmd_dispatch(args, out: _Output) -> int:
    eq, problem = _problem(args)
    tag = (eq.name or 'problem').replace('@', '_').replace(',', '_')
    result = dispatch(problem, args.config.atp, tag=tag, workdir=args.workdir)
    for line in _szs_lines([result]):
        out.text(line)
    out.data(result.to_dict())
    return EXIT_OK if result.status.is_proved else EXIT_INCONCLUSIVE


def _cmd_braid(args, out: _Output) -> int:
    word = parse_word(args.word, args.n)
    if args.concat is not None:
        word = concat_reduce(word, parse_word(args.concat, word.n))
    reduced = word.reduced()
    perm = to_permutations(reduced)
    out.text(format_word(reduced))
    out.text(cycle_notation(perm))
    payload = {'n': reduced.n, 'reduced': format_word(reduced),
               'permutation': cycle_notation(perm), 'image': list(perm.array_form)}
    if args.relations:
        checks = check_relations(reduced.n)
        for check in checks:
            verdict = check.note if check.holds is None else ('holds' if check.holds else 'FAILS')
            out.text(f"{check.name}: {verdict}")
        payload['relations'] = [
            {'name': c.name, 'lhs': format_word(c.lhs), 'rhs': format_word(c.rhs),
             'holds': c.holds, 'note': c.note} for c in checks]
    out.data(payload)
    return EXIT_OK


def _cmd_khovanov(args, out: _Output) -> int:
    table = load_table(args.table)
    poly = tangle_polynomial(table)
    if args.csv:
        export_table_csv(table, args.csv)
    out.text(str(poly))
    out.text(' '.join(f"({t},{a},{c})" for t, a, c in poly.triples()))
    payload = {'table': table.name}
    payload.update(polynomial_to_dict(poly))
    out.data(payload)
    return EXIT_OK


def _cmd_validate(args, out: _Output) -> int:
    model = load_model(args.model)
    report = validate_model(model)
    for check in report.checks:
        status = 'ok' if check.passed else f"FAILED {check.detail}"
        out.text(f"{check.atom} {check.law}: {status}")
    out.data(report.to_dict())
    return EXIT_OK if report.passed else EXIT_INCONCLUSIVE


def _add_problem_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('equation', help="'lhs = rhs' or a preset such as frobenius@A")
    parser.add_argument('--axiom', action='append', default=[], metavar='RULE',
                        help="include a rule (or rule family prefix) as an axiom; 'all' for every encodable rule")
    parser.add_argument('--strict-tptp', action='store_true',
                        help="declare plain type names instead of the $-prefixed ones")
    parser.add_argument('--conjecture-name', default='conje')


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog='cobordism', description="Open-closed cobordism engine")
    parser.add_argument('--json', action='store_true', help="machine-readable output")
    parser.add_argument('-v', '--verbose', action='count', default=0)
    parser.add_argument('--config', default=None, help="engine configuration JSON")
    commands = parser.add_subparsers(dest='command', parser_class=_ArgumentParser)
    commands.required = True

    check = commands.add_parser('check', help="typecheck a term")
    check.add_argument('term')
    check.add_argument('--strict', action='store_true', help="compare objects up to coherence")
    check.set_defaults(handler=_cmd_check)

    prove = commands.add_parser('prove', help="search for a rewrite proof")
    prove.add_argument('equation')
    prove.add_argument('--budget', type=int, default=None, help="maximum states")
    prove.add_argument('--size-factor', type=int, default=None)
    prove.add_argument('--trace-out', default=None, help="write the trace to this file")
    prove.set_defaults(handler=_cmd_prove)

    ev = commands.add_parser('eval', help="evaluate a term in a model")
    ev.add_argument('term')
    ev.add_argument('--model', default='khovanov', help="model name or JSON file")
    ev.set_defaults(handler=_cmd_eval)

    oracle = commands.add_parser('oracle-eq', help="compare both sides in models")
    oracle.add_argument('equation')
    oracle.add_argument('--model', action='append', default=None,
                        help="model name or file (repeatable; default all built-ins)")
    oracle.set_defaults(handler=_cmd_oracle_eq)

    emit_cmd = commands.add_parser('emit-tptp', help="write a THF problem")
    _add_problem_options(emit_cmd)
    emit_cmd.add_argument('-o', '--output', default=None)
    emit_cmd.set_defaults(handler=_cmd_emit_tptp)

    szs = commands.add_parser('parse-szs', help="read prover result lines")
    szs.add_argument('file', help="output file, or - for stdin")
    szs.set_defaults(handler=_cmd_parse_szs)

    disp = commands.add_parser('dispatch', help="emit, run the configured prover and parse its verdict")
    _add_problem_options(disp)
    disp.add_argument('--workdir', default=None)
    disp.set_defaults(handler=_cmd_dispatch)

    braid = commands.add_parser('braid', help="reduce a loop braid word")
    braid.add_argument('word', help="e.g. 's1 s2^-1 r1'")
    braid.add_argument('-n', type=int, default=None, help="number of strands")
    braid.add_argument('--concat', default=None, help="word to append before reducing")
    braid.add_argument('--relations', action='store_true', help="check the defining relations")
    braid.set_defaults(handler=_cmd_braid)

    khovanov = commands.add_parser('khovanov', help="tangle polynomial of a rank table")
    khovanov.add_argument('--table', default='bar-natan', help="bar-natan, khovanov or a table file")
    khovanov.add_argument('--csv', default=None, help="also export the table to CSV")
    khovanov.set_defaults(handler=_cmd_khovanov)

    validate = commands.add_parser('validate', help="check the Frobenius laws of a model")
    validate.add_argument('model')
    validate.set_defaults(handler=_cmd_validate)
    return parser


def _write_error(stream: TextIO, exc: Exception) -> None:
    json.dump({'error': str(exc), 'type': type(exc).__name__}, stream)
    stream.write('\n')


def run(argv: List[str], stdout: Optional[TextIO] = None,
        stderr: Optional[TextIO] = None) -> int:
    """
    Run one command.

    Args:
        argv: Arguments without the program name
        stdout: Output stream (sys.stdout by default)
        stderr: Diagnostics stream (sys.stderr by default)

    Returns:
        Exit code
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        if '--json' in argv:
            _write_error(stdout, exc)
        return EXIT_ERROR

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=stderr, format='%(levelname)s %(name)s: %(message)s')
    logging.getLogger('src').setLevel(level)

    handler: Callable = args.handler
    try:
        args.config = load_config(args.config)
        return handler(args, _Output(stdout, args.json))
    except DOMAIN_ERRORS as exc:
        stderr.write(f"error: {exc}\n")
        if args.json:
            _write_error(stdout, exc)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
