import argparse
from collections.abc import Callable, Sequence
import os
from pathlib import Path
import sys
import traceback
from typing import NamedTuple, TypeVar

import pandas as pd

from .document.export import (
    candidate_json,
    document_of,
    emit_document,
    emit_dot,
    encode_report,
    family_json,
    map_json,
    quotient_json,
    refutation_json,
    witness_json,
)
from .document.ingest import (
    load_closure,
    load_family,
    load_lattice,
    load_map,
    load_poset,
    read_document,
)
from .document.type import JsonValue, ReportType
from .error import PreconditionViolated, UpcutError
from .fixture import run_fixtures
from .fuzzy import (
    approx_quotient,
    cut_family,
    FuzzyMap,
    is_fuzzy_up_set,
    powerset_witness,
    Refutation,
    representable,
    restrict_cut_family,
)
from .log import console_logger, Logger, silent_logger
from .oracle import realizing_map
from .order.closure import (
    ClosureOperator,
    ClosureViolation,
    enumerate_closure_operators,
    order_of,
    quotient_by_closure,
)
from .order.lattice import FiniteLattice, lattice_from_family
from .order.poset import enumerate_up_sets, is_up_set, IsoWitness, Poset, SetFamily
from .order.type import DEFAULT_CAP, Reading
from .quotient import (
    birkhoff_embedding_driver,
    embed_upset_quotient,
    interval_isomorphism,
    Mode,
    powerset_quotient_is_complete,
    quotient_is_complete_lattice,
)
from .terminal import format_table


T = TypeVar('T')


class Outcome(NamedTuple):
    report: ReportType
    tables: tuple[tuple[str, pd.DataFrame], ...] = ()
    text: None | str = None


def _report(
    command: str, holds: bool, summary: str, **details: JsonValue
) -> ReportType:
    return {'command': command, 'holds': holds, 'summary': summary, 'details': details}


def _need(value: None | T, flag: str) -> T:
    if value is None:
        raise UpcutError(f'{flag} is required')
    return value


# ======================================================================================
# Loading Inputs


def _space(options: argparse.Namespace) -> None | Poset:
    return load_poset(options.space) if options.space else None


def _scale(options: argparse.Namespace) -> None | FiniteLattice:
    return load_lattice(options.scale) if options.scale else None


def _closure(options: argparse.Namespace, space: Poset) -> ClosureOperator:
    result = load_closure(_need(options.closure, '--closure'), space)
    if isinstance(result, ClosureViolation):
        raise PreconditionViolated(f'--closure is not a closure operator: {result}')
    return result


def _referenced(options: argparse.Namespace, flag: str) -> None | Path:
    """The file holding the space or scale, given directly or named by the map."""
    given = getattr(options, flag)
    if given:
        return Path(given)
    if options.map:
        document = read_document(options.map)
        name = document.space if flag == 'space' else document.scale
        if name is not None:
            return Path(options.map).parent / name
    return None


def _write_witness(options: argparse.Namespace, m: FuzzyMap) -> None:
    out = Path(options.witness_out)

    def relative(path: None | Path) -> None | str:
        return None if path is None else os.path.relpath(path, out.parent)

    document = document_of(
        m,
        space=relative(_referenced(options, 'space')),
        scale=relative(_referenced(options, 'scale')),
    )
    tmp = out.with_suffix('.tmp')
    tmp.write_text(emit_document(document), encoding='utf8')
    tmp.replace(out)


def _reverify(m: FuzzyMap, family: SetFamily) -> None:
    if not is_fuzzy_up_set(m, cross_check=True).holds:
        raise AssertionError(f'witness {m!r} is not an L-fuzzy up-set')
    if cut_family(m).family != family:
        raise AssertionError(f'witness {m!r} does not have {family.label()} as cuts')


def _cross_check(
    options: argparse.Namespace,
    result: FuzzyMap | Refutation,
    family: SetFamily,
    scale: FiniteLattice,
) -> None | bool:
    if not options.oracle:
        return None
    found = realizing_map(family, family.base, scale, options.cap)
    if (found is None) != isinstance(result, Refutation):
        raise AssertionError(f'oracle disagrees on {family.label()}')
    return found is not None


def _map_table(assign: dict[str, str], value: str = 'value') -> pd.DataFrame:
    return pd.DataFrame({'element': list(assign), value: list(assign.values())})


def _moves(closure: ClosureOperator) -> str:
    moved = [f'{x}↦{y}' for x, y in closure.image.items() if x != y]
    return ' '.join(moved) or 'identity'


def _witness_table(value: None | IsoWitness) -> pd.DataFrame:
    mapping = dict(value.mapping) if value is not None else {}
    return pd.DataFrame({'source': list(mapping), 'target': list(mapping.values())})


# ======================================================================================
# Commands


def _validate(options: argparse.Namespace, logger: Logger) -> Outcome:
    rows: list[tuple[str, str, bool, str]] = []
    space = _space(options)
    scale = _scale(options)
    if space is not None:
        rows.append(('space', 'partial order', True, f'{len(space)} elements'))
    if scale is not None:
        rows.append(('scale', 'lattice', True, f'{len(scale)} elements'))

    if options.family:
        family = load_family(options.family, space)
        missing = family.intersection_witness()
        rows.append(('family', 'contains space', family.full in family, ''))
        rows.append((
            'family',
            'closed under intersection',
            missing is None,
            '' if missing is None else ' ∩ '.join(family.label(m) for m in missing),
        ))
        outside = [m for m in family.canonical() if not is_up_set(family.base, m)]
        rows.append((
            'family',
            'members are up-sets',
            not outside,
            ' '.join(family.label(m) for m in outside),
        ))

    if options.map:
        m = load_map(options.map, space, scale)
        check = is_fuzzy_up_set(m, cross_check=True)
        rows.append((
            'map',
            'L-fuzzy up-set',
            check.holds,
            ''
            if check.counterexample is None
            else f'cut {m.space.label(check.counterexample)} is not an up-set',
        ))

    if options.closure:
        result = load_closure(options.closure, space)
        rows.append((
            'closure',
            'closure axioms',
            isinstance(result, ClosureOperator),
            str(result) if isinstance(result, ClosureViolation) else '',
        ))

    if not rows:
        raise UpcutError('nothing to validate')

    columns = ('object', 'check', 'passed', 'detail')
    holds = all(passed for _, _, passed, _ in rows)
    failed = sum(1 for _, _, passed, _ in rows if not passed)
    return Outcome(
        _report(
            'validate',
            holds,
            'all inputs are valid' if holds else f'{failed} check(s) failed',
            checks=[dict(zip(columns, row)) for row in rows],
        ),
        (('Validation', pd.DataFrame(rows, columns=list(columns))),),
    )


def _upsets(options: argparse.Namespace, logger: Logger) -> Outcome:
    space = _need(_space(options), '--space')
    up_sets = enumerate_up_sets(space, options.cap)
    members = up_sets.canonical()
    table = pd.DataFrame({
        'up_set': [up_sets.label(m) for m in members],
        'size': [len(m) for m in members],
    })
    return Outcome(
        _report(
            'upsets',
            True,
            f'{len(up_sets)} up-sets',
            count=len(up_sets),
            up_sets=family_json(up_sets),
        ),
        (('Up-Sets', table),),
    )


def _cuts(options: argparse.Namespace, logger: Logger) -> Outcome:
    m = load_map(_need(options.map, '--map'), _space(options), _scale(options))
    report = cut_family(m)
    check = is_fuzzy_up_set(m, cross_check=True)

    cuts = [
        {'level': top, 'cut': list(m.space.ordered(cut))}
        for top, cut in report.members_by_top()
    ]
    details: dict[str, JsonValue] = {
        'cuts': cuts,
        'counterexample': None
        if check.counterexample is None
        else list(m.space.ordered(check.counterexample)),
        'quotient': None,
    }
    tables = [(
        'Cuts',
        pd.DataFrame({
            'level': [c['level'] for c in cuts],
            'cut': [m.space.label(cut) for _, cut in report.members_by_top()],
        }),
    )]
    if check.holds:
        quotient = approx_quotient(m).quotient
        details['quotient'] = quotient_json(quotient)
        tables.append((
            'Levels with Equal Cuts',
            pd.DataFrame(
                {'block': list(quotient.labels), 'top': list(quotient.block_tops)}
            ),
        ))

    summary = (
        f'{len(report.family)} distinct cuts'
        if check.holds
        else 'map is not an L-fuzzy up-set'
    )
    return Outcome(_report('cuts', check.holds, summary, **details), tuple(tables))


def _representable(options: argparse.Namespace, logger: Logger) -> Outcome:
    space = _need(_space(options), '--space')
    scale = _need(_scale(options), '--scale')
    family = load_family(_need(options.family, '--family'), space)

    result = representable(family, space, scale, options.cap)
    oracle = _cross_check(options, result, family, scale)
    if isinstance(result, Refutation):
        return Outcome(
            _report(
                'representable',
                False,
                str(result),
                witness=None,
                refutation=refutation_json(result),
                oracle=oracle,
            )
        )

    _reverify(result, family)
    if options.witness_out:
        _write_witness(options, result)
    return Outcome(
        _report(
            'representable',
            True,
            f'{family.label()} is a cut family',
            witness=map_json(result),
            refutation=None,
            oracle=oracle,
        ),
        (('Witness', _map_table(dict(result.assign))),),
    )


def _restrict(options: argparse.Namespace, logger: Logger) -> Outcome:
    m = load_map(_need(options.map, '--map'), _space(options), _scale(options))
    sub = load_family(_need(options.family, '--family'), m.space)

    restriction = restrict_cut_family(m, sub, Reading(options.reading), options.cap)
    result, diagnostic = restriction
    oracle = _cross_check(options, result, sub, m.scale)

    diagnostic_table = pd.DataFrame({
        'member': list(diagnostic.image),
        'image': list(diagnostic.image.values()),
    })
    details: dict[str, JsonValue] = {
        'witness': None,
        'refutation': None,
        'oracle': oracle,
        'diagnostic': candidate_json(diagnostic),
    }
    violations = '; '.join(str(v) for v in diagnostic.report.violations)
    tables = [(
        f'Explicit Formula ({violations or "a closure operator"})',
        diagnostic_table,
    )]

    if isinstance(result, Refutation):
        details['refutation'] = refutation_json(result)
        report = _report('restrict', False, str(result), **details)
        return Outcome(report, tuple(tables))

    _reverify(result, sub)
    if options.witness_out:
        _write_witness(options, result)
    details['witness'] = map_json(result)
    tables.insert(0, ('Witness', _map_table(dict(result.assign))))
    return Outcome(
        _report('restrict', True, f'{sub.label()} is a cut family', **details),
        tuple(tables),
    )


def _quotient_complete(options: argparse.Namespace, logger: Logger) -> Outcome:
    space = _need(_space(options), '--space')
    scale = _need(_scale(options), '--scale')
    verify = Mode.ORACLE if options.oracle else None
    decision = quotient_is_complete_lattice(space, scale, verify, options.cap, logger)
    if decision.direct is not None and decision.direct != decision.holds:
        raise AssertionError('characterization and direct check disagree')

    closure = decision.closure
    tables = () if closure is None else (
        ('Certificate', _map_table(dict(closure.image), 'closure')),
    )
    return Outcome(
        _report(
            'quotient-complete',
            decision.holds,
            decision.reason,
            closure=None if closure is None else map_json(closure),
            direct=decision.direct,
        ),
        tables,
    )


def _embed(options: argparse.Namespace, logger: Logger) -> Outcome:
    space = _need(_space(options), '--space')
    closure = _closure(options, space)
    report = embed_upset_quotient(space, closure, options.cap)
    flags = report.flags()
    failed = [k for k, v in flags.items() if not v]
    return Outcome(
        _report(
            'embed',
            report.ok,
            'all properties hold' if report.ok else f'fails: {", ".join(failed)}',
            quotient=quotient_json(report.quotient),
            mapping=dict(report.mapping),
            **flags,
        ),
        (
            (
                'Properties',
                pd.DataFrame({'property': list(flags), 'holds': list(flags.values())}),
            ),
            (
                'Embedding',
                pd.DataFrame({
                    'up_set': list(report.mapping),
                    'union': list(report.mapping.values()),
                }),
            ),
        ),
    )


def _birkhoff(options: argparse.Namespace, logger: Logger) -> Outcome:
    space = _space(options)
    large = _scale(options)
    if large is None:
        up_sets = enumerate_up_sets(_need(space, '--space'), options.cap)
        large = lattice_from_family(up_sets)
    if options.target:
        small = load_lattice(options.target)
    else:
        family = load_family(_need(options.family, '--family'), space)
        small = lattice_from_family(family)

    decision = birkhoff_embedding_driver(large, small, options.cap, logger)
    holds = decision.direct is not None
    if not holds:
        summary = 'no bound-preserving embedding'
    elif decision.via_closure is not None:
        summary = 'embedding exists, also via closure operator'
    else:
        summary = 'embedding exists, but not via closure operator'
    return Outcome(
        _report(
            'birkhoff',
            holds,
            summary,
            closure=None if decision.closure is None else map_json(decision.closure),
            via_closure=witness_json(decision.via_closure),
            direct=witness_json(decision.direct),
            degenerate=decision.degenerate,
        ),
        (('Direct Embedding', _witness_table(decision.direct)),),
    )


def _interval_iso(options: argparse.Namespace, logger: Logger) -> Outcome:
    space = _need(_space(options), '--space')
    scale = _need(_scale(options), '--scale')
    closure = _closure(options, space)
    report = interval_isomorphism(space, closure, scale, options.cap, logger)

    if report.counterexample is not None:
        summary = f'block unions are not a cut family: {report.counterexample}'
    elif report.holds:
        summary = 'interval is isomorphic to cut families of quotient'
    else:
        summary = 'interval is not isomorphic to cut families of quotient'

    def size(value: None | Poset) -> None | int:
        return None if value is None else len(value)

    return Outcome(
        _report(
            'interval-iso',
            report.holds,
            summary,
            scale_closure=map_json(report.scale_closure),
            embedding=report.embedding.flags(),
            witness=None
            if report.witness_map is None
            else map_json(report.witness_map),
            counterexample=None
            if report.counterexample is None
            else refutation_json(report.counterexample),
            interval=size(report.interval),
            quotient_side=None
            if report.quotient_side is None
            else len(report.quotient_side),
            subfamilies=size(report.subfamilies),
            isomorphism=witness_json(report.isomorphism),
            bridge=witness_json(report.bridge),
        ),
        (('Isomorphism', _witness_table(report.isomorphism)),),
    )


def _enumerate_closures(options: argparse.Namespace, logger: Logger) -> Outcome:
    scale = _scale(options)
    carrier: Poset | FiniteLattice = (
        scale if scale is not None else _need(_space(options), '--space or --scale')
    )
    order = order_of(carrier)
    closures = enumerate_closure_operators(carrier, options.cap)
    table = pd.DataFrame({
        'closed': [order.label(c.closed) for c in closures],
        'moves': [_moves(c) for c in closures],
    })
    return Outcome(
        _report(
            'enumerate-closures',
            True,
            f'{len(closures)} closure operators',
            count=len(closures),
            closures=[map_json(c) for c in closures],
        ),
        (('Closure Operators', table),),
    )


def _dot(options: argparse.Namespace, logger: Logger) -> Outcome:
    space = _space(options)
    if options.closure:
        space = _need(space, '--space')
        text = emit_dot(quotient_by_closure(space, _closure(options, space)))
    elif options.scale:
        text = emit_dot(_need(_scale(options), '--scale'))
    else:
        text = emit_dot(_need(space, '--space'))
    return Outcome(_report('dot', True, 'Hasse diagram', dot=text), text=text)


def _fixtures(options: argparse.Namespace, logger: Logger) -> Outcome:
    results = run_fixtures(logger)
    rows = [
        (f['name'], c['name'], c['provenance'], c['passed'])
        for f in results
        for c in f['checks']
    ]
    table = pd.DataFrame(rows, columns=['fixture', 'check', 'provenance', 'passed'])
    failed = [f['name'] for f in results if not f['passed']]
    return Outcome(
        _report(
            'fixtures',
            not failed,
            f'{len(results)} fixtures pass'
            if not failed
            else f'failed: {", ".join(failed)}',
            fixtures=results,
        ),
        (('Fixtures', table),),
    )


def _powerset(options: argparse.Namespace, logger: Logger) -> Outcome:
    scale = _need(_scale(options), '--scale')
    names = options.names or _need(_space(options), '--space or names').elements
    verify = Mode.ORACLE if options.oracle else None
    decision = powerset_quotient_is_complete(names, scale, verify, options.cap, logger)
    result = powerset_witness(names, scale, options.cap)
    if len(scale) > 1 and decision.holds != isinstance(result, FuzzyMap):
        raise AssertionError('power-set witness and completeness disagree')

    if isinstance(result, Refutation):
        return Outcome(
            _report(
                'powerset',
                False,
                str(result),
                complete=decision.holds,
                witness=None,
                refutation=refutation_json(result),
            )
        )

    _reverify(result, enumerate_up_sets(result.space, options.cap))
    if options.witness_out:
        _write_witness(options, result)
    return Outcome(
        _report(
            'powerset',
            True,
            'cut family is the power set',
            complete=decision.holds,
            witness=map_json(result),
            refutation=None,
        ),
        (('Witness', _map_table(dict(result.assign))),),
    )


COMMANDS: dict[str, tuple[Callable[[argparse.Namespace, Logger], Outcome], str]] = {
    'validate': (_validate, 'check that the given documents are well-formed'),
    'upsets': (_upsets, 'list all up-sets of the space'),
    'cuts': (_cuts, 'compute the cut family of a map'),
    'representable': (_representable, 'decide whether a family is a cut family'),
    'restrict': (_restrict, 'realize a subfamily of a map\'s cuts'),
    'quotient-complete': (
        _quotient_complete,
        'decide whether maps modulo equal cuts form a complete lattice',
    ),
    'embed': (_embed, 'embed the up-sets of a quotient into the up-sets of the space'),
    'birkhoff': (_birkhoff, 'embed a distributive lattice into another'),
    'interval-iso': (_interval_iso, 'compare quotient cut families with an interval'),
    'enumerate-closures': (_enumerate_closures, 'list all closure operators'),
    'dot': (_dot, 'emit a Hasse diagram in DOT'),
    'fixtures': (_fixtures, 'run the bundled examples'),
    'powerset': (_powerset, 'realize the power set as a cut family'),
}


# ======================================================================================


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--space', metavar='FILE', help='poset document')
    common.add_argument('--scale', metavar='FILE', help='lattice document')
    common.add_argument('--family', metavar='FILE', help='family document')
    common.add_argument('--map', metavar='FILE', help='map document')
    common.add_argument(
        '--closure', metavar='FILE', help='map document with a closure operator'
    )
    common.add_argument('--target', metavar='FILE', help='lattice document to embed')
    common.add_argument(
        '--witness-out', metavar='FILE', help='write the witness map to this file'
    )
    common.add_argument(
        '--oracle', action='store_true', help='cross-check with brute force'
    )
    common.add_argument('--cap', type=int, default=DEFAULT_CAP, metavar='N')
    common.add_argument('--format', choices=('text', 'json'), default='text')
    common.add_argument(
        '--reading',
        choices=tuple(str(r) for r in Reading),
        default=str(Reading.CLOSURE),
        help='how the explicit formula combines members',
    )
    common.add_argument('--verbose', action='store_true', help='log progress')

    parser = argparse.ArgumentParser(
        prog='upcut',
        description='Cuts, closure operators, and quotients of L-fuzzy up-sets',
    )
    commands = parser.add_subparsers(dest='command', required=True)
    for name, (_, about) in COMMANDS.items():
        sub = commands.add_parser(name, parents=[common], help=about)
        if name == 'powerset':
            sub.add_argument('names', nargs='*', help='elements of the plain set')
    return parser


def _emit(outcome: Outcome, format: str) -> None:
    report = outcome.report
    if format == 'json':
        sys.stdout.write(encode_report(report))
        return
    if outcome.text is not None:
        sys.stdout.write(outcome.text)
        return

    use_sgr = sys.stdout.isatty()
    mark = '✅' if report['holds'] else '❌'
    print(f'{mark} {report["command"]}: {report["summary"]}')
    for title, table in outcome.tables:
        if table.empty:
            continue
        print()
        print(format_table(table, title, use_sgr=use_sgr))


def run_cli(argv: Sequence[str]) -> int:
    """
    Run one command. Exit with 0 if the property holds or a witness has been
    produced, with 1 if it fails, and with 2 on usage and input errors.
    """
    try:
        options = _parser().parse_args(argv)
    except SystemExit as x:
        return x.code if isinstance(x.code, int) else 2

    logger = console_logger if options.verbose else silent_logger
    command, _ = COMMANDS[options.command]
    try:
        outcome = command(options, logger)
    except (UpcutError, OSError) as x:
        print(f'upcut {options.command}: {x}', file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc(file=sys.stderr)
        return 2

    _emit(outcome, options.format)
    return 0 if outcome.report['holds'] else 1


def run() -> None:
    sys.exit(run_cli(sys.argv[1:]))
