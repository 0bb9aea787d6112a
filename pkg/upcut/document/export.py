from collections.abc import Iterator, Mapping
import json

from ..fuzzy import FuzzyMap, Refutation
from ..order.closure import (
    AxiomReport,
    ClosureCandidate,
    ClosureOperator,
    QuotientPoset,
)
from ..order.lattice import FiniteLattice
from ..order.poset import IsoWitness, Poset, SetFamily
from .type import Directive, Document, JsonValue, Kind, Record, ReportType


def emit_document(document: Document) -> str:
    """Emit the canonical text for a document, one directive per line."""
    lines = [f'type {document.kind}']
    if document.space is not None:
        lines.append(f'space {document.space}')
    if document.scale is not None:
        lines.append(f'scale {document.scale}')
    for record in document.records:
        lines.append(' '.join((str(record.directive), *record.args)))
    return '\n'.join(lines) + '\n'


def document_of(
    value: Poset | FiniteLattice | SetFamily | FuzzyMap | ClosureOperator,
    *,
    space: None | str = None,
    scale: None | str = None,
) -> Document:
    """Turn a value into a document. Posets and lattices are written as covers."""
    if isinstance(value, (Poset, FiniteLattice)):
        order = value.order if isinstance(value, FiniteLattice) else value
        records = [Record(Directive.ELEMENTS, order.elements)]
        records.extend(Record(Directive.COVER, pair) for pair in order.covers())
        kind = Kind.LATTICE if isinstance(value, FiniteLattice) else Kind.POSET
        return Document(kind, tuple(records))

    if isinstance(value, SetFamily):
        records = [
            Record(Directive.SET, value.base.ordered(member)) for member in value
        ]
        return Document(Kind.FAMILY, tuple(records), space)

    pairs = value.assign if isinstance(value, FuzzyMap) else value.image
    records = [Record(Directive.PAIR, (x, p)) for x, p in pairs.items()]
    return Document(Kind.MAP, tuple(records), space, scale)


# ======================================================================================
# Hasse Diagrams


def _quote(name: str) -> str:
    return json.dumps(name, ensure_ascii=False)


def _dot_lines(order: Poset, name: str) -> Iterator[str]:
    yield f'digraph {_quote(name)} {{'
    yield '    rankdir=BT;'
    yield '    node [shape=plaintext];'
    for element in order:
        yield f'    {_quote(element)};'
    for lower, upper in order.covers():
        yield f'    {_quote(lower)} -> {_quote(upper)};'
    yield '}'


def emit_dot(
    value: Poset | FiniteLattice | QuotientPoset, name: str = 'hasse'
) -> str:
    """
    Emit the Hasse diagram in DOT. Edges are the cover pairs and point upwards.
    The nodes of a quotient are its blocks.
    """
    order = value if isinstance(value, Poset) else value.order
    return '\n'.join(_dot_lines(order, name)) + '\n'


# ======================================================================================
# JSON Reports


def family_json(family: SetFamily) -> list[list[str]]:
    return [list(family.base.ordered(m)) for m in family.canonical()]


def map_json(value: FuzzyMap | ClosureOperator) -> dict[str, str]:
    pairs = value.assign if isinstance(value, FuzzyMap) else value.image
    return dict(pairs)


def witness_json(value: None | IsoWitness) -> None | dict[str, JsonValue]:
    if value is None:
        return None
    return {
        'mapping': dict(value.mapping),
        'preserves': sorted(str(p) for p in value.preserves),
        'onto': value.onto,
    }


def report_json(report: AxiomReport) -> list[dict[str, JsonValue]]:
    return [
        {'axiom': str(v.axiom), 'witness': list(v.witness)} for v in report.violations
    ]


def candidate_json(candidate: ClosureCandidate) -> dict[str, JsonValue]:
    return {
        'reading': str(candidate.reading),
        'map': dict(candidate.image),
        'violations': report_json(candidate.report),
    }


def refutation_json(refutation: Refutation) -> dict[str, JsonValue]:
    return {
        'condition': str(refutation.condition),
        'reason': refutation.reason,
        'witness': list(refutation.witness),
    }


def quotient_json(quotient: QuotientPoset) -> dict[str, JsonValue]:
    return {
        'blocks': [list(quotient.carrier.ordered(b)) for b in quotient.blocks],
        'tops': list(quotient.block_tops),
        'covers': [list(pair) for pair in quotient.order.covers()],
    }


def encode_report(report: ReportType | Mapping[str, JsonValue]) -> str:
    """Encode a report as JSON, keeping the order of fields."""
    return json.dumps(report, indent=2, ensure_ascii=False) + '\n'
