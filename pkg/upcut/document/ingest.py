from collections.abc import Iterable
from pathlib import Path

from ..error import (
    DocumentSemanticError,
    DocumentSyntaxError,
    UpcutError,
)
from ..fuzzy import FuzzyMap
from ..order.closure import ClosureOperator, ClosureViolation, validate_closure
from ..order.lattice import as_lattice, FiniteLattice
from ..order.poset import build_poset, Poset, set_family, SetFamily
from .type import BODY_DIRECTIVES, Directive, Document, Kind, Record


_ARITY: dict[Directive, tuple[int, None | int]] = {
    Directive.TYPE: (1, 1),
    Directive.SPACE: (1, 1),
    Directive.SCALE: (1, 1),
    Directive.ELEMENTS: (0, None),
    Directive.COVER: (2, 2),
    Directive.SET: (0, None),
    Directive.PAIR: (2, 2),
}


def _tokens(text: str) -> Iterable[tuple[int, list[str]]]:
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0]
        words = line.split()
        if words:
            yield number, words


def parse_document(text: str) -> Document:
    """
    Parse a line-oriented document. The first directive must be `type`. Header
    directives `space` and `scale` may appear once each. Every other line is a
    body record, which must suit the document's kind. `#` starts a comment.
    """
    kind: None | Kind = None
    header: dict[Directive, str] = {}
    records: list[Record] = []

    for number, (word, *args) in _tokens(text):
        try:
            directive = Directive(word)
        except ValueError:
            raise DocumentSyntaxError(f'unknown directive "{word}"', number) from None

        least, most = _ARITY[directive]
        if len(args) < least or (most is not None and len(args) > most):
            expected = str(least) if least == most else f'at least {least}'
            raise DocumentSyntaxError(
                f'"{word}" takes {expected} argument(s), not {len(args)}', number
            )

        if directive is Directive.TYPE:
            if kind is not None:
                raise DocumentSyntaxError('document has more than one type', number)
            try:
                kind = Kind(args[0])
            except ValueError:
                raise DocumentSyntaxError(
                    f'unknown document type "{args[0]}"', number
                ) from None
            continue

        if kind is None:
            raise DocumentSyntaxError('document must start with a type', number)
        if directive in (Directive.SPACE, Directive.SCALE):
            if directive in header:
                raise DocumentSyntaxError(f'duplicate "{word}" reference', number)
            header[directive] = args[0]
        elif directive in BODY_DIRECTIVES[kind]:
            records.append(Record(directive, tuple(args), number))
        else:
            raise DocumentSyntaxError(
                f'"{word}" is not valid in a {kind} document', number
            )

    if kind is None:
        raise DocumentSyntaxError('document has no type')
    return Document(
        kind,
        tuple(records),
        header.get(Directive.SPACE),
        header.get(Directive.SCALE),
    )


def read_document(path: str | Path) -> Document:
    data = Path(path).read_bytes()
    try:
        text = data.decode('utf8')
    except UnicodeDecodeError as x:
        line = data[: x.start].count(b'\n') + 1
        raise DocumentSyntaxError(
            f'{path} is not valid UTF-8 (byte {x.start})', line
        ) from None
    return parse_document(text)


# ======================================================================================
# Documents to Values


def _expect(document: Document, *kinds: Kind) -> None:
    if document.kind not in kinds:
        expected = ' or '.join(str(k) for k in kinds)
        raise DocumentSemanticError(f'expected {expected} document, not {document.kind}')


def poset_of(document: Document) -> Poset:
    _expect(document, Kind.POSET, Kind.LATTICE)

    declared: set[str] = set()
    for record in document.body(Directive.ELEMENTS):
        for name in record.args:
            if name in declared:
                raise DocumentSemanticError(
                    f'element "{name}" is declared more than once', record.line
                )
            declared.add(name)

    covers = []
    for record in document.body(Directive.COVER):
        lower, upper = record.args
        for name in (lower, upper):
            if name not in declared:
                raise DocumentSemanticError(
                    f'"{name}" is not a declared element', record.line
                )
        covers.append((lower, upper))

    try:
        return build_poset(document.elements(), covers)
    except UpcutError as x:
        raise DocumentSemanticError(str(x)) from x


def lattice_of(document: Document) -> FiniteLattice:
    _expect(document, Kind.LATTICE)
    try:
        return as_lattice(poset_of(document))
    except DocumentSemanticError:
        raise
    except UpcutError as x:
        raise DocumentSemanticError(str(x)) from x


def family_of(document: Document, base: Poset) -> SetFamily:
    _expect(document, Kind.FAMILY)
    members: list[frozenset[str]] = []
    for record in document.body(Directive.SET):
        for name in record.args:
            if name not in base:
                raise DocumentSemanticError(
                    f'"{name}" is not an element of the space', record.line
                )
        member = frozenset(record.args)
        if member in members:
            raise DocumentSemanticError(
                f'set {base.label(member)} appears more than once', record.line
            )
        members.append(member)
    return set_family(base, members)


def _pairs(document: Document, domain: Poset, codomain: Poset) -> dict[str, str]:
    _expect(document, Kind.MAP)
    assign: dict[str, str] = {}
    for record in document.body(Directive.PAIR):
        x, p = record.args
        if x not in domain:
            raise DocumentSemanticError(
                f'"{x}" is not an element of the space', record.line
            )
        if p not in codomain:
            raise DocumentSemanticError(
                f'"{p}" is not an element of the scale', record.line
            )
        if x in assign:
            raise DocumentSemanticError(f'"{x}" is mapped more than once', record.line)
        assign[x] = p
    for x in domain:
        if x not in assign:
            raise DocumentSemanticError(f'"{x}" has no value')
    return assign


def map_of(document: Document, space: Poset, scale: FiniteLattice) -> FuzzyMap:
    return FuzzyMap(space, scale, _pairs(document, space, scale.order))


def closure_of(
    document: Document, carrier: Poset | FiniteLattice
) -> ClosureOperator | ClosureViolation:
    """Read a self-map, which must satisfy the closure axioms."""
    order = carrier.order if isinstance(carrier, FiniteLattice) else carrier
    return validate_closure(carrier, _pairs(document, order, order))


# ======================================================================================
# Files to Values


def _referenced(path: Path, name: None | str, what: str) -> Path:
    if name is None:
        raise DocumentSemanticError(f'document "{path}" does not name its {what}')
    return path.parent / name


def load_poset(path: str | Path) -> Poset:
    return poset_of(read_document(path))


def load_lattice(path: str | Path) -> FiniteLattice:
    return lattice_of(read_document(path))


def load_family(path: str | Path, base: None | Poset = None) -> SetFamily:
    """Load a family over the given base or the space the document names."""
    path = Path(path)
    document = read_document(path)
    if base is None:
        base = load_poset(_referenced(path, document.space, 'space'))
    return family_of(document, base)


def load_map(
    path: str | Path,
    space: None | Poset = None,
    scale: None | FiniteLattice = None,
) -> FuzzyMap:
    """
    Load an L-fuzzy set. A missing space or scale is loaded from the file the
    document names, relative to the document's own directory.
    """
    path = Path(path)
    document = read_document(path)
    if space is None:
        space = load_poset(_referenced(path, document.space, 'space'))
    if scale is None:
        scale = load_lattice(_referenced(path, document.scale, 'scale'))
    return map_of(document, space, scale)


def load_closure(
    path: str | Path, carrier: None | Poset = None
) -> ClosureOperator | ClosureViolation:
    path = Path(path)
    document = read_document(path)
    if carrier is None:
        carrier = load_poset(_referenced(path, document.space, 'space'))
    return closure_of(document, carrier)
