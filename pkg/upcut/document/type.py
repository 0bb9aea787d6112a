from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import auto, StrEnum
from typing import Any, Literal, TypeAlias, TypedDict


class Kind(StrEnum):
    POSET = auto()
    LATTICE = auto()
    FAMILY = auto()
    MAP = auto()


class Directive(StrEnum):
    TYPE = auto()
    SPACE = auto()
    SCALE = auto()
    ELEMENTS = auto()
    COVER = auto()
    SET = auto()
    PAIR = auto()


# The body directives each kind of document accepts.
BODY_DIRECTIVES: dict[Kind, frozenset[Directive]] = {
    Kind.POSET: frozenset({Directive.ELEMENTS, Directive.COVER}),
    Kind.LATTICE: frozenset({Directive.ELEMENTS, Directive.COVER}),
    Kind.FAMILY: frozenset({Directive.SET}),
    Kind.MAP: frozenset({Directive.PAIR}),
}


@dataclass(frozen=True, slots=True)
class Record:
    """One body line. Its line number is ignored when comparing records."""

    directive: Directive
    args: tuple[str, ...]
    line: None | int = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class Document:
    """
    One object per file. The header names the kind and, optionally, the files
    holding the space and the scale. The body consists of records in file order.
    """

    kind: Kind
    records: tuple[Record, ...] = ()
    space: None | str = None
    scale: None | str = None

    def body(self, directive: Directive) -> Iterator[Record]:
        return (r for r in self.records if r.directive is directive)

    def elements(self) -> tuple[str, ...]:
        return tuple(name for r in self.body(Directive.ELEMENTS) for name in r.args)


# --------------------------------------------------------------------------------------
# Reports


Provenance: TypeAlias = Literal['published', 'derived']
JsonValue: TypeAlias = Any


class CheckType(TypedDict):
    """A dictionary with the outcome of one fixture assertion."""

    name: str
    provenance: Provenance
    passed: bool
    detail: str


class FixtureType(TypedDict):
    name: str
    passed: bool
    checks: list[CheckType]


class ReportType(TypedDict):
    """A dictionary with the outcome of one command."""

    command: str
    holds: bool
    summary: str
    details: dict[str, JsonValue]
