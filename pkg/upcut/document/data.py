from importlib import resources
from importlib.resources.abc import Traversable
from types import MappingProxyType

from ..error import FixtureMissing
from .ingest import parse_document
from .type import Document, Kind


frozen = MappingProxyType

# The bundled fixture documents, by name.
FIXTURE_DOCUMENTS = frozen({
    # ──────────────────────────────────────────────────────────────────────────
    # Representability of two families on a five-point space
    "representable-x": frozen({
        "file": "representable-x.pos",
        "kind": Kind.POSET,
        "about": "space with e < a, e < b, d < a, c < b",
    }),
    "representable-l": frozen({
        "file": "representable-l.lat",
        "kind": Kind.LATTICE,
        "about": "11-element scale transcribed from its Hasse diagram",
    }),
    "representable-r": frozen({
        "file": "representable-r.fam",
        "kind": Kind.FAMILY,
        "about": "five-member family to be represented",
    }),
    "representable-s": frozen({
        "file": "representable-s.fam",
        "kind": Kind.FAMILY,
        "about": "seven-member family matching the scale's labeled nodes",
    }),
    # ──────────────────────────────────────────────────────────────────────────
    # Embedding the up-sets of a quotient
    "embedding-x": frozen({
        "file": "embedding-x.pos",
        "kind": Kind.POSET,
        "about": "space with a < c, a < e, b < c, b < d < e",
    }),
    "embedding-c": frozen({
        "file": "embedding-c.map",
        "kind": Kind.MAP,
        "about": "closure operator merging d into e",
    }),
    "embedding-u": frozen({
        "file": "embedding-u.fam",
        "kind": Kind.FAMILY,
        "about": "six-member chain of up-sets",
    }),
    # ──────────────────────────────────────────────────────────────────────────
    # Restricting cut families on a plain set
    "restriction-x": frozen({
        "file": "restriction-x.pos",
        "kind": Kind.POSET,
        "about": "plain set of four points",
    }),
    "restriction-mu": frozen({
        "file": "restriction-mu.fam",
        "kind": Kind.FAMILY,
        "about": "cut family of the canonical map",
    }),
    "restriction-t0": frozen({
        "file": "restriction-t0.fam",
        "kind": Kind.FAMILY,
        "about": "intersection-closed subfamily without {a,b}",
    }),
    "restriction-l": frozen({
        "file": "restriction-l.lat",
        "kind": Kind.LATTICE,
        "about": "the cut family under reverse inclusion",
    }),
    "restriction-mu0": frozen({
        "file": "restriction-mu0.map",
        "kind": Kind.MAP,
        "about": "canonical map with all six cuts distinct",
    }),
})


def fixture_path(name: str) -> Traversable:
    try:
        entry = FIXTURE_DOCUMENTS[name]
    except KeyError:
        raise FixtureMissing(name) from None
    path = resources.files('upcut.fixtures') / str(entry['file'])
    if not path.is_file():
        raise FixtureMissing(name)
    return path


def fixture_text(name: str) -> str:
    return fixture_path(name).read_text(encoding='utf8')


def fixture_document(name: str) -> Document:
    document = parse_document(fixture_text(name))
    assert document.kind == FIXTURE_DOCUMENTS[name]['kind'], f'{name} has wrong kind'
    return document
