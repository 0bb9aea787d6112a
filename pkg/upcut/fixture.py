"""
Run the bundled examples as sequences of checks. Every check states whether its
expected value has been published with the example or was derived by
computation, so that a report documents where its numbers come from.
"""
from collections.abc import Callable

from .document.data import fixture_document
from .document.export import emit_dot
from .document.ingest import closure_of, family_of, lattice_of, map_of, poset_of
from .document.type import CheckType, FixtureType, Provenance
from .error import DocumentSemanticError
from .fuzzy import cut_family, FuzzyMap, representable, restrict_cut_family
from .log import Logger, silent_logger
from .order.closure import (
    ClosureViolation,
    find_closure_for_target,
    quotient_by_closure,
)
from .order.generate import default_names
from .order.lattice import family_lattice, lattice_from_family, meet_irreducibles
from .order.poset import (
    chain_poset,
    enumerate_up_sets,
    family_poset,
    is_up_set,
    poset_isomorphism,
    Poset,
    principal_filter,
    set_family,
    SetFamily,
)
from .order.type import Axiom
from .quotient import (
    birkhoff_embedding_driver,
    closure_for_family,
    embed_upset_quotient,
    interval_isomorphism,
)


class _Fixture:
    def __init__(self, name: str, logger: Logger) -> None:
        self.name = name
        self.logger = logger
        self.checks: list[CheckType] = []

    def check(
        self, name: str, provenance: Provenance, passed: bool, detail: str = ''
    ) -> bool:
        self.checks.append(
            {'name': name, 'provenance': provenance, 'passed': passed, 'detail': detail}
        )
        self.logger('{} {}: {}', '✅' if passed else '❌', self.name, name)
        return passed

    def result(self) -> FixtureType:
        return {
            'name': self.name,
            'passed': all(c['passed'] for c in self.checks),
            'checks': self.checks,
        }


def _family(space: Poset, *members: str) -> SetFamily:
    # Single-letter element names only.
    return set_family(space, [frozenset(m) for m in members])


# ======================================================================================


def _representability(logger: Logger) -> FixtureType:
    fixture = _Fixture('representability', logger)
    space = poset_of(fixture_document('representable-x'))

    try:
        scale = lattice_of(fixture_document('representable-l'))
    except DocumentSemanticError as x:
        fixture.check('transcribed scale is a lattice', 'published', False, str(x))
        return fixture.result()
    fixture.check(
        'transcribed scale is a lattice with 11 elements',
        'derived',
        len(scale) == 11,
        f'{len(scale)} elements',
    )

    s_family = family_of(fixture_document('representable-s'), space)
    labeled = scale.order.subposet(('0', 'q', 'r', 'p', 's', 't', '1'))
    fixture.check(
        'labeled elements are ordered like the seven-member family',
        'published',
        poset_isomorphism(labeled, family_poset(s_family)) is not None,
        s_family.label(),
    )

    for name in ('representable-r', 'representable-s'):
        family = family_of(fixture_document(name), space)
        result = representable(family, space, scale)
        fixture.check(
            f'{family.label()} is a cut family',
            'published',
            isinstance(result, FuzzyMap) and cut_family(result).family == family,
            str(result) if not isinstance(result, FuzzyMap) else repr(result),
        )

    return fixture.result()


def _embedding(logger: Logger) -> FixtureType:
    fixture = _Fixture('embedding', logger)
    space = poset_of(fixture_document('embedding-x'))

    up_sets = enumerate_up_sets(space)
    fixture.check(
        'up-sets of the space',
        'published',
        up_sets
        == _family(
            space, '', 'c', 'e', 'ce', 'de', 'cde', 'ace', 'acde', 'bcde', 'abcde'
        ),
        up_sets.label(),
    )
    fixture.check(
        'principal filter of b',
        'published',
        principal_filter(space, 'b') == frozenset('bcde'),
        space.label(principal_filter(space, 'b')),
    )
    fixture.check(
        '{a,c,e} is an up-set and {a} is not',
        'derived',
        is_up_set(space, frozenset('ace')) and not is_up_set(space, frozenset('a')),
    )

    closure = closure_of(fixture_document('embedding-c'), space)
    if isinstance(closure, ClosureViolation):
        fixture.check(
            'merging map is a closure operator', 'published', False, str(closure)
        )
        return fixture.result()

    quotient = quotient_by_closure(space, closure)
    fixture.check(
        'quotient blocks',
        'published',
        quotient.blocks == tuple(frozenset(b) for b in ('a', 'b', 'c', 'de')),
        ' '.join(quotient.labels),
    )
    dot = emit_dot(quotient)
    fixture.check(
        'quotient diagram has four nodes and four edges',
        'derived',
        dot.count(' -> ') == 4 and len(quotient.order) == 4,
    )

    report = embed_upset_quotient(space, closure)
    fixture.check(
        'quotient has seven up-sets',
        'published',
        len(report.source) == 7,
        report.source.label(),
    )
    fixture.check(
        'block unions of the quotient\'s up-sets',
        'published',
        report.image
        == _family(space, '', 'c', 'de', 'cde', 'acde', 'bcde', 'abcde'),
        report.image.label(),
    )
    fixture.check(
        'embedding preserves structure',
        'derived',
        report.ok,
        ', '.join(k for k, v in report.flags().items() if not v),
    )

    scale = lattice_from_family(up_sets)
    interval = interval_isomorphism(space, closure, scale, logger=logger)
    fixture.check(
        'quotient\'s cut families are isomorphic to interval',
        'derived',
        interval.holds,
        '' if interval.interval is None else f'{len(interval.interval)} families',
    )

    return fixture.result()


def _birkhoff(logger: Logger) -> FixtureType:
    fixture = _Fixture('birkhoff', logger)
    space = poset_of(fixture_document('embedding-x'))
    large = lattice_from_family(enumerate_up_sets(space))
    chain = family_of(fixture_document('embedding-u'), space)
    small = lattice_from_family(chain)

    fixture.check(
        'family is a six-element chain',
        'published',
        poset_isomorphism(small.order, chain_poset(default_names(6))) is not None,
        chain.label(),
    )
    fixture.check(
        'meet-irreducibles of up-sets are isomorphic to space',
        'derived',
        poset_isomorphism(
            large.order.subposet(meet_irreducibles(large)), space
        ) is not None,
    )

    decision = birkhoff_embedding_driver(large, small, logger=logger)
    fixture.check(
        'direct bound-preserving embedding exists',
        'published',
        decision.direct is not None,
    )
    fixture.check(
        'no closure operator on meet-irreducibles yields the chain',
        'published',
        decision.closure is None,
    )
    fixture.check(
        'no closure operator on the space yields the chain as up-sets',
        'published',
        closure_for_family(space, chain) is None,
    )
    return fixture.result()


def _restriction(logger: Logger) -> FixtureType:
    fixture = _Fixture('restriction', logger)
    space = poset_of(fixture_document('restriction-x'))
    scale = lattice_of(fixture_document('restriction-l'))
    mu = map_of(fixture_document('restriction-mu0'), space, scale)

    cuts = cut_family(mu).family
    fixture.check(
        'cut family of canonical map',
        'derived',
        cuts == family_of(fixture_document('restriction-mu'), space),
        cuts.label(),
    )

    t0 = family_of(fixture_document('restriction-t0'), space)
    meet = family_lattice(t0).meet(frozenset('a'), frozenset('b'))
    fixture.check(
        'meet of {a} and {b} in subfamily',
        'derived',
        meet == frozenset('abc'),
        space.label(meet),
    )

    restriction = restrict_cut_family(mu, t0)
    diagnostic = restriction.diagnostic
    fixture.check(
        'explicit formula maps {a,b} to {a,b,c}',
        'derived',
        diagnostic(frozenset('ab')) == frozenset('abc'),
    )
    failures = diagnostic.report.failures(Axiom.INFLATIONARY)
    fixture.check(
        'explicit formula is not inflationary at {a,b}',
        'derived',
        [v.witness for v in failures] == [('{a,b}',)],
        '; '.join(str(v) for v in diagnostic.report.violations),
    )

    result = restriction.result
    fixture.check(
        'restricted map has the subfamily as cuts',
        'derived',
        isinstance(result, FuzzyMap) and cut_family(result).family == t0,
        repr(result) if isinstance(result, FuzzyMap) else str(result),
    )

    closure = find_closure_for_target(scale, lattice_from_family(t0).order)
    closed = set(closure.closed) if closure is not None else set()
    fixture.check(
        'Moore family of the restricted map',
        'derived',
        closed == {'{a,b,c,d}', '{a,b}', '{a}', '{b}', '{}'},
        ' '.join(sorted(closed)),
    )
    return fixture.result()


# ======================================================================================


FIXTURES: tuple[Callable[[Logger], FixtureType], ...] = (
    _representability,
    _embedding,
    _birkhoff,
    _restriction,
)


def run_fixtures(logger: None | Logger = None) -> list[FixtureType]:
    """Run all bundled fixtures. A fixture passes if all its checks pass."""
    logger = logger or silent_logger
    return [fixture(logger) for fixture in FIXTURES]
