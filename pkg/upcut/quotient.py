from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from enum import auto, StrEnum
from functools import cached_property
import itertools as it
from types import MappingProxyType
from typing import NamedTuple

import numpy as np

from .error import CapExceeded, NotALattice, PreconditionUnmet, UnknownName
from .fuzzy import cut_family, FuzzyMap, Refutation, representable
from .log import Logger, silent_logger
from .oracle import count_monotone_maps, monotone_maps
from .order.closure import (
    ClosureOperator,
    enumerate_closure_operators,
    find_closure_for_target,
    quotient_by_closure,
    QuotientPoset,
)
from .order.lattice import (
    as_lattice,
    birkhoff_representation,
    family_lattice,
    FiniteLattice,
    find_bound_preserving_embedding,
    meet_irreducibles,
)
from .order.poset import (
    antichain_poset,
    enumerate_up_sets,
    family_poset,
    is_up_set,
    IsoWitness,
    poset_isomorphism,
    Poset,
    relation_poset,
    set_family,
    SetFamily,
    subset_key,
    verify_isomorphism,
    witness,
)
from .order.type import DEFAULT_CAP, Element, Preserve, Subset


class Mode(StrEnum):
    """How to enumerate realizable cut families."""

    CHARACTERIZATION = auto()
    ORACLE = auto()


def _family_key(family: SetFamily) -> tuple[int, tuple[tuple[int, ...], ...]]:
    return len(family), tuple(subset_key(family.base, m) for m in family.canonical())


# ======================================================================================
# The Poset of Realizable Cut Families


@dataclass(frozen=True, eq=False)
class RealizablePoset:
    """
    The L-fuzzy up-sets on a space modulo equal cut families, represented by
    their distinct cut families under inclusion. The order's elements are the
    families' labels. Each family comes with its provenance, either a map that
    realizes it or the closure operator certifying that one exists.
    """

    space: Poset
    scale: FiniteLattice
    families: tuple[SetFamily, ...]
    order: Poset
    provenance: tuple[FuzzyMap | ClosureOperator, ...]

    def __len__(self) -> int:
        return len(self.families)

    def __iter__(self) -> Iterator[SetFamily]:
        return iter(self.families)

    @cached_property
    def by_family(self) -> Mapping[SetFamily, int]:
        return MappingProxyType({f: i for i, f in enumerate(self.families)})

    def label(self, family: SetFamily) -> Element:
        try:
            return self.order.elements[self.by_family[family]]
        except KeyError:
            raise UnknownName(family.label(), 'realizable families') from None

    def family(self, label: Element) -> SetFamily:
        return self.families[self.order.position(label)]

    @property
    def bottom(self) -> SetFamily:
        """The family holding just the full space, below all others."""
        return set_family(self.space, [self.space.elements])

    def is_complete(self) -> bool:
        try:
            as_lattice(self.order)
        except NotALattice:
            return False
        return True

    def interval(self, low: SetFamily, high: SetFamily) -> Poset:
        lo, hi = self.label(low), self.label(high)
        return self.order.subposet(
            x for x in self.order if self.order.le(lo, x) and self.order.le(x, hi)
        )


def _realizable_poset(
    space: Poset,
    scale: FiniteLattice,
    found: Iterable[tuple[SetFamily, FuzzyMap | ClosureOperator]],
) -> RealizablePoset:
    entries = sorted(found, key=lambda entry: _family_key(entry[0]))
    families = tuple(f for f, _ in entries)
    n = len(families)
    relation = np.zeros((n, n), dtype=bool)
    for i, left in enumerate(families):
        for j, right in enumerate(families):
            relation[i, j] = left.member_set <= right.member_set
    order = relation_poset([f.label() for f in families], relation)
    return RealizablePoset(space, scale, families, order, tuple(p for _, p in entries))


def _characterized(
    space: Poset, scale: FiniteLattice, cap: int, logger: Logger
) -> Iterator[tuple[SetFamily, ClosureOperator]]:
    up_sets = enumerate_up_sets(space, cap)
    full = up_sets.full
    others = [m for m in up_sets.canonical() if m != full]
    if 1 << len(others) > cap:
        raise CapExceeded('subfamily search', cap, 1 << len(others))

    logger(
        'checking {:,d} subfamilies of {:,d} up-sets', 1 << len(others), len(up_sets)
    )
    for size in range(len(others) + 1):
        if size + 1 > len(scale):
            break
        for chosen in it.combinations(others, size):
            family = set_family(space, (full, *chosen))
            if family.intersection_witness() is not None:
                continue
            closure = find_closure_for_target(
                scale, family_lattice(family).lattice.order, cap
            )
            if closure is not None:
                yield family, closure


def _observed(
    space: Poset, scale: FiniteLattice, cap: int, logger: Logger
) -> Iterator[tuple[SetFamily, FuzzyMap]]:
    count = count_monotone_maps(space, scale, cap)
    logger('checking {:,d} monotone maps', count)
    seen: set[SetFamily] = set()
    for m in monotone_maps(space, scale):
        family = cut_family(m).family
        if family not in seen:
            seen.add(family)
            yield family, m


def enumerate_realizable_families(
    space: Poset,
    scale: FiniteLattice,
    mode: Mode = Mode.CHARACTERIZATION,
    cap: int = DEFAULT_CAP,
    logger: None | Logger = None,
) -> RealizablePoset:
    """
    Enumerate the distinct cut families of all L-fuzzy up-sets on the space.
    The characterization mode examines every intersection-closed family of
    up-sets containing the space for an isomorphic Moore family of the scale.
    The oracle mode collects the cut families of all monotone maps.
    """
    logger = logger or silent_logger
    if mode is Mode.ORACLE:
        found: Iterable[tuple[SetFamily, FuzzyMap | ClosureOperator]] = _observed(
            space, scale, cap, logger
        )
    else:
        found = _characterized(space, scale, cap, logger)
    result = _realizable_poset(space, scale, found)
    logger('found {:,d} realizable cut families', len(result))
    return result


# ======================================================================================
# Completeness


class CompletenessDecision(NamedTuple):
    holds: bool
    closure: None | ClosureOperator
    reason: str
    direct: None | bool


def quotient_is_complete_lattice(
    space: Poset,
    scale: FiniteLattice,
    verify: None | Mode = None,
    cap: int = DEFAULT_CAP,
    logger: None | Logger = None,
) -> CompletenessDecision:
    """
    Decide whether the L-fuzzy up-sets modulo equal cut families form a
    complete lattice. That is the case for a one-element scale and otherwise
    exactly when some closure operator on the scale has a quotient isomorphic
    to all up-sets of the space under reverse inclusion. With verification,
    also check completeness directly on the enumerated realizable families.
    """
    logger = logger or silent_logger
    up_sets = enumerate_up_sets(space, cap)

    if len(scale) == 1:
        holds, closure, reason = True, None, 'scale has only one element'
    else:
        closure = find_closure_for_target(
            scale, family_lattice(up_sets).lattice.order, cap
        )
        holds = closure is not None
        if holds:
            reason = 'closure operator with quotient isomorphic to up-sets'
        else:
            reason = 'no Moore family isomorphic to up-sets'
    logger('{} {}', '✅' if holds else '❌', reason)

    direct = None
    if verify is not None:
        realizable = enumerate_realizable_families(space, scale, verify, cap, logger)
        direct = realizable.is_complete()
    return CompletenessDecision(holds, closure, reason, direct)


def powerset_quotient_is_complete(
    names: Iterable[Element],
    scale: FiniteLattice,
    verify: None | Mode = None,
    cap: int = DEFAULT_CAP,
    logger: None | Logger = None,
) -> CompletenessDecision:
    """Decide completeness for L-fuzzy sets on a plain set."""
    space = antichain_poset(tuple(names))
    return quotient_is_complete_lattice(space, scale, verify, cap, logger)


# ======================================================================================
# Embedding Up-Sets of a Quotient


@dataclass(frozen=True, eq=False)
class EmbeddingReport:
    """
    The map from up-sets of a quotient of the space to the union of their
    blocks, together with the properties it has been checked for.
    """

    quotient: QuotientPoset
    source: SetFamily
    image: SetFamily
    mapping: Mapping[Element, Element]
    injective: bool
    order_embedding: bool
    up_sets: bool
    intersections: bool
    unions: bool
    bottom: bool
    top: bool

    @property
    def ok(self) -> bool:
        return (
            self.injective
            and self.order_embedding
            and self.up_sets
            and self.intersections
            and self.unions
            and self.bottom
            and self.top
        )

    def flags(self) -> dict[str, bool]:
        return {
            'injective': self.injective,
            'order_embedding': self.order_embedding,
            'up_sets': self.up_sets,
            'intersections': self.intersections,
            'unions': self.unions,
            'bottom': self.bottom,
            'top': self.top,
        }


def embed_upset_quotient(
    space: Poset, closure: ClosureOperator, cap: int = DEFAULT_CAP
) -> EmbeddingReport:
    quotient = quotient_by_closure(space, closure)
    source = enumerate_up_sets(quotient.order, cap)

    def spread(upset: Subset) -> Subset:
        return frozenset().union(*(quotient.block(label) for label in upset))

    images = [spread(t) for t in source]
    distinct = list(dict.fromkeys(images))
    image = set_family(space, distinct)

    order_embedding = all(
        (s >= t) == (spread(s) >= spread(t)) for s in source for t in source
    )
    empty: Subset = frozenset()
    return EmbeddingReport(
        quotient=quotient,
        source=source,
        image=image,
        mapping=MappingProxyType(
            {source.label(t): space.label(s) for t, s in zip(source, images)}
        ),
        injective=len(distinct) == len(images),
        order_embedding=order_embedding,
        up_sets=all(is_up_set(space, s) for s in distinct),
        intersections=image.full in image and image.intersection_witness() is None,
        unions=empty in image and image.union_witness() is None,
        bottom=spread(source.full) == image.full,
        top=spread(empty) == empty,
    )


def closure_for_family(
    space: Poset, family: SetFamily, cap: int = DEFAULT_CAP
) -> None | ClosureOperator:
    """
    Find the first closure operator on the space whose quotient's up-sets are
    isomorphic to the given family under reverse inclusion.
    """
    target = family_poset(family)
    for closure in enumerate_closure_operators(space, cap):
        quotient = quotient_by_closure(space, closure)
        up_sets = enumerate_up_sets(quotient.order, cap)
        if len(up_sets) != len(family):
            continue
        if poset_isomorphism(family_poset(up_sets), target) is not None:
            return closure
    return None


# ======================================================================================
# Distributive Lattices


class BirkhoffDecision(NamedTuple):
    closure: None | ClosureOperator
    via_closure: None | IsoWitness
    direct: None | IsoWitness
    degenerate: bool


def birkhoff_embedding_driver(
    large: FiniteLattice,
    small: FiniteLattice,
    cap: int = DEFAULT_CAP,
    logger: None | Logger = None,
) -> BirkhoffDecision:
    """
    Embed the small distributive lattice into the large one by way of a closure
    operator on the large one's meet-irreducibles whose quotient is isomorphic
    to the small one's meet-irreducibles. Independently, search for a direct
    bound-preserving embedding. The latter may exist without the former.
    """
    logger = logger or silent_logger
    large_rep = birkhoff_representation(large)
    birkhoff_representation(small)

    large_m = large.order.subposet(meet_irreducibles(large))
    small_m = small.order.subposet(meet_irreducibles(small))

    closure, via_closure = None, None
    for candidate in enumerate_closure_operators(large_m, cap):
        quotient = quotient_by_closure(large_m, candidate)
        iso = poset_isomorphism(small_m, quotient.order)
        if iso is None:
            continue

        back = large_rep.inverse()
        mapping: dict[Element, Element] = {}
        for a in small:
            above = (iso[m] for m in small_m if small.le(a, m))
            spread = frozenset().union(*(quotient.block(label) for label in above))
            mapping[a] = back[large_m.label(spread)]
        via_closure = witness(
            small.order,
            large.order,
            mapping,
            (Preserve.ORDER, Preserve.BOUNDS),
            onto=False,
        )
        assert verify_isomorphism(via_closure), 'composite is not an embedding'
        assert mapping[small.bottom] == large.bottom, 'bottom is not preserved'
        assert mapping[small.top] == large.top, 'top is not preserved'
        closure = candidate
        break

    logger(
        '{} closure operator on meet-irreducibles', '✅' if closure else '❌'
    )
    direct = find_bound_preserving_embedding(small, large)
    logger('{} direct bound-preserving embedding', '✅' if direct else '❌')
    return BirkhoffDecision(closure, via_closure, direct, len(small) == 1)


# ======================================================================================
# Intervals


@dataclass(frozen=True, eq=False)
class IntervalReport:
    """
    The comparison of the realizable families on the quotient of the space with
    the interval below the family of block unions among the realizable families
    on the space. Both are also compared with the intersection-closed
    subfamilies of the block unions that contain the space.
    """

    scale_closure: ClosureOperator
    embedding: EmbeddingReport
    witness_map: None | FuzzyMap
    counterexample: None | Refutation
    interval: None | Poset
    quotient_side: None | RealizablePoset
    subfamilies: None | Poset
    isomorphism: None | IsoWitness
    bridge: None | IsoWitness

    @property
    def holds(self) -> bool:
        return self.isomorphism is not None and self.bridge is not None


def closed_subfamilies(family: SetFamily) -> Poset:
    """
    The subfamilies that contain the full set and are closed under
    intersection, ordered by inclusion and named by their labels.
    """
    full = family.full
    others = [m for m in family.canonical() if m != full]
    found: list[SetFamily] = []
    for size in range(len(others) + 1):
        for chosen in it.combinations(others, size):
            sub = set_family(family.base, (full, *chosen))
            if sub.intersection_witness() is None:
                found.append(sub)
    n = len(found)
    relation = np.zeros((n, n), dtype=bool)
    for i, left in enumerate(found):
        for j, right in enumerate(found):
            relation[i, j] = left.member_set <= right.member_set
    return relation_poset([f.label() for f in found], relation)


def interval_isomorphism(
    space: Poset,
    closure: ClosureOperator,
    scale: FiniteLattice,
    cap: int = DEFAULT_CAP,
    logger: None | Logger = None,
) -> IntervalReport:
    """
    Compare the realizable families on the quotient of the space by the closure
    operator with the interval of realizable families on the space between the
    bottom and the family of block unions. Requires a closure operator on the
    scale whose quotient is isomorphic to the up-sets of the space.
    """
    logger = logger or silent_logger
    up_sets = enumerate_up_sets(space, cap)
    scale_closure = find_closure_for_target(
        scale, family_lattice(up_sets).lattice.order, cap
    )
    if scale_closure is None:
        raise PreconditionUnmet(
            'no closure operator on the scale has a quotient isomorphic to up-sets'
        )

    embedding = embed_upset_quotient(space, closure, cap)
    unions = embedding.image
    realized = representable(unions, space, scale, cap)
    if isinstance(realized, Refutation):
        logger('❌ block unions are not a cut family: {}', realized)
        return IntervalReport(
            scale_closure, embedding, None, realized, None, None, None, None, None
        )

    whole = enumerate_realizable_families(space, scale, cap=cap, logger=logger)
    interval = whole.interval(whole.bottom, cut_family(realized).family)
    quotient_side = enumerate_realizable_families(
        embedding.quotient.order, scale, cap=cap, logger=logger
    )
    subfamilies = closed_subfamilies(unions)

    isomorphism = poset_isomorphism(quotient_side.order, interval)
    bridge = poset_isomorphism(interval, subfamilies)
    logger(
        '{} interval isomorphism, {} bridge to closed subfamilies',
        '✅' if isomorphism else '❌',
        '✅' if bridge else '❌',
    )
    return IntervalReport(
        scale_closure,
        embedding,
        realized,
        None,
        interval,
        quotient_side,
        subfamilies,
        isomorphism,
        bridge,
    )
