from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from types import MappingProxyType
from typing import NamedTuple, TypeAlias

import numpy as np

from ..error import (
    CapExceeded,
    CarrierMismatch,
    NotMooreFamily,
    PreconditionViolated,
    UnknownName,
)
from .lattice import FamilyLattice, family_lattice, FiniteLattice, meet_irreducibles
from .poset import (
    IsoWitness,
    poset_isomorphism,
    Poset,
    relation_poset,
    SetFamily,
    subset_key,
    verify_isomorphism,
    witness,
)
from .type import Axiom, DEFAULT_CAP, Element, Reading, Subset


Carrier: TypeAlias = Poset | FiniteLattice


def order_of(carrier: Carrier) -> Poset:
    return carrier.order if isinstance(carrier, FiniteLattice) else carrier


# ======================================================================================
# Closure Operators


@dataclass(frozen=True, eq=False)
class ClosureOperator:
    """
    A self-map on a poset or lattice that is inflationary, monotone, and
    idempotent. Instances are only created after the axioms have been checked.
    """

    carrier: Carrier
    image: Mapping[Element, Element]

    def __call__(self, name: Element) -> Element:
        try:
            return self.image[name]
        except KeyError:
            raise UnknownName(name) from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClosureOperator):
            return NotImplemented
        return self.order == other.order and dict(self.image) == dict(other.image)

    def __hash__(self) -> int:
        return hash((self.order, tuple(self.image[x] for x in self.order)))

    def __repr__(self) -> str:
        moves = ' '.join(f'{x}↦{y}' for x, y in self.image.items() if x != y)
        return f'ClosureOperator({moves or "identity"})'

    @property
    def order(self) -> Poset:
        return order_of(self.carrier)

    @cached_property
    def closed(self) -> tuple[Element, ...]:
        """The fixed points in declaration order."""
        return tuple(x for x in self.order if self.image[x] == x)

    def is_identity(self) -> bool:
        return all(self.image[x] == x for x in self.order)


@dataclass(frozen=True, slots=True)
class ClosureViolation:
    axiom: Axiom
    witness: tuple[Element, ...]

    def __str__(self) -> str:
        names = ', '.join(f'"{x}"' for x in self.witness)
        return f'{self.axiom} fails at {names}'


@dataclass(frozen=True, slots=True)
class AxiomReport:
    """All violations of the closure axioms, per axiom in declaration order."""

    violations: tuple[ClosureViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def failures(self, axiom: Axiom) -> tuple[ClosureViolation, ...]:
        return tuple(v for v in self.violations if v.axiom is axiom)

    def passed(self, axiom: Axiom) -> bool:
        return not self.failures(axiom)

    def first(self) -> None | ClosureViolation:
        return self.violations[0] if self.violations else None


def _checked_image(order: Poset, mapping: Mapping[Element, Element]) -> None:
    if set(mapping) != set(order.elements):
        raise PreconditionViolated('closure map is not total on its carrier')
    for name in mapping.values():
        order.position(name)


def axiom_report(carrier: Carrier, mapping: Mapping[Element, Element]) -> AxiomReport:
    order = order_of(carrier)
    _checked_image(order, mapping)

    violations = [
        ClosureViolation(Axiom.INFLATIONARY, (x,))
        for x in order
        if not order.le(x, mapping[x])
    ]
    violations.extend(
        ClosureViolation(Axiom.MONOTONE, (x, y))
        for x in order
        for y in order
        if x != y and order.le(x, y) and not order.le(mapping[x], mapping[y])
    )
    violations.extend(
        ClosureViolation(Axiom.IDEMPOTENT, (x,))
        for x in order
        if mapping[mapping[x]] != mapping[x]
    )
    return AxiomReport(tuple(violations))


def validate_closure(
    carrier: Carrier, mapping: Mapping[Element, Element]
) -> ClosureOperator | ClosureViolation:
    """
    Check the closure axioms. Return the operator if all hold and the first
    violation otherwise.
    """
    violation = axiom_report(carrier, mapping).first()
    if violation is not None:
        return violation
    return ClosureOperator(carrier, MappingProxyType(dict(mapping)))


def _closure(carrier: Carrier, mapping: Mapping[Element, Element]) -> ClosureOperator:
    result = validate_closure(carrier, mapping)
    assert isinstance(result, ClosureOperator), f'{result}'
    return result


def identity_closure(carrier: Carrier) -> ClosureOperator:
    return _closure(carrier, {x: x for x in order_of(carrier)})


def closed_elements(closure: ClosureOperator) -> frozenset[Element]:
    return frozenset(closure.closed)


# ======================================================================================
# Moore Families


def closure_from_moore_family(
    lattice: FiniteLattice, family: Iterable[Element]
) -> ClosureOperator:
    """Map every element to the meet of the family's members above it."""
    members = lattice.order.ordered(set(family))
    if lattice.top not in members:
        raise NotMooreFamily('Moore family lacks the top', (lattice.top,))
    member_set = set(members)
    for i, x in enumerate(members):
        for y in members[i + 1 :]:
            if lattice.meet(x, y) not in member_set:
                raise NotMooreFamily(
                    f'meet of "{x}" and "{y}" is not in Moore family', (x, y)
                )

    return _closure(
        lattice,
        {
            p: lattice.meet_all(s for s in members if lattice.le(p, s))
            for p in lattice
        },
    )


@lru_cache(maxsize=256)
def moore_families(
    lattice: FiniteLattice, cap: int = DEFAULT_CAP
) -> tuple[frozenset[Element], ...]:
    """
    Enumerate all Moore families of the lattice, i.e., meet-closed subsets
    containing the top, ordered by size and then characteristic vector.
    """
    n = len(lattice)
    top = lattice.position(lattice.top)
    others = [i for i in range(n) if i != top]
    if 1 << len(others) > cap:
        raise CapExceeded('Moore family search', cap, 1 << len(others))

    meet = lattice.meet_table
    pairs = [(i, j, int(meet[i, j])) for i in range(n) for j in range(i + 1, n)]

    masks: list[int] = []
    for bits in range(1 << len(others)):
        mask = 1 << top
        for k, i in enumerate(others):
            if bits >> k & 1:
                mask |= 1 << i
        if all(
            mask >> k & 1 for i, j, k in pairs if mask >> i & 1 and mask >> j & 1
        ):
            masks.append(mask)

    order = lattice.order
    families = [order.subset(mask) for mask in masks]
    families.sort(key=lambda s: (len(s), subset_key(order, s)))
    return tuple(families)


def find_closure_for_target(
    lattice: FiniteLattice, target: Poset, cap: int = DEFAULT_CAP
) -> None | ClosureOperator:
    """
    Find the first Moore family whose sub-poset is isomorphic to the target and
    return its closure operator, whose quotient then is isomorphic to the target.
    """
    for family in moore_families(lattice, cap):
        if len(family) != len(target):
            continue
        if poset_isomorphism(lattice.order.subposet(family), target) is not None:
            return closure_from_moore_family(lattice, family)
    return None


def _search_closures(poset: Poset, cap: int) -> Iterator[dict[Element, Element]]:
    """
    Enumerate the closure operators of an arbitrary poset by backtracking over
    inflationary assignments, pruning monotonicity and idempotence violations
    as soon as both ends have been assigned.
    """
    n = len(poset)
    leq = poset.leq
    candidates = [[int(j) for j in np.flatnonzero(leq[i])] for i in range(n)]
    assignment = [-1] * n
    visited = 0

    def consistent(i: int, j: int) -> bool:
        if j < i and assignment[j] != j:
            return False
        for k in range(i):
            fk = assignment[k]
            if fk == i and j != i:
                return False
            if leq[k, i] and not leq[fk, j]:
                return False
            if leq[i, k] and not leq[j, fk]:
                return False
        return True

    def search(i: int) -> Iterator[list[int]]:
        nonlocal visited
        visited += 1
        if visited > cap:
            raise CapExceeded('closure operator search', cap, visited)
        if i == n:
            yield assignment
            return
        for j in candidates[i]:
            if consistent(i, j):
                assignment[i] = j
                yield from search(i + 1)
        assignment[i] = -1

    names = poset.elements
    for found in search(0):
        yield {names[i]: names[found[i]] for i in range(n)}


def enumerate_closure_operators(
    carrier: Carrier, cap: int = DEFAULT_CAP
) -> tuple[ClosureOperator, ...]:
    if isinstance(carrier, FiniteLattice):
        return tuple(
            closure_from_moore_family(carrier, family)
            for family in moore_families(carrier, cap)
        )
    return tuple(_closure(carrier, m) for m in _search_closures(carrier, cap))


# ======================================================================================
# Quotients


@dataclass(frozen=True, eq=False)
class QuotientPoset:
    """
    The blocks of elements with the same closure, ordered by their closures.
    Blocks appear in declaration order of their tops, i.e., closed elements, and
    the order's elements are the blocks' labels.
    """

    carrier: Poset
    blocks: tuple[Subset, ...]
    order: Poset
    block_tops: tuple[Element, ...]
    closed_iso: IsoWitness

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def labels(self) -> tuple[Element, ...]:
        return self.order.elements

    @cached_property
    def block_index(self) -> Mapping[Element, int]:
        return MappingProxyType(
            {x: i for i, block in enumerate(self.blocks) for x in block}
        )

    def block_label(self, name: Element) -> Element:
        """The label of the block containing the element."""
        try:
            return self.labels[self.block_index[name]]
        except KeyError:
            raise UnknownName(name) from None

    def block(self, label: Element) -> Subset:
        return self.blocks[self.order.position(label)]


def quotient_by_closure(carrier: Carrier, closure: ClosureOperator) -> QuotientPoset:
    order = order_of(carrier)
    if closure.order != order:
        raise CarrierMismatch('closure operator is defined on a different carrier')

    tops = closure.closed
    blocks = tuple(frozenset(x for x in order if closure(x) == t) for t in tops)
    labels = [order.label(block) for block in blocks]
    positions = [order.position(t) for t in tops]
    quotient = relation_poset(labels, order.leq[np.ix_(positions, positions)])

    closed_iso = witness(
        quotient, order.subposet(tops), dict(zip(labels, tops))
    )
    assert verify_isomorphism(closed_iso), 'quotient differs from closed elements'
    return QuotientPoset(order, blocks, quotient, tops, closed_iso)


class Composite(NamedTuple):
    closure: ClosureOperator
    witness: None | IsoWitness


def compose_closures(
    lattice: FiniteLattice, inner: ClosureOperator, outer: ClosureOperator
) -> Composite:
    """
    Compose a closure operator on the lattice with a closure operator on the
    inner one's closed elements. The witness maps each block of the composite's
    quotient to the block of the nested quotient that contains its top; it is
    `None` if that map fails to be an isomorphism.
    """
    if inner.order != lattice.order:
        raise CarrierMismatch('inner closure is defined on a different carrier')
    if outer.order != lattice.order.subposet(inner.closed):
        raise CarrierMismatch('outer closure is not defined on the closed elements')

    composite = _closure(lattice, {p: outer(inner(p)) for p in lattice})
    direct = quotient_by_closure(lattice, composite)

    first = quotient_by_closure(lattice, inner)
    transported = _closure(
        first.order,
        {
            label: first.block_label(outer(top))
            for label, top in zip(first.labels, first.block_tops)
        },
    )
    nested = quotient_by_closure(first.order, transported)

    candidate = witness(
        direct.order,
        nested.order,
        {
            label: nested.block_label(first.block_label(top))
            for label, top in zip(direct.labels, direct.block_tops)
        },
    )
    return Composite(composite, candidate if verify_isomorphism(candidate) else None)


# ======================================================================================
# The Explicit Restriction Formula


@dataclass(frozen=True, eq=False)
class ClosureCandidate:
    """
    A total self-map on a family lattice that is meant to be a closure operator.
    The report records which axioms actually hold.
    """

    carrier: FamilyLattice
    image: Mapping[Element, Element]
    report: AxiomReport
    reading: Reading

    def __call__(self, member: Iterable[Element]) -> Subset:
        label = self.carrier.label(member)
        return self.carrier.subset(self.image[label])

    @property
    def is_closure(self) -> bool:
        return self.report.ok


def restriction_candidate(
    lattice: FamilyLattice, sub: SetFamily, reading: Reading = Reading.CLOSURE
) -> ClosureCandidate:
    """
    Evaluate the explicit formula for a closure operator on a cut family
    `lattice` whose closed elements are meant to be the intersection-closed
    subfamily `sub`. For a member `p`, collect the members of `sub` other than
    its top that are below `p` under inclusion, strictly so if `p` belongs to
    `sub` but is not meet-irreducible there. Then combine them with the meet of
    `sub`, i.e., the least member containing their union. The empty
    combination is the top of `lattice`. The intersection reading combines the
    collected members with plain intersection instead.
    """
    if any(member not in lattice for member in sub):
        raise PreconditionViolated('subfamily has members outside the family')
    if sub.full not in sub:
        raise PreconditionViolated('subfamily lacks the full set')
    if sub.intersection_witness() is not None:
        raise PreconditionViolated('subfamily is not closed under intersection')

    restricted = family_lattice(sub)
    sub_top = restricted.top
    irreducible = {restricted.subset(m) for m in meet_irreducibles(restricted.lattice)}

    def evaluate(p: Subset) -> Subset:
        strict = p in sub and p not in irreducible
        below = [
            q for q in sub if q != sub_top and (q < p if strict else q <= p)
        ]
        if not below:
            return lattice.top
        if reading is Reading.INTERSECTION:
            return reduce(frozenset.intersection, below)
        return restricted.least_above(frozenset().union(*below))

    image = {lattice.label(p): lattice.label(evaluate(p)) for p in lattice}
    report = axiom_report(lattice.lattice, image)
    return ClosureCandidate(lattice, MappingProxyType(image), report, reading)
