from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
import re
from types import MappingProxyType
from typing import Self

import numpy as np

from ..error import (
    CapExceeded,
    CycleDetected,
    DuplicateElement,
    InvalidName,
    NotAPartialOrder,
    UnknownName,
)
from .type import DEFAULT_CAP, Element, FamilyOrder, Preserve, Relation, Subset


_NAME = re.compile(r'^\S+$')


def _check_names(elements: Sequence[str]) -> tuple[Element, ...]:
    seen: set[str] = set()
    for name in elements:
        if not isinstance(name, str) or _NAME.match(name) is None:
            raise InvalidName(str(name))
        if name in seen:
            raise DuplicateElement(name)
        seen.add(name)
    return tuple(elements)


def _frozen(relation: Relation) -> Relation:
    relation = np.array(relation, dtype=bool)
    if relation.size == 0:
        relation = relation.reshape(0, 0)
    relation.flags.writeable = False
    return relation


def _transitive_closure(relation: Relation) -> Relation:
    """Compute the transitive closure with Warshall's algorithm, one row at a time."""
    closure = np.array(relation, dtype=bool)
    for k in range(len(closure)):
        closure |= closure[:, k, None] & closure[None, k, :]
    return closure


# ======================================================================================


@dataclass(frozen=True, eq=False)
class Poset:
    """
    A finite poset. The elements are names, listed in declaration order, which
    also is the order of every iteration and search. The order relation is a
    read-only boolean matrix with `leq[i, j]` iff element `i` is below `j`.
    """

    elements: tuple[Element, ...]
    leq: Relation

    def __post_init__(self) -> None:
        object.__setattr__(self, 'elements', _check_names(self.elements))
        object.__setattr__(self, 'leq', _frozen(self.leq))
        n = len(self.elements)
        if self.leq.shape != (n, n):
            raise NotAPartialOrder(
                f'relation has shape {self.leq.shape} for {n} elements'
            )

        leq = self.leq
        if not leq[np.diag_indices_from(leq)].all():
            raise NotAPartialOrder('relation is not reflexive')
        both = leq & leq.T
        both[np.diag_indices_from(both)] = False
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise CycleDetected(self.elements[i], self.elements[j])
        if (np.matmul(leq, leq) & ~leq).any():
            raise NotAPartialOrder('relation is not transitive')

    # ----------------------------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __contains__(self, name: object) -> bool:
        return name in self.index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self.leq, other.leq)

    def __hash__(self) -> int:
        return hash((self.elements, self.leq.tobytes()))

    def __repr__(self) -> str:
        covers = ' '.join(f'{x}<{y}' for x, y in self.covers())
        return f'Poset({" ".join(self.elements)}; {covers})'

    # ----------------------------------------------------------------------------------

    @cached_property
    def index(self) -> Mapping[Element, int]:
        return MappingProxyType({name: i for i, name in enumerate(self.elements)})

    def position(self, name: Element) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownName(name) from None

    def le(self, x: Element, y: Element) -> bool:
        return bool(self.leq[self.position(x), self.position(y)])

    def lt(self, x: Element, y: Element) -> bool:
        return x != y and self.le(x, y)

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        """Bitmasks of the principal filters, indexed by position."""
        return tuple(
            sum(1 << int(j) for j in np.flatnonzero(row)) for row in self.leq
        )

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        return tuple(
            sum(1 << int(j) for j in np.flatnonzero(column))
            for column in self.leq.T
        )

    def mask(self, subset: Iterable[Element]) -> int:
        result = 0
        for name in subset:
            result |= 1 << self.position(name)
        return result

    def subset(self, mask: int) -> Subset:
        return frozenset(
            name for i, name in enumerate(self.elements) if mask >> i & 1
        )

    def ordered(self, subset: Iterable[Element]) -> tuple[Element, ...]:
        """The given names in declaration order."""
        return tuple(sorted(subset, key=self.position))

    def label(self, subset: Iterable[Element]) -> str:
        return '{' + ','.join(self.ordered(subset)) + '}'

    # ----------------------------------------------------------------------------------

    @cached_property
    def cover_relation(self) -> Relation:
        """out[i, j] iff j covers i, i.e., i < j with nothing in between."""
        lt = np.array(self.leq)
        lt[np.diag_indices_from(lt)] = False
        inbetween = np.matmul(lt, lt)
        return _frozen(lt & ~inbetween)

    def covers(self) -> tuple[tuple[Element, Element], ...]:
        names = self.elements
        return tuple(
            (names[int(i)], names[int(j)]) for i, j in np.argwhere(self.cover_relation)
        )

    def lower_covers(self, name: Element) -> tuple[Element, ...]:
        column = self.cover_relation[:, self.position(name)]
        return tuple(self.elements[int(i)] for i in np.flatnonzero(column))

    def upper_covers(self, name: Element) -> tuple[Element, ...]:
        row = self.cover_relation[self.position(name), :]
        return tuple(self.elements[int(j)] for j in np.flatnonzero(row))

    def minimal(self) -> tuple[Element, ...]:
        return tuple(x for x in self.elements if not self.lower_covers(x))

    def maximal(self) -> tuple[Element, ...]:
        return tuple(x for x in self.elements if not self.upper_covers(x))

    def subposet(self, names: Iterable[Element]) -> Self:
        """The sub-poset on the given names, kept in this poset's declaration order."""
        ordered = self.ordered(set(names))
        positions = [self.position(name) for name in ordered]
        return type(self)(ordered, self.leq[np.ix_(positions, positions)])

    def dual(self) -> Self:
        return type(self)(self.elements, self.leq.T)

    def renamed(self, names: Mapping[Element, Element]) -> Self:
        return type(self)(tuple(names[x] for x in self.elements), self.leq)


# ======================================================================================
# Construction


def relation_poset(elements: Sequence[Element], leq: Relation) -> Poset:
    """Create a poset from its full order relation."""
    return Poset(_check_names(elements), np.asarray(leq, dtype=bool))


def build_poset(
    elements: Sequence[Element], covers: Iterable[tuple[Element, Element]]
) -> Poset:
    """
    Create a poset from its elements and cover pairs `(x, y)`, each meaning
    that `x` is immediately below `y`. The order relation is the reflexive and
    transitive closure of the cover pairs, which must not contain a cycle.
    """
    names = _check_names(elements)
    index = {name: i for i, name in enumerate(names)}
    relation = np.eye(len(names), dtype=bool)

    for x, y in covers:
        for name in (x, y):
            if name not in index:
                raise UnknownName(name)
        if x == y:
            raise NotAPartialOrder(f'"{x}" cannot cover itself')
        relation[index[x], index[y]] = True

    return Poset(names, _transitive_closure(relation))


def antichain_poset(elements: Sequence[Element]) -> Poset:
    names = _check_names(elements)
    return Poset(names, np.eye(len(names), dtype=bool))


def chain_poset(elements: Sequence[Element]) -> Poset:
    names = _check_names(elements)
    return Poset(names, np.triu(np.ones((len(names), len(names)), dtype=bool)))


# ======================================================================================
# Families of Subsets


@dataclass(frozen=True, eq=False)
class SetFamily:
    """
    A family of distinct subsets of a poset's elements. The members keep their
    given order. Equality ignores that order though.
    """

    base: Poset
    members: tuple[Subset, ...]

    def __post_init__(self) -> None:
        seen: set[Subset] = set()
        for member in self.members:
            for name in member:
                if name not in self.base:
                    raise UnknownName(name, 'family\'s base')
            if member in seen:
                raise DuplicateElement(self.base.label(member))
            seen.add(member)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.members)

    def __contains__(self, member: object) -> bool:
        return member in self.member_set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetFamily):
            return NotImplemented
        return (
            set(self.base.elements) == set(other.base.elements)
            and self.member_set == other.member_set
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.base.elements), self.member_set))

    def __repr__(self) -> str:
        return f'SetFamily({self.label()})'

    @cached_property
    def member_set(self) -> frozenset[Subset]:
        return frozenset(self.members)

    @property
    def full(self) -> Subset:
        return frozenset(self.base.elements)

    def label(self, member: None | Iterable[Element] = None) -> str:
        """Label a member or, without argument, the family in canonical order."""
        if member is not None:
            return self.base.label(member)
        return '{' + ','.join(self.base.label(m) for m in self.canonical()) + '}'

    def canonical(self) -> tuple[Subset, ...]:
        """The members ordered by characteristic vector over the base's elements."""
        return tuple(sorted(self.members, key=lambda m: subset_key(self.base, m)))

    def intersection_witness(self) -> None | tuple[Subset, Subset]:
        """Find the first pair of members whose intersection is not a member."""
        for i, left in enumerate(self.members):
            for right in self.members[i + 1 :]:
                if left & right not in self.member_set:
                    return left, right
        return None

    def union_witness(self) -> None | tuple[Subset, Subset]:
        for i, left in enumerate(self.members):
            for right in self.members[i + 1 :]:
                if left | right not in self.member_set:
                    return left, right
        return None

    def is_cut_like(self) -> bool:
        return self.full in self.member_set and self.intersection_witness() is None


def set_family(base: Poset, members: Iterable[Iterable[Element]]) -> SetFamily:
    return SetFamily(base, tuple(frozenset(m) for m in members))


def subset_key(poset: Poset, subset: Iterable[Element]) -> tuple[int, ...]:
    """The characteristic vector of a subset in declaration order."""
    mask = poset.mask(subset)
    return tuple(mask >> i & 1 for i in range(len(poset)))


def family_poset(
    family: SetFamily, order: FamilyOrder = FamilyOrder.SUPERSET
) -> Poset:
    """
    Turn a family into a poset whose elements are the members' labels. Under
    the default superset order, larger sets are lower.
    """
    members = family.members
    n = len(members)
    relation = np.zeros((n, n), dtype=bool)
    for i, left in enumerate(members):
        for j, right in enumerate(members):
            if order is FamilyOrder.SUPERSET:
                relation[i, j] = left >= right
            else:
                relation[i, j] = left <= right
    return relation_poset([family.label(m) for m in members], relation)


# ======================================================================================
# Up-Sets


def principal_filter(poset: Poset, name: Element) -> Subset:
    return poset.subset(poset.up_masks[poset.position(name)])


def is_up_set(poset: Poset, subset: Iterable[Element]) -> bool:
    mask = poset.mask(subset)
    up = poset.up_masks
    return all(up[i] & ~mask == 0 for i in range(len(poset)) if mask >> i & 1)


def enumerate_up_sets(poset: Poset, cap: int = DEFAULT_CAP) -> SetFamily:
    """
    Enumerate all up-sets of the poset, including the empty set and the full
    set. Every up-set is generated exactly once, from the antichain of its
    minimal elements, as the union of their principal filters.
    """
    n = len(poset)
    up = poset.up_masks
    comparable = [up[i] | poset.down_masks[i] for i in range(n)]
    masks: list[int] = []

    def extend(start: int, blocked: int, upset: int) -> None:
        masks.append(upset)
        if len(masks) > cap:
            raise CapExceeded('up-set enumeration', cap, len(masks))
        for i in range(start, n):
            if not blocked >> i & 1:
                extend(i + 1, blocked | comparable[i], upset | up[i])

    extend(0, 0, 0)
    masks.sort(key=lambda mask: tuple(mask >> i & 1 for i in range(n)))
    return SetFamily(poset, tuple(poset.subset(mask) for mask in masks))


# ======================================================================================
# Isomorphisms


@dataclass(frozen=True)
class IsoWitness:
    """
    A map between two carriers together with the structure it preserves. An
    isomorphism is onto, an embedding is not.
    """

    source: Poset
    target: Poset
    mapping: Mapping[Element, Element]
    preserves: frozenset[Preserve]
    onto: bool = True

    def __getitem__(self, name: Element) -> Element:
        return self.mapping[name]

    def inverse(self) -> 'IsoWitness':
        if not self.onto:
            raise ValueError('an embedding has no inverse')
        return IsoWitness(
            self.target,
            self.source,
            MappingProxyType({y: x for x, y in self.mapping.items()}),
            self.preserves,
        )


def witness(
    source: Poset,
    target: Poset,
    mapping: Mapping[Element, Element],
    preserves: Iterable[Preserve] = (Preserve.ORDER,),
    onto: bool = True,
) -> IsoWitness:
    return IsoWitness(
        source, target, MappingProxyType(dict(mapping)), frozenset(preserves), onto
    )


def verify_isomorphism(candidate: IsoWitness) -> bool:
    """
    Check that the witness is a total, injective map that is an order-embedding,
    i.e., preserves and reflects the order, and, if onto, also surjective.
    """
    source, target, mapping = candidate.source, candidate.target, candidate.mapping
    if set(mapping.keys()) != set(source.elements):
        return False
    images = list(mapping.values())
    if len(set(images)) != len(images) or any(y not in target for y in images):
        return False
    if candidate.onto and len(images) != len(target):
        return False
    return all(
        source.le(x, y) == target.le(mapping[x], mapping[y])
        for x in source
        for y in source
    )


def _invariants(poset: Poset) -> list[tuple[int, int, int, int, int]]:
    """Per element: lower covers, upper covers, up-set size, down-set size, height."""
    cover = poset.cover_relation
    below = poset.leq.sum(axis=0)
    above = poset.leq.sum(axis=1)
    height = [0] * len(poset)
    for i in sorted(range(len(poset)), key=lambda k: int(below[k])):
        lower = np.flatnonzero(cover[:, i])
        height[i] = 1 + max((height[int(k)] for k in lower), default=-1)
    return [
        (
            int(cover[:, i].sum()),
            int(cover[i, :].sum()),
            int(above[i]),
            int(below[i]),
            height[i],
        )
        for i in range(len(poset))
    ]


def poset_isomorphism(source: Poset, target: Poset) -> None | IsoWitness:
    """
    Find the lexicographically least order-isomorphism between the two posets,
    assigning the source's elements in declaration order and trying the
    target's elements in declaration order. Return `None` if there is none.
    """
    n = len(source)
    if n != len(target):
        return None

    source_invariants = _invariants(source)
    target_invariants = _invariants(target)
    if sorted(source_invariants) != sorted(target_invariants):
        return None

    candidates = [
        [j for j in range(n) if target_invariants[j] == source_invariants[i]]
        for i in range(n)
    ]
    sleq, tleq = source.leq, target.leq
    assignment = [-1] * n
    used = [False] * n

    def search(i: int) -> bool:
        if i == n:
            return True
        for j in candidates[i]:
            if used[j]:
                continue
            if all(
                sleq[i, k] == tleq[j, assignment[k]]
                and sleq[k, i] == tleq[assignment[k], j]
                for k in range(i)
            ):
                assignment[i] = j
                used[j] = True
                if search(i + 1):
                    return True
                used[j] = False
        assignment[i] = -1
        return False

    if not search(0):
        return None
    return witness(
        source,
        target,
        {source.elements[i]: target.elements[assignment[i]] for i in range(n)},
    )
