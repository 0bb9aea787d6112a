from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property, reduce
from types import MappingProxyType

import numpy as np

from ..error import (
    MissingFullSet,
    NotALattice,
    NotDistributive,
    NotIntersectionClosed,
    UnknownName,
)
from .poset import (
    enumerate_up_sets,
    family_poset,
    IsoWitness,
    Poset,
    SetFamily,
    verify_isomorphism,
    witness,
)
from .type import Element, Preserve, Relation, Subset, Table


def _frozen_table(table: Table) -> Table:
    table.flags.writeable = False
    return table


def _bound_table(relation: Relation, names: tuple[Element, ...], what: str) -> Table:
    """
    Tabulate the least upper bounds for the given relation. The common upper
    bounds of `i` and `j` are the conjunction of their rows. They have a least
    element `k` exactly when that conjunction equals row `k`.
    """
    n = len(names)
    identity = {relation[k].tobytes(): k for k in range(n)}
    table = np.zeros((n, n), dtype=np.intp)
    for i in range(n):
        for j in range(i, n):
            k = identity.get((relation[i] & relation[j]).tobytes())
            if k is None:
                raise NotALattice(
                    f'"{names[i]}" and "{names[j]}" have no {what}',
                    (names[i], names[j]),
                )
            table[i, j] = table[j, i] = k
    return _frozen_table(table)


# ======================================================================================


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    """
    A finite and hence complete lattice. Meets and joins are tabulated by
    position. Everything else delegates to the underlying poset.
    """

    order: Poset
    meet_table: Table
    join_table: Table
    bottom: Element
    top: Element

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.order)

    def __contains__(self, name: object) -> bool:
        return name in self.order

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return self.order == other.order

    def __hash__(self) -> int:
        return hash(self.order)

    def __repr__(self) -> str:
        return f'FiniteLattice({self.order!r})'

    @property
    def elements(self) -> tuple[Element, ...]:
        return self.order.elements

    def position(self, name: Element) -> int:
        return self.order.position(name)

    def le(self, x: Element, y: Element) -> bool:
        return self.order.le(x, y)

    def meet(self, x: Element, y: Element) -> Element:
        k = self.meet_table[self.position(x), self.position(y)]
        return self.elements[int(k)]

    def join(self, x: Element, y: Element) -> Element:
        k = self.join_table[self.position(x), self.position(y)]
        return self.elements[int(k)]

    def meet_all(self, names: Iterable[Element]) -> Element:
        """The meet of any subset. The meet of no elements is the top."""
        return reduce(self.meet, names, self.top)

    def join_all(self, names: Iterable[Element]) -> Element:
        return reduce(self.join, names, self.bottom)


def as_lattice(poset: Poset) -> FiniteLattice:
    """
    Enrich a poset with its meet and join tables. Fail if the poset is empty or
    some pair lacks a greatest lower or a least upper bound.
    """
    if len(poset) == 0:
        raise NotALattice('the empty poset is not a lattice')

    names = poset.elements
    join_table = _bound_table(poset.leq, names, 'least upper bound')
    meet_table = _bound_table(poset.leq.T, names, 'greatest lower bound')

    bottom = reduce(lambda k, i: int(meet_table[k, i]), range(len(names)), 0)
    top = reduce(lambda k, i: int(join_table[k, i]), range(len(names)), 0)
    return FiniteLattice(poset, meet_table, join_table, names[bottom], names[top])


# ======================================================================================
# Families of Sets as Lattices


@dataclass(frozen=True, eq=False)
class FamilyLattice:
    """
    An intersection-closed family containing the full base set, ordered by
    reverse inclusion. The full set is the bottom and the intersection of all
    members is the top. The join is intersection and the meet of some members
    is the least member containing their union. The generic lattice's elements
    are the members' labels.
    """

    family: SetFamily
    lattice: FiniteLattice

    def __len__(self) -> int:
        return len(self.family)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.family)

    def __contains__(self, member: object) -> bool:
        return member in self.family

    @cached_property
    def by_label(self) -> Mapping[Element, Subset]:
        return MappingProxyType({self.family.label(m): m for m in self.family})

    def subset(self, label: Element) -> Subset:
        try:
            return self.by_label[label]
        except KeyError:
            raise UnknownName(label, 'family') from None

    def label(self, member: Iterable[Element]) -> Element:
        return self.family.label(member)

    @property
    def bottom(self) -> Subset:
        return self.subset(self.lattice.bottom)

    @property
    def top(self) -> Subset:
        return self.subset(self.lattice.top)

    def least_above(self, subset: Iterable[Element]) -> Subset:
        """The ⊆-least member containing the given elements."""
        subset = frozenset(subset)
        return reduce(
            frozenset.intersection,
            (m for m in self.family if subset <= m),
            self.family.full,
        )

    def meet(self, *members: Subset) -> Subset:
        return self.least_above(frozenset().union(*members)) if members else self.top

    def join(self, *members: Subset) -> Subset:
        return reduce(frozenset.intersection, members, self.family.full)


def family_lattice(family: SetFamily) -> FamilyLattice:
    if family.full not in family:
        raise MissingFullSet()
    missing = family.intersection_witness()
    if missing is not None:
        raise NotIntersectionClosed(*(family.label(m) for m in missing))
    return FamilyLattice(family, as_lattice(family_poset(family)))


def lattice_from_family(family: SetFamily) -> FiniteLattice:
    """The generic lattice of a family, whose elements are the members' labels."""
    return family_lattice(family).lattice


# ======================================================================================
# Irreducibles and Distributivity


def meet_irreducibles(lattice: FiniteLattice) -> frozenset[Element]:
    """
    Determine the meet-irreducible elements by brute force: A non-top element is
    irreducible if it is not the meet of two elements other than itself.
    """
    meet = lattice.meet_table
    n = len(lattice)
    top = lattice.position(lattice.top)
    result: set[Element] = set()
    for q in range(n):
        if q == top:
            continue
        if not any(
            meet[x, y] == q for x in range(n) for y in range(x, n) if q not in (x, y)
        ):
            result.add(lattice.elements[q])
    return frozenset(result)


def is_distributive(lattice: FiniteLattice) -> None | tuple[Element, Element, Element]:
    """
    Scan all triples for a violation of x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z).
    Return the first violating triple in declaration order or `None`.
    """
    meet, join = lattice.meet_table, lattice.join_table
    left = meet[np.arange(len(lattice))[:, None, None], join[None, :, :]]
    right = join[meet[:, :, None], meet[:, None, :]]
    violations = np.argwhere(left != right)
    if len(violations) == 0:
        return None
    x, y, z = (lattice.elements[int(i)] for i in violations[0])
    return x, y, z


def birkhoff_representation(lattice: FiniteLattice) -> IsoWitness:
    """
    Represent a distributive lattice by the up-sets of its meet-irreducibles
    under reverse inclusion, mapping each element to the irreducibles above it.
    """
    violation = is_distributive(lattice)
    if violation is not None:
        raise NotDistributive(*violation)

    irreducibles = lattice.order.subposet(meet_irreducibles(lattice))
    target = family_lattice(enumerate_up_sets(irreducibles))
    mapping = {
        a: target.label(m for m in irreducibles if lattice.le(a, m))
        for a in lattice
    }
    result = witness(
        lattice.order,
        target.lattice.order,
        mapping,
        (Preserve.ORDER, Preserve.MEETS, Preserve.JOINS, Preserve.BOUNDS),
    )
    assert verify_isomorphism(result), 'Birkhoff map is not an isomorphism'
    return result


# ======================================================================================
# Embeddings


def find_bound_preserving_embedding(
    source: FiniteLattice, target: FiniteLattice
) -> None | IsoWitness:
    """
    Search for the lexicographically least order-embedding of the source into
    the target that maps bottom to bottom and top to top. Meets and joins need
    not be preserved.
    """
    n, m = len(source), len(target)
    if n > m:
        return None

    sleq, tleq = source.order.leq, target.order.leq
    pinned = {
        source.position(source.bottom): target.position(target.bottom),
        source.position(source.top): target.position(target.top),
    }
    if source.bottom == source.top and target.bottom != target.top:
        return None

    assignment = [-1] * n
    used = [False] * m

    def search(i: int) -> bool:
        if i == n:
            return True
        candidates = [pinned[i]] if i in pinned else range(m)
        for j in candidates:
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
        source.order,
        target.order,
        {source.elements[i]: target.elements[assignment[i]] for i in range(n)},
        (Preserve.ORDER, Preserve.BOUNDS),
        onto=False,
    )
