from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from enum import auto, StrEnum
from types import MappingProxyType
from typing import NamedTuple

from .error import PreconditionViolated, UnknownName
from .order.closure import (
    ClosureCandidate,
    ClosureOperator,
    find_closure_for_target,
    quotient_by_closure,
    QuotientPoset,
    restriction_candidate,
    validate_closure,
)
from .order.lattice import family_lattice, FiniteLattice
from .order.poset import (
    antichain_poset,
    enumerate_up_sets,
    family_poset,
    is_up_set,
    IsoWitness,
    poset_isomorphism,
    Poset,
    set_family,
    SetFamily,
    verify_isomorphism,
    witness,
)
from .order.type import DEFAULT_CAP, Element, Reading, Subset


@dataclass(frozen=True, eq=False)
class FuzzyMap:
    """
    An L-fuzzy set, i.e., a total map from the space's elements to the scale's
    elements. Whether it is an up-set is a matter of checking, not of
    construction.
    """

    space: Poset
    scale: FiniteLattice
    assign: Mapping[Element, Element]

    def __post_init__(self) -> None:
        if set(self.assign) != set(self.space.elements):
            missing = [x for x in self.space if x not in self.assign]
            if missing:
                raise PreconditionViolated(f'map has no value for "{missing[0]}"')
            extra = next(x for x in self.assign if x not in self.space)
            raise UnknownName(extra, 'space')
        for value in self.assign.values():
            if value not in self.scale:
                raise UnknownName(value, 'scale')
        object.__setattr__(
            self,
            'assign',
            MappingProxyType({x: self.assign[x] for x in self.space}),
        )

    def __call__(self, name: Element) -> Element:
        try:
            return self.assign[name]
        except KeyError:
            raise UnknownName(name, 'space') from None

    def __iter__(self) -> Iterator[tuple[Element, Element]]:
        return iter(self.assign.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FuzzyMap):
            return NotImplemented
        return (
            self.space == other.space
            and self.scale == other.scale
            and dict(self.assign) == dict(other.assign)
        )

    def __hash__(self) -> int:
        return hash((self.space, self.scale, tuple(self.assign.values())))

    def __repr__(self) -> str:
        pairs = ' '.join(f'{x}↦{p}' for x, p in self.assign.items())
        return f'FuzzyMap({pairs})'


def fuzzy_map(
    space: Poset, scale: FiniteLattice, assign: Mapping[Element, Element]
) -> FuzzyMap:
    return FuzzyMap(space, scale, dict(assign))


def constant_map(space: Poset, scale: FiniteLattice, value: Element) -> FuzzyMap:
    return FuzzyMap(space, scale, {x: value for x in space})


# ======================================================================================
# Cuts


def p_cut(m: FuzzyMap, p: Element) -> Subset:
    """The elements whose value is at least `p`."""
    scale = m.scale
    scale.position(p)
    return frozenset(x for x in m.space if scale.le(p, m(x)))


@dataclass(frozen=True, eq=False)
class CutReport:
    """
    The cut family, the index of each scale element's cut in that family, and
    for each member the top of the class of scale elements with that cut.
    """

    family: SetFamily
    cut_of: Mapping[Element, int]
    class_tops: tuple[Element, ...]

    def cut(self, p: Element) -> Subset:
        try:
            return self.family.members[self.cut_of[p]]
        except KeyError:
            raise UnknownName(p, 'scale') from None

    def members_by_top(self) -> Iterator[tuple[Element, Subset]]:
        return zip(self.class_tops, self.family.members)


def cut_family(m: FuzzyMap) -> CutReport:
    """
    Collect the cuts of all scale elements. Duplicates are dropped, keeping the
    first occurrence in the scale's declaration order.
    """
    members: list[Subset] = []
    position: dict[Subset, int] = {}
    cut_of: dict[Element, int] = {}
    classes: list[list[Element]] = []

    for p in m.scale:
        cut = p_cut(m, p)
        index = position.get(cut)
        if index is None:
            index = position[cut] = len(members)
            members.append(cut)
            classes.append([])
        cut_of[p] = index
        classes[index].append(p)

    return CutReport(
        SetFamily(m.space, tuple(members)),
        MappingProxyType(cut_of),
        tuple(m.scale.join_all(c) for c in classes),
    )


class UpSetCheck(NamedTuple):
    holds: bool
    cuts_are_up_sets: None | bool
    counterexample: None | Subset


def is_fuzzy_up_set(m: FuzzyMap, cross_check: bool = False) -> UpSetCheck:
    """
    Determine whether the map is monotone. With cross-checking, also test
    whether every cut is an up-set. The two tests must agree. The
    counterexample is the first cut that is not an up-set.
    """
    space, scale = m.space, m.scale
    holds = all(
        scale.le(m(x), m(y)) for x in space for y in space if space.le(x, y)
    )
    if not cross_check:
        return UpSetCheck(holds, None, None)

    counterexample = next(
        (cut for cut in cut_family(m).family if not is_up_set(space, cut)), None
    )
    cuts_are_up_sets = counterexample is None
    if holds != cuts_are_up_sets:
        raise AssertionError(
            f'internal error: monotonicity ({holds}) and up-set cuts '
            f'({cuts_are_up_sets}) disagree for {m!r}'
        )
    return UpSetCheck(holds, cuts_are_up_sets, counterexample)


# ======================================================================================
# The Quotient by Equal Cuts


def approx_closure(m: FuzzyMap) -> ClosureOperator:
    """
    Map each scale element `p` to the meet of the values of its cut. Two
    elements have the same image exactly when they have the same cut.
    """
    scale = m.scale
    image = {p: scale.meet_all(m(x) for x in p_cut(m, p)) for p in scale}
    result = validate_closure(scale, image)
    assert isinstance(result, ClosureOperator), f'{result}'
    return result


class ApproxQuotient(NamedTuple):
    quotient: QuotientPoset
    witness: IsoWitness


def approx_quotient(m: FuzzyMap) -> ApproxQuotient:
    """
    Build the quotient of the scale by equal cuts together with its isomorphism
    onto the cut family under reverse inclusion.
    """
    quotient = quotient_by_closure(m.scale, approx_closure(m))
    family = cut_family(m).family
    result = witness(
        quotient.order,
        family_poset(family),
        {
            label: family.label(p_cut(m, top))
            for label, top in zip(quotient.labels, quotient.block_tops)
        },
    )
    assert verify_isomorphism(result), 'quotient by equal cuts differs from cuts'
    return ApproxQuotient(quotient, result)


# ======================================================================================
# Representability


class Condition(StrEnum):
    """The condition for being a cut family that a refutation names."""

    FULL_SET = auto()
    INTERSECTION = auto()
    UP_SETS = auto()
    MOORE_SEARCH = auto()


@dataclass(frozen=True, slots=True)
class Refutation:
    condition: Condition
    reason: str
    witness: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f'{self.condition}: {self.reason}'


def _rebased(family: SetFamily, space: Poset) -> SetFamily:
    for member in family:
        for name in member:
            if name not in space:
                raise UnknownName(name, 'space')
    return set_family(space, family.members)


def representable(
    family: SetFamily, space: Poset, scale: FiniteLattice, cap: int = DEFAULT_CAP
) -> FuzzyMap | Refutation:
    """
    Decide whether the family is the cut family of an L-fuzzy up-set on the
    space. If so, synthesize that map: With φ the least isomorphism from the
    closed elements of a suitable closure operator onto the family under
    reverse inclusion, map each element `x` to the preimage under φ of the
    least member containing `x`.
    """
    family = _rebased(family, space)
    if family.full not in family:
        return Refutation(Condition.FULL_SET, 'family lacks the full space')
    missing = family.intersection_witness()
    if missing is not None:
        return Refutation(
            Condition.INTERSECTION,
            'family is not closed under intersection',
            tuple(family.label(m) for m in missing),
        )
    for member in family.canonical():
        if not is_up_set(space, member):
            return Refutation(
                Condition.UP_SETS, 'member is not an up-set', (family.label(member),)
            )

    target = family_lattice(family)
    closure = find_closure_for_target(scale, target.lattice.order, cap)
    if closure is None:
        return Refutation(
            Condition.MOORE_SEARCH,
            'no Moore family of the scale is isomorphic to the family',
        )

    phi = poset_isomorphism(scale.order.subposet(closure.closed), target.lattice.order)
    assert phi is not None, 'Moore family lost its isomorphism'
    back = phi.inverse()
    result = FuzzyMap(
        space,
        scale,
        {x: back[target.label(target.least_above((x,)))] for x in space},
    )

    if cut_family(result).family != family or not is_fuzzy_up_set(result).holds:
        raise AssertionError(f'synthesized map {result!r} does not realize family')
    return result


class Restriction(NamedTuple):
    result: FuzzyMap | Refutation
    diagnostic: ClosureCandidate


def restrict_cut_family(
    m: FuzzyMap,
    sub: SetFamily,
    reading: Reading = Reading.CLOSURE,
    cap: int = DEFAULT_CAP,
) -> Restriction:
    """
    Find an L-fuzzy up-set on the same space and scale whose cut family is the
    given subfamily of the map's cut family. The explicit closure formula is
    evaluated alongside as a diagnostic but never trusted for the result.
    """
    if not is_fuzzy_up_set(m).holds:
        raise PreconditionViolated('map is not an L-fuzzy up-set')
    cuts = cut_family(m).family
    sub = _rebased(sub, m.space)
    if any(member not in cuts for member in sub):
        raise PreconditionViolated('subfamily has members that are not cuts')
    if sub.full not in sub:
        raise PreconditionViolated('subfamily lacks the full space')
    if sub.intersection_witness() is not None:
        raise PreconditionViolated('subfamily is not closed under intersection')

    diagnostic = restriction_candidate(family_lattice(cuts), sub, reading)
    return Restriction(representable(sub, m.space, m.scale, cap), diagnostic)


def powerset_witness(
    names: Iterable[Element], scale: FiniteLattice, cap: int = DEFAULT_CAP
) -> FuzzyMap | Refutation:
    """
    Find an L-fuzzy set on the plain set whose cut family is the entire power
    set. Its quotient by equal cuts then is isomorphic to the power set under
    reverse inclusion.
    """
    space = antichain_poset(tuple(names))
    return representable(enumerate_up_sets(space, cap), space, scale, cap)
