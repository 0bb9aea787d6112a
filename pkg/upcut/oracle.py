"""
Brute-force oracles that enumerate every L-fuzzy up-set, i.e., every monotone
map from a space into a scale. They share no code with the decision procedures
they are meant to double-check.
"""
from collections.abc import Iterator

from .error import CapExceeded
from .fuzzy import cut_family, FuzzyMap
from .order.lattice import FiniteLattice
from .order.poset import Poset, SetFamily, set_family


# The limit on the number of monotone maps an oracle is willing to examine.
ORACLE_CAP = 1_000_000


def _assignments(space: Poset, scale: FiniteLattice) -> Iterator[list[int]]:
    n, m = len(space), len(scale)
    sleq, lleq = space.leq, scale.order.leq
    values = [-1] * n

    def search(i: int) -> Iterator[list[int]]:
        if i == n:
            yield values
            return
        for v in range(m):
            if all(
                (not sleq[k, i] or lleq[values[k], v])
                and (not sleq[i, k] or lleq[v, values[k]])
                for k in range(i)
            ):
                values[i] = v
                yield from search(i + 1)
        values[i] = -1

    return search(0)


def monotone_maps(space: Poset, scale: FiniteLattice) -> Iterator[FuzzyMap]:
    """
    Generate all monotone maps, assigning the space's elements in declaration
    order and trying the scale's elements in declaration order.
    """
    names, levels = space.elements, scale.elements
    for values in _assignments(space, scale):
        yield FuzzyMap(space, scale, {names[i]: levels[v] for i, v in enumerate(values)})


def count_monotone_maps(
    space: Poset, scale: FiniteLattice, cap: int = ORACLE_CAP
) -> int:
    count = 0
    for _ in _assignments(space, scale):
        count += 1
        if count > cap:
            raise CapExceeded('monotone map enumeration', cap, count)
    return count


def realizing_map(
    family: SetFamily, space: Poset, scale: FiniteLattice, cap: int = ORACLE_CAP
) -> None | FuzzyMap:
    """Find the first monotone map whose cut family is the given family."""
    count_monotone_maps(space, scale, cap)
    target = set_family(space, family.members)
    for m in monotone_maps(space, scale):
        if cut_family(m).family == target:
            return m
    return None
