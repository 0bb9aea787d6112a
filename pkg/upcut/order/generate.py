"""
Exhaustive generators for small posets and lattices. They are brute force on
purpose and only meant for carriers with a handful of elements.
"""
from collections.abc import Iterator, Sequence
import itertools as it

import numpy as np

from ..error import NotALattice
from .lattice import as_lattice, FiniteLattice
from .poset import poset_isomorphism, Poset, relation_poset
from .type import Element, Relation


_NAMES = 'abcdefghijklmnopqrstuvwxyz'


def default_names(n: int) -> tuple[Element, ...]:
    return tuple(_NAMES[:n]) if n <= len(_NAMES) else tuple(f'x{i}' for i in range(n))


def _is_order(relation: Relation) -> bool:
    both = relation & relation.T
    both[np.diag_indices_from(both)] = False
    if both.any():
        return False
    return not (np.matmul(relation, relation) & ~relation).any()


def _relations(
    n: int, pairs: Sequence[tuple[int, int]]
) -> Iterator[Relation]:
    for bits in it.product((False, True), repeat=len(pairs)):
        relation = np.eye(n, dtype=bool)
        for (i, j), bit in zip(pairs, bits):
            relation[i, j] = bit
        if _is_order(relation):
            yield relation


def all_posets(
    n: int, names: None | Sequence[Element] = None
) -> Iterator[Poset]:
    """Generate every labeled poset on `n` elements, one relation at a time."""
    elements = tuple(names) if names is not None else default_names(n)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for relation in _relations(n, pairs):
        yield relation_poset(elements, relation)


def all_lattices(n: int) -> tuple[FiniteLattice, ...]:
    """
    Generate one lattice per isomorphism class on `n` elements. Every poset has
    a linear extension, so it suffices to consider naturally labeled orders,
    which only relate lower to higher positions.
    """
    if n == 0:
        return ()

    elements = tuple(str(i) for i in range(n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    found: list[FiniteLattice] = []
    for relation in _relations(n, pairs):
        if n > 1 and not (relation[0].all() and relation[:, n - 1].all()):
            continue
        try:
            lattice = as_lattice(relation_poset(elements, relation))
        except NotALattice:
            continue
        if all(poset_isomorphism(lattice.order, f.order) is None for f in found):
            found.append(lattice)
    return tuple(found)
