"""
Sweeps over every small poset, lattice, and map that compare the decision
procedures with brute force. Run them with `pytest -m exhaustive`.
"""
import itertools as it

import pytest

from upcut.error import PreconditionUnmet
from upcut.fuzzy import (
    approx_quotient,
    cut_family,
    FuzzyMap,
    is_fuzzy_up_set,
    representable,
    restrict_cut_family,
)
from upcut.oracle import monotone_maps, realizing_map
from upcut.order.closure import (
    closure_from_moore_family,
    compose_closures,
    enumerate_closure_operators,
    moore_families,
    quotient_by_closure,
)
from upcut.order.generate import all_lattices, all_posets
from upcut.order.poset import (
    enumerate_up_sets,
    poset_isomorphism,
    set_family,
    verify_isomorphism,
)
from upcut.quotient import (
    embed_upset_quotient,
    enumerate_realizable_families,
    interval_isomorphism,
    Mode,
    quotient_is_complete_lattice,
)


pytestmark = pytest.mark.exhaustive


def distinct_posets(n):
    found = []
    for poset in all_posets(n):
        if all(poset_isomorphism(poset, other) is None for other in found):
            found.append(poset)
    return found


def closed_families(family):
    full = family.full
    others = [m for m in family.canonical() if m != full]
    for size in range(len(others) + 1):
        for chosen in it.combinations(others, size):
            sub = set_family(family.base, (full, *chosen))
            if sub.intersection_witness() is None:
                yield sub


SPACES = [poset for n in range(1, 4) for poset in distinct_posets(n)]
SCALES = [lattice for n in range(1, 6) for lattice in all_lattices(n)]
PAIRS = list(it.product(SPACES, SCALES))


# --------------------------------------------------------------------------------------


@pytest.mark.parametrize('scale', SCALES, ids=repr)
def test_monotone_iff_cuts_are_up_sets(scale):
    for space in (poset for n in range(1, 4) for poset in all_posets(n)):
        for values in it.product(scale.elements, repeat=len(space)):
            m = FuzzyMap(space, scale, dict(zip(space.elements, values)))
            check = is_fuzzy_up_set(m, cross_check=True)
            assert check.holds == check.cuts_are_up_sets


@pytest.mark.parametrize('space, scale', PAIRS)
def test_representable_agrees_with_oracle(space, scale):
    realizable = set(enumerate_realizable_families(space, scale, Mode.ORACLE))
    for family in closed_families(enumerate_up_sets(space)):
        result = representable(family, space, scale)
        assert isinstance(result, FuzzyMap) == (family in realizable), family
        if isinstance(result, FuzzyMap):
            assert cut_family(result).family == family


@pytest.mark.parametrize('space, scale', PAIRS)
def test_quotient_by_equal_cuts_for_every_map(space, scale):
    for values in it.product(scale.elements, repeat=len(space)):
        m = FuzzyMap(space, scale, dict(zip(space.elements, values)))
        quotient, witness = approx_quotient(m)
        assert len(quotient) == len(cut_family(m).family)
        assert verify_isomorphism(witness), m


@pytest.mark.parametrize('space, scale', PAIRS)
def test_restriction_agrees_with_oracle(space, scale):
    realizable = set(enumerate_realizable_families(space, scale, Mode.ORACLE))
    for m in monotone_maps(space, scale):
        for sub in closed_families(cut_family(m).family):
            result = restrict_cut_family(m, sub).result
            assert isinstance(result, FuzzyMap) == (sub in realizable), sub


@pytest.mark.parametrize('space, scale', PAIRS)
def test_completeness_agrees_with_direct_check(space, scale):
    decision = quotient_is_complete_lattice(space, scale, Mode.ORACLE)
    assert decision.holds == decision.direct

    by_theory = enumerate_realizable_families(space, scale, Mode.CHARACTERIZATION)
    by_oracle = enumerate_realizable_families(space, scale, Mode.ORACLE)
    assert set(by_theory) == set(by_oracle)


def test_realizing_map_spot_check():
    space, scale = SPACES[-1], SCALES[-1]
    for family in closed_families(enumerate_up_sets(space)):
        found = realizing_map(family, space, scale)
        result = representable(family, space, scale)
        assert (found is None) == (not isinstance(result, FuzzyMap))


# --------------------------------------------------------------------------------------


@pytest.mark.parametrize('lattice', SCALES, ids=repr)
def test_composition_of_closures(lattice):
    for family in moore_families(lattice):
        inner = closure_from_moore_family(lattice, family)
        assert verify_isomorphism(quotient_by_closure(lattice, inner).closed_iso)
        closed = lattice.order.subposet(inner.closed)
        for outer in enumerate_closure_operators(closed):
            assert compose_closures(lattice, inner, outer).witness is not None


@pytest.mark.parametrize(
    'space', [poset for n in range(1, 5) for poset in distinct_posets(n)], ids=repr
)
def test_quotient_up_sets_embed(space):
    for closure in enumerate_closure_operators(space):
        report = embed_upset_quotient(space, closure)
        assert report.ok, report.flags()


@pytest.mark.parametrize('space', SPACES, ids=repr)
def test_interval_isomorphism(space):
    for closure, scale in it.product(enumerate_closure_operators(space), SCALES):
        try:
            report = interval_isomorphism(space, closure, scale)
        except PreconditionUnmet:
            continue
        assert report.counterexample is None, (closure, scale)
        assert report.holds, (closure, scale)
