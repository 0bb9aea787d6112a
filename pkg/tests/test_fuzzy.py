import pytest
from hypothesis import given

from upcut.document.data import fixture_document
from upcut.document.ingest import family_of, lattice_of, map_of, poset_of
from upcut.error import PreconditionViolated, UnknownName
from upcut.fuzzy import (
    approx_closure,
    approx_quotient,
    Condition,
    constant_map,
    cut_family,
    FuzzyMap,
    fuzzy_map,
    is_fuzzy_up_set,
    p_cut,
    powerset_witness,
    Refutation,
    representable,
    restrict_cut_family,
)
from upcut.order.lattice import as_lattice
from upcut.order.poset import (
    antichain_poset,
    build_poset,
    chain_poset,
    enumerate_up_sets,
    set_family,
    verify_isomorphism,
)

from .strategies import fuzzy_maps


def family(base, *members):
    return set_family(base, [frozenset(m) for m in members])


def two_chain():
    return as_lattice(chain_poset('01'))


@pytest.fixture
def canonical():
    space = poset_of(fixture_document('restriction-x'))
    scale = lattice_of(fixture_document('restriction-l'))
    return map_of(fixture_document('restriction-mu0'), space, scale)


# --------------------------------------------------------------------------------------


def test_fuzzy_map_must_be_total():
    space = chain_poset('ab')
    with pytest.raises(PreconditionViolated):
        fuzzy_map(space, two_chain(), {'a': '0'})
    with pytest.raises(UnknownName):
        fuzzy_map(space, two_chain(), {'a': '0', 'b': '2'})
    with pytest.raises(UnknownName):
        fuzzy_map(space, two_chain(), {'a': '0', 'b': '1', 'z': '1'})


def test_cuts_of_canonical_map(canonical):
    assert p_cut(canonical, '{a,b}') == frozenset('ab')
    assert p_cut(canonical, '{}') == frozenset()
    assert p_cut(canonical, '{a,b,c,d}') == frozenset('abcd')

    report = cut_family(canonical)
    expected = family_of(fixture_document('restriction-mu'), canonical.space)
    assert report.family == expected
    assert len(report.family) == 6
    assert report.cut('{a}') == frozenset('a')


def test_cut_family_drops_duplicates():
    m = constant_map(chain_poset('ab'), two_chain(), '1')
    report = cut_family(m)
    assert report.family.members == (frozenset('ab'),)
    assert report.class_tops == ('1',)
    assert dict(report.cut_of) == {'0': 0, '1': 0}


def test_up_set_test():
    space = chain_poset('ab')
    assert is_fuzzy_up_set(fuzzy_map(space, two_chain(), {'a': '0', 'b': '1'})).holds

    check = is_fuzzy_up_set(
        fuzzy_map(space, two_chain(), {'a': '1', 'b': '0'}), cross_check=True
    )
    assert not check.holds
    assert check.cuts_are_up_sets is False
    assert check.counterexample == frozenset('a')


@given(fuzzy_maps())
def test_monotone_iff_cuts_are_up_sets(m):
    check = is_fuzzy_up_set(m, cross_check=True)
    assert check.holds == check.cuts_are_up_sets


@given(fuzzy_maps())
def test_quotient_by_equal_cuts(m):
    quotient, witness = approx_quotient(m)
    assert len(quotient) == len(cut_family(m).family)
    assert verify_isomorphism(witness)
    closure = approx_closure(m)
    for p in m.scale:
        for q in m.scale:
            same_cut = p_cut(m, p) == p_cut(m, q)
            assert same_cut == (closure(p) == closure(q))


def test_approx_quotient_of_canonical_map(canonical):
    quotient, witness = approx_quotient(canonical)
    assert len(quotient) == 6
    assert approx_closure(canonical).is_identity()
    assert witness['{{a}}'] == '{a}'


# --------------------------------------------------------------------------------------


@pytest.mark.parametrize('name', ['representable-r', 'representable-s'])
def test_representable_families(name):
    space = poset_of(fixture_document('representable-x'))
    scale = lattice_of(fixture_document('representable-l'))
    target = family_of(fixture_document(name), space)

    result = representable(target, space, scale)
    assert isinstance(result, FuzzyMap)
    assert cut_family(result).family == target
    assert is_fuzzy_up_set(result, cross_check=True).holds


def test_refutations():
    chain = chain_poset('ab')
    plain = antichain_poset('ab')

    result = representable(family(chain, '', 'b'), chain, two_chain())
    assert isinstance(result, Refutation)
    assert result.condition is Condition.FULL_SET

    result = representable(family(plain, 'ab', 'a', 'b'), plain, two_chain())
    assert isinstance(result, Refutation)
    assert result.condition is Condition.INTERSECTION
    assert result.witness == ('{a}', '{b}')

    result = representable(family(chain, 'ab', 'a'), chain, two_chain())
    assert isinstance(result, Refutation)
    assert result.condition is Condition.UP_SETS
    assert result.witness == ('{a}',)

    result = representable(family(chain, '', 'b', 'ab'), chain, two_chain())
    assert isinstance(result, Refutation)
    assert result.condition is Condition.MOORE_SEARCH


def test_representable_rejects_foreign_elements():
    with pytest.raises(UnknownName):
        representable(
            family(antichain_poset('az'), 'az'), chain_poset('ab'), two_chain()
        )


# --------------------------------------------------------------------------------------


def test_restrict_cut_family(canonical):
    sub = family_of(fixture_document('restriction-t0'), canonical.space)
    result, diagnostic = restrict_cut_family(canonical, sub)
    assert isinstance(result, FuzzyMap)
    assert cut_family(result).family == sub
    assert not diagnostic.is_closure


def test_restrict_preconditions(canonical):
    base = canonical.space
    with pytest.raises(PreconditionViolated):
        restrict_cut_family(canonical, family(base, 'abcd', 'c'))
    with pytest.raises(PreconditionViolated):
        restrict_cut_family(canonical, family(base, 'a'))

    space = chain_poset('ab')
    broken = fuzzy_map(space, two_chain(), {'a': '1', 'b': '0'})
    with pytest.raises(PreconditionViolated):
        restrict_cut_family(broken, family(space, 'ab'))


def test_powerset_witness():
    square = as_lattice(
        build_poset('0xy1', [('0', 'x'), ('0', 'y'), ('x', '1'), ('y', '1')])
    )
    result = powerset_witness('ab', square)
    assert isinstance(result, FuzzyMap)
    assert cut_family(result).family == enumerate_up_sets(antichain_poset('ab'))

    refuted = powerset_witness('ab', as_lattice(chain_poset('0')))
    assert isinstance(refuted, Refutation)
    assert refuted.condition is Condition.MOORE_SEARCH
