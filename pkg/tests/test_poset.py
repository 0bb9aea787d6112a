import numpy as np
import pytest
from hypothesis import given

from upcut.error import (
    CapExceeded,
    CycleDetected,
    DuplicateElement,
    InvalidName,
    NotAPartialOrder,
    UnknownName,
)
from upcut.order.poset import (
    antichain_poset,
    build_poset,
    chain_poset,
    enumerate_up_sets,
    family_poset,
    is_up_set,
    poset_isomorphism,
    principal_filter,
    relation_poset,
    set_family,
    verify_isomorphism,
    witness,
)
from upcut.order.type import FamilyOrder

from .strategies import posets


@pytest.fixture
def space():
    # a < c, a < e, b < c, b < d < e
    return build_poset(
        'abcde', [('b', 'c'), ('b', 'd'), ('a', 'c'), ('a', 'e'), ('d', 'e')]
    )


def sets(*members):
    return {frozenset(m) for m in members}


# --------------------------------------------------------------------------------------


def test_two_chain():
    poset = build_poset(['a', 'b'], [('a', 'b')])
    assert poset.le('a', 'b')
    assert not poset.le('b', 'a')
    assert poset.lt('a', 'b')
    assert poset.covers() == (('a', 'b'),)
    assert poset.minimal() == ('a',)
    assert poset.maximal() == ('b',)


def test_order_is_transitive_closure(space):
    assert space.le('b', 'e')
    assert ('b', 'e') not in space.covers()
    assert len(space.covers()) == 5
    assert space.upper_covers('b') == ('c', 'd')
    assert space.lower_covers('e') == ('a', 'd')


def test_relation_is_read_only(space):
    with pytest.raises(ValueError):
        space.leq[0, 1] = True


def test_construction_errors():
    with pytest.raises(CycleDetected) as info:
        build_poset(['a', 'b'], [('a', 'b'), ('b', 'a')])
    assert set(info.value.witness) == {'a', 'b'}

    with pytest.raises(DuplicateElement):
        build_poset(['a', 'a'], [])
    with pytest.raises(UnknownName):
        build_poset(['a'], [('a', 'b')])
    with pytest.raises(InvalidName):
        build_poset(['a b'], [])
    with pytest.raises(NotAPartialOrder):
        build_poset(['a'], [('a', 'a')])

    leq = np.array([[1, 1, 0], [0, 1, 1], [0, 0, 1]], dtype=bool)
    with pytest.raises(NotAPartialOrder):
        relation_poset(['a', 'b', 'c'], leq)


def test_subposet_dual_and_renamed(space):
    sub = space.subposet(['e', 'b', 'd'])
    assert sub.elements == ('b', 'd', 'e')
    assert sub.covers() == (('b', 'd'), ('d', 'e'))

    assert space.dual().le('e', 'b')
    renamed = chain_poset(['a', 'b']).renamed({'a': 'x', 'b': 'y'})
    assert renamed.le('x', 'y')


# --------------------------------------------------------------------------------------


def test_up_sets_of_space(space):
    up_sets = enumerate_up_sets(space)
    assert up_sets.member_set == sets(
        '', 'c', 'e', 'ce', 'de', 'cde', 'ace', 'acde', 'bcde', 'abcde'
    )
    assert up_sets.members[0] == frozenset()
    assert up_sets.members[-1] == frozenset('abcde')


def test_principal_filter_and_up_set_test(space):
    assert principal_filter(space, 'b') == frozenset('bcde')
    assert is_up_set(space, frozenset('ace'))
    assert not is_up_set(space, frozenset('a'))
    assert is_up_set(space, frozenset())


def test_up_set_counts():
    assert len(enumerate_up_sets(antichain_poset('abc'))) == 8
    assert len(enumerate_up_sets(chain_poset('abc'))) == 4
    assert len(enumerate_up_sets(antichain_poset([]))) == 1


def test_up_set_cap():
    with pytest.raises(CapExceeded) as info:
        enumerate_up_sets(antichain_poset('abc'), cap=5)
    assert info.value.cap == 5


@given(posets())
def test_up_sets_are_exactly_closed_subsets(poset):
    up_sets = enumerate_up_sets(poset)
    brute = {
        poset.subset(mask)
        for mask in range(1 << len(poset))
        if is_up_set(poset, poset.subset(mask))
    }
    assert len(up_sets) == len(brute)
    assert up_sets.member_set == brute
    assert up_sets.intersection_witness() is None
    assert up_sets.union_witness() is None


# --------------------------------------------------------------------------------------


def test_family_poset_labels():
    base = antichain_poset('ab')
    family = set_family(base, [frozenset(), frozenset('a'), frozenset('ab')])
    poset = family_poset(family)
    assert poset.elements == ('{}', '{a}', '{a,b}')
    assert poset.le('{a,b}', '{a}')
    assert poset.le('{a}', '{}')
    assert family_poset(family, FamilyOrder.SUBSET).le('{}', '{a}')


def test_family_rejects_foreign_and_duplicate_members():
    base = antichain_poset('ab')
    with pytest.raises(UnknownName):
        set_family(base, [frozenset('z')])
    with pytest.raises(DuplicateElement):
        set_family(base, [frozenset('a'), frozenset('a')])


def test_family_canonical_order_and_witnesses():
    base = antichain_poset('ab')
    family = set_family(base, [frozenset('ab'), frozenset('a'), frozenset('b')])
    assert family.label() == '{{b},{a},{a,b}}'
    assert family.intersection_witness() == (frozenset('a'), frozenset('b'))
    assert family.union_witness() is None
    assert not family.is_cut_like()


# --------------------------------------------------------------------------------------


def test_isomorphism_between_chains():
    result = poset_isomorphism(chain_poset('abc'), chain_poset('xyz'))
    assert result is not None
    assert dict(result.mapping) == {'a': 'x', 'b': 'y', 'c': 'z'}
    assert verify_isomorphism(result)
    assert dict(result.inverse().mapping) == {'x': 'a', 'y': 'b', 'z': 'c'}


def test_isomorphism_is_least():
    result = poset_isomorphism(antichain_poset('ab'), antichain_poset('xy'))
    assert result is not None
    assert dict(result.mapping) == {'a': 'x', 'b': 'y'}


def test_no_isomorphism():
    assert poset_isomorphism(chain_poset('ab'), antichain_poset('xy')) is None
    assert poset_isomorphism(chain_poset('ab'), chain_poset('xyz')) is None


def test_verify_rejects_bad_witness():
    source, target = chain_poset('ab'), chain_poset('xy')
    assert not verify_isomorphism(witness(source, target, {'a': 'y', 'b': 'x'}))
    assert not verify_isomorphism(witness(source, target, {'a': 'x'}))
    assert not verify_isomorphism(witness(source, target, {'a': 'x', 'b': 'x'}))


@given(posets())
def test_poset_is_isomorphic_to_renamed_copy(poset):
    renamed = poset.renamed({x: f'{x}_' for x in poset})
    result = poset_isomorphism(poset, renamed)
    assert result is not None
    assert verify_isomorphism(result)
