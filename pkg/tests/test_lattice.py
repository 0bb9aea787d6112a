import pytest

from upcut.error import (
    MissingFullSet,
    NotALattice,
    NotDistributive,
    NotIntersectionClosed,
    UnknownName,
)
from upcut.order.generate import all_lattices
from upcut.order.lattice import (
    as_lattice,
    birkhoff_representation,
    family_lattice,
    find_bound_preserving_embedding,
    is_distributive,
    lattice_from_family,
    meet_irreducibles,
)
from upcut.order.poset import (
    antichain_poset,
    build_poset,
    chain_poset,
    set_family,
    verify_isomorphism,
)
from upcut.order.type import Preserve


def square():
    return as_lattice(
        build_poset('0ab1', [('0', 'a'), ('0', 'b'), ('a', '1'), ('b', '1')])
    )


def diamond():
    return as_lattice(
        build_poset(
            '0abc1',
            [('0', 'a'), ('0', 'b'), ('0', 'c'), ('a', '1'), ('b', '1'), ('c', '1')],
        )
    )


def pentagon():
    return as_lattice(
        build_poset('0abc1', [('0', 'a'), ('a', 'b'), ('b', '1'), ('0', 'c'), ('c', '1')])
    )


@pytest.fixture
def subfamily():
    # An intersection-closed family on a plain set, without {a,b}.
    base = antichain_poset('abcd')
    return set_family(
        base,
        [frozenset(m) for m in ('', 'a', 'b', 'abc', 'abcd')],
    )


# --------------------------------------------------------------------------------------


def test_meets_and_joins():
    lattice = square()
    assert lattice.bottom == '0'
    assert lattice.top == '1'
    assert lattice.meet('a', 'b') == '0'
    assert lattice.join('a', 'b') == '1'
    assert lattice.meet('a', '1') == 'a'
    assert lattice.meet_all([]) == '1'
    assert lattice.join_all([]) == '0'
    assert lattice.meet_all(['a', 'b', '1']) == '0'


def test_not_a_lattice():
    with pytest.raises(NotALattice) as info:
        as_lattice(antichain_poset('ab'))
    assert info.value.witness == ('a', 'b')

    with pytest.raises(NotALattice):
        as_lattice(antichain_poset([]))


def test_single_element_lattice():
    lattice = as_lattice(chain_poset('0'))
    assert lattice.bottom == lattice.top == '0'
    assert meet_irreducibles(lattice) == frozenset()


def test_distributivity():
    assert is_distributive(square()) is None
    assert is_distributive(as_lattice(chain_poset('012'))) is None
    assert is_distributive(diamond()) is not None
    assert is_distributive(pentagon()) is not None


def test_meet_irreducibles():
    assert meet_irreducibles(as_lattice(chain_poset('012'))) == frozenset('01')
    assert meet_irreducibles(square()) == frozenset('ab')
    assert meet_irreducibles(diamond()) == frozenset('abc')
    assert meet_irreducibles(pentagon()) == frozenset('abc')


# --------------------------------------------------------------------------------------


def test_family_lattice(subfamily):
    lattice = family_lattice(subfamily)
    assert lattice.bottom == frozenset('abcd')
    assert lattice.top == frozenset()
    assert lattice.meet(frozenset('a'), frozenset('b')) == frozenset('abc')
    assert lattice.join(frozenset('a'), frozenset('b')) == frozenset()
    assert lattice.meet() == frozenset()
    assert lattice.least_above(frozenset('c')) == frozenset('abc')
    assert lattice.subset('{a,b,c}') == frozenset('abc')
    with pytest.raises(UnknownName):
        lattice.subset('{a,b}')

    generic = lattice_from_family(subfamily)
    assert generic.meet('{a}', '{b}') == '{a,b,c}'
    assert generic.join('{a}', '{b}') == '{}'


def test_family_lattice_errors():
    base = antichain_poset('ab')
    with pytest.raises(MissingFullSet):
        family_lattice(set_family(base, [frozenset('a')]))
    with pytest.raises(NotIntersectionClosed) as info:
        family_lattice(set_family(base, [frozenset('ab'), frozenset('a'), frozenset('b')]))
    assert info.value.witness == ('{a}', '{b}')


# --------------------------------------------------------------------------------------


@pytest.mark.parametrize(
    'lattice',
    [lattice for n in range(1, 6) for lattice in all_lattices(n)],
    ids=repr,
)
def test_birkhoff_representation(lattice):
    if is_distributive(lattice) is not None:
        with pytest.raises(NotDistributive):
            birkhoff_representation(lattice)
        return

    result = birkhoff_representation(lattice)
    assert verify_isomorphism(result)
    assert result.preserves == frozenset(Preserve)
    assert result[lattice.bottom] == result.target.elements[-1]


def test_lattice_counts():
    assert [len(all_lattices(n)) for n in range(1, 6)] == [1, 1, 1, 2, 5]


# --------------------------------------------------------------------------------------


def test_bound_preserving_embedding():
    result = find_bound_preserving_embedding(as_lattice(chain_poset('012')), square())
    assert result is not None
    assert dict(result.mapping) == {'0': '0', '1': 'a', '2': '1'}
    assert not result.onto
    assert verify_isomorphism(result)

    assert find_bound_preserving_embedding(square(), as_lattice(chain_poset('01'))) is None
    assert find_bound_preserving_embedding(square(), as_lattice(chain_poset('0123'))) is None
