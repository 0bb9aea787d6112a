import pytest

from upcut.document.data import fixture_document
from upcut.document.ingest import closure_of, family_of, poset_of
from upcut.error import NotDistributive, PreconditionUnmet
from upcut.order.closure import ClosureOperator
from upcut.order.lattice import as_lattice, lattice_from_family
from upcut.order.poset import (
    antichain_poset,
    build_poset,
    chain_poset,
    enumerate_up_sets,
    set_family,
    verify_isomorphism,
)
from upcut.quotient import (
    birkhoff_embedding_driver,
    closed_subfamilies,
    closure_for_family,
    embed_upset_quotient,
    enumerate_realizable_families,
    interval_isomorphism,
    Mode,
    powerset_quotient_is_complete,
    quotient_is_complete_lattice,
)


def family(base, *members):
    return set_family(base, [frozenset(m) for m in members])


def two_chain():
    return as_lattice(chain_poset('01'))


@pytest.fixture
def space():
    return poset_of(fixture_document('embedding-x'))


@pytest.fixture
def closure(space):
    result = closure_of(fixture_document('embedding-c'), space)
    assert isinstance(result, ClosureOperator)
    return result


# --------------------------------------------------------------------------------------


def test_one_element_scale_is_complete():
    decision = quotient_is_complete_lattice(
        antichain_poset('ab'), as_lattice(chain_poset('0'))
    )
    assert decision.holds
    assert decision.closure is None
    assert decision.direct is None


def test_two_chain_scale_is_not_complete():
    decision = powerset_quotient_is_complete('ab', two_chain(), verify=Mode.ORACLE)
    assert not decision.holds
    assert decision.closure is None
    assert decision.direct is False


def test_up_set_lattice_as_scale_is_complete():
    plain = antichain_poset('ab')
    scale = lattice_from_family(enumerate_up_sets(plain))
    decision = quotient_is_complete_lattice(plain, scale, verify=Mode.ORACLE)
    assert decision.holds
    assert decision.closure is not None
    assert decision.direct is True


@pytest.mark.parametrize('mode', list(Mode))
def test_realizable_families_of_plain_set(mode):
    plain = antichain_poset('ab')
    realizable = enumerate_realizable_families(plain, two_chain(), mode)
    assert set(realizable.order.elements) == {
        '{{a,b}}',
        '{{},{a,b}}',
        '{{b},{a,b}}',
        '{{a},{a,b}}',
    }
    assert realizable.families[0] == realizable.bottom
    assert not realizable.is_complete()
    assert len(realizable.interval(realizable.bottom, family(plain, 'ab', 'a'))) == 2


def test_modes_agree_on_chain_scale():
    chain = chain_poset('ab')
    scale = as_lattice(chain_poset('012'))
    by_theory = enumerate_realizable_families(chain, scale, Mode.CHARACTERIZATION)
    by_oracle = enumerate_realizable_families(chain, scale, Mode.ORACLE)
    assert set(by_theory) == set(by_oracle)
    assert by_theory.order.elements == by_oracle.order.elements


# --------------------------------------------------------------------------------------


def test_embed_upset_quotient(space, closure):
    report = embed_upset_quotient(space, closure)
    assert len(report.source) == 7
    assert report.image == family(
        space, '', 'c', 'de', 'cde', 'acde', 'bcde', 'abcde'
    )
    assert report.mapping['{{d,e}}'] == '{d,e}'
    assert report.ok
    assert all(report.flags().values())


def test_closure_for_family(space):
    assert closure_for_family(space, enumerate_up_sets(space)) is not None
    chain = family_of(fixture_document('embedding-u'), space)
    assert closure_for_family(space, chain) is None


def test_closed_subfamilies():
    plain = antichain_poset('ab')
    assert len(closed_subfamilies(family(plain, '', 'ab'))) == 2
    assert len(closed_subfamilies(enumerate_up_sets(plain))) == 7


# --------------------------------------------------------------------------------------


def test_birkhoff_driver_finds_direct_embedding_only(space):
    large = lattice_from_family(enumerate_up_sets(space))
    small = lattice_from_family(family_of(fixture_document('embedding-u'), space))
    decision = birkhoff_embedding_driver(large, small)
    assert decision.direct is not None
    assert decision.closure is None
    assert decision.via_closure is None
    assert not decision.degenerate


def test_birkhoff_driver_on_same_lattice():
    square = as_lattice(
        build_poset('0ab1', [('0', 'a'), ('0', 'b'), ('a', '1'), ('b', '1')])
    )
    decision = birkhoff_embedding_driver(square, square)
    assert decision.closure is not None
    assert decision.via_closure is not None
    assert verify_isomorphism(decision.via_closure)
    assert decision.direct is not None


def test_birkhoff_driver_requires_distributive_lattices():
    diamond = as_lattice(
        build_poset(
            '0xyz1',
            [('0', 'x'), ('0', 'y'), ('0', 'z'), ('x', '1'), ('y', '1'), ('z', '1')],
        )
    )
    with pytest.raises(NotDistributive):
        birkhoff_embedding_driver(diamond, two_chain())


# --------------------------------------------------------------------------------------


def test_interval_isomorphism(space, closure):
    scale = lattice_from_family(enumerate_up_sets(space))
    report = interval_isomorphism(space, closure, scale)
    assert report.counterexample is None
    assert report.witness_map is not None
    assert report.holds


def test_interval_isomorphism_requires_large_scale(space, closure):
    with pytest.raises(PreconditionUnmet):
        interval_isomorphism(space, closure, two_chain())
