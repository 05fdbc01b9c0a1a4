import pytest

from arfcurves.branch import Branch
from arfcurves.errors import ResourceGuardError
from arfcurves.arfring import ring_order_basis
from arfcurves.oracles import (
    oracle_arf_closure_fixedpoint, oracle_enumerate_arf_semigroups,
    oracle_minimal_character_search, oracle_ring_orders_linear,
)
from arfcurves.semigroup import msq_to_semigroup, sg_from_generators, sg_is_arf


def gens(text, p=64):
    return list(Branch.parse(text, precision=p).coords)


def test_fixedpoint_examples():
    assert oracle_arf_closure_fixedpoint(sg_from_generators([1])).is_full()
    assert oracle_arf_closure_fixedpoint(sg_from_generators([3, 7])) == msq_to_semigroup([3, 3, 1])
    s = sg_from_generators([2, 5])
    assert oracle_arf_closure_fixedpoint(s) == s


def test_character_search_examples():
    assert oracle_minimal_character_search(sg_from_generators([1])) == (1,)
    assert oracle_minimal_character_search(msq_to_semigroup([2, 2, 1])) == (2, 5)
    assert oracle_minimal_character_search(msq_to_semigroup([3, 3, 1])) == (3, 7)


def test_enumeration_small():
    two = oracle_enumerate_arf_semigroups(2)
    assert [s.conductor for s in two] == [0, 2]
    four = oracle_enumerate_arf_semigroups(4)
    for head in ([2, 2, 1], [3, 1], [4, 1]):
        assert msq_to_semigroup(head) in four
    assert all(sg_is_arf(s) for s in oracle_enumerate_arf_semigroups(12))


def test_enumeration_counts_are_distinct():
    sgs = oracle_enumerate_arf_semigroups(16)
    assert len(sgs) == len(set(sgs)) == 152


def test_guards():
    with pytest.raises(ResourceGuardError):
        oracle_enumerate_arf_semigroups(25)
    with pytest.raises(ResourceGuardError):
        oracle_ring_orders_linear(gens("t^2,t^3,t^5,t^7"), 2)
    with pytest.raises(ResourceGuardError):
        oracle_ring_orders_linear(gens("t^2,t^3"), 9)


def test_ring_orders_examples():
    assert oracle_ring_orders_linear(gens("t^2,t^5", 10), 4) == {0, 2, 4, 5, 6, 7, 8, 9, 10}
    assert 13 in oracle_ring_orders_linear(gens("t^4,t^6+t^7", 32), 4)
    assert oracle_ring_orders_linear(gens("t", 2), 2) == {0, 1, 2}


@pytest.mark.parametrize("text", ["t^2,t^5", "t^4,t^6+t^7", "t^3,t^5+t^7", "t^4,t^6,t^9",
                                  "t^3+t^4,t^7", "t^5,t^7+t^8"])
def test_ring_orders_inside_fast_path(text):
    g = gens(text, 40)
    basis = ring_order_basis(g, 40)
    linear = oracle_ring_orders_linear(g, 5, 40)
    assert linear <= set(basis.achieved)
    # below the smallest unreachable total degree the two agree exactly
    cutoff = 6 * min(x.order() for x in g)
    assert {e for e in basis.achieved if e < cutoff} == {e for e in linear if e < cutoff}
