import random

import pytest

from arfcurves.arfring import (
    closure_membership, embedding_dimension, in_generated_closure, level_base_characters, realize_characters,
    ring_arf_closure, ring_base, ring_characters, ring_order_basis, synthesize_monomial_branch,
)
from arfcurves.branch import Branch, branch_multiplicity_sequence
from arfcurves.errors import (
    IndeterminateMembershipError, InvalidArgumentError, NotNormalizedError, PrecisionError,
)
from arfcurves.semigroup import sg_from_generators, sg_is_arf
from arfcurves.series import PowerSeries, parse_series, series_sqrt_unit

from conftest import F7


def gens(text, p=128, field=None):
    kw = {"field": field} if field else {}
    return list(Branch.parse(text, precision=p, **kw).coords)


def elems(s, n):
    return [x for x in range(n + 1) if x in s]


RINGS = ["t", "t^2, t^5", "t^3, t^7", "t^4, t^6+t^7", "t^4, t^6, t^9", "t^4, t^6+t^7, t^9",
         "t^3, t^4, t^5", "t^6, t^8+t^9, t^13", "t^5, t^7+t^9", "t^4+t^5, t^6"]


class TestOrders:
    def test_polynomials(self):
        b = ring_order_basis(gens("t"))
        assert b.conductor == 0

    def test_cusp(self):
        b = ring_order_basis(gens("t^2, t^5"))
        assert b.conductor == 4 and elems(b.semigroup(), 6) == [0, 2, 4, 5, 6]

    def test_elimination_order(self):
        b = ring_order_basis(gens("t^4, t^6+t^7"))
        assert b.semigroup() == sg_from_generators([4, 6, 13])
        assert 13 in b and 9 not in b
        assert b.reps[13].order() == 13 and b.reps[13].leading_coefficient() == 1

    def test_reps_are_monic_and_ordered(self):
        for text in RINGS:
            b = ring_order_basis(gens(text))
            assert b.rep(0).coefficients == {0: 1}
            for e, r in b.reps.items():
                assert r.order() == e and r.leading_coefficient() == 1

    def test_achieved_closed(self):
        for text in RINGS:
            a = set(ring_order_basis(gens(text)).achieved)
            top = max(a)
            assert 0 in a
            assert all(x + y in a for x in a for y in a if x + y <= top)

    def test_constant_terms_allowed(self):
        b = ring_order_basis(gens("t^2, t^5") + [parse_series("3 + t^2", precision=128)])
        assert b.semigroup() == sg_from_generators([2, 5])

    def test_not_normalized(self):
        with pytest.raises(NotNormalizedError):
            ring_order_basis(gens("t^2, t^4"))

    def test_precision_too_small(self):
        with pytest.raises(PrecisionError):
            ring_order_basis(gens("t^7, t^11", 16), 16)

    def test_prime_field(self):
        b = ring_order_basis(gens("t^4, t^6+t^7", field=F7))
        assert b.semigroup() == sg_from_generators([4, 6, 13])


class TestClosure:
    def test_polynomials(self):
        chain = ring_arf_closure(gens("t"))
        assert chain.multiplicity_sequence.head == (1,) and chain.closure_semigroup().is_full()

    def test_cusp(self):
        chain = ring_arf_closure(gens("t^2, t^5"))
        assert chain.multiplicity_sequence.head == (2, 2, 1)

    def test_quartic(self):
        chain = ring_arf_closure(gens("t^4, t^6+t^7"))
        assert chain.multiplicity_sequence.head == (4, 2, 2, 1)
        assert elems(chain.closure_semigroup(), 10) == [0, 4, 6, 8, 9, 10]

    @pytest.mark.parametrize("text", RINGS)
    def test_monotone_and_arf(self, text):
        g = gens(text)
        w = ring_order_basis(g).semigroup()
        chain = ring_arf_closure(g)
        closure = chain.closure_semigroup()
        assert sg_is_arf(closure)
        assert all(x in closure for x in elems(w, w.conductor))

    @pytest.mark.parametrize("text", RINGS)
    def test_route_agreement(self, text):
        b = Branch.parse(text, precision=128)
        assert ring_arf_closure(list(b.coords)).multiplicity_sequence == \
            branch_multiplicity_sequence(b)[0]

    @pytest.mark.parametrize("text", RINGS)
    def test_idempotent(self, text):
        chain = ring_arf_closure(gens(text))
        c = chain.closure_conductor
        reps = [r.lift(128) for e, r in chain.closure_reps().items() if e > 0]
        reps += [PowerSeries.monomial(e, 128) for e in range(max(c, 1), 2 * max(c, 1))]
        again = ring_arf_closure(reps)
        assert again.closure_semigroup() == chain.closure_semigroup()

    @pytest.mark.parametrize("text", RINGS)
    def test_closure_reps(self, text):
        chain = ring_arf_closure(gens(text))
        w = chain.closure_semigroup()
        reps = chain.closure_reps()
        assert sorted(reps) == [e for e in range(w.conductor) if e in w]
        for e, r in reps.items():
            assert r.order() == e


class TestMembership:
    def setup_method(self):
        self.chain = ring_arf_closure(gens("t^4, t^6+t^7"))

    def member(self, text, p=32):
        return closure_membership(parse_series(text, precision=p), self.chain)

    def test_generator(self):
        assert self.member("t^4")
        assert self.member("t^6+t^7")

    def test_order_outside(self):
        assert not self.member("t^5")

    def test_reduction_decides(self):
        # t^6 - (t^6 + t^7) = -t^7 and 7 is not a closure order
        assert not self.member("t^6")

    def test_elements_of_the_ring(self):
        assert self.member("(t^6+t^7)^2 - t^12".replace("(t^6+t^7)^2", "t^12 + 2*t^13 + t^14"))
        assert self.member("t^9 + t^10")
        assert self.member("t^8 + 5*t^11")

    def test_tail_past_conductor(self):
        assert self.member("t^9 + 17*t^20")

    def test_indeterminate(self):
        with pytest.raises(IndeterminateMembershipError):
            closure_membership(PowerSeries.zero(3), self.chain)
        with pytest.raises(IndeterminateMembershipError):
            closure_membership(parse_series("t^4", precision=5), self.chain)


class TestBase:
    def test_polynomials(self):
        base = ring_base(ring_arf_closure(gens("t")))
        assert base.characters == (1,) and base.dimension == 1

    def test_quartic(self):
        base = ring_base(ring_arf_closure(gens("t^4, t^6+t^7")))
        assert base.characters == (4, 6) and base.dimension == 2

    def test_monomial(self):
        base = ring_base(ring_arf_closure(gens("t^4, t^6, t^9")))
        assert base.characters == (4, 6, 9)

    def test_embedding_dimension(self):
        assert embedding_dimension(gens("t")) == 1
        assert embedding_dimension(gens("t^4, t^6+t^7")) == 2
        assert embedding_dimension(gens("t^4, t^6, t^9")) == 3

    def test_same_characters(self):
        a = ring_characters(ring_arf_closure(gens("t^4, t^6+t^7")))
        b = ring_characters(ring_arf_closure(gens("t^4, t^6, t^9")))
        assert a == b == (4, 6, 9)

    def test_characters_differ_from_generators(self):
        assert ring_characters(ring_arf_closure(gens("t^2, t^5"))) == (2, 5)

    @pytest.mark.parametrize("text", RINGS)
    def test_dimension_bounds(self, text):
        chain = ring_arf_closure(gens(text))
        base = ring_base(chain)
        assert 1 <= base.dimension <= len(ring_characters(chain))
        assert base.characters[0] == chain.levels[0].multiplicity
        for i in range(1, base.dimension):
            assert not in_generated_closure(base.elements[i], base.elements[:i])

    @pytest.mark.parametrize("text", RINGS)
    def test_redundant_generator(self, text):
        g = gens(text)
        chain = ring_arf_closure(g)
        extra = [r.lift(128) for e, r in chain.closure_reps().items() if e > 0]
        if not extra:
            return
        g2 = g + [extra[-1]]
        chain2 = ring_arf_closure(g2)
        assert chain2.closure_semigroup() == chain.closure_semigroup()
        assert ring_base(chain2).dimension == ring_base(chain).dimension

    def test_levels(self):
        assert level_base_characters(ring_arf_closure(gens("t")), 0) == (1,)
        chain = ring_arf_closure(gens("t^4, t^6+t^7"))
        assert level_base_characters(chain, 1) == ring_base(ring_arf_closure(gens("t^2, t^5"))).characters
        assert level_base_characters(ring_arf_closure(gens("t^2, t^5")), 2) == (1,)
        with pytest.raises(InvalidArgumentError):
            level_base_characters(chain, 9)


class TestSynthesis:
    def test_monomials(self):
        assert [s.to_text() for s in synthesize_monomial_branch([1]).coords] == ["t"]
        assert [s.to_text() for s in synthesize_monomial_branch([2, 5]).coords] == ["t^2", "t^5"]

    @pytest.mark.parametrize("chi", [(2, 5), (4, 6, 9), (3, 7), (1,)])
    def test_realize(self, chi):
        rep = realize_characters(chi)
        assert rep.reproduces and rep.subset and rep.consistent

    def test_realize_non_character_set(self):
        rep = realize_characters([3, 7, 8])
        assert rep.subset and rep.consistent and not rep.reproduces

    def test_random_candidates(self):
        rng = random.Random(7)
        for _ in range(30):
            chi = sorted(set(rng.sample(range(2, 20), rng.randint(2, 4))))
            try:
                rep = realize_characters(chi)
            except InvalidArgumentError:
                continue
            assert rep.subset and rep.consistent


def test_node_ring():
    t = PowerSeries.monomial(1, 128)
    y = t * series_sqrt_unit(parse_series("1+t", precision=128))
    chain = ring_arf_closure([t, y])
    assert chain.multiplicity_sequence.head == (1,)
