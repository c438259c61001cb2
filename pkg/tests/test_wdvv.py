from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from c3z3.errors import ConflictingValue, MissingSeed
from c3z3.pipeline import compute
from c3z3.store import HodgeStore, InvariantKey
from c3z3.symmetric import SymPoly3, e3
from c3z3.wdvv import EPoly, e_to_sym, propagate, sym_to_e, wdvv_equation, wdvv_residuals

F = Fraction
fractions = st.fractions(min_value=-9, max_value=9, max_denominator=7)
triples = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)).map(lambda t: tuple(sorted(t, reverse=True)))
syms = st.dictionaries(triples, fractions, max_size=5).map(SymPoly3)


@given(syms)
def test_elementary_basis_round_trip(p):
    assert e_to_sym(sym_to_e(p)) == p


@given(syms, syms, st.tuples(fractions, fractions, fractions))
def test_epoly_product_matches_evaluation(p, q, pt):
    prod = e_to_sym(sym_to_e(p) * sym_to_e(q))
    assert prod.evaluate(*pt) == p.evaluate(*pt) * q.evaluate(*pt)
    diff = e_to_sym(sym_to_e(p) - sym_to_e(q).scale(F(1, 3)))
    assert diff.evaluate(*pt) == p.evaluate(*pt) - q.evaluate(*pt) / 3


def test_epoly_basics():
    assert EPoly.const(F(2, 4)) == EPoly({(0, 0, 0): 1}, 2)
    assert (EPoly.const(1) - EPoly.const(1)).is_zero()
    assert EPoly({(1, 0, 0): 1, (0, 1, 0): 1}).weighted_degrees() == {1, 2}


def test_smallest_equation_holds_on_the_seeds():
    s = HodgeStore()
    s.seed_three_point()
    w3 = s.invariants[InvariantKey(0, 3, 0)]
    wb3 = s.invariants[InvariantKey(0, 0, 3)]
    one_w_wb = s.invariants[InvariantKey(1, 1, 1)]
    assert w3 * wb3 == e3() * one_w_wb * one_w_wb
    eq = wdvv_equation(0, 0)
    assert eq.rhs == SymPoly3({(1, 1, 1): F(1, 9)})
    assert [(t.left, t.right, t.minus) for t in eq.terms] == [(InvariantKey(0, 3, 0), InvariantKey(0, 0, 3), False)]


def test_principal_term_has_coefficient_one_third():
    eq = wdvv_equation(1, 1)
    principal = [t for t in eq.terms if t.right == InvariantKey(0, 1, 4)]
    assert len(principal) == 1 and principal[0].left == InvariantKey(0, 3, 0) and principal[0].coef == 1


@pytest.mark.parametrize("n1,n2,value", [(1, 4, F(2, 9)), (3, 3, F(-8, 27)), (0, 6, F(-10, 27)), (0, 9, F(686, 81))])
def test_propagated_values(store15, n1, n2, value):
    assert store15.invariant(n1, n2).evaluate(1, 1, 1) == value


def test_every_equation_vanishes(store15):
    assert wdvv_residuals(store15, 15) == []
    for key, poly in store15.invariants.items():
        if key.n0 == 0:
            assert poly.is_homogeneous(key.n2)


def test_missing_seed():
    s = HodgeStore()
    s.seed_three_point()
    with pytest.raises(MissingSeed):
        propagate(s, 5)


def test_conflicting_value():
    s = compute(9)
    s.invariants[InvariantKey(0, 0, 9)] = SymPoly3({(3, 3, 3): 1})
    with pytest.raises(ConflictingValue):
        propagate(s, 9)
