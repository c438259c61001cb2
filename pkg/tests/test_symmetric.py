from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from c3z3.symmetric import SymPoly3, e1, e2, e3, p2

fractions = st.fractions(min_value=-9, max_value=9, max_denominator=7)
triples = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)).map(lambda t: tuple(sorted(t, reverse=True)))
syms = st.dictionaries(triples, fractions, max_size=4).map(SymPoly3)
points = st.tuples(fractions, fractions, fractions)


def _full_product(p, q):
    out = {}
    for a, x in p.full().items():
        for b, y in q.full().items():
            k = tuple(i + j for i, j in zip(a, b))
            out[k] = out.get(k, 0) + x * y
    return SymPoly3.from_full(out)


@given(syms, syms)
def test_product_matches_full_expansion(p, q):
    assert p * q == _full_product(p, q)


@given(syms, syms, points)
def test_evaluation_is_a_ring_map(p, q, pt):
    assert (p * q).evaluate(*pt) == p.evaluate(*pt) * q.evaluate(*pt)
    assert (p + q).evaluate(*pt) == p.evaluate(*pt) + q.evaluate(*pt)


@given(syms)
def test_permutation_invariance_and_json(p):
    for perm in permutations(range(3)):
        assert p.permuted(perm) == p
    assert SymPoly3.from_json(p.to_json()) == p


def test_basis_conventions():
    assert e1().evaluate(1, 1, 1) == 3
    assert e2().evaluate(1, 1, 1) == 3
    assert e3().evaluate(2, 3, 5) == 30
    assert p2().evaluate(1, 2, 3) == 14
    assert (e1() * e1()) == p2() + e2().scale(2)


def test_laurent_and_homogeneity():
    inv = SymPoly3({(-1, -1, -1): Fraction(1, 3)})
    assert inv.evaluate(1, 2, 3) == Fraction(1, 18)
    assert inv.is_homogeneous(-3)
    assert (inv * e3()) == SymPoly3.const(Fraction(1, 3))
    assert not (e1() + e2()).is_homogeneous(1)


def test_rejects_unsorted_and_asymmetric():
    with pytest.raises(ValueError):
        SymPoly3({(0, 1, 0): 1})
    with pytest.raises(ValueError):
        SymPoly3.from_full({(1, 0, 0): 1})
