from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from c3z3.arith import AffineExpr, EgfSeries, MPoly, affine_solve, egf_coeff, egf_mul
from c3z3.errors import Inconsistent, NonlinearProduct, RankDeficient

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
names = st.sampled_from(["t1", "t2", "u", "v", "a"])


@st.composite
def polys(draw):
    p = MPoly()
    for _ in range(draw(st.integers(0, 4))):
        exps = {n: draw(st.integers(0, 3)) for n in draw(st.sets(names, max_size=3))}
        p = p + MPoly.monomial(draw(fractions), **exps)
    return p


points = st.fixed_dictionaries({n: fractions for n in ["t1", "t2", "u", "v", "a"]})


@given(polys(), polys(), points)
def test_ring_operations_commute_with_evaluation(p, q, pt):
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p - q).evaluate(pt) == p.evaluate(pt) - q.evaluate(pt)


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p - p == MPoly()


@given(polys(), fractions, points)
def test_substitution_is_evaluation(p, c, pt):
    shifted = p.substitute({"u": MPoly.var("u") + MPoly.const(c)})
    moved = dict(pt, u=pt["u"] + c)
    assert shifted.evaluate(pt) == p.evaluate(moved)


@given(polys())
def test_split_reassembles(p):
    total = MPoly()
    for (du, dv), part in p.split(("u", "v")).items():
        assert "u" not in part.variables() and "v" not in part.variables()
        total = total + part * MPoly.monomial(1, u=du, v=dv)
    assert total == p


def test_pow_and_degree():
    x = MPoly.var("u") + MPoly.const(1)
    assert (x ** 3).degree("u") == 3
    assert (x ** 3).evaluate({"u": 2}) == 27
    assert (x ** 0) == MPoly.const(1)


def test_affine_product_guard():
    x = AffineExpr.unknown(0)
    with pytest.raises(NonlinearProduct):
        x * AffineExpr.unknown(1)
    assert (x * AffineExpr.constant(3)) == AffineExpr.unknown(0, 3)


def test_affine_split_and_resolve():
    e = AffineExpr.unknown(0, MPoly.var("u") * 2) + AffineExpr.constant(MPoly.var("v"))
    parts = e.split(("u", "v"))
    assert parts[(1, 0)] == AffineExpr.unknown(0, 2)
    assert parts[(0, 1)] == AffineExpr.constant(1)
    assert e.resolve({0: Fraction(1, 2)}) == AffineExpr.constant(MPoly.var("u") + MPoly.var("v"))


@given(st.lists(st.lists(fractions, min_size=3, max_size=3), min_size=3, max_size=3), st.lists(fractions, min_size=3, max_size=3))
def test_affine_solve_matches_substitution(matrix, solution):
    n = 3
    # make the system invertible by a dominant diagonal
    for i in range(n):
        matrix[i][i] = sum(abs(x) for x in matrix[i]) + 1
    eqs = []
    for row in matrix:
        rhs = sum(c * x for c, x in zip(row, solution))
        e = AffineExpr.constant(-rhs)
        for uid, c in enumerate(row):
            e = e + AffineExpr.unknown(uid, c)
        eqs.append(e)
    # a redundant combination must be accepted
    eqs.append(eqs[0] + eqs[1].scale(2))
    sol = affine_solve(eqs)
    assert {uid: v.const_value() for uid, v in sol.items()} == dict(enumerate(solution))


def test_affine_solve_polynomial_right_hand_side():
    u = MPoly.var("u")
    eqs = [AffineExpr.unknown(0, 2) - AffineExpr.constant(u * 4)]
    assert affine_solve(eqs)[0] == u * 2


def test_affine_solve_errors():
    x, y = AffineExpr.unknown(0), AffineExpr.unknown(1)
    with pytest.raises(RankDeficient) as info:
        affine_solve([x + y - AffineExpr.constant(1)])
    assert info.value.undetermined
    with pytest.raises(Inconsistent):
        affine_solve([x - AffineExpr.constant(1), x - AffineExpr.constant(2)])
    with pytest.raises(ValueError):
        affine_solve([x], unknowns={1})


def _brute_egf_product(f, g, M):
    """Multiply as ordinary power series in x and convert back."""
    a = [Fraction(c, 1) / factorial(m) for m, c in enumerate(f)]
    b = [Fraction(c, 1) / factorial(m) for m, c in enumerate(g)]
    out = []
    for m in range(M + 1):
        s = sum(a[i] * b[m - i] for i in range(m + 1) if i < len(a) and m - i < len(b))
        out.append(s * factorial(m))
    return out


@settings(max_examples=50)
@given(st.lists(fractions, min_size=1, max_size=8), st.lists(fractions, min_size=1, max_size=8))
def test_egf_product_against_power_series(f, g):
    M = len(f) + len(g) - 2
    F = EgfSeries(AffineExpr.constant(c) for c in f)
    G = EgfSeries(AffineExpr.constant(c) for c in g)
    got = [c.const.const_value() if c.const else Fraction(0) for c in egf_mul(F, G, M).coeffs]
    assert got == _brute_egf_product(f, g, M)


def test_egf_helpers():
    F = EgfSeries(AffineExpr.constant(c) for c in [1, 2, 3, 4])
    assert F.order == 3
    assert F.derivative()[0] == AffineExpr.constant(2)
    assert F.negate_x()[3] == AffineExpr.constant(-4)
    assert F[10].is_zero()
    # exp(x) * exp(x) = exp(2x)
    E = EgfSeries(AffineExpr.constant(1) for _ in range(6))
    assert [egf_coeff(E, E, m).const.const_value() for m in range(6)] == [2 ** m for m in range(6)]
