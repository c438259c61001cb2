from __future__ import annotations

from fractions import Fraction

import pytest

from c3z3.errors import NonlinearProduct
from c3z3.relations.routes import route_a, route_b
from c3z3.relations.transcribed import (
    hodge,
    relation_1,
    relation_2,
    relation_5,
    relation_5_as_printed,
    transcribed_relation,
    transcribed_relations,
)
from c3z3.solver import solve_through
from c3z3.store import HodgeKey, HodgeStore

F = Fraction


def _store(k):
    s = HodgeStore()
    s.seed_three_point()
    solve_through(s, k)
    return s


def test_hodge_helper():
    s = _store(1)
    assert hodge(s, 6, 0, (1, 1, 1)).const.const_value() == F(1, 27)
    assert hodge(s, 6, 0, (1, 1, 0), 1, "w").const.const_value() == F(4, 27)
    assert hodge(s, 6, 0, (1, 1, -1), 2, "w").is_zero()
    with pytest.raises(ValueError):
        hodge(s, 6, 0, (1, 1, 0))
    with pytest.raises(ValueError):
        hodge(s, 6, 0, (0, 0, 1))


def test_first_relation_at_level_one():
    # 3 (l1^3) = 2 (l1^2 psi_w) - 3 binom(5,4) (l1^2 l0)_{A(4,1)} (l0^3)_{A(3,0)}
    s = _store(0)
    expr = relation_1(s, 1)
    x = s.id_of(HodgeKey(6, 0, 0, 0))
    y = s.id_of(HodgeKey(6, 0, 0, 1, "w"))
    z = s.id_of(HodgeKey(4, 1, 0, 1))
    assert expr.terms[x].const_value() == 3
    assert expr.terms[y].const_value() == -2
    assert expr.terms[z].const_value() == 15 * F(1, 3)
    assert not expr.const


@pytest.mark.parametrize("k", range(1, 6))
def test_relations_vanish_on_solved_values(k):
    s = _store(k)
    for rel in transcribed_relations(s, k):
        assert rel.expr.is_zero(), rel.label


def test_fifth_relation_at_level_one():
    s = _store(0)
    expr = relation_5(s, 1)
    x = s.id_of(HodgeKey(4, 1, 1, 1, "wb"))
    y = s.id_of(HodgeKey(2, 2, 1, 1))
    # (1/3) X - (l0^3)_{A(3,0)} (l1 l0^2)_{A(2,2)} = 0
    assert expr.terms == {x: expr.terms[x], y: expr.terms[y]}
    assert expr.terms[x].const_value() == F(1, 3)
    assert expr.terms[y].const_value() == F(-1, 3)


def test_printed_fifth_relation_disagrees():
    s = _store(1)
    # the uncorrected form would force (l1 psi_wb)_{A(4,1)} = 1/27 * 1/9
    assert relation_5_as_printed(s, 1).const.const_value() == F(1, 9) - F(1, 243)
    with pytest.raises(NonlinearProduct):
        relation_5_as_printed(_store(0), 1)


def test_second_relation_pins_the_linear_part():
    s = _store(1)
    assert relation_2(s, 1).is_zero()
    rel = transcribed_relation(s, "R2", 2)
    assert rel.source == "transcribed" and rel.label == ("R2", 2)
    with pytest.raises(ValueError):
        transcribed_relation(s, "R1", 0)


def test_routes_agree(route_a_store, route_b_store):
    assert route_a_store.values == route_b_store.values


def test_route_b_uses_no_pde_relations():
    s = _store(1)
    assert all(not r.source.startswith("pde") for r in route_b(s, 2))
    assert all(r.source.startswith("pde") for r in route_a(s, 2))
