from __future__ import annotations

from fractions import Fraction

import pytest

from c3z3.errors import Inconsistent, NoRuleApplies, RankDeficient
from c3z3.relations.pde import pde_relations
from c3z3.relations.routes import route_b
from c3z3.solver import audit_level, levels_for, reduce_descendant, reduce_fully, solve_level, solve_through
from c3z3.store import HodgeKey, HodgeStore, canonical

F = Fraction


def _seeded():
    s = HodgeStore()
    s.seed_three_point()
    return s


def test_level_one_values():
    s = _seeded()
    report = solve_level(s, 1)
    assert report.unknowns == len(report.committed)
    assert s.values[HodgeKey(6, 0, 0, 0)] == F(1, 27)
    assert s.values[HodgeKey(4, 1, 0, 1)] == F(1, 27)
    assert s.values[HodgeKey(2, 2, 1, 1)] == F(1, 9)
    assert s.values[HodgeKey(6, 0, 0, 1, "w")] == F(4, 27)


def test_levels_needed():
    assert levels_for(3) == 0
    assert levels_for(6) == 1
    assert levels_for(24) == 7
    assert levels_for(27) == 8


def test_partial_sources_are_rank_deficient():
    with pytest.raises(RankDeficient):
        solve_level(_seeded(), 1, lambda s, k: pde_relations(s, k, ["R1"]))


def test_bad_lower_level_is_inconsistent(tmp_path):
    s = _seeded()
    solve_level(s, 1)
    s.values[HodgeKey(6, 0, 0, 0)] = F(1, 26)
    dump = tmp_path / "failure.json"
    with pytest.raises(Inconsistent):
        solve_level(s, 1, dump=dump)
    assert dump.exists() and "source" in dump.read_text()


def test_levels_start_at_one():
    with pytest.raises(ValueError):
        solve_level(_seeded(), 0)


def test_audit_after_solving():
    s = _seeded()
    solve_through(s, 3)
    for k in range(1, 4):
        assert audit_level(s, k, [pde_relations, route_b]) == []


def test_solve_is_idempotent():
    s = _seeded()
    solve_through(s, 3)
    before = s.dumps()
    solve_through(s, 3)
    assert s.dumps() == before


def _descendants(store, k):
    return sorted(key for key in store.values if key.is_descendant and (key.n1 + 2 * key.n2) // 3 - 1 == k)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_reduce_descendant_recovers_each_value(k):
    full = _seeded()
    solve_through(full, k)
    for key in _descendants(full, k):
        partial = HodgeStore.from_json(full.to_json())
        # forget the key and every descendant it could reduce to on the same level
        for other in _descendants(full, k):
            if (other.n1 + other.n2, other.psi_power) >= (key.n1 + key.n2, key.psi_power):
                del partial.values[other]
        expr = reduce_fully(partial, key)
        assert expr.is_constant(), key.label()
        assert expr.const.const_value() == full.values[key], key.label()


def test_reduce_descendant_first_case():
    s = _seeded()
    solve_through(s, 1)
    key = HodgeKey(6, 0, 0, 1, "w")
    del s.values[key]
    expr = reduce_descendant(s, key)
    assert expr.is_constant() and expr.const.const_value() == F(4, 27)


def test_reduce_descendant_preconditions():
    s = _seeded()
    with pytest.raises(ValueError):
        reduce_descendant(s, HodgeKey(6, 0, 0, 0))
    with pytest.raises(ValueError):
        reduce_descendant(s, HodgeKey(6, 0, 1, 0, "w"))
    key = canonical(HodgeKey(3, 3, 2, 2, "w"))
    with pytest.raises(NoRuleApplies):
        reduce_descendant(s, key)
