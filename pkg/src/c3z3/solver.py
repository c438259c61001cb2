"""Level-by-level induction for the Hodge integrals with at most two omega-bar points.

Level k consists of the spaces A(3k+3,0), A(3k+1,1), A(3k-1,2) and
all descendant integrals on them.  All level-k relations are gathered
and solved jointly; ``affine_solve`` checks that the solution is
unique and that every surplus relation is satisfied.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional

from .arith import AffineExpr, affine_solve
from .errors import Inconsistent, NoRuleApplies, RankDeficient
from .geometry import level_of
from .relations.base import Relation
from .relations.pde import PDEEvaluator, PDES, pde_relations
from .store import HodgeKey, HodgeStore, canonical

log = logging.getLogger(__name__)

RelationSource = Callable[[HodgeStore, int], List[Relation]]


@dataclass
class LevelReport:
    level: int
    equations: int
    unknowns: int
    committed: Dict[HodgeKey, object] = field(default_factory=dict)


def _dump_failure(store: HodgeStore, rels: List[Relation], path: Optional[Path]) -> None:
    if path is None:
        return
    data = []
    for rel in rels:
        data.append({
            "source": rel.source,
            "label": repr(rel.label),
            "const": repr(rel.expr.const),
            "terms": {store.key_of(uid).label(): repr(c) for uid, c in rel.expr.terms.items()},
        })
    Path(path).write_text(json.dumps(data, indent=1))


def solve_relations(store: HodgeStore, rels: List[Relation], level: int, dump: Optional[Path] = None) -> LevelReport:
    """Solve a set of relations jointly and commit every unknown they contain."""
    unknowns = set()
    for rel in rels:
        unknowns |= rel.expr.unknowns()
    for uid in unknowns:
        key = store.key_of(uid)
        if level_of(key.n1, key.n2) != level:
            raise AssertionError(f"{key.label()} is not a level-{level} integral")
    try:
        sol = affine_solve([rel.expr for rel in rels], unknowns)
    except (RankDeficient, Inconsistent):
        _dump_failure(store, rels, dump)
        raise
    report = LevelReport(level, len(rels), len(unknowns))
    for uid, val in sorted(sol.items()):
        key = store.key_of(uid)
        value = val.const_value()
        store.put(key, value)
        report.committed[key] = value
    return report


def solve_level(store: HodgeStore, k: int, source: RelationSource = pde_relations, dump: Optional[Path] = None) -> LevelReport:
    """Commit exact values for every level-k integral touched by the relations."""
    if k < 1:
        raise ValueError("levels start at 1")
    rels = source(store, k)
    report = solve_relations(store, rels, k, dump)
    log.info("level %d: %d relations, %d unknowns", k, report.equations, report.unknowns)
    return report


def solve_through(store: HodgeStore, kmax: int, source: RelationSource = pde_relations) -> List[LevelReport]:
    reports = []
    for k in range(1, kmax + 1):
        reports.append(solve_level(store, k, source))
    return reports


def levels_for(n_max: int) -> int:
    """Highest level needed for all invariants with n2 <= 2 and n1 + n2 <= n_max."""
    return (n_max + 2) // 3 - 1


def audit_level(store: HodgeStore, k: int, sources: List[RelationSource]) -> List[Relation]:
    """Return every level-k relation that does not vanish on the committed values."""
    bad = []
    for source in sources:
        for rel in source(store, k):
            if not rel.expr.is_zero():
                bad.append(rel)
    return bad


# psi-removal ------------------------------------------------------------

_RULES = {(0, "w"): "a", (1, "wb"): "b", (1, "w"): "c", (2, "wb"): "d"}


def _measure(key: HodgeKey):
    return (key.n1 + key.n2, key.psi_power)


def reduce_descendant(store: HodgeStore, key: HodgeKey) -> AffineExpr:
    """Solve the matching psi-removal relation for ``key``.

    The result is an AffineExpr whose unknowns are integrals that are
    strictly smaller than ``key`` (smaller space, or same space with
    fewer psi-classes); known values enter as constants.
    """
    if canonical(key) != key:
        raise ValueError(f"{key} is not canonical")
    if key.psi_power <= 0:
        raise ValueError(f"{key.label()} has no psi-class")
    rule = _RULES.get((key.n2, key.flavor))
    if rule is None:
        raise NoRuleApplies(f"no psi-removal rule for {key.label()}")
    pde = PDES[rule]
    k = level_of(key.n1, key.n2)
    m = pde.order_for_level(k)
    ev = PDEEvaluator(store)
    res = ev.residual(pde, m).split(("u", "v")).get((key.i, key.j))
    target = store.id_of(key)
    if res is None or target not in res.terms:
        raise NoRuleApplies(f"rule {rule} does not contain {key.label()}")
    coef = res.terms[target].const_value()
    rest = AffineExpr(res.const, {uid: c for uid, c in res.terms.items() if uid != target})
    out = rest.scale(-1 / coef)
    for uid in out.terms:
        smaller = store.key_of(uid)
        if not _measure(smaller) < _measure(key):
            raise AssertionError(f"{smaller.label()} is not smaller than {key.label()}")
    return out


def reduce_fully(store: HodgeStore, key: HodgeKey, _depth: int = 0) -> AffineExpr:
    """Iterate ``reduce_descendant`` until only non-descendant unknowns remain."""
    if _depth > 200:
        raise AssertionError("descendant reduction does not terminate")
    if store.known(key):
        return AffineExpr.constant(store.values[key])
    if not key.is_descendant:
        return AffineExpr.unknown(store.id_of(key))
    expr = reduce_descendant(store, key)
    out = AffineExpr(expr.const)
    for uid, c in expr.terms.items():
        sub = store.key_of(uid)
        out = out + reduce_fully(store, sub, _depth + 1).scale(c)
    return out
