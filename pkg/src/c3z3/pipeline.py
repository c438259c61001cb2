"""End-to-end computation and verification on a store."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

from .assembler import assemble_seeds, hodge_from_invariant, invariant_from_hodge, lf_crosscheck, record_threepart
from .geometry import level_of
from .golden import golden_entries
from .relations.loci import check_hbar, template_relations, templates
from .relations.pde import PDEEvaluator, PDES, pde_relations
from .relations.routes import ROUTES
from .solver import levels_for, solve_level
from .store import HodgeStore
from .wdvv import propagate, wdvv_residuals

log = logging.getLogger(__name__)


def threaded_pde_source(threads: int):
    """PDE relations generated one PDE per task, merged in a fixed order."""
    if threads <= 1:
        return pde_relations

    def source(store, k):
        names = list(PDES)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda name: pde_relations(store, k, [name]), names))
        return [rel for part in parts for rel in part]

    return source


def compute(n_max: int, store: Optional[HodgeStore] = None, threads: int = 1, route: str = "pde") -> HodgeStore:
    """Fill a store with every invariant <w^n1 wb^n2>, n1 + n2 <= n_max."""
    if n_max < 3:
        raise ValueError("at least three insertions are needed")
    if store is None:
        store = HodgeStore()
    store.seed_three_point()
    source = threaded_pde_source(threads) if route == "pde" else ROUTES[route]
    for k in range(1, levels_for(n_max) + 1):
        solve_level(store, k, source)
    assemble_seeds(store, n_max)
    propagate(store, n_max)
    record_threepart(store, n_max)
    return store


def solved_level(store: HodgeStore) -> int:
    """Highest level with at least one committed integral."""
    return max((level_of(k.n1, k.n2) for k in store.values), default=0)


def max_total(store: HodgeStore) -> int:
    return max((k.total for k in store.invariants if k.n0 == 0), default=0)


def pde_failures(store: HodgeStore, level: int, max_order: Optional[int] = None, filtered: bool = True) -> List[str]:
    """Nonzero residuals of the eight L-equations at all orders that only see levels <= level.

    With ``filtered`` the psi-removal equations are only read on the
    (u, v)-monomials where they hold.
    """
    ev = PDEEvaluator(store)
    bad = []
    for name, pde in PDES.items():
        top = pde.order_for_level(level) if max_order is None else max_order
        for m in range(top + 1):
            lv = pde.level_of_order(m)
            if lv is not None and lv > level:
                raise ValueError(f"PDE {name} at x^{m} needs level {lv}, only {level} is solved")
            for rel in ev.coefficient_relations(pde, m, lv if lv is not None else -1, filtered):
                bad.append(f"PDE {name} at x^{m} {rel.label[2]}: {rel.expr}")
    return bad


def alpha_failures(store: HodgeStore, level: int) -> List[str]:
    bad = []
    table = templates()
    for tid in ("I3k1", "J3km1"):
        for k in range(1, level + 1):
            for rel in template_relations(store, table[tid], k, alpha_degrees=range(1, 16)):
                bad.append(f"{tid} k={k} alpha^{rel.label[2]}: {rel.expr}")
    return bad


def locus_failures(store: HodgeStore, level: int) -> List[str]:
    """Every template that must vanish, checked on the solved values."""
    bad = []
    for tid, t in templates().items():
        for k in range(t.k_min, level + 1):
            check_hbar(t, k, store)
            if t.mode == "total":
                rels = template_relations(store, t, k)
            elif t.mode == "alpha":
                rels = template_relations(store, t, k, alpha_degrees=range(1, 16))
            else:
                rels = template_relations(store, t, k)
            bad.extend(f"{tid} k={k} {rel.label}: {rel.expr}" for rel in rels)
    return bad


def structure_failures(store: HodgeStore) -> List[str]:
    bad = []
    for key, poly in sorted(store.invariants.items()):
        if key.n0:
            continue
        if not poly.is_homogeneous(key.n2):
            bad.append(f"<w^{key.n1} wb^{key.n2}> is not homogeneous of degree {key.n2}")
        for perm in ((1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)):
            if poly.permuted(perm) != poly:
                bad.append(f"<w^{key.n1} wb^{key.n2}> is not symmetric")
                break
        if key.n2 <= 2:
            if invariant_from_hodge(store, key.n1, key.n2) != poly:
                bad.append(f"<w^{key.n1} wb^{key.n2}> differs from its Hodge expression")
        parts = hodge_from_invariant(poly, key.n1, key.n2)
        for lam, val in parts.items():
            if store.threepart.get((key.n1, key.n2, lam), val) != val:
                bad.append(f"l{lam} on A({key.n1},{key.n2}) disagrees with the invariant")
    return bad


@dataclass
class VerifyReport:
    golden_checked: int = 0
    golden_skipped: int = 0
    failures: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify(store: HodgeStore, properties: bool = True) -> VerifyReport:
    report = VerifyReport()
    n = max_total(store)
    if n == 0:
        report.warnings.append("cache holds no invariants; nothing to verify")
        return report
    for (n1, n2), want in sorted(golden_entries().items(), key=lambda kv: (sum(kv[0]), kv[0][1])):
        poly = store.invariant(n1, n2)
        if poly is None:
            report.golden_skipped += 1
            continue
        report.golden_checked += 1
        got = poly.evaluate(1, 1, 1)
        if got != want:
            report.failures.append(f"<w^{n1} wb^{n2}> at t=1: cached {got}, reference {want}")
    if not properties:
        return report
    level = solved_level(store)
    report.failures.extend(f"WDVV x1^{a} x2^{b}: {r}" for a, b, r in wdvv_residuals(store, n))
    report.failures.extend(structure_failures(store))
    if level:
        report.failures.extend(pde_failures(store, level))
        report.failures.extend(alpha_failures(store, level))
        report.failures.extend(locus_failures(store, level))
        cross = lf_crosscheck(store, n)
        report.failures.extend(cross.mismatches)
    return report
