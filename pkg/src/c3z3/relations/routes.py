"""Relation sources used by the solver.

Route A is the PDE system.  Route B uses the closed forms R1, R2, R5,
the locus sums of the two G1 templates (their total and linear-in-alpha
parts) and the four psi-removal locus families.  The two routes share
no code beyond Hodge lookups, so agreement between them is a real check.
"""

from __future__ import annotations

from typing import List

from .base import Relation
from .loci import template_relations, templates
from .pde import pde_relations
from .transcribed import transcribed_relations

ROUTE_B_TEMPLATES = ("J3k1", "J3km1", "psi_a", "psi_b", "psi_c", "psi_d")


def route_a(store, k: int) -> List[Relation]:
    return pde_relations(store, k)


def route_b(store, k: int) -> List[Relation]:
    rels = transcribed_relations(store, k)
    table = templates()
    for tid in ROUTE_B_TEMPLATES:
        rels.extend(template_relations(store, table[tid], k))
    return [r for r in rels if not r.expr.is_zero()]


ROUTES = {"pde": route_a, "loci": route_b}
