"""Closed-form level-k relations written out term by term.

Each relation is moved to the form ``expr = 0``.  They duplicate
content of the PDE system and serve as an independent route to the
same values.

R1   top-degree integral on A(3k+3,0) against its psi-descendants.
R2   linear-in-alpha part of the I(3k+1) locus sum.  The psi exponent
     on the first boundary sum is i (the degree count forces it).
R5   the worked psi-removal case lambda_k lambda_(k-1)^2 psi_wb on
     A(3k+1,1), with the factors that come out of its locus table.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Dict, List

from ..arith import AffineExpr
from ..geometry import rank_e_omega
from .base import Relation


def hodge(store, m: int, n: int, lambdas, psi: int = 0, flavor: str = "none") -> AffineExpr:
    """(lambda_a lambda_b lambda_c psi^psi) on A(m, n), lambdas given by absolute index."""
    r = rank_e_omega(m, n)
    if any(x < 0 or x > r for x in lambdas):
        return AffineExpr()
    drops = sorted(r - x for x in lambdas)
    if drops[0] != 0:
        raise ValueError(f"no lambda_top in {lambdas} on A({m},{n})")
    i, j = drops[1], drops[2]
    if i + j - n != psi:
        raise ValueError(f"psi power {psi} does not match the lambda degrees {lambdas} on A({m},{n})")
    return store.lookup(m, n, i, j, flavor if psi > 0 else "none")


def relation_1(store, k: int) -> AffineExpr:
    h = lambda *a, **kw: hodge(store, *a, **kw)
    expr = h(3 * k + 3, 0, (k, k, k)).scale(3 * k)
    for i in range(1, k + 1):
        expr = expr - h(3 * k + 3, 0, (k, k, k - i), i, "w").scale(2)
    for k1 in range(1, k + 1):
        k2 = k - k1
        inner = AffineExpr()
        for j in range(1, k1 + 1):
            inner = inner + h(3 * k1 + 1, 1, (k1, k1, k1 - j), j - 1, "wb")
        outer = h(3 * k2 + 3, 0, (k2, k2, k2))
        expr = expr + (inner * outer).scale(3 * comb(3 * k + 2, 3 * k1 + 1))
    return expr


def relation_2(store, k: int) -> AffineExpr:
    h = lambda *a, **kw: hodge(store, *a, **kw)
    m = 3 * k + 1
    expr = h(m, 1, (k, k, k - 1)).scale(3 * k) - h(m, 1, (k, k - 1, k - 1), 1, "wb")
    for i in range(2, k + 1):
        expr = expr - h(m, 1, (k, k - 1, k - i), i, "wb")
    for k1 in range(1, k):
        k2 = k - k1
        inner = AffineExpr()
        for i in range(1, k1 + 1):
            inner = inner + h(3 * k1 + 1, 1, (k1, k1, k1 - i), i - 1, "wb")
        outer = h(3 * k2 + 1, 1, (k2, k2, k2 - 1))
        expr = expr + (inner * outer).scale(3 * comb(3 * k + 1, 3 * k1 + 1))
    return expr


def relation_5(store, k: int) -> AffineExpr:
    h = lambda *a, **kw: hodge(store, *a, **kw)
    expr = h(3 * k + 1, 1, (k, k - 1, k - 1), 1, "wb").scale(Fraction(1, 3))
    for k1 in range(1, k):
        k2 = k - k1
        prod = h(3 * k1 + 1, 1, (k1, k1, k1 - 1)) * h(3 * k2 + 1, 1, (k2, k2, k2 - 1))
        expr = expr - prod.scale(2 * comb(3 * k - 1, 3 * k1 - 1))
    for k1 in range(0, k):
        k2 = k - k1
        prod = h(3 * k1 + 3, 0, (k1, k1, k1)) * h(3 * k2 - 1, 2, (k2, k2 - 1, k2 - 1))
        expr = expr - prod.scale(comb(3 * k - 1, 3 * k1))
    return expr


def relation_5_as_printed(store, k: int) -> AffineExpr:
    """The uncorrected closed form; only meaningful once level k is solved."""
    h = lambda *a, **kw: hodge(store, *a, **kw)
    expr = h(3 * k + 1, 1, (k, k - 1, k - 1), 1, "wb")
    expr = expr - h(3 * k + 3, 0, (k, k, k)) * h(3 * k - 1, 2, (k, k - 1, k - 1))
    for k1 in range(1, k):
        k2 = k - k1
        expr = expr - h(3 * k1 + 1, 1, (k1, k1, k1 - 1)) * h(3 * k2 + 1, 1, (k2, k2, k2 - 1))
        expr = expr - h(3 * k1 + 3, 0, (k1, k1, k1)) * h(3 * k2 - 1, 2, (k2, k2 - 1, k2 - 1))
    return expr


RELATIONS: Dict[str, Callable] = {"R1": relation_1, "R2": relation_2, "R5": relation_5}


def transcribed_relation(store, rid: str, k: int) -> Relation:
    if k < 1:
        raise ValueError("levels start at 1")
    return Relation("transcribed", k, RELATIONS[rid](store, k), (rid, k))


def transcribed_relations(store, k: int) -> List[Relation]:
    return [transcribed_relation(store, rid, k) for rid in RELATIONS]
