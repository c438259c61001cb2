"""Relation records and the generating functions L^w, L^wb."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Tuple

from ..arith import AffineExpr, EgfSeries, MPoly
from ..geometry import rank_e_omega, space_nonempty

U = MPoly.var("u")
V = MPoly.var("v")
ALPHA = MPoly.var("a")


@dataclass
class Relation:
    """An exact affine relation ``expr == 0`` among Hodge unknowns."""

    source: str
    level: int
    expr: AffineExpr
    label: Tuple = field(default_factory=tuple)

    def __repr__(self) -> str:
        return f"Relation({self.source}, k={self.level}, {self.label})"


class GeneratingFunctions:
    """Coefficients c^f_{m,n}(u, v) of L^f read off a store.

    c^f_{m,n}(u, v) = sum_{i,j} H(m, n, i, j, f) u^i v^j, with
    unknown Hodge integrals entering as unknown ids.  Results are
    cached, so a fresh instance should be used after the store changes.
    """

    def __init__(self, store):
        self.store = store
        self._cache: Dict[Tuple[str, int, int], AffineExpr] = {}

    def coeff(self, flavor: str, m: int, n: int) -> AffineExpr:
        if n > 2:
            raise ValueError("only y-derivatives of order at most 2 occur")
        key = (flavor, m, n)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        total = AffineExpr()
        if m >= 0 and space_nonempty(m, n) and m + n >= 2:
            r = rank_e_omega(m, n)
            for i in range(r + 1):
                for j in range(r + 1):
                    h = self.store.lookup(m, n, i, j, flavor)
                    if not h.is_zero():
                        total = total + h.scale(MPoly.monomial(1, u=i, v=j))
        self._cache[key] = total
        return total

    def series(self, flavor: str, dx: int, dy: int, order: int) -> EgfSeries:
        """The series of d^dx/dx^dx d^dy/dy^dy L^f at y = 0, up to x-order ``order``."""
        return EgfSeries(self.coeff(flavor, m + dx, dy) for m in range(order + 1))
