"""The localization and psi-removal PDEs as coefficient extractors.

Each PDE is written as ``sum of terms == 0``.  A term is a polynomial
coefficient times one or two factors; a factor is a derivative of L^w
or L^wb at y = 0, evaluated at x -> +-x and with (u, v) replaced by
polynomials.  The four psi-removal PDEs only hold on (u, v)-monomials
of total degree at least ``min_uv_degree``: below that bound the
auxiliary integral they come from is not zero by dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Tuple

from ..arith import AffineExpr, MPoly
from .base import GeneratingFunctions, Relation, U, V

TWO_THIRDS = MPoly.const(Fraction(2, 3))
ZERO_P = MPoly()


@dataclass(frozen=True)
class Factor:
    flavor: str
    dx: int
    dy: int
    u: MPoly
    v: MPoly


@dataclass(frozen=True)
class Term:
    coef: MPoly
    factors: Tuple[Factor, ...]


@dataclass
class PDE:
    name: str
    x_sign: int
    terms: List[Term]
    constants: Dict[int, MPoly] = field(default_factory=dict)
    min_uv_degree: int = 0

    def _offsets(self):
        offs = set()
        for t in self.terms:
            sx = sum(f.dx for f in t.factors)
            sy = sum(f.dy for f in t.factors)
            offs.add(sx + 2 * sy - 3 * len(t.factors))
        if len({o % 3 for o in offs}) != 1:
            raise AssertionError(f"{self.name}: terms live on incompatible orders {offs}")
        return offs

    def order_for_level(self, k: int) -> Optional[int]:
        """The x-order whose coefficient has level-k integrals as its top level."""
        m = 3 * k - max(self._offsets())
        return m if m >= 0 else None

    def level_of_order(self, m: int) -> Optional[int]:
        """Top level of the integrals entering the x^m coefficient, or None if it is empty."""
        top = max(self._offsets())
        if (m + top) % 3:
            return None
        return (m + top) // 3


def _f(flavor, dx, dy, u, v) -> Factor:
    def poly(x):
        return x if isinstance(x, MPoly) else MPoly.const(x)
    return Factor(flavor, dx, dy, poly(u), poly(v))


def _t(coef, *factors) -> Term:
    return Term(coef if isinstance(coef, MPoly) else MPoly.const(coef), tuple(factors))


def build_pdes() -> Dict[str, PDE]:
    third = Fraction(1, 3)
    ninth = Fraction(1, 9)
    t23 = TWO_THIRDS
    pdes = {}
    # 2 L^w_x(-x;1,0) = 3 L^wb_y(-x;1,0) L^w_xx(-x;0,0)
    pdes["R1"] = PDE("R1", -1, [
        _t(2, _f("w", 1, 0, 1, 0)),
        _t(-3, _f("wb", 0, 1, 1, 0), _f("w", 2, 0, 0, 0)),
    ])
    # 2 L^w_x(-x;-u,1) L^wb_yy(-x;u,0) - L^wb_y(-x;-u,1) L^w_xy(-x;u,0) + 1/3 L^wb_y(-x;0,1) = 0
    pdes["R2"] = PDE("R2", -1, [
        _t(2, _f("w", 1, 0, -U, 1), _f("wb", 0, 2, U, 0)),
        _t(-1, _f("wb", 0, 1, -U, 1), _f("w", 1, 1, U, 0)),
        _t(third, _f("wb", 0, 1, 0, 1)),
    ])
    # L^wb_y(-x;2/3,2/3) - L^wb_y(-x;2/3,0) = 1/9 L^w_x(-x;2/3,2/3) L^w_x(-x;2/3,0)
    pdes["R3"] = PDE("R3", -1, [
        _t(1, _f("wb", 0, 1, t23, t23)),
        _t(-1, _f("wb", 0, 1, t23, 0)),
        _t(-ninth, _f("w", 1, 0, t23, t23), _f("w", 1, 0, t23, 0)),
    ])
    # L^wb_yy(-x;2/3,v+2/3) + L^wb_yy(-x;2/3,-v)
    #   - 1/3 (v+1/3) [L^w_x(-x;2/3,-v) L^w_xy(-x;2/3,v+2/3) - L^w_xy(-x;2/3,-v) L^w_x(-x;2/3,v+2/3)]
    #   = 2 L^wb_yy(-x;2/3,1/3)
    shift = V + t23
    bracket = MPoly.const(-third) * (V + MPoly.const(third))
    pdes["R4"] = PDE("R4", -1, [
        _t(1, _f("wb", 0, 2, t23, shift)),
        _t(1, _f("wb", 0, 2, t23, -V)),
        _t(bracket, _f("w", 1, 0, t23, -V), _f("w", 1, 1, t23, shift)),
        _t(-bracket, _f("w", 1, 1, t23, -V), _f("w", 1, 0, t23, shift)),
        _t(-2, _f("wb", 0, 2, t23, third)),
    ])
    # (a) L^w_xxx(u,v) L^wb_xy(-u,-v) = 1/9 + L^wb_xxy(u,v) L^w_xx(-u,-v)
    pdes["a"] = PDE("a", 1, [
        _t(1, _f("w", 3, 0, U, V), _f("wb", 1, 1, -U, -V)),
        _t(-1, _f("wb", 2, 1, U, V), _f("w", 2, 0, -U, -V)),
    ], constants={0: MPoly.const(-ninth)}, min_uv_degree=1)
    # (b) L^wb_xxy(u,v) L^w_xy(-u,-v) = L^w_xxx(u,v) L^wb_yy(-u,-v)
    pdes["b"] = PDE("b", 1, [
        _t(1, _f("wb", 2, 1, U, V), _f("w", 1, 1, -U, -V)),
        _t(-1, _f("w", 3, 0, U, V), _f("wb", 0, 2, -U, -V)),
    ], min_uv_degree=2)
    # (c) L^w_xxy(u,v) L^wb_xy(-u,-v) = L^wb_xyy(u,v) L^w_xx(-u,-v)
    pdes["c"] = PDE("c", 1, [
        _t(1, _f("w", 2, 1, U, V), _f("wb", 1, 1, -U, -V)),
        _t(-1, _f("wb", 1, 2, U, V), _f("w", 2, 0, -U, -V)),
    ], min_uv_degree=2)
    # (d) L^wb_xyy(u,v) L^w_xy(-u,-v) = -1/9 x u v + L^w_xxy(u,v) L^wb_yy(-u,-v)
    pdes["d"] = PDE("d", 1, [
        _t(1, _f("wb", 1, 2, U, V), _f("w", 1, 1, -U, -V)),
        _t(-1, _f("w", 2, 1, U, V), _f("wb", 0, 2, -U, -V)),
    ], constants={1: MPoly.const(ninth) * U * V}, min_uv_degree=3)
    return pdes


PDES = build_pdes()
PSI_REMOVAL = ("a", "b", "c", "d")


class PDEEvaluator:
    """Evaluates PDE residual coefficients against a store snapshot."""

    def __init__(self, store):
        self.gf = GeneratingFunctions(store)
        self._cache: Dict[Tuple[Factor, int, int], AffineExpr] = {}

    def factor_coeff(self, f: Factor, x_sign: int, m: int) -> AffineExpr:
        key = (f, x_sign, m)
        hit = self._cache.get(key)
        if hit is None:
            c = self.gf.coeff(f.flavor, m + f.dx, f.dy)
            if not c.is_zero():
                c = c.substitute({"u": f.u, "v": f.v})
                if x_sign < 0 and m % 2:
                    c = -c
            hit = self._cache[key] = c
        return hit

    def residual(self, pde: PDE, m: int) -> AffineExpr:
        """Coefficient of x^m/m! in (sum of terms), a polynomial in u, v."""
        total = AffineExpr()
        for t in pde.terms:
            if len(t.factors) == 1:
                val = self.factor_coeff(t.factors[0], pde.x_sign, m)
            else:
                f, g = t.factors
                val = AffineExpr()
                for a in range(m + 1):
                    fa = self.factor_coeff(f, pde.x_sign, a)
                    if fa.is_zero():
                        continue
                    gb = self.factor_coeff(g, pde.x_sign, m - a)
                    if gb.is_zero():
                        continue
                    val = val + (fa * gb).scale(comb(m, a))
            if not val.is_zero():
                total = total + val.scale(t.coef)
        const = pde.constants.get(m)
        if const is not None:
            total = total + const
        return total

    def coefficient_relations(self, pde: PDE, m: int, level: int, filtered: bool = True) -> List[Relation]:
        res = self.residual(pde, m)
        out = []
        for mono, expr in sorted(res.split(("u", "v")).items()):
            if filtered and sum(mono) < pde.min_uv_degree:
                continue
            if expr.is_zero():
                continue
            out.append(Relation(f"pde:{pde.name}", level, expr, (pde.name, m, mono)))
        return out


def pde_relations(store, k: int, names=None) -> List[Relation]:
    """All coefficient relations at level k from the listed PDEs (default: all eight)."""
    ev = PDEEvaluator(store)
    out: List[Relation] = []
    for name in names or PDES:
        pde = PDES[name]
        m = pde.order_for_level(k)
        if m is None:
            continue
        out.extend(ev.coefficient_relations(pde, m, k))
    return out


def pde_residuals(store, max_order: int, names=None):
    """Yield (name, order, monomial, residual) for every nonzero valid residual."""
    ev = PDEEvaluator(store)
    for name in names or PDES:
        pde = PDES[name]
        for m in range(max_order + 1):
            level = pde.level_of_order(m)
            for rel in ev.coefficient_relations(pde, m, level if level is not None else -1):
                yield name, m, rel.label[2], rel.expr
