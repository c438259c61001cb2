"""WDVV propagation from invariants with at most two omega-bar points.

On F(0, x1, x2) = sum <w^a wb^b> x1^a x2^b / (a! b!) the associativity
equation reads

    F111 F222 - F112 F122 = t1 t2 t3 / 9.

Its x1^n1 x2^n2 coefficient contains <w^n1 wb^(n2+3)> only through
<w^3> F222 and so determines it from invariants with fewer omega-bar
points or fewer insertions.

Internally invariants are polynomials in the elementary symmetric
functions e1, e2, e3 with an integer numerator map and a common
denominator; multiplication is then plain three-variable polynomial
multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Dict, List, Optional, Tuple

from .errors import ConflictingValue, MissingSeed
from .store import HodgeStore, InvariantKey
from .symmetric import SymPoly3, e1 as sym_e1, e2 as sym_e2, e3 as sym_e3

Mono = Tuple[int, int, int]


class EPoly:
    """Polynomial in e1, e2, e3 stored as (integer numerators, denominator)."""

    __slots__ = ("num", "den")

    def __init__(self, num: Optional[Dict[Mono, int]] = None, den: int = 1):
        self.num = {k: v for k, v in (num or {}).items() if v}
        self.den = den
        self._reduce()

    def _reduce(self):
        if not self.num:
            self.den = 1
            return
        g = self.den
        for v in self.num.values():
            g = gcd(g, v)
            if g == 1:
                break
        if self.den < 0:
            g = -g
        if g != 1:
            self.num = {k: v // g for k, v in self.num.items()}
            self.den //= g

    @classmethod
    def const(cls, c) -> "EPoly":
        c = Fraction(c)
        return cls({(0, 0, 0): c.numerator}, c.denominator)

    def __add__(self, other: "EPoly") -> "EPoly":
        if not other.num:
            return self
        if not self.num:
            return other
        den = self.den * other.den // gcd(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        out = {k: v * fa for k, v in self.num.items()}
        for k, v in other.num.items():
            out[k] = out.get(k, 0) + v * fb
        return EPoly(out, den)

    def __neg__(self) -> "EPoly":
        return EPoly({k: -v for k, v in self.num.items()}, self.den)

    def __sub__(self, other: "EPoly") -> "EPoly":
        return self + (-other)

    def scale(self, c) -> "EPoly":
        c = Fraction(c)
        return EPoly({k: v * c.numerator for k, v in self.num.items()}, self.den * c.denominator)

    def __mul__(self, other: "EPoly") -> "EPoly":
        if not self.num or not other.num:
            return EPoly()
        out: Dict[Mono, int] = {}
        get = out.get
        for (a0, a1, a2), x in self.num.items():
            for (b0, b1, b2), y in other.num.items():
                k = (a0 + b0, a1 + b1, a2 + b2)
                out[k] = get(k, 0) + x * y
        return EPoly(out, self.den * other.den)

    def __eq__(self, other) -> bool:
        return isinstance(other, EPoly) and self.num == other.num and self.den == other.den

    def is_zero(self) -> bool:
        return not self.num

    def weighted_degrees(self) -> set:
        return {a + 2 * b + 3 * c for a, b, c in self.num}


def sym_to_e(p: SymPoly3) -> EPoly:
    """Rewrite a symmetric polynomial in e1, e2, e3 (leading-term reduction)."""
    rest = dict(p.terms)
    out: Dict[Mono, Fraction] = {}
    cache: Dict[Mono, SymPoly3] = {}
    while rest:
        lead = max(rest)
        c = rest[lead]
        a, b, cc = lead
        if cc < 0:
            raise ValueError("Laurent symmetric polynomials are not supported here")
        mono = (a - b, b - cc, cc)
        out[mono] = out.get(mono, 0) + c
        sub = _e_monomial(mono, cache).scale(c)
        for e, v in sub.terms.items():
            val = rest.get(e, 0) - v
            if val:
                rest[e] = val
            else:
                rest.pop(e, None)
    den = 1
    for c in out.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return EPoly({k: int(v * den) for k, v in out.items()}, den)


def _e_monomial(mono: Mono, cache: Dict[Mono, SymPoly3]) -> SymPoly3:
    hit = cache.get(mono)
    if hit is not None:
        return hit
    i, j, k = mono
    if mono == (0, 0, 0):
        val = SymPoly3.const(1)
    elif i:
        val = _e_monomial((i - 1, j, k), cache) * sym_e1()
    elif j:
        val = _e_monomial((i, j - 1, k), cache) * sym_e2()
    else:
        val = _e_monomial((i, j, k - 1), cache) * sym_e3()
    cache[mono] = val
    return val


_GLOBAL_E_CACHE: Dict[Mono, SymPoly3] = {}


def e_to_sym(p: EPoly) -> SymPoly3:
    total = SymPoly3()
    acc: Dict[Tuple[int, int, int], Fraction] = {}
    for mono, v in p.num.items():
        c = Fraction(v, p.den)
        for e, w in _e_monomial(mono, _GLOBAL_E_CACHE).terms.items():
            acc[e] = acc.get(e, 0) + c * w
    total = SymPoly3({e: c for e, c in acc.items() if c})
    return total


E3 = EPoly({(0, 0, 1): 1})


@dataclass(frozen=True)
class WDVVTerm:
    coef: int
    left: InvariantKey
    right: InvariantKey
    minus: bool


@dataclass
class WDVVEquation:
    n1: int
    n2: int
    terms: List[WDVVTerm] = field(default_factory=list)
    rhs: SymPoly3 = field(default_factory=SymPoly3)


def _inv(p: int, q: int) -> Optional[InvariantKey]:
    if p + q < 3 or (p + 2 * q) % 3:
        return None
    return InvariantKey(0, p, q)


def wdvv_equation(n1: int, n2: int) -> WDVVEquation:
    """The x1^n1 x2^n2 / (n1! n2!) coefficient of the WDVV equation."""
    eq = WDVVEquation(n1, n2)
    if (n1, n2) == (0, 0):
        eq.rhs = SymPoly3({(1, 1, 1): Fraction(1, 9)})
    for a in range(n1 + 1):
        for b in range(n2 + 1):
            c = comb(n1, a) * comb(n2, b)
            pairs = (
                (_inv(a + 3, b), _inv(n1 - a, n2 - b + 3), False),
                (_inv(a + 2, b + 1), _inv(n1 - a + 1, n2 - b + 2), True),
            )
            for left, right, minus in pairs:
                if left is not None and right is not None:
                    eq.terms.append(WDVVTerm(c, left, right, minus))
    return eq


class _Values:
    def __init__(self, store: HodgeStore):
        self.store = store
        self.e: Dict[InvariantKey, EPoly] = {}

    def get(self, key: InvariantKey) -> Optional[EPoly]:
        hit = self.e.get(key)
        if hit is None:
            poly = self.store.invariants.get(key)
            if poly is None:
                return None
            hit = self.e[key] = sym_to_e(poly)
        return hit


def _evaluate(eq: WDVVEquation, vals: _Values, skip: Optional[InvariantKey] = None) -> Tuple[EPoly, int]:
    """Sum of the terms except those whose right factor is ``skip``; returns (sum, coefficient of skip)."""
    total = EPoly()
    skip_coef = 0
    for t in eq.terms:
        if skip is not None and t.right == skip:
            if t.left != InvariantKey(0, 3, 0) or t.minus:
                raise AssertionError("unexpected occurrence of the principal unknown")
            skip_coef += t.coef
            continue
        left, right = vals.get(t.left), vals.get(t.right)
        if left is None or right is None:
            raise MissingSeed(f"WDVV({eq.n1},{eq.n2}) needs {t.left if left is None else t.right}")
        prod = (left * right)
        if t.coef != 1:
            prod = prod.scale(t.coef)
        total = total - prod if t.minus else total + prod
    return total, skip_coef


def propagate(store: HodgeStore, n_max: int) -> List[InvariantKey]:
    """Commit <w^n1 wb^n2> for every n2 >= 3 with n1 + n2 <= n_max."""
    vals = _Values(store)
    third = Fraction(1, 3)
    committed = []
    for total in range(3, n_max + 1):
        for n2 in range(total + 1):
            n1 = total - n2
            if (n1 + 2 * n2) % 3:
                continue
            key = InvariantKey(0, n1, n2)
            if n2 <= 2:
                if key not in store.invariants:
                    raise MissingSeed(f"no value for <w^{n1} wb^{n2}>")
                continue
            eq = wdvv_equation(n1, n2 - 3)
            rest, c = _evaluate(eq, vals, skip=key)
            rhs = sym_to_e(eq.rhs)
            # c * <w^3> * X + rest = rhs
            value = (rhs - rest).scale(1 / (c * third))
            if value.weighted_degrees() - {n2}:
                raise AssertionError(f"<w^{n1} wb^{n2}> is not homogeneous of degree {n2}")
            poly = e_to_sym(value)
            old = store.invariants.get(key)
            if old is not None and old != poly:
                raise ConflictingValue(f"<w^{n1} wb^{n2}>: stored {old}, WDVV gives {poly}")
            store.put_invariant(key, poly)
            vals.e[key] = value
            committed.append(key)
    return committed


def wdvv_residuals(store: HodgeStore, n_max: int) -> List[Tuple[int, int, SymPoly3]]:
    """Every WDVV coefficient equation whose terms are all stored, with nonzero residual."""
    vals = _Values(store)
    bad = []
    for total in range(0, n_max - 2):
        for n2 in range(total + 1):
            n1 = total - n2
            eq = wdvv_equation(n1, n2)
            try:
                lhs, _ = _evaluate(eq, vals)
            except MissingSeed:
                continue
            res = lhs - sym_to_e(eq.rhs)
            if not res.is_zero():
                bad.append((n1, n2, e_to_sym(res)))
    return bad
