"""Symmetric (Laurent) polynomials in the torus weights t1, t2, t3.

A ``SymPoly3`` is stored in the monomial-symmetric basis: the key
``(a, b, c)`` with ``a >= b >= c`` stands for the sum of the distinct
monomials t1^x t2^y t3^z with {x, y, z} = {a, b, c}.  Negative
exponents are allowed so that <1 1 1> = 1/(3 t1 t2 t3) fits.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import lcm
from typing import Dict, Iterable, Tuple

Triple = Tuple[int, int, int]


def _sorted(e) -> Triple:
    a, b, c = sorted(e, reverse=True)
    return (a, b, c)


def orbit(e: Triple):
    return sorted(set(permutations(e)), reverse=True)


class SymPoly3:
    __slots__ = ("terms", "_full", "_ints")

    def __init__(self, terms=None):
        clean: Dict[Triple, Fraction] = {}
        for e, c in (terms or {}).items():
            if tuple(e) != _sorted(e):
                raise ValueError(f"exponent triple {e} is not sorted")
            c = Fraction(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean
        self._full = None
        self._ints = None

    @classmethod
    def const(cls, c) -> "SymPoly3":
        return cls({(0, 0, 0): Fraction(c)})

    @classmethod
    def from_full(cls, coeffs: Dict[Triple, Fraction]) -> "SymPoly3":
        """Build from a full monomial map, checking that it is symmetric."""
        out: Dict[Triple, Fraction] = {}
        for e, c in coeffs.items():
            if not c:
                continue
            for p in permutations(e):
                if coeffs.get(p, 0) != c:
                    raise ValueError(f"polynomial is not symmetric at {e}")
            out[_sorted(e)] = Fraction(c)
        return cls(out)

    def full(self) -> Dict[Triple, Fraction]:
        if self._full is None:
            out = {}
            for e, c in self.terms.items():
                for p in orbit(e):
                    out[p] = c
            self._full = out
        return self._full

    # arithmetic -------------------------------------------------------
    def __add__(self, other: "SymPoly3") -> "SymPoly3":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return SymPoly3(out)

    def __neg__(self) -> "SymPoly3":
        return SymPoly3({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "SymPoly3") -> "SymPoly3":
        return self + (-other)

    def scale(self, c) -> "SymPoly3":
        c = Fraction(c)
        return SymPoly3({e: v * c for e, v in self.terms.items()})

    def _integer_form(self):
        if self._ints is None:
            den = 1
            for c in self.terms.values():
                den = lcm(den, c.denominator)
            full = [
                (e[0], e[1], e[2], int(c * den))
                for e, c in self.full().items()
            ]
            self._ints = (den, full)
        return self._ints

    def __mul__(self, other) -> "SymPoly3":
        if not isinstance(other, SymPoly3):
            return self.scale(other)
        if not self.terms or not other.terms:
            return SymPoly3()
        da, fa = self._integer_form()
        db, fb = other._integer_form()
        acc: Dict[Triple, int] = {}
        get = acc.get
        for a0, a1, a2, ca in fa:
            for b0, b1, b2, cb in fb:
                s0 = a0 + b0
                s1 = a1 + b1
                if s0 < s1:
                    continue
                s2 = a2 + b2
                if s1 < s2:
                    continue
                k = (s0, s1, s2)
                acc[k] = get(k, 0) + ca * cb
        den = da * db
        return SymPoly3({e: Fraction(c, den) for e, c in acc.items() if c})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymPoly3):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    # inspection -------------------------------------------------------
    def degrees(self) -> set:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self, d: int) -> bool:
        return all(sum(e) == d for e in self.terms)

    def evaluate(self, t1, t2, t3) -> Fraction:
        t = (Fraction(t1), Fraction(t2), Fraction(t3))
        total = Fraction(0)
        for e, c in self.full().items():
            term = c
            for x, k in zip(t, e):
                term *= x ** k
            total += term
        return total

    def permuted(self, perm: Iterable[int]) -> "SymPoly3":
        """Apply a permutation of (t1, t2, t3) to the full expansion."""
        perm = tuple(perm)
        moved = {}
        for e, c in self.full().items():
            moved[tuple(e[perm[n]] for n in range(3))] = c
        return SymPoly3.from_full(moved)

    def to_json(self):
        return [
            {"e": list(e), "c": str(c)}
            for e, c in sorted(self.terms.items(), reverse=True)
        ]

    @classmethod
    def from_json(cls, data) -> "SymPoly3":
        return cls({tuple(item["e"]): Fraction(item["c"]) for item in data})

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "m" + "".join(str(x) for x in e) if any(e) else ""
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def e1() -> SymPoly3:
    return SymPoly3({(1, 0, 0): 1})


def e2() -> SymPoly3:
    return SymPoly3({(1, 1, 0): 1})


def e3() -> SymPoly3:
    return SymPoly3({(1, 1, 1): 1})


def p2() -> SymPoly3:
    return SymPoly3({(2, 0, 0): 1})
