"""Hodge integrals <-> equivariant invariants.

    <w^n1 wb^n2> = (-1)^(n1+n2-3) sum_{i+j+k=dim} t1^(r-i) t2^(r-j) t3^(r-k) int lambda_i lambda_j lambda_k

In the monomial-symmetric basis each multiset {i, j, k} contributes its
integral, with multiplicity 1, to the orbit of the exponent triple
(r-i, r-j, r-k).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from .errors import AmbiguousMonomial, MissingHodgeValue
from .geometry import rank_e_omega, space_dim
from .relations.base import GeneratingFunctions
from .store import HodgeStore, InvariantKey, Zero, canonicalize
from .symmetric import SymPoly3, e1, e2, p2


def partitions3(total: int, cap: int):
    """Multisets {a >= b >= c >= 0} with a + b + c = total and a <= cap."""
    for a in range(min(total, cap), -1, -1):
        for b in range(min(total - a, a), -1, -1):
            c = total - a - b
            if c <= b:
                yield (a, b, c)


def invariant_from_hodge(store: HodgeStore, n1: int, n2: int) -> SymPoly3:
    if n2 > 2:
        raise ValueError("only invariants with at most two omega-bar points come from the store")
    r = rank_e_omega(n1, n2)
    dim = space_dim(n1, n2)
    sign = -1 if dim % 2 else 1
    terms = {}
    for a, b, c in partitions3(dim, r):
        if a != r:
            raise AssertionError(f"partition {(a, b, c)} on A({n1},{n2}) has no lambda_top")
        key = canonicalize(n1, n2, r - b, r - c, "none")
        if key is Zero:
            continue
        if key not in store.values:
            raise MissingHodgeValue(key.label())
        val = store.values[key]
        if val:
            terms[(r - c, r - b, r - a)] = sign * val
    return SymPoly3(terms)


def hodge_from_invariant(poly: SymPoly3, n1: int, n2: int) -> Dict[Tuple[int, int, int], Fraction]:
    """All three-part integrals int lambda_a lambda_b lambda_c (a >= b >= c) on A(n1, n2)."""
    r = rank_e_omega(n1, n2)
    dim = space_dim(n1, n2)
    sign = -1 if dim % 2 else 1
    out: Dict[Tuple[int, int, int], Fraction] = {}
    for e, c in poly.terms.items():
        lam = tuple(sorted((r - x for x in e), reverse=True))
        if sum(lam) != dim or lam[0] > r or lam[2] < 0:
            raise ValueError(f"monomial {e} does not come from a partition of {dim} bounded by {r}")
        if lam in out:
            raise AmbiguousMonomial(f"{lam} reached twice")
        out[lam] = sign * c
    return out


def specialize(p: SymPoly3, t1=1, t2=1, t3=1) -> Fraction:
    return p.evaluate(t1, t2, t3)


def assemble_seeds(store: HodgeStore, n_max: int) -> List[InvariantKey]:
    """Commit every invariant with n2 <= 2 and 3 <= n1 + n2 <= n_max."""
    added = []
    for n2 in range(3):
        for n1 in range(max(0, 3 - n2), n_max - n2 + 1):
            if (n1 + 2 * n2) % 3:
                continue
            key = InvariantKey(0, n1, n2)
            store.put_invariant(key, invariant_from_hodge(store, n1, n2))
            added.append(key)
    return added


def record_threepart(store: HodgeStore, n_max: int) -> int:
    """Invert every stored invariant into three-part Hodge integrals."""
    count = 0
    for key, poly in sorted(store.invariants.items()):
        if key.n0 or key.total > n_max or key.total < 3:
            continue
        for lam, val in hodge_from_invariant(poly, key.n1, key.n2).items():
            store.put_threepart(key.n1, key.n2, lam, val)
            count += 1
    return count


@dataclass
class CrosscheckReport:
    checked: int = 0
    mismatches: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def lf_crosscheck(store: HodgeStore, order: int) -> CrosscheckReport:
    """Compare invariants with zero, one and two omega-bar points to L coefficients.

    With the sign (-1)^(n1+n2-3) made explicit the identities read
        F(0,x,0)       = -L(-x,0;0,0)
        F_x2(0,x,0)    =  e1 L_yu(-x,0;0,0)
        F_x2x2(0,x,0)  = -(p2/2 L_yyuu(-x,0;0,0) + e2 L_yyuv(-x,0;0,0))
    """
    report = CrosscheckReport()
    gf = GeneratingFunctions(store)

    def coeff(m, n, i, j):
        expr = gf.coeff("w", m, n)
        val = expr.split(("u", "v")).get((i, j))
        if val is None:
            return Fraction(0)
        if not val.is_constant():
            raise MissingHodgeValue(f"coefficient u^{i} v^{j} of c_{m},{n}")
        return val.const.const_value()

    for m in range(order + 1):
        for n2 in range(3):
            if m + n2 < 3 or (m + 2 * n2) % 3:
                continue
            inv = store.invariant(m, n2)
            if inv is None:
                continue
            s = -1 if m % 2 else 1
            if n2 == 0:
                expect = SymPoly3.const(-s * coeff(m, 0, 0, 0))
            elif n2 == 1:
                expect = e1().scale(s * coeff(m, 1, 1, 0))
            else:
                expect = p2().scale(-s * coeff(m, 2, 2, 0)) + e2().scale(-s * coeff(m, 2, 1, 1))
            report.checked += 1
            if expect != inv:
                report.mismatches.append(f"<w^{m} wb^{n2}>: invariant {inv} vs L-side {expect}")
    return report
