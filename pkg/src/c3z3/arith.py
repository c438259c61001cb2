"""Exact polynomial, affine-expression and EGF arithmetic.

Everything here is exact: coefficients are ``fractions.Fraction`` and
no operation ever rounds.  Polynomials live over the fixed alphabet
``t1, t2, t3, u, v, a`` (``a`` stands for the weight alpha).  Exponent
vectors are packed into a single integer so that monomial
multiplication is integer addition.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from .errors import Inconsistent, NonlinearProduct, RankDeficient

Rat = Fraction

VARS = ("t1", "t2", "t3", "u", "v", "a")
_INDEX = {name: n for n, name in enumerate(VARS)}
_BITS = 12
_MASK = (1 << _BITS) - 1

Number = Union[int, Fraction]


def pack(exps: Iterable[int]) -> int:
    key = 0
    for n, e in enumerate(exps):
        if e < 0 or e > _MASK:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (_BITS * n)
    return key


def unpack(key: int) -> Tuple[int, ...]:
    return tuple((key >> (_BITS * n)) & _MASK for n in range(len(VARS)))


def _exp_of(key: int, index: int) -> int:
    return (key >> (_BITS * index)) & _MASK


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


class MPoly:
    """Sparse polynomial over ``VARS`` with rational coefficients.

    Instances are treated as immutable values.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Dict[int, Fraction]] = None):
        self._terms: Dict[int, Fraction] = terms if terms is not None else {}
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "MPoly":
        c = as_rat(c)
        return cls({0: c} if c else {})

    @classmethod
    def var(cls, name: str) -> "MPoly":
        return cls({1 << (_BITS * _INDEX[name]): Fraction(1)})

    @classmethod
    def monomial(cls, coef=1, **exps) -> "MPoly":
        vec = [0] * len(VARS)
        for name, e in exps.items():
            vec[_INDEX[name]] = e
        c = as_rat(coef)
        return cls({pack(vec): c} if c else {})

    @classmethod
    def from_terms(cls, items: Iterable[Tuple[Tuple[int, ...], object]]) -> "MPoly":
        out: Dict[int, Fraction] = {}
        for exps, c in items:
            exps = tuple(exps) + (0,) * (len(VARS) - len(exps))
            k = pack(exps)
            val = out.get(k, 0) + as_rat(c)
            if val:
                out[k] = val
            else:
                out.pop(k, None)
        return cls(out)

    # inspection -------------------------------------------------------
    def items(self) -> Iterator[Tuple[Tuple[int, ...], Fraction]]:
        for k, c in self._terms.items():
            yield unpack(k), c

    @property
    def nterms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_const(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError(f"{self!r} is not a constant")
        return self._terms.get(0, Fraction(0))

    def variables(self) -> set:
        used = set()
        for k in self._terms:
            for n, name in enumerate(VARS):
                if _exp_of(k, n):
                    used.add(name)
        return used

    def degree(self, name: Optional[str] = None) -> int:
        if not self._terms:
            return -1
        if name is None:
            return max(sum(unpack(k)) for k in self._terms)
        n = _INDEX[name]
        return max(_exp_of(k, n) for k in self._terms)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        return MPoly.const(other)

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        if not other._terms:
            return self
        out = dict(self._terms)
        for k, c in other._terms.items():
            val = out.get(k, 0) + c
            if val:
                out[k] = val
            else:
                out.pop(k, None)
        return MPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MPoly":
        return self._coerce(other) - self

    def scale(self, c) -> "MPoly":
        c = as_rat(c)
        if not c:
            return MPoly()
        if c == 1:
            return self
        return MPoly({k: v * c for k, v in self._terms.items()})

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            return self.scale(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return MPoly()
        if len(b) == 1 and 0 in b:
            return self.scale(b[0])
        if len(a) == 1 and 0 in a:
            return other.scale(a[0])
        out: Dict[int, Fraction] = {}
        get = out.get
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return MPoly({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power")
        out = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            try:
                other = MPoly.const(other)
            except TypeError:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # substitution and extraction --------------------------------------
    def substitute(self, bindings: Mapping[str, object]) -> "MPoly":
        """Simultaneous substitution of variables by polynomials."""
        if not bindings or not self._terms:
            return self
        idx = [(_INDEX[name], self._coerce(val)) for name, val in bindings.items()]
        clear = 0
        for n, _ in idx:
            clear |= _MASK << (_BITS * n)
        powers: Dict[Tuple[int, int], MPoly] = {}
        out = MPoly()
        for k, c in self._terms.items():
            term = MPoly({k & ~clear: c})
            for n, val in idx:
                e = _exp_of(k, n)
                if e:
                    p = powers.get((n, e))
                    if p is None:
                        p = val ** e
                        powers[(n, e)] = p
                    term = term * p
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        """Evaluate at rational values; all occurring variables must be bound."""
        total = Fraction(0)
        vals = {_INDEX[name]: as_rat(x) for name, x in values.items()}
        for k, c in self._terms.items():
            term = c
            for n in range(len(VARS)):
                e = _exp_of(k, n)
                if e:
                    if n not in vals:
                        raise KeyError(f"no value for {VARS[n]}")
                    term *= vals[n] ** e
            total += term
        return total

    def split(self, names: Tuple[str, ...]) -> Dict[Tuple[int, ...], "MPoly"]:
        """Group terms by their exponents in ``names``.

        Returns a map from the exponent tuple in ``names`` to the
        coefficient polynomial in the remaining variables.
        """
        idx = [_INDEX[name] for name in names]
        clear = 0
        for n in idx:
            clear |= _MASK << (_BITS * n)
        groups: Dict[Tuple[int, ...], Dict[int, Fraction]] = {}
        for k, c in self._terms.items():
            key = tuple(_exp_of(k, n) for n in idx)
            groups.setdefault(key, {})[k & ~clear] = c
        return {key: MPoly(terms) for key, terms in groups.items()}

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, reverse=True):
            c = self._terms[k]
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(VARS, unpack(k))
                if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def substitute(p: MPoly, bindings: Mapping[str, object]) -> MPoly:
    return p.substitute(bindings)


ZERO_POLY = MPoly()
ONE_POLY = MPoly.const(1)


class AffineExpr:
    """A polynomial constant plus a linear combination of unknown ids."""

    __slots__ = ("const", "terms")

    def __init__(self, const: Optional[MPoly] = None, terms: Optional[Dict[int, MPoly]] = None):
        self.const = const if const is not None else ZERO_POLY
        self.terms: Dict[int, MPoly] = terms if terms is not None else {}

    @classmethod
    def constant(cls, c) -> "AffineExpr":
        if not isinstance(c, MPoly):
            c = MPoly.const(c)
        return cls(c)

    @classmethod
    def unknown(cls, uid: int, coef=1) -> "AffineExpr":
        if not isinstance(coef, MPoly):
            coef = MPoly.const(coef)
        return cls(ZERO_POLY, {uid: coef} if coef else {})

    def unknowns(self) -> set:
        return set(self.terms)

    def is_constant(self) -> bool:
        return not self.terms

    def is_zero(self) -> bool:
        return not self.terms and not self.const

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other) -> "AffineExpr":
        if not isinstance(other, AffineExpr):
            return AffineExpr(self.const + other, self.terms)
        terms = dict(self.terms)
        for uid, c in other.terms.items():
            val = terms.get(uid, ZERO_POLY) + c
            if val:
                terms[uid] = val
            else:
                terms.pop(uid, None)
        return AffineExpr(self.const + other.const, terms)

    __radd__ = __add__

    def __neg__(self) -> "AffineExpr":
        return AffineExpr(-self.const, {uid: -c for uid, c in self.terms.items()})

    def __sub__(self, other) -> "AffineExpr":
        if not isinstance(other, AffineExpr):
            return AffineExpr(self.const - other, self.terms)
        return self + (-other)

    def __rsub__(self, other) -> "AffineExpr":
        return (-self) + other

    def scale(self, c) -> "AffineExpr":
        if not isinstance(c, MPoly):
            c = MPoly.const(c)
        if not c:
            return AffineExpr()
        terms = {}
        for uid, t in self.terms.items():
            val = t * c
            if val:
                terms[uid] = val
        return AffineExpr(self.const * c, terms)

    def __mul__(self, other) -> "AffineExpr":
        if not isinstance(other, AffineExpr):
            return self.scale(other)
        if self.terms and other.terms:
            raise NonlinearProduct(
                f"product of unknowns {sorted(self.terms)} and {sorted(other.terms)}"
            )
        if not self.terms:
            return other.scale(self.const)
        return self.scale(other.const)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineExpr):
            return NotImplemented
        return self.const == other.const and self.terms == other.terms

    def substitute(self, bindings: Mapping[str, object]) -> "AffineExpr":
        terms = {}
        for uid, c in self.terms.items():
            val = c.substitute(bindings)
            if val:
                terms[uid] = val
        return AffineExpr(self.const.substitute(bindings), terms)

    def resolve(self, values: Mapping[int, object]) -> "AffineExpr":
        """Replace unknowns that have values by those values."""
        const = self.const
        terms = {}
        for uid, c in self.terms.items():
            if uid in values:
                val = values[uid]
                if not isinstance(val, MPoly):
                    val = MPoly.const(val)
                const = const + c * val
            else:
                terms[uid] = c
        return AffineExpr(const, terms)

    def split(self, names: Tuple[str, ...]) -> Dict[Tuple[int, ...], "AffineExpr"]:
        """Split by monomials in ``names``; coefficients keep the other variables."""
        out: Dict[Tuple[int, ...], AffineExpr] = {}
        for key, p in self.const.split(names).items():
            out[key] = AffineExpr(p)
        for uid, c in self.terms.items():
            for key, p in c.split(names).items():
                e = out.get(key)
                if e is None:
                    e = out[key] = AffineExpr()
                e.terms[uid] = p
        return out

    def __repr__(self) -> str:
        parts = [f"({c!r})*X{uid}" for uid, c in sorted(self.terms.items())]
        if self.const or not parts:
            parts.append(repr(self.const))
        return " + ".join(parts)


ZERO = AffineExpr()


class EgfSeries:
    """Truncated series sum_m c_m x^m / m! with AffineExpr coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = list(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, m: int) -> AffineExpr:
        if 0 <= m < len(self.coeffs):
            return self.coeffs[m]
        return ZERO

    def derivative(self) -> "EgfSeries":
        return EgfSeries(self.coeffs[1:])

    def negate_x(self) -> "EgfSeries":
        return EgfSeries(c if m % 2 == 0 else -c for m, c in enumerate(self.coeffs))

    def map(self, fn) -> "EgfSeries":
        return EgfSeries(fn(c) for c in self.coeffs)

    def __add__(self, other: "EgfSeries") -> "EgfSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        return EgfSeries(self.coeffs[m] + other.coeffs[m] for m in range(n))

    def __sub__(self, other: "EgfSeries") -> "EgfSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        return EgfSeries(self.coeffs[m] - other.coeffs[m] for m in range(n))

    def scale(self, c) -> "EgfSeries":
        return EgfSeries(x.scale(c) for x in self.coeffs)


def egf_coeff(f: EgfSeries, g: EgfSeries, m: int) -> AffineExpr:
    """The order-m coefficient of the EGF product f*g."""
    total = AffineExpr()
    for a in range(m + 1):
        fa, gb = f[a], g[m - a]
        if fa.is_zero() or gb.is_zero():
            continue
        total = total + (fa * gb).scale(comb(m, a))
    return total


def egf_mul(f: EgfSeries, g: EgfSeries, M: int) -> EgfSeries:
    return EgfSeries(egf_coeff(f, g, m) for m in range(M + 1))


def affine_solve(eqs, unknowns=None) -> Dict[int, MPoly]:
    """Solve ``eq = 0`` for every equation by sparse Gauss-Jordan elimination.

    Unknown coefficients must be rational constants; the constant parts
    may be arbitrary polynomials.  Returns an assignment for every
    unknown, raising ``RankDeficient`` when some unknown is not pinned
    down and ``Inconsistent`` when a surplus equation fails.
    """
    pivots: Dict[int, Tuple[Dict[int, Fraction], MPoly]] = {}
    seen = set()
    wanted = set(unknowns) if unknowns is not None else None
    for eq in eqs:
        row: Dict[int, Fraction] = {}
        for uid, c in eq.terms.items():
            if wanted is not None and uid not in wanted:
                raise ValueError(f"unknown X{uid} is not in the solve set")
            row[uid] = c.const_value()
        const = eq.const
        seen.update(row)
        for p in [uid for uid in row if uid in pivots]:
            factor = row.get(p)
            if not factor:
                continue
            prow, pconst = pivots[p]
            for uid, c in prow.items():
                val = row.get(uid, 0) - factor * c
                if val:
                    row[uid] = val
                else:
                    row.pop(uid, None)
            const = const - pconst.scale(factor)
        if not row:
            if const:
                raise Inconsistent(f"surplus equation leaves residual {const!r}", const)
            continue
        p = min(row)
        inv = 1 / row[p]
        row = {uid: c * inv for uid, c in row.items()}
        const = const.scale(inv)
        for q, (qrow, qconst) in pivots.items():
            factor = qrow.get(p)
            if not factor:
                continue
            for uid, c in row.items():
                val = qrow.get(uid, 0) - factor * c
                if val:
                    qrow[uid] = val
                else:
                    qrow.pop(uid, None)
            pivots[q] = (qrow, qconst - const.scale(factor))
        pivots[p] = (row, const)
    targets = wanted if wanted is not None else seen
    undetermined = sorted(
        uid for uid in targets if uid not in pivots or len(pivots[uid][0]) > 1
    )
    if undetermined:
        raise RankDeficient(
            f"{len(undetermined)} unknowns are not determined", undetermined
        )
    return {uid: -pivots[uid][1] for uid in sorted(targets)}
