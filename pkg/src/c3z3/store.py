"""Canonical keys, zero rules, memoization and persistence of Hodge integrals.

A key (n1, n2, i, j, flavor) names the integral

    int_{A(n1,n2)} lambda_r lambda_{r-i} lambda_{r-j} psi^l,   l = i + j - n2,

where r is the rank of E_omega and psi sits at an omega point
(flavor "w") or an omega-bar point (flavor "wb").  When l = 0 the
flavor is irrelevant and is normalized to "none".
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .arith import AffineExpr
from .errors import ConflictingValue
from .geometry import rank_e_omega, space_dim, space_nonempty
from .symmetric import SymPoly3

FLAVORS = ("w", "wb", "none")
CACHE_VERSION = "c3z3-cache/1"

# The unstable space A(1,1) carries a single formal term, the psi^{-1}
# class at the node, whose value 1/3 is forced by the three-point
# seeds.  It appears in generating functions and as the degenerate
# vertex of the fixed-locus tables.
UNSTABLE_A11 = Fraction(1, 3)


class _ZeroType:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Zero"

    def __bool__(self) -> bool:
        return False


Zero = _ZeroType()


@dataclass(frozen=True, order=True)
class HodgeKey:
    n1: int
    n2: int
    i: int
    j: int
    flavor: str = "none"

    @property
    def psi_power(self) -> int:
        return self.i + self.j - self.n2

    @property
    def rank(self) -> int:
        return rank_e_omega(self.n1, self.n2)

    @property
    def is_descendant(self) -> bool:
        return self.psi_power > 0

    def lambdas(self) -> Tuple[int, int, int]:
        r = self.rank
        return (r, r - self.i, r - self.j)

    def label(self) -> str:
        r = self.rank
        parts = [f"l{r}", f"l{r - self.i}", f"l{r - self.j}"]
        if self.psi_power:
            psi = "psi_w" if self.flavor == "w" else "psi_wb"
            parts.append(psi if self.psi_power == 1 else f"{psi}^{self.psi_power}")
        return "*".join(parts) + f" on A({self.n1},{self.n2})"


@dataclass(frozen=True)
class Unknown:
    id: int


@dataclass(frozen=True, order=True)
class InvariantKey:
    n0: int
    n1: int
    n2: int

    def __post_init__(self):
        if min(self.n0, self.n1, self.n2) < 0:
            raise ValueError("insertion counts must be nonnegative")
        if self.n0 > 0 and self.n0 + self.n1 + self.n2 != 3:
            raise ValueError("fundamental-class insertions only occur in three-point invariants")

    @property
    def total(self) -> int:
        return self.n0 + self.n1 + self.n2


def canonicalize(n1: int, n2: int, i: int, j: int, flavor: str = "none") -> Union[HodgeKey, _ZeroType]:
    """Normalize a raw key, or return ``Zero`` when the integral vanishes trivially."""
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}")
    if n1 < 0 or n2 < 0 or not space_nonempty(n1, n2):
        return Zero
    if space_dim(n1, n2) < 0:
        return Zero
    if i > j:
        i, j = j, i
    r = rank_e_omega(n1, n2)
    if i < 0 or j > r:
        return Zero
    l = i + j - n2
    if l < 0:
        return Zero
    if l == 0:
        return HodgeKey(n1, n2, i, j, "none")
    if flavor == "none":
        raise ValueError(f"psi-power {l} needs a flavor")
    if flavor == "w" and n1 == 0 or flavor == "wb" and n2 == 0:
        raise ValueError(f"A({n1},{n2}) has no point carrying psi_{flavor}")
    key = HodgeKey(n1, n2, i, j, flavor)
    assert 3 * r - i - j + l == space_dim(n1, n2)
    return key


def canonical(key: HodgeKey):
    return canonicalize(key.n1, key.n2, key.i, key.j, key.flavor)


def unstable_value(n1: int, n2: int, i: int, j: int) -> Optional[Fraction]:
    """The formal A(1,1) term, or None for every other raw key."""
    if (n1, n2) == (1, 1) and i == 0 and j == 0:
        return UNSTABLE_A11
    return None


class HodgeStore:
    """Hodge integrals keyed canonically, plus invariants as SymPoly3 values."""

    def __init__(self):
        self.values: Dict[HodgeKey, Fraction] = {}
        self.threepart: Dict[Tuple[int, int, Tuple[int, int, int]], Fraction] = {}
        self.invariants: Dict[InvariantKey, SymPoly3] = {}
        self._ids: Dict[HodgeKey, int] = {}
        self._keys: List[HodgeKey] = []
        self._lock = threading.Lock()

    # unknown ids --------------------------------------------------------
    def id_of(self, key: HodgeKey) -> int:
        uid = self._ids.get(key)
        if uid is None:
            with self._lock:
                uid = self._ids.get(key)
                if uid is None:
                    uid = len(self._keys)
                    self._ids[key] = uid
                    self._keys.append(key)
        return uid

    def key_of(self, uid: int) -> HodgeKey:
        return self._keys[uid]

    # access -------------------------------------------------------------
    def get(self, key):
        if key is Zero:
            return Zero
        val = self.values.get(key)
        if val is not None:
            return val
        return Unknown(self.id_of(key))

    def lookup(self, n1: int, n2: int, i: int, j: int, flavor: str) -> AffineExpr:
        """The integral as an AffineExpr: a constant if known, else an unknown."""
        special = unstable_value(n1, n2, i, j)
        if special is not None:
            return AffineExpr.constant(special)
        key = canonicalize(n1, n2, i, j, flavor)
        if key is Zero:
            return AffineExpr()
        val = self.values.get(key)
        if val is not None:
            return AffineExpr.constant(val)
        return AffineExpr.unknown(self.id_of(key))

    def known(self, key: HodgeKey) -> bool:
        return key in self.values

    def put(self, key: HodgeKey, value) -> None:
        value = Fraction(value)
        if canonical(key) != key:
            raise ValueError(f"{key} is not canonical")
        old = self.values.get(key)
        if old is not None and old != value:
            raise ConflictingValue(f"{key.label()}: stored {old}, new {value}")
        self.values[key] = value

    def put_threepart(self, n1: int, n2: int, lambdas, value) -> None:
        value = Fraction(value)
        idx = tuple(sorted(lambdas, reverse=True))
        old = self.threepart.get((n1, n2, idx))
        if old is not None and old != value:
            raise ConflictingValue(f"l{idx} on A({n1},{n2}): stored {old}, new {value}")
        self.threepart[(n1, n2, idx)] = value

    def put_invariant(self, key: InvariantKey, value: SymPoly3) -> None:
        old = self.invariants.get(key)
        if old is not None and old != value:
            raise ConflictingValue(f"<{key}>: stored {old}, new {value}")
        self.invariants[key] = value

    def seed_three_point(self) -> None:
        self.put(HodgeKey(3, 0, 0, 0), Fraction(1, 3))
        self.put_threepart(3, 0, (0, 0, 0), Fraction(1, 3))
        self.put_threepart(0, 3, (0, 0, 0), Fraction(1, 3))
        third = Fraction(1, 3)
        self.put_invariant(InvariantKey(3, 0, 0), SymPoly3({(-1, -1, -1): third}))
        self.put_invariant(InvariantKey(1, 1, 1), SymPoly3.const(third))
        self.put_invariant(InvariantKey(0, 3, 0), SymPoly3.const(third))
        self.put_invariant(InvariantKey(0, 0, 3), SymPoly3({(1, 1, 1): third}))

    def invariant(self, n1: int, n2: int) -> Optional[SymPoly3]:
        return self.invariants.get(InvariantKey(0, n1, n2))

    # persistence --------------------------------------------------------
    def to_json(self) -> dict:
        hodge = [
            {"n1": k.n1, "n2": k.n2, "i": k.i, "j": k.j, "flavor": k.flavor, "value": str(v)}
            for k, v in sorted(
                self.values.items(),
                key=lambda kv: (kv[0].n1 + kv[0].n2, kv[0].n2, kv[0].n1, kv[0].i, kv[0].j, kv[0].flavor),
            )
        ]
        threepart = [
            {"n1": n1, "n2": n2, "lambda": list(idx), "value": str(v)}
            for (n1, n2, idx), v in sorted(
                self.threepart.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][1], kv[0][0], kv[0][2])
            )
        ]
        invariants = [
            {"n0": k.n0, "n1": k.n1, "n2": k.n2, "poly": p.to_json()}
            for k, p in sorted(self.invariants.items(), key=lambda kv: (kv[0].total, kv[0].n2, kv[0].n0, kv[0].n1))
        ]
        return {"version": CACHE_VERSION, "hodge": hodge, "threepart": threepart, "invariants": invariants}

    @classmethod
    def from_json(cls, data: dict) -> "HodgeStore":
        version = data.get("version")
        if version != CACHE_VERSION:
            raise ValueError(f"unsupported cache version {version!r}")
        store = cls()
        for item in data.get("hodge", []):
            store.put(HodgeKey(item["n1"], item["n2"], item["i"], item["j"], item["flavor"]), Fraction(item["value"]))
        for item in data.get("threepart", []):
            store.put_threepart(item["n1"], item["n2"], item["lambda"], Fraction(item["value"]))
        for item in data.get("invariants", []):
            store.put_invariant(InvariantKey(item["n0"], item["n1"], item["n2"]), SymPoly3.from_json(item["poly"]))
        return store

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True) + "\n"

    def save(self, path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text(self.dumps())
        tmp.replace(path)

    @classmethod
    def load(cls, path) -> "HodgeStore":
        return cls.from_json(json.loads(Path(path).read_text()))
