"""Reference values of <w^n1 wb^n2> at t1 = t2 = t3 = 1.

Rows are indexed by N = n1 + n2, columns by floor(n2 / 3).  Within a
row n2 is the unique residue with n2 = -N mod 3, so column c holds
n2 = (-N mod 3) + 3c.  The first column is the non-equivariant value
only when 3 divides N.
"""

from __future__ import annotations

from fractions import Fraction as F
from typing import Dict, Tuple

ROWS: Dict[int, Tuple[str, ...]] = {
    3: ("1/3", "1/3"),
    4: ("-1/3",),
    5: ("1/9", "2/9"),
    6: ("-1/27", "-8/27", "-10/27"),
    7: ("7/27", "19/27"),
    8: ("-5/27", "-98/81", "-179/81"),
    9: ("1/9", "398/243", "1274/243", "686/81"),
    10: ("-451/243", "-905/81", "-6172/243"),
    11: ("1319/729", "14734/729", "52189/729", "100762/729"),
    12: ("-1093/729", "-7684/243", "-400010/2187", "-38884/81", "-612100/729"),
    15: ("119401/2187",),
    18: ("-27428707/6561",),
    21: ("102777653467/177147",),
    24: ("-210755831694887/1594323",),
}


def coordinates(N: int, col: int) -> Tuple[int, int]:
    n2 = (-N) % 3 + 3 * col
    return N - n2, n2


def golden_entries() -> Dict[Tuple[int, int], F]:
    """Map (n1, n2) to the reference value."""
    out = {}
    for N, row in ROWS.items():
        for col, text in enumerate(row):
            out[coordinates(N, col)] = F(text)
    return out


def non_equivariant() -> Dict[int, F]:
    """<w^N> for the rows with 3 | N."""
    return {N: F(row[0]) for N, row in ROWS.items() if N % 3 == 0}
