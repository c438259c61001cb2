from __future__ import annotations

from fractions import Fraction

from c3z3.golden import ROWS, coordinates, golden_entries, non_equivariant


def test_coordinates():
    assert coordinates(3, 0) == (3, 0) and coordinates(3, 1) == (0, 3)
    assert coordinates(4, 0) == (2, 2)
    assert coordinates(5, 1) == (1, 4)
    assert coordinates(12, 4) == (0, 12)


def test_entry_counts():
    g = golden_entries()
    assert len(g) == sum(len(r) for r in ROWS.values()) == 33
    assert sum(1 for (a, b) in g if a + b <= 12) == 29
    assert all((a + 2 * b) % 3 == 0 for a, b in g)


def test_non_equivariant_column():
    bold = non_equivariant()
    assert sorted(bold) == [3, 6, 9, 12, 15, 18, 21, 24]
    assert bold[24] == Fraction(-210755831694887, 1594323)
