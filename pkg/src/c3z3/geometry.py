"""Dimension, rank and monodromy bookkeeping for A(n1, n2) and the gerbes G_i."""

from __future__ import annotations

from fractions import Fraction

from .errors import EmptySpace


def space_nonempty(n1: int, n2: int) -> bool:
    """A(n1, n2) exists iff n1 + 2 n2 is divisible by 3."""
    if n1 < 0 or n2 < 0:
        raise ValueError("point counts must be nonnegative")
    return (n1 + 2 * n2) % 3 == 0


def _require(n1: int, n2: int) -> None:
    if not space_nonempty(n1, n2):
        raise EmptySpace(f"A({n1},{n2}) is empty")


def space_dim(n1: int, n2: int) -> int:
    _require(n1, n2)
    return n1 + n2 - 3


def rank_e_omega(n1: int, n2: int) -> int:
    """Rank of the omega-eigenbundle of the Hodge bundle on A(n1, n2)."""
    _require(n1, n2)
    return (n1 + 2 * n2) // 3 - 1


def level_of(n1: int, n2: int) -> int:
    """Induction level of a space; equals the rank for n2 <= 2."""
    return rank_e_omega(n1, n2)


def level_spaces(k: int):
    """The three spaces solved at level k: A(3k+3,0), A(3k+1,1), A(3k-1,2)."""
    out = [(3 * k + 3, 0), (3 * k + 1, 1)]
    if k >= 1:
        out.append((3 * k - 1, 2))
    return out


def gerbe_space_nonempty(i: int, k: int, l: int) -> bool:
    """G_i(k, l) is nonempty iff k - l = i mod 3."""
    if i not in (0, 1):
        raise ValueError("gerbe class must be 0 or 1")
    return (k - l - i) % 3 == 0


def euler_char(i: int, degree, k: int, l: int) -> Fraction:
    """Euler characteristic of the pullback of a line bundle to a G_i-map.

    ``degree`` is the degree of the bundle on G_i: an integer n for
    O(n) (tensored with L_omega) on G_0, and n + 1/3 for O(n + 1/3) on
    G_1.  In both cases the answer is degree + 1 - (k + 2l)/3.
    """
    degree = Fraction(degree)
    if not gerbe_space_nonempty(i, k, l):
        raise EmptySpace(f"G_{i}({k},{l}) is empty")
    if (degree - Fraction(i, 3)).denominator != 1:
        raise ValueError(f"degree {degree} is not a valid bundle degree on G_{i}")
    return degree + 1 - Fraction(k + 2 * l, 3)


def obstruction_rank(c1, k: int, l: int) -> Fraction:
    """Rank of R^1 pi_* f^* E for a rank-3 bundle E with vanishing R^0."""
    return k + 2 * l - Fraction(c1) - 3


def vanishes_by_dimension(c1, k: int, l: int, deg_rho: int) -> bool:
    """The auxiliary integral e(R^1) * rho is zero when l - c1 + deg rho < 3."""
    return l - Fraction(c1) + deg_rho < 3
