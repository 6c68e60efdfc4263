"""Closed-form bounds on root moduli, coefficient ratios and set counts.

Every bound has the shape ``coef * base**(num/den) + shift`` with rational
``coef`` and ``shift``.  Comparisons against rationals are done exactly by
raising both sides to the ``den``-th power.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .graph import FamilyId


@dataclass(frozen=True)
class Bound:
    coef: Fraction
    base: int
    num: int
    den: int = 1
    shift: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coef", Fraction(self.coef))
        object.__setattr__(self, "shift", Fraction(self.shift))
        if self.coef <= 0 or self.base < 1 or self.den < 1:
            raise ValueError("bound needs coef > 0, base >= 1 and den >= 1")

    def __float__(self) -> float:
        return float(self.coef) * self.base ** (self.num / self.den) + float(self.shift)

    def _radical_cmp(self, y: Fraction) -> int:
        """Sign of y - coef * base**(num/den), exact."""
        if y <= 0:
            return -1
        lhs = y ** self.den
        rhs = self.coef ** self.den * Fraction(self.base) ** self.num
        return (lhs > rhs) - (lhs < rhs)

    def ge(self, x) -> bool:
        """True when ``x <= self`` holds exactly."""
        return self._radical_cmp(Fraction(x) - self.shift) <= 0

    def le(self, x) -> bool:
        """True when ``self <= x`` holds exactly."""
        return self._radical_cmp(Fraction(x) - self.shift) >= 0

    def rational(self) -> Fraction | None:
        """Exact value when the radical is rational, else None."""
        if self.num % self.den == 0:
            return self.coef * Fraction(self.base) ** (self.num // self.den) + self.shift
        root = round(self.base ** (self.num / self.den))
        if self.num > 0 and root ** self.den == self.base ** self.num:
            return self.coef * root + self.shift
        return None

    def __str__(self) -> str:
        head = "" if self.coef == 1 else f"{self.coef}*"
        exp = str(self.num) if self.den == 1 else f"({self.num}/{self.den})"
        text = f"{head}{self.base}^{exp}"
        if self.shift:
            text += f" + {self.shift}"
        return text


def _third(coef, num: int, shift=0) -> Bound:
    return Bound(Fraction(coef), 3, num, 3, Fraction(shift))


def _half(coef, num: int, shift=0) -> Bound:
    return Bound(Fraction(coef), 2, num, 2, Fraction(shift))


# --- counting caps --------------------------------------------------------

def moon_moser(n: int) -> Fraction:
    """g(n), the maximum number of maximal independent sets on n vertices."""
    _check_n(n)
    r = n % 3
    if r == 0:
        return Fraction(3) ** (n // 3)
    if r == 1:
        return 4 * Fraction(3) ** ((n - 4) // 3)
    return 2 * Fraction(3) ** ((n - 2) // 3)


def wilf(n: int) -> Fraction:
    """t'(n), the maximum number of maximum independent sets of a tree."""
    _check_n(n)
    if n == 1:
        return Fraction(1)
    if n % 2:
        return Fraction(2) ** ((n - 3) // 2)
    return Fraction(2) ** ((n - 2) // 2) + 1


def cube_root_three_cap(n: int) -> Bound:
    """3^(n/3), which dominates g(n) for every n >= 1."""
    _check_n(n)
    return _third(1, n)


# --- ratio caps -----------------------------------------------------------

def graph_ratio_cap(n: int) -> Bound:
    """3^(n/3) + n - 1: consecutive-ratio and root-modulus cap for graphs."""
    _check_n(n)
    return _third(1, n, n - 1)


def forest_ratio_cap(n: int) -> Bound:
    _check_n(n)
    if n % 2:
        return _half(1, n - 1, Fraction(n - 1, 2))
    return _half(1, n - 2, Fraction(n, 2))


def top_ratio_cap(n: int) -> Bound:
    """Cap on xi(F) / xi(F - v) for a forest F on n >= 2 vertices."""
    if n < 2:
        raise ValueError("top-ratio cap needs n >= 2")
    if n % 2:
        return _half(1, n - 3, 1)
    return _half(1, n - 2, 1)


# --- root-modulus bounds --------------------------------------------------

def graph_lower_bound(n: int) -> Bound:
    _check_n(n)
    r = n % 3
    return _third(1, {0: n - 3, 1: n - 1, 2: n - 2}[r])


def graph_upper_bound(n: int) -> Bound:
    return graph_ratio_cap(n)


def tree_lower_bound(n: int) -> Bound:
    _check_n(n)
    if n % 2:
        return _half(1, n - 1)
    return _half(1, n - 6)


def tree_upper_bound(n: int) -> Bound:
    return forest_ratio_cap(n)


def conjectured_graph_cap(n: int) -> Bound:
    if n < 3:
        raise ValueError("the conjectured graph cap starts at n = 3")
    r = n % 3
    if r == 0:
        return _third(2, n - 3, Fraction(n, 3))
    if r == 1:
        return _third(1, n - 1, Fraction(n - 1, 3))
    return _third(4, n - 5, Fraction(n + 1, 3))


def conjectured_tree_cap(n: int) -> Bound:
    if n < 6 or n % 2:
        raise ValueError("the conjectured tree cap covers even n >= 6")
    return _half(1, n - 4, Fraction(n + 2, 2))


# --- extremal families ----------------------------------------------------

def graph_extremal_family(n: int) -> FamilyId:
    """The G0/G1/G2 member on n vertices (n >= 3, or n == 1 for G1 with k = 0)."""
    r = n % 3
    if r == 0 and n >= 3:
        return FamilyId("G0", (n - 3) // 3)
    if r == 1:
        return FamilyId("G1", (n - 1) // 3)
    if r == 2 and n >= 5:
        return FamilyId("G2", (n - 5) // 3)
    raise ValueError(f"no extremal graph family on {n} vertices")


def tree_extremal_family(n: int) -> FamilyId:
    if n % 2:
        return FamilyId("Tk", (n - 1) // 2)
    if n >= 6:
        return FamilyId("TkPrime", (n - 6) // 2)
    raise ValueError(f"no extremal tree family on {n} vertices")


def family_threshold(fid: FamilyId) -> Fraction:
    """Point left of which the family polynomial must have a real root."""
    if fid.tag in ("G0", "G1", "G2"):
        return -Fraction(3) ** fid.k
    return -Fraction(2) ** fid.k


def tk_interval(k: int) -> tuple[Fraction, Fraction]:
    """[-2^k - k, -2^k): where i(T_k) has its real root of largest modulus."""
    return Fraction(-(2 ** k) - k), Fraction(-(2 ** k))


def tk_prime_interval(k: int) -> tuple[Fraction, Fraction]:
    """[-(2^(k+2) + k + 3), -2^k): the forest cap at n = 2k + 6 closes it on the left."""
    return Fraction(-(2 ** (k + 2)) - k - 3), Fraction(-(2 ** k))


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")


def log_ratio(value: float, base: int, n: int) -> float:
    return math.log(value, base) / n if value > 0 else float("-inf")
