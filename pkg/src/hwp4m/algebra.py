"""Exact arithmetic for the four-element field GF(4).

Layers of blown-up graphs are labelled either by Z4 (plain integers mod 4,
handled with Python's ``%``, which already normalises negatives) or by GF(4)
under the 2-bit encoding

    0 -> 0b00,   1 -> 0b01,   x -> 0b10,   x^2 -> 0b11.

With this encoding addition is bitwise XOR (the additive group is the Klein
four-group) and the three nonzero elements form a cyclic group of order 3
under multiplication, generated by x.
"""

from __future__ import annotations

ZERO = 0
ONE = 1
X = 2
X2 = 3

GF4_ELEMENTS = (ZERO, ONE, X, X2)

# discrete log / exponential tables for the multiplicative group <x>
_EXP = (ONE, X, X2)
_LOG = {ONE: 0, X: 1, X2: 2}


def gf4_add(a: int, b: int) -> int:
    """Sum in GF(4); with the 2-bit encoding this is XOR."""
    return a ^ b


def gf4_mul(a: int, b: int) -> int:
    """Product in GF(4) via discrete logs base x."""
    if a == ZERO or b == ZERO:
        return ZERO
    return _EXP[(_LOG[a] + _LOG[b]) % 3]


def gf4_pow_x(i: int) -> int:
    """x**i for any integer i (the multiplicative group has order 3)."""
    return _EXP[i % 3]
