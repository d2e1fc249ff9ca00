"""Exact integer and rational helpers.

Every value in the package is either a Python ``int`` or a
:class:`fractions.Fraction`; nothing is ever converted to a float.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

Rational = Fraction

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def make_rational(p: int, q: int = 1) -> Fraction:
    """Return p/q reduced, with a positive denominator."""
    if q == 0:
        raise ZeroDivisionError(f"zero denominator in {p}/{q}")
    return Fraction(int(p), int(q))


def isqrt(n: int) -> tuple[int, bool]:
    """Return ``(floor(sqrt(n)), n is a perfect square)``."""
    if n < 0:
        raise ValueError(f"isqrt of negative number {n}")
    r = math.isqrt(n)
    return r, r * r == n


def is_square(n: int) -> bool:
    if n < 0:
        return False
    return isqrt(n)[1]


def is_integral(x: Fraction) -> bool:
    return x.denominator == 1


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or a bare integer, whitespace-free, sign allowed."""
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"malformed rational: {text!r}")
    p = int(match.group(1))
    q = int(match.group(2)) if match.group(2) is not None else 1
    return make_rational(p, q)


def format_rational(x: Fraction) -> str:
    """Serialize as ``"p/q"``; integers keep the ``/1``."""
    return f"{x.numerator}/{x.denominator}"
