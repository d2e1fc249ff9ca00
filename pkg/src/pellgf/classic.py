"""Fibonacci and Lucas numbers: the classical case m = 5, 5x^2 - y^2 = +-4.

The same witness machinery as the Pell contexts is used, with the
recurrence X_{n+2} = X_{n+1} + X_n and reciprocal families carrying a
minus sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _kernels
from .classifier import F_FAMILIES, FAMILY_ORDER, Classification, FamilySystem, classify_in
from .genfunc import GFValue, RationalGF
from .sequences import SeqKind

FIB_GF = RationalGF(0, 1, -1, -1)  # x / (1 - x - x^2)
LUCAS_GF = RationalGF(2, -1, -1, -1)  # (2 - x) / (1 - x - x^2)


@dataclass(frozen=True)
class FibLucasPair:
    n: int
    F: int
    L: int

    def __post_init__(self):
        if 5 * self.F**2 - self.L**2 not in (4, -4):
            raise ValueError(f"({self.F}, {self.L}) does not satisfy 5x^2 - y^2 = +-4")


def fib_lucas(N: int) -> list[FibLucasPair]:
    """(n, F_n, L_n) for n = 0..N."""
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    out = []
    f0, f1, l0, l1 = 0, 1, 2, 1
    for n in range(N + 1):
        out.append(FibLucasPair(n, f0, l0))
        f0, f1 = f1, f0 + f1
        l0, l1 = l1, l0 + l1
    return out


def classic_system(kind: SeqKind) -> FamilySystem:
    kind = SeqKind(kind)
    return FamilySystem(
        f_init=(0, 1),
        l_init=(2, 1),
        coefficient=1,
        lag_sign=1,
        inv_sign=-1,
        families=FAMILY_ORDER if kind is SeqKind.L else F_FAMILIES,
        gf=LUCAS_GF if kind is SeqKind.L else FIB_GF,
        label=f"classic {'LUCAS' if kind is SeqKind.L else 'FIB'}",
    )


def eval_fib_gf(x: Fraction) -> GFValue:
    return GFValue(FIB_GF(Fraction(x)))


def eval_lucas_gf(x: Fraction) -> GFValue:
    return GFValue(LUCAS_GF(Fraction(x)))


def classify_classic(kind: SeqKind, x: Fraction) -> Classification:
    """F (FIB) or L (LUCAS) generating function at x, with family witnesses."""
    return classify_in(classic_system(kind), x)


def pm4_value(n: int) -> int:
    """5 F_n^2 - L_n^2, computed directly."""
    p = fib_lucas(n)[-1]
    return 5 * p.F**2 - p.L**2


def pm4_sign_pattern(n: int) -> int:
    """Observed sign of 5 F_n^2 - L_n^2: -4 for even n, +4 for odd n.

    This is 4 (-1)^(n+1); the often-quoted 4 (-1)^n already fails at n = 0
    (F_0 = 0, L_0 = 2).
    """
    return 4 * (-1) ** (n + 1)


def pm4_solutions(x_bound: int, y_bound: int | None = None, backend: str | None = None):
    """Non-negative (x, y) with 5x^2 - y^2 = +-4, x <= x_bound (and y <= y_bound)."""
    sols = _kernels.pm4_scan(0, x_bound + 1, backend=backend)
    if y_bound is not None:
        sols = [(x, y) for x, y in sols if y <= y_bound]
    return sols


def pell_correspondence(bound: int, *, cap_y: bool = True, backend: str | None = None) -> bool:
    """Exhaustive solutions of 5x^2 - y^2 = +-4 equal the (F_n, L_n) pairs.

    Both sides are truncated to x <= bound, and also y <= bound when
    ``cap_y`` is set.
    """
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    y_bound = bound if cap_y else None
    scanned = set(pm4_solutions(bound, y_bound, backend=backend))
    generated = set()
    f0, f1, l0, l1 = 0, 1, 2, 1
    while f0 <= bound:
        if y_bound is None or l0 <= y_bound:
            generated.add((f0, l0))
        f0, f1 = f1, f0 + f1
        l0, l1 = l1, l0 + l1
    return scanned == generated


def check_classic_identities(n: int, j: int) -> dict[str, bool]:
    """The four classical Fibonacci/Lucas identities at n >= j >= 0, n >= 1."""
    if not (n >= 1 and n >= j >= 0):
        raise ValueError(f"need n >= 1 and n >= j >= 0, got n={n}, j={j}")
    seq = fib_lucas(n + j + 1)
    F = [p.F for p in seq]
    L = [p.L for p in seq]
    s = (-1) ** j
    return {
        "cassini": F[n - 1] * F[n + 1] - F[n] ** 2 == (-1) ** n,
        "lucas_fib_product": L[n] * F[j] == F[n + j] - s * F[n - j],
        "fib_fib_product": 5 * F[n] * F[j] == L[n + j] - s * L[n - j],
        "cross_difference": F[n] * L[j] - L[n] * F[j] == 2 * s * F[n - j],
    }
