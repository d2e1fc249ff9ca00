"""Continued fraction of sqrt(m) and the minimal solution of x^2 - m y^2 = +-1."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exact import isqrt


class SquareParameterError(ValueError):
    """Raised when m is not a non-square natural number."""


@dataclass(frozen=True)
class CFExpansion:
    """sqrt(m) = [a0; period, period, ...]."""

    m: int
    a0: int
    period: tuple[int, ...]

    def __str__(self) -> str:
        return f"[{self.a0};{','.join(map(str, self.period))}]"


@dataclass(frozen=True)
class FundamentalSolution:
    m: int
    a: int
    b: int
    epsilon: int

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ValueError(f"epsilon must be +1 or -1, got {self.epsilon}")
        if self.a <= 0 or self.b <= 0:
            raise ValueError("a and b must be positive")
        if self.a * self.a - self.m * self.b * self.b != self.epsilon:
            raise ValueError(
                f"{self.a}^2 - {self.m}*{self.b}^2 != {self.epsilon}"
            )


def is_square(m: int) -> bool:
    if m < 1:
        raise ValueError(f"m must be a natural number, got {m}")
    return isqrt(m)[1]


def _require_nonsquare(m: int) -> None:
    if m < 1:
        raise SquareParameterError(f"m must be a natural number, got {m}")
    if is_square(m):
        raise SquareParameterError(f"m must be non-square, got {m}")


@lru_cache(maxsize=4096)
def continued_fraction_sqrt(m: int) -> CFExpansion:
    """One period of the continued fraction of sqrt(m) via the PQa recurrence."""
    _require_nonsquare(m)
    a0 = isqrt(m)[0]
    p, q, a = 0, 1, a0
    period = []
    while True:
        p = a * q - p
        q = (m - p * p) // q
        a = (a0 + p) // q
        period.append(a)
        if a == 2 * a0:
            break
    return CFExpansion(m, a0, tuple(period))


def convergents(cf: CFExpansion, count: int | None = None):
    """Yield (h, k) convergents of the expansion, repeating the period."""
    h_prev, h = 1, cf.a0
    k_prev, k = 0, 1
    yield h, k
    emitted = 1
    while count is None or emitted < count:
        for a in cf.period:
            if count is not None and emitted >= count:
                return
            h_prev, h = h, a * h + h_prev
            k_prev, k = k, a * k + k_prev
            yield h, k
            emitted += 1


@lru_cache(maxsize=4096)
def fundamental_solution(m: int) -> FundamentalSolution:
    """Smallest positive (a, b) with a^2 - m b^2 = +-1.

    This is the convergent just before the end of the first period; the
    sign is (-1)**(period length).
    """
    cf = continued_fraction_sqrt(m)
    r = len(cf.period)
    h, k = 0, 0
    for h, k in convergents(cf, r):
        pass
    eps = -1 if r % 2 else 1
    return FundamentalSolution(m, h, k, eps)
