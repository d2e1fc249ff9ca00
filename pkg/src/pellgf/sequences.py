"""The F/L sequences induced by the minimal Pell solution, and their identities.

With (a, b) the minimal solution and eps = a^2 - m b^2, the pair
L_n + F_n sqrt(m) = (a + b sqrt(m))^n satisfies

    X_{n+2} = 2a X_{n+1} + eps' X_n,   eps' = -1 if eps == +1 else +1

with F_0 = 0, F_1 = b, L_0 = 1, L_1 = a.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .pell import FundamentalSolution, fundamental_solution


class SeqKind(str, enum.Enum):
    F = "F"
    L = "L"

    @classmethod
    def parse(cls, text: str) -> "SeqKind":
        try:
            return cls(text.upper())
        except ValueError:
            raise ValueError(f"kind must be F or L, got {text!r}") from None


@dataclass(frozen=True)
class PellContext:
    solution: FundamentalSolution

    def __post_init__(self):
        if self.epsilon == 1 and self.a < 2:
            raise ValueError("plus case requires a >= 2")

    @classmethod
    def from_m(cls, m: int) -> "PellContext":
        return cls(fundamental_solution(m))

    @property
    def m(self) -> int:
        return self.solution.m

    @property
    def a(self) -> int:
        return self.solution.a

    @property
    def b(self) -> int:
        return self.solution.b

    @property
    def epsilon(self) -> int:
        return self.solution.epsilon

    @property
    def coefficient(self) -> int:
        return 2 * self.solution.a

    @property
    def lag_sign(self) -> int:
        """Sign in front of X_n in the recurrence (-eps)."""
        return -self.solution.epsilon

    def initial(self, kind: SeqKind) -> tuple[int, int]:
        return (0, self.b) if kind is SeqKind.F else (1, self.a)


def _check_index(n: int) -> None:
    if n < 0:
        raise ValueError(f"index must be non-negative, got {n}")


def iter_terms(ctx: PellContext, kind: SeqKind):
    """Infinite generator of X_0, X_1, ..."""
    x0, x1 = ctx.initial(SeqKind(kind))
    c, s = ctx.coefficient, ctx.lag_sign
    while True:
        yield x0
        x0, x1 = x1, c * x1 + s * x0


def terms_upto(ctx: PellContext, kind: SeqKind, N: int) -> list[int]:
    _check_index(N)
    out = []
    for x in iter_terms(ctx, kind):
        out.append(x)
        if len(out) > N:
            return out


def term(ctx: PellContext, kind: SeqKind, n: int) -> int:
    _check_index(n)
    return terms_upto(ctx, kind, n)[n]


# Z[sqrt(m)] arithmetic on integer pairs (u, v) <-> u + v sqrt(m)

def zsqrt_mul(x: tuple[int, int], y: tuple[int, int], m: int) -> tuple[int, int]:
    return x[0] * y[0] + m * x[1] * y[1], x[0] * y[1] + x[1] * y[0]


def zsqrt_pow(base: tuple[int, int], n: int, m: int) -> tuple[int, int]:
    """Square-and-multiply power in Z[sqrt(m)]."""
    _check_index(n)
    result = (1, 0)
    while n:
        if n & 1:
            result = zsqrt_mul(result, base, m)
        base = zsqrt_mul(base, base, m)
        n >>= 1
    return result


def binomial_power(a: int, b: int, m: int, n: int) -> tuple[int, int]:
    """(a + b sqrt(m))^n expanded term by term with the binomial theorem."""
    _check_index(n)
    u = v = 0
    for k in range(n + 1):
        t = comb(n, k) * a ** (n - k) * b**k * m ** (k // 2)
        if k % 2:
            v += t
        else:
            u += t
    return u, v


def closed_form(ctx: PellContext, kind: SeqKind, n: int) -> int:
    """x_n / y_n evaluated from the conjugate-sum formulas.

    (a + b sqrt m)^n = u + v sqrt m and (a - b sqrt m)^n = u - v sqrt m, so
    the half-sum is u and the half-difference over sqrt(m) is v.
    """
    u, v = binomial_power(ctx.a, ctx.b, ctx.m, n)
    return v if SeqKind(kind) is SeqKind.F else u


def term_fast(ctx: PellContext, kind: SeqKind, n: int) -> int:
    u, v = zsqrt_pow((ctx.a, ctx.b), n, ctx.m)
    return v if SeqKind(kind) is SeqKind.F else u


def pell_invariant(ctx: PellContext, n: int) -> bool:
    _check_index(n)
    L = term(ctx, SeqKind.L, n)
    F = term(ctx, SeqKind.F, n)
    return L * L - ctx.m * F * F == ctx.epsilon**n


def b_divides_F(ctx: PellContext, n: int) -> bool:
    return term(ctx, SeqKind.F, n) % ctx.b == 0


IDENTITY_IDS = tuple(range(7, 16))
TWO_INDEX_IDS = (9, 10, 11)


def _identity_holds(F, L, ctx: PellContext, ident: int, n: int, j: int) -> bool:
    a, b, m, e = ctx.a, ctx.b, ctx.m, ctx.epsilon
    if ident == 7:
        rhs = Fraction(-(e ** (n - 1)) * (a * a + m * b * b) + e**n, 2 * m)
        return F[n - 1] * F[n + 1] - F[n] ** 2 == rhs
    if ident == 8:
        L2 = 2 * a * a - e
        return 2 * L[n - 1] * L[n + 1] == L[2 * n] + e ** (n - 1) * L2
    if ident == 9:
        return F[n] * L[j] - L[n] * F[j] == e**j * F[n - j]
    if ident == 10:
        return 2 * L[n] * F[j] == F[n + j] - e**j * F[n - j]
    if ident == 11:
        return 2 * m * F[n] * F[j] == L[n + j] - e**j * L[n - j]
    if ident == 12:
        return L[n + 1] == a * L[n] + m * b * F[n]
    if ident == 13:
        return F[n + 1] == a * F[n] + b * L[n]
    if ident == 14:
        return 2 * L[n] ** 2 == L[2 * n] + e**n
    if ident == 15:
        return 2 * L[n] * L[n + 1] == L[2 * n + 1] + e**n * a
    raise ValueError(f"unknown identity id {ident}; expected 7..15")


def validate_identity_indices(ident: int, n: int, j: int = 0) -> None:
    if ident not in IDENTITY_IDS:
        raise ValueError(f"unknown identity id {ident}; expected 7..15")
    if ident in (7, 8) and n < 1:
        raise ValueError(f"identity {ident} needs n >= 1, got n={n}")
    if ident in TWO_INDEX_IDS and not (n >= j >= 0):
        raise ValueError(f"identity {ident} needs n >= j >= 0, got n={n}, j={j}")
    if n < 0:
        raise ValueError(f"identity {ident} needs n >= 0, got n={n}")


def check_identity(ctx: PellContext, identity_id: int, n: int, j: int = 0) -> bool:
    """Check one of the product/doubling identities at (n, j) exactly.

    Signs written (+-1)^k are taken as eps^k. Identities 7, 8 and 12-15
    ignore ``j``.
    """
    validate_identity_indices(identity_id, n, j)
    top = 2 * n + 2 + j
    F = terms_upto(ctx, SeqKind.F, top)
    L = terms_upto(ctx, SeqKind.L, top)
    return _identity_holds(F, L, ctx, identity_id, n, j)


def cassini_constant(ctx: PellContext, n: int) -> int:
    """F_{n-1} F_{n+1} - F_n^2 in closed form: -eps^(n-1) b^2."""
    return -(ctx.epsilon ** (n - 1)) * ctx.b**2
