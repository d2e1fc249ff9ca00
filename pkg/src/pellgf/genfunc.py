"""Exact evaluation of the four generating functions at rational points.

Each generating function has the shape (c0 + c1 x) / (1 + d1 x + d2 x^2).
For x = p/q this homogenizes to the integer quotient

    q (c0 q + c1 p) / (q^2 + d1 p q + d2 p^2)

which is what both the exact evaluator and the grid kernels use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .sequences import PellContext, SeqKind, iter_terms


@dataclass(frozen=True)
class RationalGF:
    c0: int
    c1: int
    d1: int
    d2: int

    def homogeneous(self, p: int, q: int) -> tuple[int, int]:
        """(numerator, denominator) of the value at p/q, unreduced."""
        num = q * (self.c0 * q + self.c1 * p)
        den = q * q + self.d1 * p * q + self.d2 * p * p
        if den == 0:
            raise ArithmeticError(f"denominator vanished at {p}/{q}")
        return num, den

    def __call__(self, x: Fraction) -> Fraction:
        num, den = self.homogeneous(x.numerator, x.denominator)
        return Fraction(num, den)


def gf_coefficients(ctx: PellContext, kind: SeqKind) -> RationalGF:
    # denominator 1 - 2a x + eps x^2 for every kind
    if SeqKind(kind) is SeqKind.L:
        return RationalGF(1, -ctx.a, -2 * ctx.a, ctx.epsilon)
    return RationalGF(0, ctx.b, -2 * ctx.a, ctx.epsilon)


@dataclass(frozen=True)
class GFValue:
    value: Fraction

    @property
    def is_integer(self) -> bool:
        return self.value.denominator == 1


def evaluate(ctx: PellContext, kind: SeqKind, x: Fraction) -> GFValue:
    return GFValue(gf_coefficients(ctx, kind)(Fraction(x)))


def eval_L(ctx: PellContext, x: Fraction) -> GFValue:
    """(1 - a x) / (1 - 2a x + eps x^2)."""
    return evaluate(ctx, SeqKind.L, x)


def eval_F(ctx: PellContext, x: Fraction) -> GFValue:
    """b x / (1 - 2a x + eps x^2)."""
    return evaluate(ctx, SeqKind.F, x)


def partial_sum(ctx: PellContext, kind: SeqKind, x: Fraction, N: int) -> Fraction:
    """sum_{n=0}^{N} X_n x^n, exactly."""
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    x = Fraction(x)
    p, q = x.numerator, x.denominator
    # accumulate over the common denominator q^N
    acc = 0
    for n, t in enumerate(iter_terms(ctx, kind)):
        acc = acc * q + t * p**n
        if n == N:
            return Fraction(acc, q**N)


def within_scaled_radius(ctx: PellContext, x: Fraction, scale: Fraction = Fraction(1)) -> bool:
    """Decide |x| < scale / (a + b sqrt(m)) with integer arithmetic only.

    With |x| = p/q and scale = s/t this is t p a + t p b sqrt(m) < s q, i.e.
    s q - t p a > 0 and m (t p b)^2 < (s q - t p a)^2.
    """
    x, scale = Fraction(x), Fraction(scale)
    p, q = abs(x.numerator), x.denominator
    s, t = scale.numerator, scale.denominator
    gap = s * q - t * p * ctx.a
    if gap <= 0:
        return False
    return ctx.m * (t * p * ctx.b) ** 2 < gap * gap


def within_radius(ctx: PellContext, x: Fraction) -> bool:
    return within_scaled_radius(ctx, x)


@dataclass(frozen=True)
class SeriesTrace:
    """Convergence of the partial sums towards the closed form at one point."""

    x: Fraction
    hit: int | None  # first N with |tail| < threshold
    monotone_from: int  # tail magnitude strictly decreases from here to the last N walked


def series_trace(
    ctx: PellContext,
    kind: SeqKind,
    x: Fraction,
    n_max: int = 2000,
    threshold: Fraction = Fraction(1, 10**20),
    stop_at_hit: bool = True,
) -> SeriesTrace:
    """Follow |closed form - partial sum| for N = 0..n_max, exactly.

    With ``stop_at_hit=False`` the walk continues to n_max, so
    ``monotone_from`` covers the whole range.

    The tail at step N is  (P q^N - Q A_N) / (Q q^N)  where  A_N / q^N  is
    the partial sum and P/Q the closed form; only integers are compared.
    """
    x = Fraction(x)
    target = evaluate(ctx, kind, x).value
    P, Q = target.numerator, target.denominator
    p, q = x.numerator, x.denominator
    s, t = threshold.numerator, threshold.denominator
    acc = 0
    qpow = ppow = 1
    prev = None
    monotone_from = 0
    hit = None
    for n, term_value in enumerate(iter_terms(ctx, kind)):
        if n > 0:
            qpow *= q
            ppow *= p
        acc = acc * q + term_value * ppow
        tail = abs(P * qpow - Q * acc)
        if prev is not None and not tail < q * prev:
            monotone_from = n
        prev = tail
        # |tail| / (Q q^n) < s / t
        if hit is None and tail * t < s * Q * qpow:
            hit = n
            if stop_at_hit:
                break
        if n >= n_max:
            break
    return SeriesTrace(x, hit, monotone_from)
