"""Decide integrality of the generating functions at rational points.

Integrality itself is settled by exact evaluation; the work here is in
producing witnesses, i.e. the (family, index) pairs that place x in the
characterizing list, and in solving GF(x) = k for x.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .exact import isqrt
from .genfunc import RationalGF, gf_coefficients, within_radius
from .sequences import PellContext, SeqKind

log = logging.getLogger(__name__)

THEOREM_VIOLATION = "THEOREM_VIOLATION"
COROLLARY_VIOLATION = "COROLLARY_VIOLATION"


class Family(str, enum.Enum):
    F_RATIO = "F_RATIO"  # F_n / F_{n+1}
    F_RATIO_INV = "F_RATIO_INV"  # s F_{n+1} / F_n, n >= 1
    L_RATIO = "L_RATIO"  # L_n / L_{n+1}
    L_RATIO_INV = "L_RATIO_INV"  # s L_{n+1} / L_n

    @property
    def min_index(self) -> int:
        return 1 if self is Family.F_RATIO_INV else 0


FAMILY_ORDER = tuple(Family)
F_FAMILIES = (Family.F_RATIO, Family.F_RATIO_INV)


@dataclass(frozen=True, order=True)
class Witness:
    family: Family
    n: int
    k: int


class Verdict(str, enum.Enum):
    INTEGER = "INTEGER"
    NON_INTEGER = "NON_INTEGER"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    value: Fraction
    witnesses: tuple[Witness, ...] = ()
    diagnostic: str | None = None

    @property
    def k(self) -> int | None:
        return self.value.numerator if self.verdict is Verdict.INTEGER else None


class TheoremViolation(AssertionError):
    pass


@dataclass(frozen=True)
class FamilySystem:
    """A pair of sequences sharing X_{n+2} = c X_{n+1} + s X_n.

    ``inv_sign`` is the sign carried by the reciprocal families
    (s F_{n+1}/F_n and s L_{n+1}/L_n); ``gf`` is the generating function
    whose integer values the families characterize.
    """

    f_init: tuple[int, int]
    l_init: tuple[int, int]
    coefficient: int
    lag_sign: int
    inv_sign: int
    families: tuple[Family, ...]
    gf: RationalGF
    label: str = field(default="", compare=False)

    def pairs(self) -> Iterator[tuple[int, int, int, int, int]]:
        """Yield (n, F_n, F_{n+1}, L_n, L_{n+1}) forever."""
        f0, f1 = self.f_init
        l0, l1 = self.l_init
        c, s = self.coefficient, self.lag_sign
        n = 0
        while True:
            yield n, f0, f1, l0, l1
            f0, f1 = f1, c * f1 + s * f0
            l0, l1 = l1, c * l1 + s * l0
            n += 1

    def point(self, family: Family, n: int, f0: int, f1: int, l0: int, l1: int) -> Fraction:
        if family is Family.F_RATIO:
            return Fraction(f0, f1)
        if family is Family.F_RATIO_INV:
            return Fraction(self.inv_sign * f1, f0)
        if family is Family.L_RATIO:
            return Fraction(l0, l1)
        return Fraction(self.inv_sign * l1, l0)


def pell_system(ctx: PellContext, kind: SeqKind) -> FamilySystem:
    kind = SeqKind(kind)
    families = FAMILY_ORDER if kind is SeqKind.L else F_FAMILIES
    return FamilySystem(
        f_init=ctx.initial(SeqKind.F),
        l_init=ctx.initial(SeqKind.L),
        coefficient=ctx.coefficient,
        lag_sign=ctx.lag_sign,
        inv_sign=ctx.epsilon,
        families=families,
        gf=gf_coefficients(ctx, kind),
        label=f"m={ctx.m} {kind.value}",
    )


def _min_entry(x: Fraction) -> int:
    return min(abs(x.numerator), x.denominator)


def iter_family_points(system: FamilySystem, bound: int):
    """Yield (family, n, point) for every admissible point whose reduced
    numerator and denominator both have magnitude <= bound.

    From n = 1 on, the smaller reduced entry of every family point is
    non-decreasing in n, so the walk stops once all of them exceed bound.
    """
    for n, f0, f1, l0, l1 in system.pairs():
        all_beyond = n >= 1
        for family in system.families:
            if n < family.min_index:
                continue
            x = system.point(family, n, f0, f1, l0, l1)
            if _min_entry(x) <= bound:
                all_beyond = False
                if abs(x.numerator) <= bound and x.denominator <= bound:
                    yield family, n, x
        if all_beyond:
            return


def find_witnesses(system: FamilySystem, x: Fraction, k: int) -> tuple[Witness, ...]:
    x = Fraction(x)
    bound = max(abs(x.numerator), x.denominator)
    found = [
        Witness(family, n, k)
        for family, n, point in iter_family_points(system, bound)
        if point == x
    ]
    return tuple(sorted(found, key=lambda w: (FAMILY_ORDER.index(w.family), w.n)))


def classify_in(system: FamilySystem, x: Fraction) -> Classification:
    x = Fraction(x)
    value = system.gf(x)
    if value.denominator != 1:
        return Classification(Verdict.NON_INTEGER, value)
    k = value.numerator
    witnesses = find_witnesses(system, x, k)
    diagnostic = None
    if not witnesses:
        diagnostic = THEOREM_VIOLATION
        log.warning("%s: integer value %d at x=%s has no family witness", system.label, k, x)
    return Classification(Verdict.INTEGER, value, witnesses, diagnostic)


def classify(ctx: PellContext, kind: SeqKind, x: Fraction) -> Classification:
    return classify_in(pell_system(ctx, kind), x)


def solve_level(gf: RationalGF, k: int) -> list[Fraction]:
    """All rational x with gf(x) == k, sorted ascending.

    c0 + c1 x = k (1 + d1 x + d2 x^2) is the quadratic
    k d2 x^2 + (k d1 - c1) x + (k - c0) = 0; it has rational roots exactly
    when its discriminant is a perfect square.
    """
    A = k * gf.d2
    Bq = k * gf.d1 - gf.c1
    C = k - gf.c0
    if A == 0:
        roots = [] if Bq == 0 else [Fraction(-C, Bq)]
    else:
        disc = Bq * Bq - 4 * A * C
        if disc < 0:
            return []
        M, exact = isqrt(disc)
        if not exact:
            return []
        roots = {Fraction(-Bq + M, 2 * A), Fraction(-Bq - M, 2 * A)}
    # guard against points where the denominator of gf vanishes
    return sorted(r for r in roots if _defined(gf, r) and gf(r) == k)


def _defined(gf: RationalGF, x: Fraction) -> bool:
    try:
        gf.homogeneous(x.numerator, x.denominator)
    except ArithmeticError:
        return False
    return True


def integer_level_set(
    ctx: PellContext, kind: SeqKind, k: int, n_cap: int | None = None
) -> list[Fraction]:
    """Every rational x with GF(x) = k.

    With ``n_cap`` set, each root must also carry a witness of index
    <= n_cap, otherwise :class:`TheoremViolation` is raised.
    """
    system = pell_system(ctx, kind)
    roots = solve_level(system.gf, k)
    if n_cap is not None:
        for x in roots:
            ws = find_witnesses(system, x, k)
            if not any(w.n <= n_cap for w in ws):
                raise TheoremViolation(f"{system.label}: root {x} of level {k} has no witness n<={n_cap}")
    return roots


def corollary_predicate(ctx: PellContext, kind: SeqKind) -> Callable[[Witness], bool]:
    """Which witnesses the in-radius characterization allows.

    plus case: F_n/F_{n+1};  minus case, F kind: F_{2n}/F_{2n+1};
    minus case, L kind: F_{2n}/F_{2n+1} or L_{2n+1}/L_{2n+2}.
    """
    if ctx.epsilon == 1:
        return lambda w: w.family is Family.F_RATIO
    if SeqKind(kind) is SeqKind.F:
        return lambda w: w.family is Family.F_RATIO and w.n % 2 == 0
    return lambda w: (w.family is Family.F_RATIO and w.n % 2 == 0) or (
        w.family is Family.L_RATIO and w.n % 2 == 1
    )


def classify_within_radius(ctx: PellContext, kind: SeqKind, x: Fraction) -> Classification:
    x = Fraction(x)
    if not within_radius(ctx, x):
        raise ValueError(f"x={x} lies outside the radius of convergence 1/({ctx.a}+{ctx.b}*sqrt({ctx.m}))")
    result = classify(ctx, kind, x)
    if result.verdict is Verdict.INTEGER and result.diagnostic is None:
        allowed = corollary_predicate(ctx, kind)
        if not all(allowed(w) for w in result.witnesses):
            log.warning("m=%d %s: in-radius witnesses %s outside corollary list", ctx.m, kind, result.witnesses)
            return Classification(result.verdict, result.value, result.witnesses, COROLLARY_VIOLATION)
    return result
