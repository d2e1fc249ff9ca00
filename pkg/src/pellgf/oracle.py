"""Brute-force verification: box sweeps, minimality and identity grids."""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .classic import classic_system
from .classifier import (
    FamilySystem,
    Verdict,
    Witness,
    classify_in,
    corollary_predicate,
    iter_family_points,
    pell_system,
)
from .exact import format_rational, isqrt
from .genfunc import within_radius
from .pell import fundamental_solution
from .sequences import IDENTITY_IDS, TWO_INDEX_IDS, PellContext, SeqKind, _identity_holds, terms_upto

CLASSIC = "classic"

MISSING_WITNESS = "MISSING_WITNESS"
FAMILY_NOT_INTEGER = "FAMILY_NOT_INTEGER"
SCREEN_MISS = "SCREEN_MISS"
COROLLARY_VIOLATION = "COROLLARY_VIOLATION"

COUNT_FORMULA = "1 + 2 * sum_{q=1..B} #{1 <= p <= B : gcd(p, q) = 1}"


@dataclass(frozen=True)
class IntegerPoint:
    x: Fraction
    k: int
    witnesses: tuple[Witness, ...]


@dataclass(frozen=True)
class Violation:
    x: Fraction
    value: Fraction
    diagnosis: str


@dataclass
class SweepReport:
    m: int | str
    kind: SeqKind
    bound: int
    radius_only: bool = False
    points_tested: int = 0
    points_in_radius: int | None = None
    integer_points: list[IntegerPoint] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)
    family_points_checked: int = 0

    @property
    def confirmed(self) -> bool:
        return not self.violations

    def integer_set(self) -> set[Fraction]:
        return {p.x for p in self.integer_points}

    def to_dict(self) -> dict:
        return {
            "m": str(self.m),
            "kind": self.kind.value,
            "bound": str(self.bound),
            "radius_only": self.radius_only,
            "points_tested": str(self.points_tested),
            "points_in_radius": None if self.points_in_radius is None else str(self.points_in_radius),
            "count_formula": COUNT_FORMULA,
            "family_points_checked": str(self.family_points_checked),
            "integer_points": [
                {
                    "x": format_rational(p.x),
                    "k": str(p.k),
                    "witnesses": [
                        {"family": w.family.value, "n": str(w.n), "k": str(w.k)} for w in p.witnesses
                    ],
                }
                for p in self.integer_points
            ],
            "violations": [
                {"x": format_rational(v.x), "value": format_rational(v.value), "diagnosis": v.diagnosis}
                for v in self.violations
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def reduced_box_count(B: int) -> int:
    """Number of reduced p/q with |p| <= B, 1 <= q <= B."""
    return 1 + 2 * sum(1 for q in range(1, B + 1) for p in range(1, B + 1) if math.gcd(p, q) == 1)


def radius_pmax(ctx: PellContext, q: int) -> int:
    """Largest p >= 0 with p/q strictly inside the radius of convergence."""
    r = isqrt(ctx.m)[0]
    lo = q // (ctx.a + ctx.b * (r + 1))  # sqrt(m) < r + 1, so lo/q is inside
    hi = q // (ctx.a + ctx.b * r) + 1  # sqrt(m) >= r, so hi/q is outside
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if within_radius(ctx, Fraction(mid, q)):
            lo = mid
        else:
            hi = mid
    return lo


def _resolve(target, kind: SeqKind) -> tuple[FamilySystem, PellContext | None]:
    kind = SeqKind(kind)
    if isinstance(target, str):
        if target != CLASSIC:
            raise ValueError(f"unknown sweep target {target!r}")
        return classic_system(kind), None
    return pell_system(target, kind), target


def _sweep_rows(system, ctx, kind, B, q_lo, q_hi, radius_only, backend):
    """Worker: screen rows [q_lo, q_hi) and classify every integer hit."""
    codes = _kernels.screen(q_lo, q_hi, B, (system.gf.c0, system.gf.c1, system.gf.d1, system.gf.d2), backend)
    tested = int(np.count_nonzero(codes))
    in_radius = 0
    points, violations = [], []
    allowed = corollary_predicate(ctx, kind) if radius_only else None
    for i, q in enumerate(range(q_lo, q_hi)):
        row = codes[i]
        if radius_only:
            pm = radius_pmax(ctx, q)
            in_radius += int(np.count_nonzero(row[B - pm : B + pm + 1]))
        for j in np.flatnonzero(row == 2):
            p = int(j) - B
            if radius_only and abs(p) > pm:
                continue
            x = Fraction(p, q)
            c = classify_in(system, x)
            if c.verdict is not Verdict.INTEGER:
                # the screen and exact evaluation disagree
                violations.append(Violation(x, c.value, SCREEN_MISS))
                continue
            points.append(IntegerPoint(x, c.k, c.witnesses))
            if not c.witnesses:
                violations.append(Violation(x, c.value, MISSING_WITNESS))
            elif allowed is not None and not all(allowed(w) for w in c.witnesses):
                violations.append(Violation(x, c.value, COROLLARY_VIOLATION))
    return tested, in_radius, points, violations


def _partition(B: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, B))
    edges = [1 + (B * i) // parts for i in range(parts + 1)]
    return [(edges[i], edges[i + 1]) for i in range(parts) if edges[i] < edges[i + 1]]


def sweep(
    target,
    kind: SeqKind,
    B: int,
    *,
    radius_only: bool = False,
    jobs: int = 1,
    backend: str | None = None,
) -> SweepReport:
    """Classify every reduced p/q with |p| <= B, 1 <= q <= B.

    ``target`` is a :class:`PellContext` or the string ``"classic"``. The
    integer points found by the box scan are compared with the family
    points enumerated directly from the sequences; any disagreement in
    either direction is recorded as a violation.
    """
    if B < 1:
        raise ValueError(f"B must be >= 1, got {B}")
    kind = SeqKind(kind)
    system, ctx = _resolve(target, kind)
    if radius_only and ctx is None:
        raise ValueError("radius-only sweeps need a Pell context")
    report = SweepReport(ctx.m if ctx else CLASSIC, kind, B, radius_only)

    chunks = _partition(B, jobs if jobs > 1 else 1)
    args = [(system, ctx, kind, B, lo, hi, radius_only, backend) for lo, hi in chunks]
    if jobs > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_rows, *zip(*args)))
    else:
        results = [_sweep_rows(*a) for a in args]

    in_radius = 0
    for tested, inside, points, violations in results:
        report.points_tested += tested
        in_radius += inside
        report.integer_points.extend(points)
        report.violations.extend(violations)
    if radius_only:
        report.points_in_radius = in_radius

    # the other direction: every family point in the box must show up
    found = report.integer_set()
    allowed = corollary_predicate(ctx, kind) if radius_only else None
    expected = set()
    for family, n, x in iter_family_points(system, B):
        if radius_only and not (within_radius(ctx, x) and allowed(Witness(family, n, 0))):
            continue
        expected.add(x)
    report.family_points_checked = len(expected)
    for x in expected - found:
        value = system.gf(x)
        diagnosis = FAMILY_NOT_INTEGER if value.denominator != 1 else SCREEN_MISS
        report.violations.append(Violation(x, value, diagnosis))

    report.integer_points.sort(key=lambda p: p.x)
    report.violations.sort(key=lambda v: (v.x, v.diagnosis))
    return report


def family_point_set(target, kind: SeqKind, B: int) -> set[Fraction]:
    system, _ = _resolve(target, kind)
    return {x for _, _, x in iter_family_points(system, B)}


def stern_brocot_first_solution(m: int) -> tuple[int, int, int]:
    """First node (h, k) on the Stern-Brocot path to sqrt(m) with h^2 - m k^2 = +-1.

    Every positive solution of x^2 - m y^2 = +-1 is a convergent of sqrt(m)
    and every convergent lies on this path, whose denominators never
    decrease; so the first hit is the solution with the least y.
    """
    lh, lk, rh, rk = 0, 1, 1, 0
    while True:
        h, k = lh + rh, lk + rk
        d = h * h - m * k * k
        if d in (1, -1):
            return h, k, d
        if d < 0:
            lh, lk = h, k
        else:
            rh, rk = h, k


def minimality_scan(m: int, y_bound: int = 2000) -> bool:
    """Confirm no solution of x^2 - m y^2 = +-1 with 1 <= y < b exists.

    y = 1..min(b-1, y_bound) is scanned exhaustively; anything beyond that
    is covered by the Stern-Brocot walk, which shares no code with the
    continued-fraction solver.
    """
    sol = fundamental_solution(m)
    for y in range(1, min(sol.b, y_bound + 1)):
        for t in (m * y * y + 1, m * y * y - 1):
            if t > 0 and isqrt(t)[1]:
                return False
    if sol.b - 1 <= y_bound:
        return True
    h, k, d = stern_brocot_first_solution(m)
    return (h, k, d) == (sol.a, sol.b, sol.epsilon)


@dataclass
class IdentityReport:
    m: int
    n_max: int
    checked: int = 0
    failures: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def admissible_indices(identity_id: int, n_max: int):
    if identity_id in (7, 8):
        return ((n, 0) for n in range(1, n_max + 1))
    if identity_id in TWO_INDEX_IDS:
        return ((n, j) for n in range(n_max + 1) for j in range(n + 1))
    return ((n, 0) for n in range(n_max + 1))


def identity_grid(ctx: PellContext, n_max: int) -> IdentityReport:
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    top = 3 * n_max + 2
    F = terms_upto(ctx, SeqKind.F, top)
    L = terms_upto(ctx, SeqKind.L, top)
    report = IdentityReport(ctx.m, n_max)
    for ident in IDENTITY_IDS:
        for n, j in admissible_indices(ident, n_max):
            report.checked += 1
            if not _identity_holds(F, L, ctx, ident, n, j):
                report.failures.append((ident, n, j))
    return report
