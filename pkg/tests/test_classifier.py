from fractions import Fraction as Fr
from math import gcd, isqrt

import pytest
from hypothesis import given, settings, strategies as st

from pellgf.classifier import (
    COROLLARY_VIOLATION,
    Family,
    TheoremViolation,
    Verdict,
    Witness,
    classify,
    classify_within_radius,
    integer_level_set,
    pell_system,
)
from pellgf.genfunc import evaluate, within_radius
from pellgf.sequences import PellContext, SeqKind, terms_upto

F, L = SeqKind.F, SeqKind.L
CTXS = {m: PellContext.from_m(m) for m in (2, 3, 5, 6, 7, 10, 13)}
NONSQUARE_50 = [m for m in range(2, 51) if isqrt(m) ** 2 != m]


def theorem_points(ctx, kind, n_max):
    """Family points straight from the theorem statements, indexed by (family, n)."""
    Fs = terms_upto(ctx, F, n_max + 1)
    Ls = terms_upto(ctx, L, n_max + 1)
    s = ctx.epsilon
    pts = {}
    for n in range(n_max + 1):
        pts[(Family.F_RATIO, n)] = Fr(Fs[n], Fs[n + 1])
        if n >= 1:
            pts[(Family.F_RATIO_INV, n)] = s * Fr(Fs[n + 1], Fs[n])
        if kind is L:
            pts[(Family.L_RATIO, n)] = Fr(Ls[n], Ls[n + 1])
            pts[(Family.L_RATIO_INV, n)] = s * Fr(Ls[n + 1], Ls[n])
    return pts


def test_classify_examples():
    c = classify(CTXS[3], L, Fr(1, 2))
    assert (c.verdict, c.k, c.witnesses) == (Verdict.INTEGER, 0, (Witness(Family.L_RATIO, 0, 0),))
    c = classify(CTXS[3], F, Fr(4))
    assert (c.verdict, c.k, c.witnesses) == (Verdict.INTEGER, 4, (Witness(Family.F_RATIO_INV, 1, 4),))
    c = classify(CTXS[2], L, Fr(-1))
    assert (c.verdict, c.k, c.witnesses) == (Verdict.INTEGER, 1, (Witness(Family.L_RATIO_INV, 0, 1),))
    c = classify(CTXS[2], F, Fr(1, 3))
    assert (c.verdict, c.value, c.witnesses) == (Verdict.NON_INTEGER, Fr(3, 2), ())


def test_zero_is_f_ratio_zero():
    for ctx in CTXS.values():
        for kind in (F, L):
            c = classify(ctx, kind, Fr(0))
            assert Witness(Family.F_RATIO, 0, c.k) in c.witnesses


def test_witness_ordering_and_degenerate_overlap():
    # a = 1: L_0 = L_1, so x = 1 is L_0/L_1; it is also nothing else
    c = classify(CTXS[2], L, Fr(1))
    assert c.verdict is Verdict.INTEGER and c.k == 0
    assert c.witnesses == (Witness(Family.L_RATIO, 0, 0),)


@pytest.mark.parametrize("m", NONSQUARE_50)
@pytest.mark.parametrize("kind", [F, L])
def test_forward_direction(m, kind):
    ctx = PellContext.from_m(m)
    for (family, n), x in theorem_points(ctx, kind, 40).items():
        c = classify(ctx, kind, x)
        assert c.verdict is Verdict.INTEGER, (family, n, x)
        assert c.diagnostic is None
        for w in c.witnesses:
            assert theorem_points(ctx, kind, w.n)[(w.family, w.n)] == x
            assert evaluate(ctx, kind, x).value == w.k
        # the generating witness is among those reported unless an
        # earlier family at an allowed index already names the point
        assert c.witnesses


@pytest.mark.parametrize("m", sorted(CTXS))
@pytest.mark.parametrize("kind", [F, L])
def test_reverse_direction_small_box(m, kind):
    ctx = CTXS[m]
    B = 40
    fams = set(theorem_points(ctx, kind, 30).values())
    for q in range(1, B + 1):
        for p in range(-B, B + 1):
            if gcd(p, q) != 1:
                continue
            x = Fr(p, q)
            den = 1 - 2 * ctx.a * x + ctx.epsilon * x * x
            val = (1 - ctx.a * x) / den if kind is L else ctx.b * x / den
            c = classify(ctx, kind, x)
            assert (c.verdict is Verdict.INTEGER) == (val.denominator == 1)
            assert (val.denominator == 1) == (x in fams)
            if c.verdict is Verdict.INTEGER:
                assert c.witnesses and c.diagnostic is None


def test_level_set_examples():
    assert integer_level_set(CTXS[3], F, 4) == [Fr(1, 4), Fr(4)]
    assert integer_level_set(CTXS[3], F, 1) == []
    assert integer_level_set(CTXS[3], L, 0) == [Fr(1, 2)]
    roots = integer_level_set(CTXS[2], F, -2)
    assert Fr(-2) in roots and Fr(1, 2) in roots
    for x in roots:
        c = classify(CTXS[2], F, x)
        assert c.verdict is Verdict.INTEGER and c.k == -2


def test_level_set_discriminant_hand_check():
    # F+ with a=2, b=1: discriminant (4k+1)^2 - 4k^2 = 12k^2 + 8k + 1
    for k in range(-30, 31):
        if k == 0:
            continue
        d = 12 * k * k + 8 * k + 1
        r = isqrt(d)
        expected = sorted({Fr(4 * k + 1 + r, 2 * k), Fr(4 * k + 1 - r, 2 * k)}) if r * r == d else []
        assert integer_level_set(CTXS[3], F, k) == expected


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(sorted(CTXS)), st.sampled_from([F, L]), st.integers(-200, 200))
def test_level_set_round_trip(m, kind, k):
    ctx = CTXS[m]
    for x in integer_level_set(ctx, kind, k, n_cap=200):
        c = classify(ctx, kind, x)
        assert c.verdict is Verdict.INTEGER and c.k == k and c.witnesses


def test_level_set_n_cap_enforced():
    # 56/209 = F_3/F_4 for m=3 needs index 3
    with pytest.raises(TheoremViolation):
        integer_level_set(CTXS[3], F, evaluate(CTXS[3], F, Fr(56, 209)).value.numerator, n_cap=2)


def test_within_radius_examples():
    c = classify_within_radius(CTXS[3], L, Fr(4, 15))
    assert c.verdict is Verdict.INTEGER and c.witnesses == (Witness(Family.F_RATIO, 2, c.k),)
    with pytest.raises(ValueError):
        classify_within_radius(CTXS[2], F, Fr(1, 2))
    c = classify_within_radius(CTXS[2], F, Fr(2, 5))
    assert (c.verdict, c.k, c.witnesses) == (Verdict.INTEGER, 10, (Witness(Family.F_RATIO, 2, 10),))
    assert c.diagnostic is None


def test_within_radius_minus_l_odd_lucas_ratio():
    ctx = CTXS[2]
    Ls = terms_upto(ctx, L, 6)
    for n in (1, 3, 5):
        x = Fr(Ls[n], Ls[n + 1])
        assert within_radius(ctx, x)
        c = classify_within_radius(ctx, L, x)
        assert c.witnesses == (Witness(Family.L_RATIO, n, c.k),) and c.diagnostic is None


def test_corollary_violation_flagged(monkeypatch):
    import pellgf.classifier as cl

    monkeypatch.setattr(cl, "corollary_predicate", lambda ctx, kind: (lambda w: False))
    c = cl.classify_within_radius(CTXS[3], F, Fr(1, 4))
    assert c.diagnostic == COROLLARY_VIOLATION


def test_family_system_inv_sign():
    assert pell_system(CTXS[2], L).inv_sign == -1
    assert pell_system(CTXS[3], L).inv_sign == 1
    assert pell_system(CTXS[3], F).families == (Family.F_RATIO, Family.F_RATIO_INV)
