from math import isqrt

import pytest

from pellgf.pell import (
    SquareParameterError,
    continued_fraction_sqrt,
    convergents,
    fundamental_solution,
    is_square,
)


def brute_minimal(m, y_cap=20000):
    """Smallest y >= 1 with m y^2 +- 1 a positive square, or None past y_cap."""
    for y in range(1, y_cap + 1):
        for eps in (-1, 1):
            t = m * y * y + eps
            x = isqrt(t)
            if t > 0 and x * x == t:
                return x, y, eps
    return None


def brute_cf(m, terms):
    """Partial quotients of sqrt(m) via exact floor((h + sqrt m)/k) arithmetic."""
    # state: (P + sqrt m) / Q
    out, P, Q = [], 0, 1
    for _ in range(terms):
        # floor((P + sqrt m)/Q) by search, independent of the PQa update
        a = 0
        while (a + 1) * Q - P <= 0 or ((a + 1) * Q - P) ** 2 <= m:
            a += 1
        out.append(a)
        # (P + sqrt m)/Q - a = (sqrt m - (aQ - P))/Q  ->  reciprocal
        P2 = a * Q - P
        Q = (m - P2 * P2) // Q
        P = P2
    return out


@pytest.mark.parametrize("m,expected", [(4, True), (5, False), (1, True), (2, False), (49, True)])
def test_is_square(m, expected):
    assert is_square(m) is expected


@pytest.mark.parametrize(
    "m,a0,period",
    [(2, 1, (2,)), (3, 1, (1, 2)), (7, 2, (1, 1, 1, 4)), (13, 3, (1, 1, 1, 1, 6))],
)
def test_cf_examples(m, a0, period):
    cf = continued_fraction_sqrt(m)
    assert (cf.a0, cf.period) == (a0, period)


@pytest.mark.parametrize("m", [m for m in range(2, 120) if isqrt(m) ** 2 != m])
def test_cf_matches_search_oracle(m):
    cf = continued_fraction_sqrt(m)
    assert cf.a0**2 < m < (cf.a0 + 1) ** 2
    assert cf.period[-1] == 2 * cf.a0
    r = len(cf.period)
    assert brute_cf(m, 1 + 2 * r) == [cf.a0] + list(cf.period) * 2


@pytest.mark.parametrize(
    "m,a,b,eps",
    [(2, 1, 1, -1), (3, 2, 1, 1), (13, 18, 5, -1), (6, 5, 2, 1), (10, 3, 1, -1), (61, 29718, 3805, -1)],
)
def test_fundamental_examples(m, a, b, eps):
    s = fundamental_solution(m)
    assert (s.a, s.b, s.epsilon) == (a, b, eps)


@pytest.mark.parametrize("m", [m for m in range(2, 200) if isqrt(m) ** 2 != m])
def test_fundamental_matches_brute_force(m):
    s = fundamental_solution(m)
    found = brute_minimal(m)
    if found is None:
        assert s.b > 20000
    else:
        assert (s.a, s.b, s.epsilon) == found


@pytest.mark.parametrize("m", [0, 1, 4, 9, 144])
def test_square_rejected(m):
    with pytest.raises(SquareParameterError):
        fundamental_solution(m)
    with pytest.raises(SquareParameterError):
        continued_fraction_sqrt(m)


def test_convergents_of_sqrt2():
    cf = continued_fraction_sqrt(2)
    assert list(convergents(cf, 5)) == [(1, 1), (3, 2), (7, 5), (17, 12), (41, 29)]


def test_negative_pell_iff_odd_period_small():
    for m in range(2, 300):
        if is_square(m):
            continue
        cf = continued_fraction_sqrt(m)
        assert (fundamental_solution(m).epsilon == -1) == (len(cf.period) % 2 == 1)
