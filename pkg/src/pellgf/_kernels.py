"""Grid screening kernels for box sweeps.

For every q in [q_lo, q_hi) and p in [-B, B] the screen reports a code:

    0  gcd(p, q) != 1 (not a reduced fraction, skipped)
    1  reduced, generating function value not an integer
    2  reduced, value is an integer

Three interchangeable backends produce identical arrays:

* ``numba``  - @njit loop, used by default when numba imports;
* ``numpy``  - vectorized int64 rows, selected by ``PELLGF_DISABLE_NUMBA=1``
  or when numba is unavailable;
* ``python`` - arbitrary-precision loop, used when int64 could overflow.

Only integer operations are involved; no backend touches floating point.
"""

from __future__ import annotations

import logging
import math
import os

import numpy as np

log = logging.getLogger(__name__)

INT64_SAFE = 2**62
ROW_CHUNK = 256

try:
    if os.environ.get("PELLGF_DISABLE_NUMBA", "") not in ("", "0"):
        raise ImportError("disabled by PELLGF_DISABLE_NUMBA")
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised via env flag in CI
    HAS_NUMBA = False


def _screen_numpy(q_lo, q_hi, B, c0, c1, d1, d2):
    p = np.arange(-B, B + 1, dtype=np.int64)[None, :]
    out = np.zeros((q_hi - q_lo, 2 * B + 1), dtype=np.uint8)
    for start in range(q_lo, q_hi, ROW_CHUNK):
        stop = min(start + ROW_CHUNK, q_hi)
        q = np.arange(start, stop, dtype=np.int64)[:, None]
        reduced = np.gcd(p, q) == 1
        num = q * (c0 * q + c1 * p)
        den = q * q + d1 * p * q + d2 * p * p
        hit = reduced & (num % den == 0)
        out[start - q_lo : stop - q_lo] = reduced.astype(np.uint8) + hit
    return out


def _screen_python(q_lo, q_hi, B, c0, c1, d1, d2):
    out = np.zeros((q_hi - q_lo, 2 * B + 1), dtype=np.uint8)
    for i, q in enumerate(range(q_lo, q_hi)):
        for j, p in enumerate(range(-B, B + 1)):
            if math.gcd(p, q) != 1:
                continue
            num = q * (c0 * q + c1 * p)
            den = q * q + d1 * p * q + d2 * p * p
            out[i, j] = 2 if num % den == 0 else 1
    return out


if HAS_NUMBA:

    @njit(cache=True)
    def _screen_numba(q_lo, q_hi, B, c0, c1, d1, d2):  # pragma: no cover - compiled
        out = np.zeros((q_hi - q_lo, 2 * B + 1), dtype=np.uint8)
        for i in range(q_hi - q_lo):
            q = q_lo + i
            for j in range(2 * B + 1):
                p = j - B
                x, y = abs(p), q
                while y:
                    x, y = y, x % y
                if x != 1:
                    continue
                num = q * (c0 * q + c1 * p)
                den = q * q + d1 * p * q + d2 * p * p
                out[i, j] = 2 if num % den == 0 else 1
        return out


def fits_int64(B: int, c0: int, c1: int, d1: int, d2: int) -> bool:
    """Whether every intermediate of the screen stays below 2**62."""
    sq = B * B
    worst = sq * max(abs(c0) + abs(c1), 1 + abs(d1) + abs(d2))
    return worst < INT64_SAFE


def default_backend() -> str:
    return "numba" if HAS_NUMBA else "numpy"


def screen(q_lo: int, q_hi: int, B: int, coeffs, backend: str | None = None) -> np.ndarray:
    """Screen rows q_lo..q_hi-1 of the box |p| <= B; see module docstring."""
    c0, c1, d1, d2 = (int(c) for c in coeffs)
    if q_lo < 1 or q_hi < q_lo:
        raise ValueError(f"bad row range [{q_lo}, {q_hi})")
    backend = backend or default_backend()
    if backend != "python" and not fits_int64(B, c0, c1, d1, d2):
        log.debug("coefficients too large for int64; using python backend")
        backend = "python"
    if backend == "numba":
        if not HAS_NUMBA:
            raise RuntimeError("numba backend requested but numba is unavailable")
        return _screen_numba(q_lo, q_hi, B, c0, c1, d1, d2)
    if backend == "numpy":
        return _screen_numpy(q_lo, q_hi, B, c0, c1, d1, d2)
    if backend == "python":
        return _screen_python(q_lo, q_hi, B, c0, c1, d1, d2)
    raise ValueError(f"unknown backend {backend!r}")


# 5x^2 - y^2 = +-4 scan: for x in [x_lo, x_hi) return every (x, y >= 0)
# with y^2 = 5x^2 - 4 or y^2 = 5x^2 + 4.

def pm4_fits_int64(x_hi: int) -> bool:
    return 5 * x_hi * x_hi + 4 < INT64_SAFE


def _pm4_python(x_lo, x_hi):
    out = []
    for x in range(x_lo, x_hi):
        for t in (5 * x * x - 4, 5 * x * x + 4):
            if t < 0:
                continue
            y = math.isqrt(t)
            if y * y == t:
                out.append((x, y))
    return np.array(out, dtype=object).reshape(-1, 2)


def _isqrt_numpy(n):
    """Elementwise floor(sqrt(n)) for non-negative int64 by Newton descent."""
    n = np.asarray(n, dtype=np.int64)
    x = n.copy()
    pos = n > 0
    while True:
        safe = np.where(x > 0, x, 1)
        y = np.where(pos, (x + n // safe) // 2, 0)
        if not np.any(y < x):
            return x
        x = np.minimum(x, y)


def _pm4_numpy(x_lo, x_hi):
    xs = np.arange(x_lo, x_hi, dtype=np.int64)
    found = []
    for shift in (-4, 4):
        t = 5 * xs * xs + shift
        ok = t >= 0
        r = _isqrt_numpy(np.where(ok, t, 0))
        hit = ok & (r * r == t)
        found.append(np.stack([xs[hit], r[hit]], axis=1))
    out = np.concatenate(found)
    order = np.lexsort((out[:, 1], out[:, 0]))
    return out[order]


if HAS_NUMBA:

    @njit(cache=True)
    def _isqrt_numba(n):  # pragma: no cover - compiled
        if n < 2:
            return n
        x = n
        y = (x + 1) // 2
        while y < x:
            x = y
            y = (x + n // x) // 2
        return x

    @njit(cache=True)
    def _pm4_numba(x_lo, x_hi):  # pragma: no cover - compiled
        buf = np.empty((2 * 64 + 8, 2), dtype=np.int64)
        count = 0
        for x in range(x_lo, x_hi):
            for shift in (-4, 4):
                t = 5 * x * x + shift
                if t < 0:
                    continue
                y = _isqrt_numba(t)
                if y * y == t:
                    if count == buf.shape[0]:
                        grown = np.empty((2 * count, 2), dtype=np.int64)
                        grown[:count] = buf
                        buf = grown
                    buf[count, 0] = x
                    buf[count, 1] = y
                    count += 1
        return buf[:count].copy()


def pm4_scan(x_lo: int, x_hi: int, backend: str | None = None) -> list[tuple[int, int]]:
    """Solutions of 5x^2 - y^2 = +-4 with x_lo <= x < x_hi, y >= 0, sorted."""
    if x_lo < 0 or x_hi < x_lo:
        raise ValueError(f"bad range [{x_lo}, {x_hi})")
    backend = backend or default_backend()
    if backend != "python" and not pm4_fits_int64(x_hi):
        backend = "python"
    if backend == "numba":
        if not HAS_NUMBA:
            raise RuntimeError("numba backend requested but numba is unavailable")
        arr = _pm4_numba(x_lo, x_hi)
    elif backend == "numpy":
        arr = _pm4_numpy(x_lo, x_hi)
    elif backend == "python":
        arr = _pm4_python(x_lo, x_hi)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return [(int(x), int(y)) for x, y in arr]
