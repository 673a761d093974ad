"""Bessel functions of the first kind, integer order, real argument.

Small arguments are summed from the ascending power series. Larger
arguments use Miller's downward recurrence normalised with
``J_0 + 2 * sum(J_2k) = 1``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidArgumentError

MAX_ARGUMENT = 50.0

#: Smallest positive zero of J_0.
J0_FIRST_ZERO = 2.404825557695773

_SERIES_LIMIT = 1.0
_RESCALE = 1e150


def _series(k: int, x: float) -> float:
    term = 1.0
    half = 0.5 * x
    for i in range(1, k + 1):
        term *= half / i
        if term == 0.0:
            return 0.0
    total = term
    q = -half * half
    j = 0
    while True:
        j += 1
        term *= q / (j * (k + j))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            return total


def _miller(kmax: int, x: float) -> np.ndarray:
    """J_0..J_kmax for 0 < x, by normalised downward recurrence."""
    top = max(kmax, int(x))
    start = 2 * ((top + int(math.sqrt(160.0 * top)) + 16) // 2)
    out = np.zeros(kmax + 1)
    two_over_x = 2.0 / x
    j_next, j_cur = 0.0, 1e-300
    norm = 0.0
    for n in range(start, 0, -1):
        j_prev = n * two_over_x * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        # j_cur now holds J_{n-1}
        if abs(j_cur) > _RESCALE:
            j_cur /= _RESCALE
            j_next /= _RESCALE
            out /= _RESCALE
            norm /= _RESCALE
        if n - 1 <= kmax:
            out[n - 1] = j_cur
        if (n - 1) % 2 == 0 and n - 1 > 0:
            norm += 2.0 * j_cur
    norm += j_cur
    return out / norm


def _check_argument(x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or abs(x) > MAX_ARGUMENT:
        raise InvalidArgumentError(f"|x| must be <= {MAX_ARGUMENT}, got {x}")
    return x


def besselj_orders(kmax: int, x: float) -> np.ndarray:
    """Return ``[J_0(x), J_1(x), ..., J_kmax(x)]``."""
    if kmax < 0:
        raise InvalidArgumentError("kmax must be non-negative")
    x = _check_argument(x)
    sign = 1.0
    if x < 0:
        x, sign = -x, -1.0
    if x == 0.0:
        out = np.zeros(kmax + 1)
        out[0] = 1.0
        return out
    if x <= _SERIES_LIMIT:
        out = np.array([_series(k, x) for k in range(kmax + 1)])
    else:
        out = _miller(kmax, x)
    if sign < 0:
        out[1::2] *= -1.0
    return out


def besselj(k: int, x: float) -> float:
    """J_k(x) for integer ``k`` (any sign) and real ``|x| <= 50``."""
    k = int(k)
    sign = 1.0
    if k < 0:
        k = -k
        sign = -1.0 if k % 2 else 1.0
    return sign * float(besselj_orders(k, x)[k])


def solve_j0_equals(target: float, tol: float = 1e-15) -> float:
    """Smallest positive ``m`` with ``J_0(m) == target``, for ``0 < target < 1``.

    J_0 falls monotonically from 1 to 0 on ``[0, J0_FIRST_ZERO]``, so plain
    bisection on that bracket converges to the unique root.
    """
    if not 0.0 < target < 1.0:
        raise InvalidArgumentError(f"target must lie in (0, 1), got {target}")
    lo, hi = 0.0, J0_FIRST_ZERO
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if besselj(0, mid) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def balanced_index() -> float:
    """Modulation index ``m_b`` with ``J_0(m_b) = 1/sqrt(2)``."""
    return solve_j0_equals(1.0 / math.sqrt(2.0))
