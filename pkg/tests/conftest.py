"""Reference implementations shared by the tests.

These never call into the package's Bessel code or harmonic machinery.
"""

import math

import mpmath
import numpy as np
import pytest

from scwdetect.detection import DetectorParams

mpmath.mp.dps = 40

P_CARRIER = 10e-6
E0 = math.sqrt(P_CARRIER)
TONE = 2 * math.pi * 4.8e9


def series_j(k, x):
    """Ascending power series for J_k(x), summed in 40-digit arithmetic."""
    k = int(k)
    sign = 1
    if k < 0:
        k = -k
        sign = -1 if k % 2 else 1
    x = mpmath.mpf(x)
    half = x / 2
    total = mpmath.mpf(0)
    j = 0
    while True:
        term = (-1) ** j * half ** (k + 2 * j) / (mpmath.factorial(j) * mpmath.factorial(k + j))
        total += term
        if abs(term) < mpmath.mpf("1e-20") and j > 0:
            break
        if x == 0:
            break
        j += 1
    return sign * float(total)


def bisect(fn, lo, hi, tol=1e-15):
    flo = fn(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (fn(mid) > 0) == (flo > 0):
            lo, flo = mid, fn(mid)
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sampled_harmonics(envelope_fn, K, n=1024):
    """Harmonic amplitudes of a periodic envelope by FFT of time samples.

    ``envelope_fn`` takes the phase ``theta = Omega t`` on ``[0, 2 pi)``.
    Returns amplitudes for ``k = -K..K``.
    """
    theta = 2 * math.pi * np.arange(n) / n
    spec = np.fft.fft(envelope_fn(theta)) / n
    return np.array([spec[k % n] for k in range(-K, K + 1)])


@pytest.fixture
def detector():
    return DetectorParams(responsivity=0.6, gain=4e3)


@pytest.fixture
def fast_detector():
    return DetectorParams(responsivity=0.6, gain=4e3, bandwidth=6.17e9)
