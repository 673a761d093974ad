"""Lossless spectral filters splitting a field into two arms.

The transmitted arm gets amplitude ``t_k`` per harmonic and the reflected
arm ``sqrt(1 - t_k**2)``. No extra phase is applied on reflection; every
detector downstream only sees intensities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import InvalidArgumentError
from .field import MultimodeField


def _check(t: float) -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise InvalidArgumentError(f"amplitude transmittance must lie in [0, 1], got {t}")
    return t


@dataclass(frozen=True)
class FilterProfile:
    """Amplitude transmittance per harmonic.

    ``taps`` lists explicit harmonics; any other ``k > 0`` falls back to
    ``upper`` and ``k < 0`` to ``lower``. An absent carrier tap means 1.
    """

    taps: Mapping[int, float] = field(default_factory=dict)
    upper: float = 1.0
    lower: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "taps", {int(k): _check(v) for k, v in self.taps.items()})
        _check(self.upper)
        _check(self.lower)

    def transmittance(self, k: int) -> float:
        if k in self.taps:
            return self.taps[k]
        if k > 0:
            return self.upper
        if k < 0:
            return self.lower
        return 1.0

    def amplitudes(self, harmonics) -> np.ndarray:
        return np.array([self.transmittance(int(k)) for k in harmonics])


def _leaky(t: float, extinction: float) -> float:
    if not 0.0 <= extinction < 1.0:
        raise InvalidArgumentError("extinction must lie in [0, 1)")
    if t == 0.0:
        return math.sqrt(extinction)
    if t == 1.0:
        return math.sqrt(1.0 - extinction)
    return t


def carrier_separator(extinction: float = 0.0) -> FilterProfile:
    """Blocks the carrier, passes every sideband."""
    pass_ = _leaky(1.0, extinction)
    return FilterProfile({0: _leaky(0.0, extinction)}, upper=pass_, lower=pass_)


def heterodyne_profile(extinction: float = 0.0) -> FilterProfile:
    """Passes half the carrier power and the upper sidebands only."""
    return FilterProfile({0: math.sqrt(0.5)},
                         upper=_leaky(1.0, extinction), lower=_leaky(0.0, extinction))


def split(f: MultimodeField, p: FilterProfile) -> tuple[MultimodeField, MultimodeField]:
    """Return ``(transmitted, reflected)`` arms."""
    t = p.amplitudes(f.harmonics)
    r = np.sqrt(np.clip(1.0 - t * t, 0.0, None))
    return f.replace_coeffs(t * f.coeffs), f.replace_coeffs(r * f.coeffs)
