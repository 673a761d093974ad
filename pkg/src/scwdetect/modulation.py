"""Electro-optic phase modulation of multimode fields.

A modulator driven by ``m cos(Omega t + phi)`` multiplies the envelope by
``exp(i m cos(Omega t + phi))``, whose Jacobi-Anger coefficients are
``i**|k| J_|k|(m) exp(i k phi)``. On harmonic amplitudes this is a discrete
convolution with that kernel.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .bessel import besselj_orders
from .errors import IncompatibleGridError, InvalidArgumentError
from .field import TONE_FREQ, MultimodeField, truncation_for

TWO_PI = 2 * math.pi
_FREQ_RTOL = 1e-12
_I_POWERS = np.array([1, 1j, -1, -1j])


def normalize_phase(phi: float) -> float:
    """Wrap an angle into ``[0, 2*pi)``."""
    phi = math.fmod(phi, TWO_PI)
    if phi < 0:
        phi += TWO_PI
    return 0.0 if phi >= TWO_PI else phi


@dataclass(frozen=True)
class ModulationTone:
    index: float
    phase: float = 0.0
    tone_freq: float = TONE_FREQ

    def __post_init__(self):
        if not self.index >= 0:
            raise InvalidArgumentError(f"modulation index must be >= 0, got {self.index}")
        object.__setattr__(self, "phase", normalize_phase(self.phase))


@dataclass(frozen=True)
class CombinedTone:
    index: float
    phase: float


def _same_freq(a: float, b: float) -> bool:
    return abs(a - b) <= _FREQ_RTOL * max(abs(a), abs(b))


def combine_tones(a: ModulationTone, b: ModulationTone) -> CombinedTone:
    """Single tone equivalent to two cascaded modulators at the same frequency.

    ``m e^{i phi} = m_a e^{i phi_a} + m_b e^{i phi_b}``.
    """
    if not _same_freq(a.tone_freq, b.tone_freq):
        raise IncompatibleGridError("tones must share one frequency")
    z = a.index * cmath.exp(1j * a.phase) + b.index * cmath.exp(1j * b.phase)
    m = abs(z)
    if m == 0.0:
        return CombinedTone(0.0, 0.0)
    return CombinedTone(m, normalize_phase(cmath.phase(z)))


def modulation_kernel(index: float, phase: float, truncation: int) -> np.ndarray:
    """Jacobi-Anger coefficients for ``k = -K..K``."""
    K = truncation
    j = besselj_orders(K, index)
    k = np.arange(-K, K + 1)
    mag = j[np.abs(k)] * _I_POWERS[np.abs(k) % 4]
    return mag * np.exp(1j * k * phase)


def phase_modulate(f: MultimodeField, tone: ModulationTone) -> MultimodeField:
    if _same_freq(f.tone_freq, tone.tone_freq):
        tone_freq = f.tone_freq
    elif f.is_carrier_only():
        tone_freq = tone.tone_freq
    else:
        raise IncompatibleGridError(
            f"field tone {f.tone_freq} rad/s differs from modulator tone {tone.tone_freq} rad/s")
    bound = f.index_bound + tone.index
    k_out = max(f.truncation, truncation_for(bound))
    k_ker = truncation_for(tone.index)
    kernel = modulation_kernel(tone.index, tone.phase, k_ker)
    full = np.convolve(f.coeffs, kernel)
    centre = f.truncation + k_ker
    out = full[centre - k_out:centre + k_out + 1]
    return MultimodeField(f.carrier_freq, tone_freq, out, bound)
