"""Multimode optical fields as truncated harmonic expansions.

A field is stored as the complex amplitudes ``E_k`` of the carrier (k = 0)
and the sidebands at ``omega + k * Omega`` for ``|k| <= K``. The optical
phasor ``exp(i omega t)`` is factored out everywhere. Amplitudes carry
units of sqrt(W), so ``|E|**2`` is an optical power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError

TONE_FREQ_HZ = 4.8e9
TONE_FREQ = 2 * math.pi * TONE_FREQ_HZ
CARRIER_WAVELENGTH = 1550e-9
CARRIER_FREQ = 2 * math.pi * 299_792_458.0 / CARRIER_WAVELENGTH

#: Harmonics kept beyond the largest modulation index in a pipeline.
TRUNCATION_MARGIN = 12
SAMPLES_PER_PERIOD = 256


def truncation_for(index: float) -> int:
    """Default truncation order ``ceil(m) + 12`` for a combined index ``m``."""
    return math.ceil(index) + TRUNCATION_MARGIN


@dataclass(frozen=True)
class CarrierSpec:
    amplitude: float
    carrier_freq: float = CARRIER_FREQ

    def __post_init__(self):
        if not self.amplitude >= 0:
            raise InvalidArgumentError("carrier amplitude must be non-negative")

    @classmethod
    def from_power(cls, power: float, carrier_freq: float = CARRIER_FREQ) -> "CarrierSpec":
        if power < 0:
            raise InvalidArgumentError("carrier power must be non-negative")
        return cls(math.sqrt(power), carrier_freq)


@dataclass(frozen=True, eq=False)
class MultimodeField:
    """Carrier plus sidebands; ``coeffs[k + K]`` holds ``E_k``.

    ``index_bound`` is an upper bound on the total modulation index the
    field has been through. Modulators use it to size their truncation.
    """

    carrier_freq: float
    tone_freq: float
    coeffs: np.ndarray
    index_bound: float = 0.0
    truncation: int = field(init=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size % 2 == 0 or c.size < 3:
            raise InvalidArgumentError("coeffs must have odd length 2K+1 with K >= 1")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "truncation", c.size // 2)

    @property
    def harmonics(self) -> np.ndarray:
        K = self.truncation
        return np.arange(-K, K + 1)

    def coeff(self, k: int) -> complex:
        """Amplitude of harmonic ``k``; zero outside the truncation window."""
        K = self.truncation
        if abs(k) > K:
            return 0j
        return complex(self.coeffs[k + K])

    def as_dict(self) -> dict[int, complex]:
        return {int(k): complex(e) for k, e in zip(self.harmonics, self.coeffs)}

    def replace_coeffs(self, coeffs: np.ndarray) -> "MultimodeField":
        return MultimodeField(self.carrier_freq, self.tone_freq, coeffs, self.index_bound)

    def padded(self, truncation: int) -> np.ndarray:
        """Coefficients zero-padded (never clipped) to ``truncation``."""
        K = self.truncation
        if truncation < K:
            raise InvalidArgumentError("cannot pad to a smaller truncation")
        out = np.zeros(2 * truncation + 1, dtype=complex)
        out[truncation - K:truncation + K + 1] = self.coeffs
        return out

    def is_carrier_only(self) -> bool:
        K = self.truncation
        return not np.any(self.coeffs[:K]) and not np.any(self.coeffs[K + 1:])


def from_carrier(spec: CarrierSpec, tone_freq: float = TONE_FREQ,
                 truncation: int = TRUNCATION_MARGIN) -> MultimodeField:
    if truncation < 1:
        raise InvalidArgumentError("truncation must be a positive integer")
    coeffs = np.zeros(2 * truncation + 1, dtype=complex)
    coeffs[truncation] = spec.amplitude
    return MultimodeField(spec.carrier_freq, tone_freq, coeffs)


def evaluate_envelope(f: MultimodeField, t):
    """Slowly varying envelope ``sum_k E_k exp(i k Omega t)`` at time(s) ``t``."""
    t_arr = np.asarray(t, dtype=float)
    phase = np.exp(1j * f.tone_freq * np.multiply.outer(t_arr, f.harmonics))
    out = phase @ f.coeffs
    return complex(out) if t_arr.ndim == 0 else out


def total_power(f: MultimodeField) -> float:
    return float(np.sum(np.abs(f.coeffs) ** 2))


def sideband_power(f: MultimodeField) -> float:
    K = f.truncation
    p = np.abs(f.coeffs) ** 2
    return float(np.sum(p[:K]) + np.sum(p[K + 1:]))


def period_grid(tone_freq: float = TONE_FREQ, samples: int = SAMPLES_PER_PERIOD,
                periods: int = 1) -> np.ndarray:
    """Uniform time samples covering whole tone periods, right end excluded.

    Averaging a trigonometric polynomial of degree < ``samples`` over this
    grid gives its exact time average.
    """
    if samples < 1 or periods < 1:
        raise InvalidArgumentError("samples and periods must be positive")
    period = 2 * math.pi / tone_freq
    return np.arange(samples * periods) * (period / samples)
