"""Balanced photodetection for the subcarrier-wave receivers.

Each receiver has a closed-form output and a brute-force counterpart that
builds the arm fields, samples the photocurrents on a time grid and
subtracts them. The brute-force path (``*_timedomain``) is the reference
the closed forms are tested against.

Sign convention: the balanced output is ``arm2 - arm1``. In the
single-quadrature receiver arm1 carries the carrier and arm2 the
sidebands, so ``delta_phi = 0`` gives the maximum output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bessel import besselj
from .errors import BandwidthError, IncompatibleGridError, InvalidArgumentError
from .field import (SAMPLES_PER_PERIOD, TONE_FREQ, CarrierSpec, MultimodeField,
                    evaluate_envelope, from_carrier, period_grid)
from .filtering import carrier_separator, heterodyne_profile, split
from .modulation import ModulationTone, combine_tones, phase_modulate

HOMODYNE_BANDWIDTH_HZ = 100e6
HETERODYNE_BANDWIDTH_HZ = 6.17e9


@dataclass(frozen=True)
class DetectorParams:
    """Balanced detector settings.

    ``gain`` lumps the transimpedance and amplifier chain (V/A), so outputs
    are in volts. ``calibration`` converts ``|E|**2`` to watts and is 1 when
    fields are already in sqrt(W).
    """

    responsivity: float = 0.6
    gain: float = 4e3
    calibration: float = 1.0
    bandwidth: float = HOMODYNE_BANDWIDTH_HZ
    noise_std: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not self.responsivity > 0 or not self.gain > 0:
            raise InvalidArgumentError("responsivity and gain must be positive")
        if not self.calibration > 0:
            raise InvalidArgumentError("calibration must be positive")
        if not self.noise_std >= 0:
            raise InvalidArgumentError("noise_std must be non-negative")

    @property
    def scale(self) -> float:
        """Volts per unit ``|E|**2``."""
        return self.responsivity * self.gain * self.calibration

    def rng(self, *key: int) -> np.random.Generator:
        """Counter-based generator for stream ``key`` under this seed.

        Streams with different keys are independent, so work split across
        workers reproduces regardless of execution order.
        """
        return np.random.Generator(np.random.Philox(np.random.SeedSequence([self.seed, *key])))

    def observes_beat(self, tone_freq: float) -> bool:
        """Whether intensity terms oscillating at ``tone_freq`` reach the output."""
        return self.bandwidth >= tone_freq / (2 * math.pi)


@dataclass(frozen=True)
class IQSample:
    i_val: float
    q_val: float

    def __post_init__(self):
        if not (math.isfinite(self.i_val) and math.isfinite(self.q_val)):
            raise InvalidArgumentError("IQ sample must be finite")

    def __sub__(self, other: "IQSample") -> "IQSample":
        return IQSample(self.i_val - other.i_val, self.q_val - other.q_val)

    @property
    def angle(self) -> float:
        return math.atan2(self.q_val, self.i_val)


def _noise(d: DetectorParams, size, rng):
    if d.noise_std == 0:
        return 0.0
    if rng is None:
        rng = d.rng()
    return d.noise_std * rng.standard_normal(size)


def balanced_current_timedomain(arm1: MultimodeField, arm2: MultimodeField,
                                d: DetectorParams, t_grid, rng=None) -> np.ndarray:
    """Sample-wise ``R G (|E_2(t)|^2 - |E_1(t)|^2)`` plus optional noise."""
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise InvalidArgumentError("time grid must be a non-empty 1-D sequence")
    if arm1.tone_freq != arm2.tone_freq:
        raise IncompatibleGridError("both arms must share one tone frequency")
    p1 = np.abs(evaluate_envelope(arm1, t)) ** 2
    p2 = np.abs(evaluate_envelope(arm2, t)) ** 2
    return d.scale * (p2 - p1) + _noise(d, t.size, rng)


def tone_phasor(signal, t_grid, tone_freq: float = TONE_FREQ) -> complex:
    """Complex amplitude ``A`` of the ``Re(A e^{i Omega t})`` component.

    Exact for a uniform grid spanning whole periods.
    """
    t = np.asarray(t_grid, dtype=float)
    return complex(2.0 * np.mean(np.asarray(signal) * np.exp(-1j * tone_freq * t)))


# ----------------------------------------------------------------------------
# single-quadrature (homodyne-like) receiver

def homodyne_arms(m_a: float, phi_a: float, m_b: float, phi_b: float, E0: float,
                  tone_freq: float = TONE_FREQ, extinction: float = 0.0):
    """Alice's and Bob's modulators, then the carrier separator.

    Returns ``(carrier_arm, sideband_arm)``.
    """
    f = from_carrier(CarrierSpec(E0), tone_freq)
    f = phase_modulate(f, ModulationTone(m_a, phi_a, tone_freq))
    f = phase_modulate(f, ModulationTone(m_b, phi_b, tone_freq))
    sidebands, carrier = split(f, carrier_separator(extinction))
    return carrier, sidebands


def homodyne_output(m_a: float, phi_a: float, m_b: float, phi_b: float, E0: float,
                    d: DetectorParams, rng=None) -> float:
    """Time-averaged balanced output ``R G E0^2 (1 - 2 J_0(m)^2)``."""
    if m_a < 0 or m_b < 0:
        raise InvalidArgumentError("modulation indices must be non-negative")
    m = combine_tones(ModulationTone(m_a, phi_a), ModulationTone(m_b, phi_b)).index
    j0 = besselj(0, m)
    return float(d.scale * E0 * E0 * (1.0 - 2.0 * j0 * j0) + _noise(d, None, rng))


def homodyne_output_timedomain(m_a: float, phi_a: float, m_b: float, phi_b: float,
                               E0: float, d: DetectorParams,
                               samples_per_period: int = SAMPLES_PER_PERIOD,
                               tone_freq: float = TONE_FREQ) -> float:
    carrier, sidebands = homodyne_arms(m_a, phi_a, m_b, phi_b, E0, tone_freq)
    t = period_grid(tone_freq, samples_per_period)
    return float(np.mean(balanced_current_timedomain(carrier, sidebands, d, t)))


def homodyne_normalized(m_a: float, m_b: float, delta_phi: float) -> float:
    """Output divided by the classical homodyne peak for the same powers."""
    if m_a == 0:
        raise ZeroDivisionError("normalisation undefined for m_a = 0")
    m = combine_tones(ModulationTone(m_a, delta_phi), ModulationTone(m_b, 0.0)).index
    j0a = besselj(0, m_a)
    return (1.0 - 2.0 * besselj(0, m) ** 2) / (2.0 * j0a * math.sqrt(1.0 - j0a * j0a))


def phase_diversity_measure(m_a: float, phi_a: float, m_b_I: float, m_b_Q: float,
                            E0: float, d: DetectorParams, splitter: bool = True,
                            rng=None) -> IQSample:
    """Simultaneous I and Q readout from two receivers with Bob's phase 0 and pi/2.

    The Y splitter in front of them halves the power each one sees.
    """
    E = E0 / math.sqrt(2.0) if splitter else E0
    if d.noise_std and rng is None:
        rng = d.rng()
    i_val = homodyne_output(m_a, phi_a, m_b_I, 0.0, E, d, rng)
    q_val = homodyne_output(m_a, phi_a, m_b_Q, math.pi / 2, E, d, rng)
    return IQSample(i_val, q_val)


# ----------------------------------------------------------------------------
# heterodyne receiver

def _require_beat(d: DetectorParams, tone_freq: float):
    if not d.observes_beat(tone_freq):
        raise BandwidthError(
            f"detector bandwidth {d.bandwidth:.4g} Hz is below the "
            f"{tone_freq / (2 * math.pi):.4g} Hz beat")


def heterodyne_arms(m_a: float, phi_a: float, E0: float, tone_freq: float = TONE_FREQ,
                    extinction: float = 0.0):
    """Alice's modulator, then the asymmetric filter.

    Returns ``(upper_arm, lower_arm)``: the transmitted arm holds the upper
    sidebands, the reflected arm the lower ones, each with half the carrier
    power.
    """
    f = phase_modulate(from_carrier(CarrierSpec(E0), tone_freq),
                       ModulationTone(m_a, phi_a, tone_freq))
    return split(f, heterodyne_profile(extinction))


def heterodyne_output_timeseries(m_a: float, phi_a: float, E0: float, d: DetectorParams,
                                 t_grid, tone_freq: float = TONE_FREQ,
                                 rng=None) -> np.ndarray:
    """First-order beat ``2 sqrt(2) R G E0^2 J_0 J_1 sin(Omega t + phi_a)``."""
    if m_a < 0:
        raise InvalidArgumentError("modulation index must be non-negative")
    _require_beat(d, tone_freq)
    t = np.asarray(t_grid, dtype=float)
    amp = 2.0 * math.sqrt(2.0) * d.scale * E0 * E0 * besselj(0, m_a) * besselj(1, m_a)
    return amp * np.sin(tone_freq * t + phi_a) + _noise(d, t.shape, rng)


def heterodyne_output_timedomain(m_a: float, phi_a: float, E0: float, d: DetectorParams,
                                 t_grid, tone_freq: float = TONE_FREQ,
                                 rng=None) -> np.ndarray:
    """All-order balanced beat from the filtered arm fields."""
    _require_beat(d, tone_freq)
    upper, lower = heterodyne_arms(m_a, phi_a, E0, tone_freq)
    return balanced_current_timedomain(upper, lower, d, t_grid, rng)


def heterodyne_normalized_amplitude(m_a: float) -> float:
    """Beat amplitude over the classical heterodyne peak for the same powers."""
    j0 = besselj(0, m_a)
    return math.sqrt(2.0) * besselj(1, m_a) / math.sqrt(1.0 - j0 * j0)


# ----------------------------------------------------------------------------
# classical references

def classical_powers(m_a: float, E0: float) -> tuple[float, float]:
    """``(P_s, P_LO)`` mapped from the sideband and carrier powers after Alice."""
    j0 = besselj(0, m_a)
    return E0 * E0 * (1.0 - j0 * j0), E0 * E0 * j0 * j0


def classical_homodyne(P_s: float, P_LO: float, delta_phi: float, d: DetectorParams) -> float:
    if P_s < 0 or P_LO < 0:
        raise InvalidArgumentError("powers must be non-negative")
    return 2.0 * d.responsivity * d.gain * math.sqrt(P_s * P_LO) * math.cos(delta_phi)


def classical_heterodyne(P_s: float, P_LO: float, omega_minus: float, delta_phi: float,
                         d: DetectorParams, t_grid) -> np.ndarray:
    if P_s < 0 or P_LO < 0:
        raise InvalidArgumentError("powers must be non-negative")
    _require_beat(d, abs(omega_minus))
    t = np.asarray(t_grid, dtype=float)
    peak = 2.0 * d.responsivity * d.gain * math.sqrt(P_s * P_LO)
    return peak * np.cos(omega_minus * t + delta_phi)
