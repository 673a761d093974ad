"""4-PSK symbol layer: Alice's phase choice, Bob's IQ readout and decision."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .detection import DetectorParams, IQSample, homodyne_output, phase_diversity_measure
from .errors import InvalidArgumentError

PSK_PHASES = tuple(s * math.pi / 2 for s in range(4))
SCHEMES = ("phase-diversity", "homodyne")


def encode(symbol: int) -> float:
    """Alice's microwave phase for ``symbol`` in 0..3."""
    if symbol not in (0, 1, 2, 3):
        raise InvalidArgumentError(f"symbol must be 0..3, got {symbol!r}")
    return PSK_PHASES[symbol]


def measure(phi_a: float, m_a: float, m_b: float, E0: float, d: DetectorParams,
            scheme: str = "phase-diversity", rng=None) -> IQSample:
    """One IQ readout of Alice's phase ``phi_a``.

    ``phase-diversity`` reads I and Q at once behind a Y splitter.
    ``homodyne`` has a single receiver that measures the I basis in the first
    half of the symbol slot and the Q basis in the second, at full power.
    """
    if scheme == "phase-diversity":
        return phase_diversity_measure(m_a, phi_a, m_b, m_b, E0, d, rng=rng)
    if scheme == "homodyne":
        if d.noise_std and rng is None:
            rng = d.rng()
        return IQSample(homodyne_output(m_a, phi_a, m_b, 0.0, E0, d, rng),
                        homodyne_output(m_a, phi_a, m_b, math.pi / 2, E0, d, rng))
    raise InvalidArgumentError(f"unknown scheme {scheme!r}")


def ideal_constellation(m_a: float, m_b: float, E0: float, d: DetectorParams,
                        scheme: str = "phase-diversity") -> tuple[list[IQSample], IQSample]:
    """Noiseless symbol points, centred on their mean, and the mean itself.

    The receiver output is not zero-mean over the phase difference, so the
    offset is removed before any angle or distance is taken.
    """
    quiet = replace(d, noise_std=0.0)
    raw = [measure(phi, m_a, m_b, E0, quiet, scheme) for phi in PSK_PHASES]
    offset = IQSample(float(np.mean([p.i_val for p in raw])),
                      float(np.mean([p.q_val for p in raw])))
    return [p - offset for p in raw], offset


def decide(iq: IQSample, centroids) -> int:
    """Nearest centroid; ties go to the lowest index."""
    best, best_d = 0, math.inf
    for idx, c in enumerate(centroids):
        dist = (iq.i_val - c.i_val) ** 2 + (iq.q_val - c.q_val) ** 2
        if dist < best_d:
            best, best_d = idx, dist
    return best


def level_separation(m_a: float, m_b: float, E0: float, d: DetectorParams,
                     scheme: str = "phase-diversity") -> float:
    """Smallest distance between two of the four noiseless symbol points (V)."""
    pts, _ = ideal_constellation(m_a, m_b, E0, d, scheme)
    return min(math.hypot(a.i_val - b.i_val, a.q_val - b.q_val)
               for i, a in enumerate(pts) for b in pts[i + 1:])


@dataclass(frozen=True)
class SymbolDecision:
    sent: int
    iq: IQSample
    decided: int


@dataclass
class TrialResult:
    ser: float
    constellation: list[IQSample]
    log: list[SymbolDecision]
    centroids: list[IQSample] = field(default_factory=list)
    offset: IQSample | None = None


def run_trial(n_symbols: int, m_a: float, m_b: float, E0: float, d: DetectorParams,
              seed: int, scheme: str = "phase-diversity") -> TrialResult:
    """Send ``n_symbols`` random 4-PSK symbols and decide each one.

    Noise is additive on the outputs, so the four noiseless points are
    computed once and per-symbol noise is drawn from streams keyed by
    ``seed``. Constellation points are reported centred.
    """
    if n_symbols < 1:
        raise InvalidArgumentError("n_symbols must be >= 1")
    centroids, offset = ideal_constellation(m_a, m_b, E0, d, scheme)
    ss = np.random.SeedSequence(seed)
    sym_seq, noise_seq = ss.spawn(2)
    sent = np.random.Generator(np.random.Philox(sym_seq)).integers(0, 4, n_symbols)
    noise = np.random.Generator(np.random.Philox(noise_seq)).standard_normal((n_symbols, 2))
    noise *= d.noise_std

    constellation, log = [], []
    errors = 0
    for s, (ni, nq) in zip(sent.tolist(), noise):
        c = centroids[s]
        iq = IQSample(c.i_val + float(ni), c.q_val + float(nq))
        decided = decide(iq, centroids)
        errors += decided != s
        constellation.append(iq)
        log.append(SymbolDecision(s, iq, decided))
    return TrialResult(errors / n_symbols, constellation, log, centroids, offset)
