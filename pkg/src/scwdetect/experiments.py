"""Experiment presets, parameter sweeps and table output."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Callable

import numpy as np

from .bessel import balanced_index, besselj, solve_j0_equals
from .detection import (HETERODYNE_BANDWIDTH_HZ, HOMODYNE_BANDWIDTH_HZ, DetectorParams,
                        heterodyne_arms, heterodyne_normalized_amplitude,
                        heterodyne_output_timedomain, heterodyne_output_timeseries,
                        homodyne_normalized, homodyne_output, homodyne_output_timedomain,
                        phase_diversity_measure, tone_phasor)
from .field import evaluate_envelope, period_grid
from .protocol import PSK_PHASES, level_separation, run_trial

SCHEMES = ("homodyne", "phase-diversity", "heterodyne", "classical-compare")
FORMATS = ("csv", "json")
SWEEP_VARIABLES = {
    "ma": "m_a",
    "mb": "m_b",
    "phi_a": "phi_a",
    "carrier_power_w": "carrier_power",
    "noise_std": "noise_std",
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    steps: int

    @classmethod
    def parse(cls, text: str) -> "SweepSpec":
        parts = text.split(":")
        if len(parts) != 4:
            raise ConfigError(f"sweep must look like var:start:stop:steps, got {text!r}")
        try:
            return cls(parts[0], float(parts[1]), float(parts[2]), int(parts[3]))
        except ValueError as exc:
            raise ConfigError(f"bad sweep {text!r}: {exc}") from None

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class ExperimentConfig:
    preset: str | None = None
    scheme: str = "homodyne"
    m_a: float = 0.09
    m_b: float | None = None  # None: balanced index, J_0(m_b) = 1/sqrt(2)
    phi_a: float = 0.0
    carrier_power: float = 10e-6
    sideband_power: float | None = None  # when set, m_a is derived from it
    tone_freq_hz: float = 4.8e9
    responsivity: float = 0.6
    gain: float = 4e3
    bandwidth_hz: float | None = None
    noise_std: float = 0.0
    seed: int = 0
    samples_per_period: int = 256
    n_symbols: int = 1000
    sweep: SweepSpec | None = None
    output_path: str | None = None
    format: str = "csv"
    figure_path: str | None = None

    def validate(self) -> "ExperimentConfig":
        if self.preset is not None and self.preset not in PRESETS:
            raise ConfigError(f"unknown preset {self.preset!r}; try: {', '.join(list_presets())}")
        if self.scheme not in SCHEMES:
            raise ConfigError(f"scheme must be one of {', '.join(SCHEMES)}")
        if self.format not in FORMATS:
            raise ConfigError("format must be csv or json")
        if self.sweep is not None:
            if self.sweep.steps < 2:
                raise ConfigError("steps must be ≥ 2")
            if self.sweep.variable not in SWEEP_VARIABLES:
                raise ConfigError(f"sweep variable must be one of {', '.join(SWEEP_VARIABLES)}")
        if self.carrier_power < 0 or (self.sideband_power is not None and self.sideband_power < 0):
            raise ConfigError("powers must be non-negative")
        if self.sideband_power is not None and self.sideband_power >= self.carrier_power:
            raise ConfigError("sideband power must be below the total optical power")
        if self.m_a < 0 or (self.m_b is not None and self.m_b < 0):
            raise ConfigError("modulation indices must be non-negative")
        if self.tone_freq_hz <= 0 or self.responsivity <= 0 or self.gain <= 0:
            raise ConfigError("tone frequency, responsivity and gain must be positive")
        if self.noise_std < 0:
            raise ConfigError("noise_std must be non-negative")
        if self.samples_per_period < 8:
            raise ConfigError("samples_per_period must be >= 8")
        if self.n_symbols < 1:
            raise ConfigError("n_symbols must be >= 1")
        return self

    # resolved physical quantities

    @property
    def tone_freq(self) -> float:
        return 2 * math.pi * self.tone_freq_hz

    @property
    def E0(self) -> float:
        return math.sqrt(self.carrier_power)

    @property
    def alice_index(self) -> float:
        if self.sideband_power is None:
            return self.m_a
        if self.sideband_power == 0:
            return 0.0
        return solve_j0_equals(math.sqrt(1.0 - self.sideband_power / self.carrier_power))

    @property
    def bob_index(self) -> float:
        return balanced_index() if self.m_b is None else self.m_b

    def detector(self) -> DetectorParams:
        bw = self.bandwidth_hz
        if bw is None:
            bw = HETERODYNE_BANDWIDTH_HZ if self.scheme == "heterodyne" else HOMODYNE_BANDWIDTH_HZ
        return DetectorParams(self.responsivity, self.gain, 1.0, bw, self.noise_std, self.seed)


# config-file spellings that mirror the CLI flags
_KEY_ALIASES = {
    "ma": "m_a",
    "mb": "m_b",
    "carrier_power_w": "carrier_power",
    "sideband_power_w": "sideband_power",
    "output": "output_path",
    "figure": "figure_path",
}


def config_from_mapping(data: dict) -> dict:
    """Check a loaded config file and turn it into ``ExperimentConfig`` keywords."""
    known = {f.name for f in fields(ExperimentConfig)}
    out = {}
    for key, value in data.items():
        name = key.replace("-", "_")
        name = _KEY_ALIASES.get(name, name)
        if name not in known:
            raise ConfigError(f"unknown config key {key!r}")
        if name == "sweep" and isinstance(value, str):
            value = SweepSpec.parse(value)
        elif name == "sweep" and isinstance(value, dict):
            value = SweepSpec(**value)
        out[name] = value
    return out


@dataclass
class ExperimentResult:
    name: str
    kind: str
    columns: list[str]
    rows: list[list]
    summary: dict = field(default_factory=dict)
    parameters: dict = field(default_factory=dict)


# ----------------------------------------------------------------------------
# table builders

def _fig4(cfg: ExperimentConfig) -> ExperimentResult:
    m_a, m_b = cfg.alice_index, cfg.bob_index
    rows = []
    dev = 0.0
    for phi in np.arange(360) * (2 * math.pi / 360):
        phi = float(phi)
        row = [phi,
               homodyne_normalized(m_a, m_b, phi),
               homodyne_normalized(m_a, m_b, phi - math.pi / 2),
               math.cos(phi),
               math.cos(phi - math.pi / 2)]
        dev = max(dev, abs(row[1] - row[3]), abs(row[2] - row[4]))
        rows.append(row)
    return ExperimentResult(
        "fig4", "phase_curves",
        ["phi_a_rad", "scw_I_norm", "scw_Q_norm", "classical_I_norm", "classical_Q_norm"],
        rows, {"max_abs_deviation": dev, "m_a": m_a, "m_b": m_b})


def _fig_sine(cfg: ExperimentConfig) -> ExperimentResult:
    m_a = cfg.alice_index
    n = cfg.samples_per_period
    scale = heterodyne_normalized_amplitude(m_a)
    rows = []
    for j in range(n):
        x = j / n
        arg = 2 * math.pi * x + cfg.phi_a
        rows.append([x, scale * math.sin(arg), math.sin(arg)])
    return ExperimentResult("fig_sine", "waveforms",
                            ["t_over_period", "scw_norm", "classical_norm"], rows,
                            {"normalized_amplitude": scale, "m_a": m_a})


def _fig5(name: str, slots_per_phase: int = 40, cycles: int = 3):
    def build(cfg: ExperimentConfig) -> ExperimentResult:
        m_a, m_b = cfg.alice_index, cfg.bob_index
        d = cfg.detector()
        quiet = replace(d, noise_std=0.0)
        # Alice holds phi_a; Bob steps his phase so delta_phi runs through the 4-set.
        levels = [homodyne_output(m_a, cfg.phi_a, m_b, cfg.phi_a - dphi, cfg.E0, quiet)
                  for dphi in PSK_PHASES]
        rng = d.rng(5)
        rows = []
        idx = 0
        for _ in range(cycles):
            for dphi, level in zip(PSK_PHASES, levels):
                noise = d.noise_std * rng.standard_normal(slots_per_phase)
                for k in range(slots_per_phase):
                    rows.append([idx, dphi, level, level + float(noise[k])])
                    idx += 1
        trial = run_trial(cfg.n_symbols, m_a, m_b, cfg.E0, d, cfg.seed, "homodyne")
        summary = {
            "sideband_power_w": cfg.carrier_power * (1 - besselj(0, m_a) ** 2),
            "m_a": m_a,
            "level_span_v": max(levels) - min(levels),
            "level_separation_v": level_separation(m_a, m_b, cfg.E0, d, "homodyne"),
            "ser": trial.ser,
        }
        return ExperimentResult(name, "trace",
                                ["sample_index", "delta_phi_rad", "ideal_v", "measured_v"],
                                rows, summary)
    return build


def _fig7(cfg: ExperimentConfig) -> ExperimentResult:
    m_a, m_b = cfg.alice_index, cfg.bob_index
    d = cfg.detector()
    trial = run_trial(cfg.n_symbols, m_a, m_b, cfg.E0, d, cfg.seed, "phase-diversity")
    rows = [[i, e.sent, PSK_PHASES[e.sent], e.iq.i_val, e.iq.q_val, e.decided]
            for i, e in enumerate(trial.log)]
    summary = {"ser": trial.ser, "m_a": m_a,
               "level_separation_v": level_separation(m_a, m_b, cfg.E0, d)}
    for s, c in enumerate(trial.centroids):
        summary[f"centroid_{s}_i_v"] = c.i_val
        summary[f"centroid_{s}_q_v"] = c.q_val
    return ExperimentResult("fig7", "constellation",
                            ["index", "sent", "phi_a_rad", "i_v", "q_v", "decided"], rows, summary)


def _fig10(cfg: ExperimentConfig, periods: int = 4) -> ExperimentResult:
    m_a = cfg.alice_index
    d = cfg.detector()
    t = period_grid(cfg.tone_freq, cfg.samples_per_period, periods)
    upper, _ = heterodyne_arms(m_a, cfg.phi_a, cfg.E0, cfg.tone_freq)
    rng = d.rng(10)
    single = d.scale * np.abs(evaluate_envelope(upper, t)) ** 2
    single = single + d.noise_std * rng.standard_normal(t.size)
    balanced = heterodyne_output_timedomain(m_a, cfg.phi_a, cfg.E0, d, t, cfg.tone_freq, rng)
    drive = np.cos(cfg.tone_freq * t + cfg.phi_a)
    rows = [[float(a), float(b), float(c), float(e)]
            for a, b, c, e in zip(t, drive, single, balanced)]
    summary = {"m_a": m_a,
               "single_arm_mean_v": float(np.mean(single)),
               "single_arm_std_v": float(np.std(single)),
               "beat_amplitude_v": abs(tone_phasor(balanced, t, cfg.tone_freq))}
    return ExperimentResult("fig10", "waveforms",
                            ["t_s", "microwave_norm", "single_arm_v", "balanced_v"], rows, summary)


_SWEEP_COLUMNS = {
    "homodyne": ["homodyne_v", "oracle_v", "normalized"],
    "phase-diversity": ["i_v", "q_v"],
    "heterodyne": ["amplitude_v", "oracle_amplitude_v", "normalized_amplitude"],
    "classical-compare": ["scw_norm", "classical_norm"],
}


def _sweep_point(cfg: ExperimentConfig, index: int) -> list[float]:
    m_a, m_b, E0 = cfg.alice_index, cfg.bob_index, cfg.E0
    d = cfg.detector()
    quiet = replace(d, noise_std=0.0)
    rng = d.rng(index)
    if cfg.scheme == "homodyne":
        norm = homodyne_normalized(m_a, m_b, cfg.phi_a) if m_a > 0 else math.nan
        return [homodyne_output(m_a, cfg.phi_a, m_b, 0.0, E0, d, rng),
                homodyne_output_timedomain(m_a, cfg.phi_a, m_b, 0.0, E0, quiet,
                                           cfg.samples_per_period, cfg.tone_freq),
                norm]
    if cfg.scheme == "phase-diversity":
        iq = phase_diversity_measure(m_a, cfg.phi_a, m_b, m_b, E0, d, rng=rng)
        return [iq.i_val, iq.q_val]
    if cfg.scheme == "heterodyne":
        t = period_grid(cfg.tone_freq, cfg.samples_per_period)
        closed = heterodyne_output_timeseries(m_a, cfg.phi_a, E0, quiet, t, cfg.tone_freq)
        oracle = heterodyne_output_timedomain(m_a, cfg.phi_a, E0, quiet, t, cfg.tone_freq)
        norm = heterodyne_normalized_amplitude(m_a) if m_a > 0 else math.nan
        return [abs(tone_phasor(closed, t, cfg.tone_freq)),
                abs(tone_phasor(oracle, t, cfg.tone_freq)), norm]
    norm = homodyne_normalized(m_a, m_b, cfg.phi_a) if m_a > 0 else math.nan
    return [norm, math.cos(cfg.phi_a)]


def _sweep(cfg: ExperimentConfig) -> ExperimentResult:
    spec = cfg.sweep or SweepSpec("phi_a", 0.0, 2 * math.pi, 73)
    attr = SWEEP_VARIABLES[spec.variable]
    rows = []
    for i, value in enumerate(spec.values()):
        changes = {attr: float(value)}
        if attr == "m_a":
            changes["sideband_power"] = None
        point = replace(cfg, **changes)
        rows.append([float(value)] + _sweep_point(point, i))
    return ExperimentResult(cfg.preset or "sweep", "sweep",
                            [spec.variable] + _SWEEP_COLUMNS[cfg.scheme], rows,
                            {"scheme": cfg.scheme, "points": len(rows)})


# ----------------------------------------------------------------------------
# presets

@dataclass(frozen=True)
class Preset:
    overrides: dict
    build: Callable[[ExperimentConfig], ExperimentResult]
    description: str


PRESETS: dict[str, Preset] = {
    "fig4": Preset({"scheme": "classical-compare", "m_a": 0.09}, _fig4,
                   "normalized I/Q output vs Alice's phase, SCW and classical homodyne"),
    "fig5a": Preset({"scheme": "homodyne", "carrier_power": 10e-6, "sideband_power": 40e-9,
                     "noise_std": 2e-3, "n_symbols": 2000}, _fig5("fig5a"),
                    "homodyne-like output trace at 40 nW sideband power"),
    "fig5b": Preset({"scheme": "homodyne", "carrier_power": 10e-6, "sideband_power": 500e-9,
                     "noise_std": 2e-3, "n_symbols": 2000}, _fig5("fig5b"),
                    "homodyne-like output trace at 500 nW sideband power"),
    "fig7": Preset({"scheme": "phase-diversity", "carrier_power": 10e-6,
                    "sideband_power": 500e-9, "noise_std": 5e-4, "n_symbols": 400}, _fig7,
                   "4-PSK constellation from the phase-diversity receiver"),
    "fig10": Preset({"scheme": "heterodyne", "carrier_power": 371.5e-6,
                     "sideband_power": 146.5e-6, "noise_std": 5e-3}, _fig10,
                    "heterodyne single-arm and balanced waveforms with the microwave drive"),
    "fig_sine": Preset({"scheme": "heterodyne", "m_a": 0.09}, _fig_sine,
                       "normalized heterodyne beat, SCW and classical"),
    "sweep": Preset({"scheme": "homodyne", "m_a": 0.09,
                     "sweep": SweepSpec("mb", 0.0, 2.4, 49)}, _sweep,
                    "homodyne output vs Bob's modulation index"),
}


def list_presets() -> list[str]:
    return sorted(PRESETS)


def preset_overrides(name: str) -> dict:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; try: {', '.join(list_presets())}")
    return dict(PRESETS[name].overrides)


def build_config(preset: str | None = None, file_values: dict | None = None,
                 flag_values: dict | None = None) -> ExperimentConfig:
    """Layer defaults, preset, config file and flags; later layers win."""
    file_values = dict(file_values or {})
    flag_values = {k: v for k, v in (flag_values or {}).items() if v is not None}
    name = flag_values.get("preset", file_values.get("preset", preset))
    values = {}
    if name is not None:
        values.update(preset_overrides(name))
        values["preset"] = name
    values.update(file_values)
    values.update(flag_values)
    if "m_a" in file_values or "m_a" in flag_values:
        if "sideband_power" not in file_values and "sideband_power" not in flag_values:
            values["sideband_power"] = None
    return ExperimentConfig(**values).validate()


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    cfg.validate()
    build = PRESETS[cfg.preset].build if cfg.preset else _sweep
    result = build(cfg)
    params = asdict(cfg)
    params.pop("output_path")
    params.pop("figure_path")
    result.parameters = params
    return result


# ----------------------------------------------------------------------------
# output

def format_number(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.12g}"


def to_csv(result: ExperimentResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(result.columns)
    for row in result.rows:
        w.writerow([format_number(v) for v in row])
    return buf.getvalue()


def _round(v):
    if isinstance(v, dict):
        return {k: _round(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_round(x) for x in v]
    if isinstance(v, (bool, np.bool_)) or v is None or isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    x = float(f"{float(v):.12g}")
    return x if math.isfinite(x) else None


def to_json(result: ExperimentResult) -> str:
    doc = {
        "name": result.name,
        "columns": result.columns,
        "rows": _round(result.rows),
        "summary": _round(result.summary),
        "parameters": _round(result.parameters),
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write ``text`` to ``path`` via a temp file in the same directory."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def render(result: ExperimentResult, fmt: str) -> str:
    return to_csv(result) if fmt == "csv" else to_json(result)


def summary_line(result: ExperimentResult, path: str) -> str:
    parts = [f"{result.name}: wrote {len(result.rows)} rows to {path}"]
    parts += [f"{k}={format_number(v)}" for k, v in result.summary.items()
              if isinstance(v, (int, float, np.floating))]
    return " ".join(parts)
