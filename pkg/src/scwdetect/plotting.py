"""Render experiment tables to image files next to the data output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .experiments import ExperimentResult  # noqa: E402

_STYLE = {
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "legend.frameon": False,
    "savefig.dpi": 150,
}


def _columns(result: ExperimentResult) -> dict[str, np.ndarray]:
    data = np.array(result.rows, dtype=float)
    return {name: data[:, i] for i, name in enumerate(result.columns)}


def _phase_curves(ax, c):
    x = c["phi_a_rad"]
    ax.plot(x, c["scw_I_norm"], "C0", label="SCW I")
    ax.plot(x, c["scw_Q_norm"], "C1", label="SCW Q")
    ax.plot(x, c["classical_I_norm"], "C0--", label="classical I")
    ax.plot(x, c["classical_Q_norm"], "C1--", label="classical Q")
    ax.set_xlabel(r"$\varphi_a$ (rad)")
    ax.set_ylabel(r"$I/I_{max}$")
    ax.legend(loc="lower left", ncol=2)


def _waveforms(ax, c):
    if "t_over_period" in c:
        x = c["t_over_period"]
        ax.plot(x, c["scw_norm"], label="SCW")
        ax.plot(x, c["classical_norm"], "--", label="classical")
        ax.set_xlabel(r"$t\,\Omega/2\pi$")
        ax.set_ylabel(r"$I(t)/I_{max}$")
    else:
        x = c["t_s"] * 1e9
        ax.plot(x, c["single_arm_v"], label="single arm")
        ax.plot(x, c["balanced_v"], label="balanced")
        twin = ax.twinx()
        twin.plot(x, c["microwave_norm"], "k:", lw=0.8)
        twin.set_ylabel("microwave drive (norm.)")
        ax.set_xlabel("t (ns)")
        ax.set_ylabel("output (V)")
    ax.legend(loc="upper right")


def _trace(ax, c):
    x = c["sample_index"]
    ax.plot(x, c["measured_v"] * 1e3, lw=0.7, label="measured")
    ax.plot(x, c["ideal_v"] * 1e3, "k", lw=1.2, label="noiseless")
    ax.set_xlabel("sample")
    ax.set_ylabel("output (mV)")
    ax.legend(loc="upper right")


def _constellation(ax, c):
    for s, label in enumerate(["0", r"\pi/2", r"\pi", r"3\pi/2"]):
        sel = c["sent"] == s
        ax.plot(c["i_v"][sel] * 1e3, c["q_v"][sel] * 1e3, ".", ms=3,
                label=rf"$\varphi_a={label}$")
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_xlabel("I (mV)")
    ax.set_ylabel("Q (mV)")
    ax.legend(loc="upper right", fontsize=8)


def _sweep(ax, c, columns):
    x = c[columns[0]]
    for name in columns[1:]:
        ax.plot(x, c[name], label=name)
    ax.set_xlabel(columns[0])
    ax.legend()


def save_figure(result: ExperimentResult, path: str) -> None:
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(6, 4))
        c = _columns(result)
        if result.kind == "phase_curves":
            _phase_curves(ax, c)
        elif result.kind == "waveforms":
            _waveforms(ax, c)
        elif result.kind == "trace":
            _trace(ax, c)
        elif result.kind == "constellation":
            _constellation(ax, c)
        else:
            _sweep(ax, c, result.columns)
        ax.set_title(result.name)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
