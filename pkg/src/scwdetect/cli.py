"""Command-line entry point: ``scwdetect run`` and ``scwdetect presets``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .experiments import (PRESETS, ConfigError, SweepSpec, build_config, config_from_mapping,
                          list_presets, render, run_experiment, summary_line, write_atomic)

EXIT_INVALID = 1
EXIT_UNWRITABLE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="scwdetect",
                description="Subcarrier-wave coherent detection simulator.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("presets", help="list experiment presets")

    r = sub.add_parser("run", help="run a preset or a parameter sweep")
    r.add_argument("--config", help="JSON file with config keys; flags override it")
    r.add_argument("--preset", choices=list_presets())
    r.add_argument("--scheme")
    r.add_argument("--ma", dest="m_a", type=float)
    r.add_argument("--mb", dest="m_b", type=float)
    r.add_argument("--phi-a", dest="phi_a", type=float)
    r.add_argument("--carrier-power-w", dest="carrier_power", type=float)
    r.add_argument("--sideband-power-w", dest="sideband_power", type=float)
    r.add_argument("--tone-freq-hz", dest="tone_freq_hz", type=float)
    r.add_argument("--responsivity", type=float)
    r.add_argument("--gain", type=float)
    r.add_argument("--bandwidth-hz", dest="bandwidth_hz", type=float)
    r.add_argument("--noise-std", dest="noise_std", type=float)
    r.add_argument("--seed", type=int)
    r.add_argument("--samples-per-period", dest="samples_per_period", type=int)
    r.add_argument("--n-symbols", dest="n_symbols", type=int)
    r.add_argument("--sweep", type=SweepSpec.parse, metavar="VAR:START:STOP:STEPS")
    r.add_argument("--steps", type=int, help="override the number of sweep points")
    r.add_argument("--output", dest="output_path", metavar="PATH")
    r.add_argument("--format", choices=["csv", "json"])
    r.add_argument("--figure", dest="figure_path", metavar="PATH",
                   help="also render the result to an image file")
    return p


def _load_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    return config_from_mapping(data)


def _run(args) -> int:
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config", "steps")}
    file_values = _load_file(args.config) if args.config else {}
    if args.steps is not None and args.steps < 2:
        raise ConfigError("steps must be ≥ 2")
    cfg = build_config(file_values=file_values, flag_values=flags)
    if args.steps is not None:
        base = cfg.sweep or SweepSpec("phi_a", 0.0, 6.283185307179586, 73)
        cfg = replace(cfg, sweep=replace(base, steps=args.steps)).validate()
    if cfg.output_path is None:
        cfg = replace(cfg, output_path=f"{cfg.preset or 'sweep'}.{cfg.format}")

    result = run_experiment(cfg)
    try:
        write_atomic(cfg.output_path, render(result, cfg.format))
        if cfg.figure_path:
            from .plotting import save_figure
            save_figure(result, cfg.figure_path)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_UNWRITABLE
    print(summary_line(result, cfg.output_path))
    return 0


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
        if args.command == "presets":
            for name in list_presets():
                print(f"{name}\t{PRESETS[name].description}")
            return 0
        return _run(args)
    except (ConfigError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
