"""Command-line interface.

Subcommands map one-to-one onto the artifact runners plus the built-in
validation suite and a preset listing.  Scenario input comes from either a
named preset or a JSON config file; dotted ``--set key=value`` overrides are
applied on the plain dict before strict parsing, so typos and unknown keys
are rejected with a nonzero exit instead of being silently ignored.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import (ScenarioConfig, apply_overrides, preset_description,
                     preset_dict, preset_names, scenario_from_dict)
from .runners import (run_ellipticity_sweep, run_polarization,
                      run_propagation, run_response_map)
from .validate import report, run_validate

__all__ = ["main"]


def _add_scenario_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--preset", choices=preset_names(),
                       help="start from a named preset scenario")
    group.add_argument("--config", type=Path,
                       help="start from a JSON scenario file")
    parser.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        dest="overrides",
                        help="override a config entry by dotted path; repeatable "
                             "(e.g. --set drive.omega_c=5)")
    parser.add_argument("--sign-parity", choices=("native", "paper"),
                        help="sign convention for emitted susceptibilities")
    parser.add_argument("--out", type=Path, default=Path("out"),
                        help="output directory (default: ./out)")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads; output bytes are identical "
                             "for any thread count (default: 1)")


def _resolve_config(args: argparse.Namespace) -> ScenarioConfig:
    if args.preset is not None:
        raw = preset_dict(args.preset)
    else:
        with open(args.config, encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise ValueError(f"config file {args.config} must hold a JSON object")
    raw = apply_overrides(raw, args.overrides)
    if args.sign_parity is not None:
        raw["sign_parity"] = args.sign_parity
    return scenario_from_dict(raw)


def _run_artifact(args: argparse.Namespace, runner) -> int:
    config = _resolve_config(args)
    written = runner(config, args.out, threads=args.threads)
    for path in [*written["csv"], written["sidecar"]]:
        print(path)
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    results = run_validate()
    print(report(results))
    return 0 if all(r.passed for r in results) else 1


def _cmd_presets(args: argparse.Namespace) -> int:
    for name in preset_names():
        print(f"{name:<8}  {preset_description(name)}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slowvortex",
        description="Slow-light vector vortices in a tripod medium: "
                    "response maps, propagation, polarization textures.")
    sub = parser.add_subparsers(dest="command", required=True)

    runners = [
        ("response-map", run_response_map,
         "susceptibility components over a (phi, Delta) grid"),
        ("propagate", run_propagation,
         "transverse intensity and absorption maps at each depth"),
        ("polarization", run_polarization,
         "polarization texture maps (plus ellipticity sweep if configured)"),
        ("ellipticity-sweep", run_ellipticity_sweep,
         "average ellipticity over a (depth, detuning) grid"),
    ]
    for name, runner, help_text in runners:
        p = sub.add_parser(name, help=help_text)
        _add_scenario_arguments(p)
        p.set_defaults(func=_run_artifact, runner=runner)

    p = sub.add_parser("validate", help="run the built-in validation suite")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("presets", help="list available presets")
    p.set_defaults(func=_cmd_presets)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if hasattr(args, "runner"):
            return args.func(args, args.runner)
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
