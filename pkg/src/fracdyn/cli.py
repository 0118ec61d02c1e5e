"""Command-line front end.

  fracdyn <simulate|phase|converge> --config <path> --out <path>
          [--set key=value ...]

The config file is a single JSON object (see fracdyn.config for keys and
defaults); ``--set`` overrides are applied after parsing, in order, and
``--out`` overrides the configured output path.  Outputs are CSV:

  simulate   header t,x,y     one row per grid node
  phase      header x,y       trajectory in the phase plane, time omitted
  converge   header N,tau,xi_x,xi_y,p_x,p_y   one row per refinement level

Exit codes: 0 success, 1 validation error, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from .config import ConfigError, RunConfig, apply_overrides, parse_config
from .convergence import ConvergenceReport, convergence_study
from .gdm import gdm_system
from .solver import NonFiniteStateError, Trajectory, UniformGrid, abm_solve

__all__ = ["main", "run"]


def _fmt(value: float) -> str:
    """Shortest decimal that round-trips to the exact float; integral
    values drop the trailing .0 (so the first trajectory row is 0,5,4)."""
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


def _simulate_csv(trajectory: Trajectory) -> str:
    lines = ["t,x,y"]
    for t, (x, y) in zip(trajectory.times, trajectory.states):
        lines.append(f"{_fmt(t)},{_fmt(x)},{_fmt(y)}")
    return "\n".join(lines) + "\n"


def _phase_csv(trajectory: Trajectory) -> str:
    lines = ["x,y"]
    for x, y in trajectory.states:
        lines.append(f"{_fmt(x)},{_fmt(y)}")
    return "\n".join(lines) + "\n"


def _converge_csv(report: ConvergenceReport) -> str:
    lines = ["N,tau,xi_x,xi_y,p_x,p_y"]
    for row in report.rows:
        p_x = "" if row.p_x is None else _fmt(row.p_x)
        p_y = "" if row.p_y is None else _fmt(row.p_y)
        lines.append(
            f"{row.steps},{_fmt(row.step_size)},{_fmt(row.xi_x)},"
            f"{_fmt(row.xi_y)},{p_x},{p_y}"
        )
    return "\n".join(lines) + "\n"


def run(config: RunConfig) -> None:
    """Execute one run and write its CSV to config.output_path."""
    system = gdm_system(config.params)
    if config.mode == "converge":
        report = convergence_study(system, config.horizon, config.step_counts)
        content = _converge_csv(report)
    else:
        trajectory = abm_solve(system, UniformGrid(config.horizon, config.steps))
        if config.mode == "simulate":
            content = _simulate_csv(trajectory)
        else:
            content = _phase_csv(trajectory)
    Path(config.output_path).write_text(content, encoding="utf-8")


class _ArgumentParser(argparse.ArgumentParser):
    # usage errors are validation errors (exit 1), not numerical failures
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="fracdyn",
        description=(
            "Fractional-order solver for the generalized Dubovsky model "
            "of long economic waves."
        ),
    )
    subparsers = parser.add_subparsers(dest="mode", required=True)
    for name, text in (
        ("simulate", "write the trajectory as t,x,y rows"),
        ("phase", "write the phase portrait as x,y rows"),
        ("converge", "write a Runge convergence table over doubling grids"),
    ):
        sub = subparsers.add_parser(name, help=text, description=text)
        sub.add_argument(
            "--config", metavar="PATH", help="JSON configuration file"
        )
        sub.add_argument(
            "--out", metavar="PATH", help="output CSV path (overrides config)"
        )
        sub.add_argument(
            "--set",
            dest="overrides",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="override one config key (repeatable, applied in order)",
        )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.config is None:
            config = RunConfig()
        else:
            config = parse_config(Path(args.config).read_text(encoding="utf-8"))
        config = apply_overrides(config, args.overrides)
        config = replace(config, mode=args.mode)
        if args.out is not None:
            config = replace(config, output_path=args.out)
        run(config)
    except (ConfigError, OSError) as err:
        print(f"fracdyn: error: {err}", file=sys.stderr)
        return 1
    except NonFiniteStateError as err:
        print(f"fracdyn: error: {err}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
