"""Run configuration: JSON parsing, validation, overrides, serialization.

A configuration is a single JSON object.  Recognized keys and defaults:

  lambda=1.5, n=0.2, delta1=1, delta2=1, omega1=0.5, omega2=0.5,
  x_star=1.35, y_star=0.5, a=5, b=4, alpha1=1, alpha2=1,
  horizon=1, steps=320, mode="simulate", output_path="out.csv",
  step_counts=[10, 20, 40, 80, 160, 320]

Unknown keys and out-of-range values are rejected with the offending key
named.  Serialization is canonical (sorted keys, shortest round-trip
float representation), so identical configurations serialize to
byte-identical documents.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import isfinite
from typing import Any, Callable, Sequence

from .gdm import GdmParams

__all__ = [
    "ConfigError",
    "RunConfig",
    "MODES",
    "DEFAULT_STEP_COUNTS",
    "parse_config",
    "serialize_config",
    "apply_overrides",
]

MODES = ("simulate", "phase", "converge")
DEFAULT_STEP_COUNTS = (10, 20, 40, 80, 160, 320)


class ConfigError(ValueError):
    """Invalid configuration document, key, or value."""


@dataclass(frozen=True)
class RunConfig:
    """A fully resolved run: model parameters plus grid, mode, and output."""

    params: GdmParams = GdmParams()
    horizon: float = 1.0
    steps: int = 320
    mode: str = "simulate"
    output_path: str = "out.csv"
    step_counts: tuple[int, ...] = DEFAULT_STEP_COUNTS

    def __post_init__(self) -> None:
        if self.horizon <= 0.0:
            raise ConfigError(f"horizon must be positive, got {self.horizon}")
        if self.steps < 2:
            raise ConfigError(f"steps must be at least 2, got {self.steps}")
        if self.mode not in MODES:
            raise ConfigError(
                f"mode must be one of {', '.join(MODES)}, got {self.mode!r}"
            )
        if not self.output_path:
            raise ConfigError("output_path must be a non-empty path")
        object.__setattr__(self, "step_counts", tuple(self.step_counts))
        _check_step_counts("step_counts", self.step_counts)


def _check_step_counts(key: str, counts: Sequence[int]) -> None:
    if len(counts) < 2:
        raise ConfigError(
            f'config field "{key}": need at least two step counts, got {len(counts)}'
        )
    if counts[0] < 1:
        raise ConfigError(
            f'config field "{key}": counts must be positive, got {counts[0]}'
        )
    for prev, cur in zip(counts, counts[1:]):
        if cur != 2 * prev:
            raise ConfigError(
                f'config field "{key}": counts must strictly double, '
                f"got {prev} followed by {cur}"
            )


def _range_check(key: str, value: float, ok: bool, bound: str) -> float:
    if not ok:
        raise ConfigError(f'config field "{key}": value must {bound}, got {value}')
    return value


_NUMBER_BOUNDS: dict[str, tuple[Callable[[float], bool], str]] = {
    "lambda": (lambda v: v > 0.0, "be positive"),
    "n": (lambda v: 0.0 < v < 1.0, "lie in (0, 1)"),
    "delta1": (lambda v: v >= 0.0, "be non-negative"),
    "delta2": (lambda v: v >= 0.0, "be non-negative"),
    "omega1": (lambda v: v >= 0.0, "be non-negative"),
    "omega2": (lambda v: v >= 0.0, "be non-negative"),
    "x_star": (lambda v: True, ""),
    "y_star": (lambda v: True, ""),
    "a": (lambda v: v > 0.0, "be positive"),
    "b": (lambda v: v > 0.0, "be positive"),
    "alpha1": (lambda v: 0.0 < v <= 1.0, "lie in (0, 1]"),
    "alpha2": (lambda v: 0.0 < v <= 1.0, "lie in (0, 1]"),
    "horizon": (lambda v: v > 0.0, "be positive"),
}

_KNOWN_KEYS = frozenset(_NUMBER_BOUNDS) | {
    "steps",
    "mode",
    "output_path",
    "step_counts",
}


def _as_number(key: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f'config field "{key}": expected a number, got {value!r}')
    if not isfinite(value):
        raise ConfigError(f'config field "{key}": number must be finite, got {value}')
    return float(value)


def _as_int(key: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f'config field "{key}": expected an integer, got {value!r}')
    return value


def _from_mapping(data: dict[str, Any]) -> RunConfig:
    unknown = sorted(set(data) - _KNOWN_KEYS)
    if unknown:
        raise ConfigError(f'unknown config key "{unknown[0]}"')

    numbers: dict[str, float] = {}
    for key, (ok, bound) in _NUMBER_BOUNDS.items():
        if key in data:
            value = _as_number(key, data[key])
            numbers[key] = _range_check(key, value, ok(value), bound)

    defaults = GdmParams()
    params = GdmParams(
        lam=numbers.get("lambda", defaults.lam),
        accumulation_rate=numbers.get("n", defaults.accumulation_rate),
        delta1=numbers.get("delta1", defaults.delta1),
        delta2=numbers.get("delta2", defaults.delta2),
        omega1=numbers.get("omega1", defaults.omega1),
        omega2=numbers.get("omega2", defaults.omega2),
        x_star=numbers.get("x_star", defaults.x_star),
        y_star=numbers.get("y_star", defaults.y_star),
        a=numbers.get("a", defaults.a),
        b=numbers.get("b", defaults.b),
        alpha1=numbers.get("alpha1", defaults.alpha1.value),
        alpha2=numbers.get("alpha2", defaults.alpha2.value),
    )

    steps = _as_int("steps", data["steps"]) if "steps" in data else 320
    if steps < 2:
        raise ConfigError(f'config field "steps": value must be >= 2, got {steps}')

    mode = data.get("mode", "simulate")
    if mode not in MODES:
        raise ConfigError(
            f'config field "mode": expected one of {", ".join(MODES)}, got {mode!r}'
        )

    output_path = data.get("output_path", "out.csv")
    if not isinstance(output_path, str) or not output_path:
        raise ConfigError(
            f'config field "output_path": expected a non-empty string, '
            f"got {output_path!r}"
        )

    if "step_counts" in data:
        raw = data["step_counts"]
        if not isinstance(raw, (list, tuple)):
            raise ConfigError(
                f'config field "step_counts": expected a list, got {raw!r}'
            )
        counts = tuple(_as_int("step_counts", v) for v in raw)
        _check_step_counts("step_counts", counts)
    else:
        counts = DEFAULT_STEP_COUNTS

    return RunConfig(
        params=params,
        horizon=numbers.get("horizon", 1.0),
        steps=steps,
        mode=mode,
        output_path=output_path,
        step_counts=counts,
    )


def parse_config(text: str) -> RunConfig:
    """Parse a JSON configuration document into a validated RunConfig."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(f"malformed JSON config: {err}") from err
    if not isinstance(data, dict):
        raise ConfigError(
            f"config must be a JSON object, got {type(data).__name__}"
        )
    return _from_mapping(data)


def _config_dict(config: RunConfig) -> dict[str, Any]:
    p = config.params
    return {
        "lambda": p.lam,
        "n": p.accumulation_rate,
        "delta1": p.delta1,
        "delta2": p.delta2,
        "omega1": p.omega1,
        "omega2": p.omega2,
        "x_star": p.x_star,
        "y_star": p.y_star,
        "a": p.a,
        "b": p.b,
        "alpha1": p.alpha1.value,
        "alpha2": p.alpha2.value,
        "horizon": config.horizon,
        "steps": config.steps,
        "mode": config.mode,
        "output_path": config.output_path,
        "step_counts": list(config.step_counts),
    }


def serialize_config(config: RunConfig) -> str:
    """Canonical JSON for the effective configuration (round-trips exactly)."""
    return json.dumps(_config_dict(config), indent=2, sort_keys=True) + "\n"


def apply_overrides(config: RunConfig, assignments: Sequence[str]) -> RunConfig:
    """Apply ``key=value`` overrides in order and re-validate.

    Values are parsed as JSON when possible (numbers, lists) and taken as
    bare strings otherwise, so ``alpha1=0.9`` and ``mode=phase`` both work.
    """
    data = _config_dict(config)
    for item in assignments:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise ConfigError(
                f"override {item!r} is not of the form key=value"
            )
        try:
            value: Any = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        data[key] = value
    return _from_mapping(data)
