"""Flat ``key = value`` experiment configuration.

One setting per line, ``#`` starts a comment, blank lines are ignored.
Every experiment kind has a fixed set of keys (see ``SCHEMA``); any key may
also be omitted when it has a default. ``kind``, ``seed`` and ``out`` are
accepted for every kind. Every parameter is checked against the
preconditions of the module that will consume it before anything runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import shadow
from .streams import UINT64_MAX

KINDS = ("mz", "trials", "strategy", "trigger", "scatter", "well", "optimize")


class ConfigError(ValueError):
    """Invalid configuration. ``code`` is one of ``DIAGNOSTIC_CODES``."""

    def __init__(self, code: str, key: str | None, message: str):
        self.code = code
        self.key = key
        where = f" [{key}]" if key else ""
        super().__init__(f"{code}{where}: {message}")


DIAGNOSTIC_CODES = (
    "syntax",
    "unknown-kind",
    "kind-mismatch",
    "unknown-key",
    "duplicate-key",
    "missing-key",
    "bad-value",
    "constraint",
)


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "yes", "1", "on"):
        return True
    if t in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _int_or_inf(text: str):
    if text.strip().lower() in ("inf", "none", "unlimited"):
        return None
    return int(text)


def _uint64(text: str) -> int:
    return int(text, 0)


@dataclass(frozen=True)
class Param:
    name: str
    parse: object
    default: object = None
    required: bool = False
    check: object = None  # predicate on the parsed value
    rule: str = ""  # human-readable constraint named in diagnostics


def _finite(x):
    return math.isfinite(x)


def _pos(x):
    return x > 0 and math.isfinite(x)


_R = Param("R", float, required=True, check=lambda r: 0 < r < 1, rule="R in (0,1)")
_BOMB = Param("bomb", _bool, required=True)

SCHEMA: dict[str, tuple[Param, ...]] = {
    "mz": (
        _R,
        _BOMB,
        Param("calibration_phase", float, math.pi, check=_finite, rule="calibration_phase finite"),
    ),
    "trials": (
        _R,
        _BOMB,
        Param("n", int, required=True, check=lambda n: n >= 1, rule="n >= 1"),
    ),
    "strategy": (
        _R,
        Param(
            "max_photons",
            _int_or_inf,
            required=True,
            check=lambda m: m is None or m >= 1,
            rule="max_photons >= 1 or inf",
        ),
        Param("mc_runs", int, 0, check=lambda n: n >= 0, rule="mc_runs >= 0"),
    ),
    "trigger": (
        Param("delta_x", float, required=True, check=_pos, rule="delta_x > 0"),
        Param("p_th", float, None, check=lambda p: p >= 0, rule="p_th >= 0"),
        Param(
            "error_budget",
            float,
            0.05,
            check=lambda e: 0 < e < 0.5,
            rule="error_budget in (0, 0.5)",
        ),
        Param("q_points", int, 201, check=lambda n: n >= 2, rule="q_points >= 2"),
        Param("q_max_sigma", float, 10.0, check=_pos, rule="q_max_sigma > 0"),
    ),
    "scatter": (
        Param("W", float, required=True, check=_pos, rule="W > 0"),
        Param(
            "n_points",
            int,
            2**16,
            check=lambda n: n >= shadow.MIN_POINTS and not n & (n - 1),
            rule=f"n_points a power of two >= {shadow.MIN_POINTS}",
        ),
        Param("a", float, required=True, check=_pos, rule="a > 0"),
        Param("k_in", float, None, check=_pos, rule="k_in > 0"),
        Param("p_th", float, None, check=lambda p: p >= 0, rule="p_th >= 0"),
    ),
    "well": (
        Param("M", float, required=True, check=_pos, rule="M > 0"),
        Param("omega", float, required=True, check=_pos, rule="omega > 0"),
        Param("q", float, required=True, check=lambda q: q >= 0 and math.isfinite(q), rule="q >= 0"),
        Param("n_max", int, None, check=lambda n: n >= 1, rule="n_max >= 1"),
    ),
    "optimize": (
        Param("weight", float, required=True, check=lambda w: w >= 0 and math.isfinite(w), rule="weight finite and >= 0"),
        Param("grid_points", int, 1001, check=lambda n: n >= 2, rule="grid_points >= 2"),
    ),
}

_COMMON = ("kind", "seed", "out")


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    out: str | None = None

    def echo(self) -> dict:
        return {"kind": self.kind, "seed": self.seed, "params": dict(self.params)}


def _split_lines(text: str) -> dict[str, str]:
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("syntax", None, f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError("syntax", None, f"line {lineno}: empty key")
        if key in raw:
            raise ConfigError("duplicate-key", key, f"line {lineno}: key given twice")
        raw[key] = value
    return raw


def parse_config(text: str, kind: str | None = None, seed: int | None = None) -> ExperimentConfig:
    """Parse and validate a configuration document.

    ``kind`` and ``seed`` given here (e.g. from the command line) take
    precedence; a ``kind`` in the file must then agree with it.
    """
    raw = _split_lines(text)
    file_kind = raw.pop("kind", None)
    if kind is None:
        kind = file_kind
    if kind is None:
        raise ConfigError("missing-key", "kind", "experiment kind not given")
    if kind not in SCHEMA:
        raise ConfigError("unknown-kind", "kind", f"{kind!r} is not one of {', '.join(KINDS)}")
    if file_kind is not None and file_kind != kind:
        raise ConfigError("kind-mismatch", "kind", f"file says {file_kind!r}, requested {kind!r}")

    seed_text = raw.pop("seed", None)
    out = raw.pop("out", None)
    if seed is None:
        seed = 0 if seed_text is None else _parse_value("seed", seed_text, _uint64)
    if not 0 <= int(seed) <= UINT64_MAX:
        raise ConfigError("constraint", "seed", "seed in [0, 2^64)")

    schema = SCHEMA[kind]
    known = {p.name for p in schema}
    for key in raw:
        if key not in known:
            raise ConfigError("unknown-key", key, f"not a parameter of kind {kind!r}")

    params = {}
    for p in schema:
        if p.name not in raw:
            if p.required:
                raise ConfigError("missing-key", p.name, f"required for kind {kind!r}")
            params[p.name] = p.default
            continue
        value = _parse_value(p.name, raw[p.name], p.parse)
        if p.check is not None and not p.check(value):
            raise ConfigError("constraint", p.name, f"requires {p.rule}, got {raw[p.name]}")
        params[p.name] = value

    _cross_check(kind, params)
    return ExperimentConfig(kind, params, int(seed), out)


def _parse_value(key, text, parse):
    try:
        return parse(text)
    except (TypeError, ValueError) as exc:
        raise ConfigError("bad-value", key, f"cannot parse {text!r}: {exc}") from None


def _cross_check(kind: str, params: dict) -> None:
    """Constraints that couple several keys."""
    if kind == "scatter":
        W, a, n = params["W"], params["a"], params["n_points"]
        if W < shadow.MIN_WINDOW_RATIO * a:
            raise ConfigError("constraint", "W", f"requires W >= {shadow.MIN_WINDOW_RATIO} a, got W={W}, a={a}")
        if not W / n < a / 16:
            raise ConfigError("constraint", "n_points", f"requires W/n_points < a/16, got W/n_points={W / n:g}")
