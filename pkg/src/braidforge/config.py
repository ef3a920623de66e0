"""Run configuration: defaults, a key=value config file and environment overrides."""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

THREADS_ENV = "BRAIDFORGE_THREADS"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    tol: float = 1e-6  # | |lambda| - 1 | in the unit-circle screen
    residual_tol: float = 1e-10
    prefilter_tol: float = 1e-8
    k_min: float = 0.1
    k_max: float = 150.0
    k_step: float = 0.1
    output: str = "json"
    threads: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.output not in ("json", "table"):
            raise ConfigError(f"output must be json or table, not {self.output!r}")
        if self.threads < 1:
            raise ConfigError("threads must be positive")

    def with_overrides(self, **kw) -> Config:
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def _convert(name: str, raw: str):
    kinds = {f.name: f.type for f in fields(Config)}
    if name not in kinds:
        raise ConfigError(f"unknown config key {name!r}")
    raw = raw.strip()
    if len(raw) >= 2 and raw[0] == raw[-1] and raw[0] in "\"'":
        raw = raw[1:-1]
    kind = kinds[name]
    try:
        if kind == "float":
            return float(raw)
        if kind == "int":
            return int(raw)
    except ValueError as exc:
        raise ConfigError(f"bad value for {name}: {raw!r}") from exc
    return raw


def parse_config_text(text: str) -> dict:
    """Parse INI-style ``key = value`` lines; a leading header is optional and sections are merged."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
    try:
        cp.read_string("[braidforge]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"unreadable config: {exc}") from exc
    out = {}
    for section in cp.sections():
        for key, val in cp.items(section):
            out[key] = _convert(key, val)
    return out


def load_config(path: str | Path | None = None, env: dict | None = None) -> Config:
    values = parse_config_text(Path(path).read_text()) if path else {}
    env = os.environ if env is None else env
    if env.get(THREADS_ENV):
        try:
            values["threads"] = int(env[THREADS_ENV])
        except ValueError as exc:
            raise ConfigError(f"{THREADS_ENV} must be an integer") from exc
    return Config(**values)
