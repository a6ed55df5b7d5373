"""Model parameters for the behavioural three-equation New Keynesian model."""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Mapping

import yaml


class ConfigError(ValueError):
    """Invalid or missing configuration; ``field`` names the offending key."""

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(message)


@dataclass(frozen=True)
class ModelParams:
    a1: float = 0.5
    a2: float = 0.2
    b1: float = 0.5
    b2: float = 0.05
    c1: float = 1.5
    c2: float = 0.5
    c3: float = 0.5
    gamma: float = 2.0
    rho: float = 0.5
    mu: float = 10.0
    iota: float = 0.01
    pi_star: float = 0.0
    sigma_demand: float = 0.5
    sigma_supply: float = 0.5
    sigma_policy: float = 0.5
    T: int = 2000
    seed: int = 42

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        def need(ok: bool, name: str, rule: str) -> None:
            if not ok:
                raise ConfigError(f"{name}={getattr(self, name)!r} violates {rule}", field=name)

        need(0 < self.a1 < 1, "a1", "0 < a1 < 1")
        need(self.a2 >= 0, "a2", "a2 >= 0")
        need(0 < self.b1 < 1, "b1", "0 < b1 < 1")
        need(0 <= self.b2 <= 1, "b2", "0 <= b2 <= 1")
        need(self.c1 > 1, "c1", "c1 > 1 (Taylor principle)")
        need(0 < self.c2 < 1, "c2", "0 < c2 < 1")
        need(0 <= self.c3 < 1, "c3", "0 <= c3 < 1")
        need(self.gamma >= 0, "gamma", "gamma >= 0")
        need(0 < self.rho < 1, "rho", "0 < rho < 1")
        need(self.mu >= 0, "mu", "mu >= 0")
        need(self.iota >= 0, "iota", "iota >= 0")
        for name in ("sigma_demand", "sigma_supply", "sigma_policy"):
            need(getattr(self, name) >= 0, name, f"{name} >= 0")
        need(isinstance(self.T, int) and self.T >= 1, "T", "integer T >= 1")
        need(isinstance(self.seed, int) and self.seed >= 0, "seed", "non-negative integer seed")

    def with_overrides(self, **kw: Any) -> "ModelParams":
        return replace(self, **kw)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def digest(self) -> str:
        """Stable SHA-256 of the parameter set, used in run reports."""
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "ModelParams":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown model parameter(s): {', '.join(unknown)}", field=unknown[0])
        kw: dict[str, Any] = {}
        for f in fields(cls):
            if f.name not in data:
                continue
            value = data[f.name]
            try:
                kw[f.name] = int(value) if f.name in ("T", "seed") else float(value)
            except (TypeError, ValueError):
                raise ConfigError(f"{f.name} must be numeric, got {value!r}", field=f.name) from None
        return cls(**kw)

    @classmethod
    def from_file(cls, path: str | Path) -> "ModelParams":
        """Read parameters from a YAML/JSON file.

        Keys mirror the model symbols (``a1``, ``c3``, ``gamma``, ``iota``...).
        A top-level ``model:`` section is accepted as well as a flat mapping.
        """
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"parameter file not found: {path}", field="params")
        data = yaml.safe_load(path.read_text()) or {}
        if not isinstance(data, Mapping):
            raise ConfigError(f"{path}: expected a mapping of parameters", field="params")
        if "model" in data and isinstance(data["model"], Mapping):
            data = data["model"]
        return cls.from_mapping(data)
