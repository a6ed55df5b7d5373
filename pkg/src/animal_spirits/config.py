"""Run configuration for the command-line pipeline.

A config file is YAML (JSON is accepted, being a YAML subset)::

    model:            # keys mirror the model symbols; omitted keys keep defaults
      a1: 0.5
      c3: 0.5
      gamma: 2
      sigma_demand: 0.005
    params_file: null # alternatively, a separate YAML file with the model keys
    seed: 42
    scheme: degrauwe  # degrauwe | proano
    data:
      corpus: speeches.csv
      date_column: date
      country_column: country
      text_column: text
      country: united states
      lexicon_positive: positive-words.txt
      lexicon_negative: negative-words.txt
      stopwords: null   # null -> bundled English list
    window: {start: 1000, length: 104}
    quarters: {start: 1997Q1, end: 2022Q4}
    grid: {max_p: 7, max_q: 7}
    tests: {adf_lags: 4, bg_max_lag: 4, bounds_level: 0.05, bounds_table: null}
    out: results

Relative paths are resolved against the directory holding the config file.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

import yaml

from .nk import ConfigError, ExpectationScheme, ModelParams
from .sentiment import Quarter, quarter_span

_TOP_KEYS = {"model", "params_file", "seed", "scheme", "data", "window", "quarters", "grid", "tests", "out"}


@dataclass(frozen=True)
class DataConfig:
    corpus: Path | None = None
    date_column: str = "date"
    country_column: str = "country"
    text_column: str = "text"
    country: str = "united states"
    lexicon_positive: Path | None = None
    lexicon_negative: Path | None = None
    stopwords: Path | None = None


@dataclass(frozen=True)
class RunConfig:
    model: ModelParams = field(default_factory=ModelParams)
    scheme: ExpectationScheme = ExpectationScheme.DEGRAUWE_JI
    data: DataConfig = field(default_factory=DataConfig)
    window_start: int = 1000
    window_length: int = 104
    quarter_start: Quarter = Quarter(1997, 1)
    quarter_end: Quarter = Quarter(2022, 4)
    max_p: int = 7
    max_q: int = 7
    adf_lags: int = 4
    bg_max_lag: int = 4
    bounds_level: float = 0.05
    bounds_table: Path | None = None
    out: Path = Path("results")
    source: Path | None = None

    @property
    def seed(self) -> int:
        return self.model.seed

    @property
    def quarters(self) -> list[Quarter]:
        return quarter_span(self.quarter_start, self.quarter_end)

    def with_overrides(self, seed: int | None = None, scheme: str | None = None,
                       out: str | Path | None = None) -> "RunConfig":
        cfg = self
        if seed is not None:
            cfg = replace(cfg, model=_model_with(cfg.model, seed=int(seed)))
        if scheme is not None:
            cfg = replace(cfg, scheme=_scheme(scheme))
        if out is not None:
            cfg = replace(cfg, out=Path(out))
        return cfg

    def validate(self, need_corpus: bool = False, need_simulation: bool = False) -> "RunConfig":
        if need_simulation and self.window_start + self.window_length > self.model.T:
            raise ConfigError(
                f"window [{self.window_start}, {self.window_start + self.window_length}) exceeds T={self.model.T}",
                field="window")
        n_quarters = len(self.quarters)
        if self.window_length != n_quarters:
            raise ConfigError(
                f"window length {self.window_length} != {n_quarters} quarters in "
                f"{self.quarter_start}..{self.quarter_end}", field="window.length")
        if self.max_p < 1 or self.max_q < 0:
            raise ConfigError("grid needs max_p >= 1 and max_q >= 0", field="grid")
        if self.bounds_level not in (0.10, 0.05, 0.01):
            raise ConfigError("bounds_level must be 0.10, 0.05 or 0.01", field="tests.bounds_level")
        if need_corpus:
            d = self.data
            for name in ("corpus", "lexicon_positive", "lexicon_negative"):
                value = getattr(d, name)
                if value is None:
                    raise ConfigError(f"data.{name} is not set", field=f"data.{name}")
                if not Path(value).is_file():
                    raise ConfigError(f"data.{name}: file not found: {value}", field=f"data.{name}")
            if d.stopwords is not None and not Path(d.stopwords).is_file():
                raise ConfigError(f"data.stopwords: file not found: {d.stopwords}", field="data.stopwords")
        if self.bounds_table is not None and not Path(self.bounds_table).is_file():
            raise ConfigError(f"tests.bounds_table: file not found: {self.bounds_table}", field="tests.bounds_table")
        return self

    def to_dict(self) -> dict[str, Any]:
        d = self.data
        return {
            "model": self.model.to_dict(),
            "scheme": self.scheme.value,
            "data": {
                "corpus": _s(d.corpus), "date_column": d.date_column, "country_column": d.country_column,
                "text_column": d.text_column, "country": d.country,
                "lexicon_positive": _s(d.lexicon_positive), "lexicon_negative": _s(d.lexicon_negative),
                "stopwords": _s(d.stopwords),
            },
            "window": {"start": self.window_start, "length": self.window_length},
            "quarters": {"start": str(self.quarter_start), "end": str(self.quarter_end)},
            "grid": {"max_p": self.max_p, "max_q": self.max_q},
            "tests": {"adf_lags": self.adf_lags, "bg_max_lag": self.bg_max_lag,
                      "bounds_level": self.bounds_level, "bounds_table": _s(self.bounds_table)},
            "out": str(self.out),
        }


def _s(p: Path | None) -> str | None:
    return None if p is None else str(p)


def _scheme(value: Any) -> ExpectationScheme:
    try:
        return ExpectationScheme.parse(value)
    except ValueError as exc:
        raise ConfigError(str(exc), field="scheme") from None


def _model_with(model: ModelParams, **kw: Any) -> ModelParams:
    try:
        return model.with_overrides(**kw)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc), field="model") from None


def _section(raw: Mapping[str, Any], key: str) -> Mapping[str, Any]:
    value = raw.get(key) or {}
    if not isinstance(value, Mapping):
        raise ConfigError(f"{key} must be a mapping", field=key)
    return value


def _int(section: Mapping[str, Any], key: str, default: int, where: str) -> int:
    try:
        return int(section.get(key, default))
    except (TypeError, ValueError):
        raise ConfigError(f"{where}.{key} must be an integer", field=f"{where}.{key}") from None


def from_mapping(raw: Mapping[str, Any], base_dir: Path | None = None, source: Path | None = None) -> RunConfig:
    base_dir = base_dir or Path.cwd()
    unknown = sorted(set(raw) - _TOP_KEYS)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}", field=unknown[0])

    def path(value: Any) -> Path | None:
        if value in (None, ""):
            return None
        p = Path(str(value)).expanduser()
        return p if p.is_absolute() else base_dir / p

    if raw.get("params_file"):
        model = ModelParams.from_file(path(raw["params_file"]))
    else:
        model = ModelParams.from_mapping(_section(raw, "model"))
    if "seed" in raw:
        model = _model_with(model, seed=_int(raw, "seed", model.seed, "config"))

    d = _section(raw, "data")
    known_data = set(DataConfig.__dataclass_fields__)
    bad = sorted(set(d) - known_data)
    if bad:
        raise ConfigError(f"unknown data key(s): {', '.join(bad)}", field=f"data.{bad[0]}")
    data = DataConfig(
        corpus=path(d.get("corpus")),
        date_column=str(d.get("date_column", "date")),
        country_column=str(d.get("country_column", "country")),
        text_column=str(d.get("text_column", "text")),
        country=str(d.get("country", "united states")),
        lexicon_positive=path(d.get("lexicon_positive")),
        lexicon_negative=path(d.get("lexicon_negative")),
        stopwords=path(d.get("stopwords")),
    )
    w, q, g, t = (_section(raw, k) for k in ("window", "quarters", "grid", "tests"))
    try:
        q_start = Quarter.parse(q.get("start", "1997Q1"))
        q_end = Quarter.parse(q.get("end", "2022Q4"))
    except ValueError as exc:
        raise ConfigError(str(exc), field="quarters") from None
    try:
        level = float(t.get("bounds_level", 0.05))
    except (TypeError, ValueError):
        raise ConfigError("tests.bounds_level must be a number", field="tests.bounds_level") from None
    return RunConfig(
        model=model,
        scheme=_scheme(raw.get("scheme", "degrauwe")),
        data=data,
        window_start=_int(w, "start", 1000, "window"),
        window_length=_int(w, "length", 104, "window"),
        quarter_start=q_start,
        quarter_end=q_end,
        max_p=_int(g, "max_p", 7, "grid"),
        max_q=_int(g, "max_q", 7, "grid"),
        adf_lags=_int(t, "adf_lags", 4, "tests"),
        bg_max_lag=_int(t, "bg_max_lag", 4, "tests"),
        bounds_level=level,
        bounds_table=path(t.get("bounds_table")),
        out=path(raw.get("out", "results")) or Path("results"),
        source=source,
    )


def load_config(path: str | Path | None) -> RunConfig:
    """Load a config file; ``None`` returns the bundled default."""
    if path is None:
        ref = resources.files("animal_spirits") / "data" / "default_config.yaml"
        raw = yaml.safe_load(ref.read_text()) or {}
        cfg = from_mapping(raw, Path.cwd())
        return cfg
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}", field="config")
    try:
        raw = yaml.safe_load(path.read_text()) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: not valid YAML/JSON: {exc}", field="config") from None
    if not isinstance(raw, Mapping):
        raise ConfigError(f"{path}: top level must be a mapping", field="config")
    return from_mapping(raw, path.parent.resolve(), path)
