"""Pipeline stages shared by the CLI subcommands and ``reproduce``.

Each stage returns its domain result together with a JSON-ready report.
"""
from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .config import RunConfig
from .econometrics import (
    ArdlFit,
    ArdlSpec,
    BoundsTable,
    GridResult,
    LagGrid,
    TimeSeriesData,
    adf_test,
    bounds_test,
    breusch_godfrey,
    fit_ardl,
    grid_search,
)
from .econometrics.bounds import f_pvalue
from .nk import ExpectationScheme, SimPath, WindowError, simulate
from .reports import new_report, write_report
from .sentiment import (
    CorpusError,
    Lexicon,
    QuarterlySentiment,
    build_index,
    filter_country,
    load_corpus,
    load_stopwords,
    read_sentiment_csv,
    write_sentiment_csv,
)

log = logging.getLogger(__name__)

DEPENDENT = "sentiment_index"
JOINED_COLUMNS = ("quarter", "position", "sentiment_index", "animal_spirit", "fraction_extrapolators")

# regressors of the main model and of the single-regressor robustness model
REGRESSORS = {
    ExpectationScheme.DEGRAUWE_JI: ("animal_spirit", "fraction_extrapolators"),
    ExpectationScheme.PROANO_LOJAK: ("animal_spirit",),
}
# (variable, deterministic terms, first-differenced)
ADF_BATTERY = {
    ExpectationScheme.DEGRAUWE_JI: (
        ("sentiment_index", "constant", False),
        ("fraction_extrapolators", "constant", False),
        ("animal_spirit", "constant", False),
        ("animal_spirit", "none", True),
    ),
    ExpectationScheme.PROANO_LOJAK: (
        ("sentiment_index", "constant", False),
        ("animal_spirit", "constant", False),
    ),
}
RANKING_SHOWN = 10


class JoinError(ValueError):
    pass


class StageError(RuntimeError):
    """A ``reproduce`` stage failed; ``cause`` keeps the original error."""

    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage!r} failed: {type(cause).__name__}: {cause}")


def _describe(x: np.ndarray) -> dict[str, float]:
    x = np.asarray(x, dtype=float)
    return {"mean": float(x.mean()), "std": float(x.std()), "min": float(x.min()), "max": float(x.max())}


# ------------------------------------------------------------------ simulate

def run_simulation(cfg: RunConfig, scheme: ExpectationScheme) -> tuple[SimPath, dict]:
    path = simulate(cfg.model, scheme)
    series = {
        "output_gap": path.output_gap,
        "inflation": path.inflation,
        "interest_rate": path.interest_rate,
        "animal_spirit": path.animal_spirit,
        "extrapolator_index": path.extrapolator_index,
        "frac_extr_output": path.frac_extr_output,
        "frac_extr_inflation": path.frac_extr_inflation,
    }
    report = new_report(
        "simulate", scheme.value,
        seed=cfg.model.seed,
        periods=len(path),
        params=cfg.model.to_dict(),
        params_sha256=cfg.model.digest(),
        summary={"zlb_share": float(path.zlb_binding.mean()),
                 "series": {k: _describe(v) for k, v in series.items()}},
    )
    return path, report


def read_simulation_csv(path: str | Path) -> dict[str, np.ndarray]:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"simulation CSV not found: {path}")
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        need = ("period", "animal_spirit", "extrapolator_index")
        missing = [c for c in need if c not in (reader.fieldnames or [])]
        if missing:
            raise JoinError(f"{path}: simulation CSV lacks column(s) {missing}")
        rows = list(reader)
    return {c: np.array([float(r[c]) for r in rows]) for c in need}


# --------------------------------------------------------------- build index

def run_build_index(cfg: RunConfig) -> tuple[list[QuarterlySentiment], dict]:
    d = cfg.data
    corpus = load_corpus(d.corpus, d.date_column, d.country_column, d.text_column)
    records = filter_country(corpus.records, d.country)
    if not records:
        raise CorpusError(f"{d.corpus}: no speeches with {d.country_column} = {d.country!r}")
    lexicon = Lexicon.from_files(d.lexicon_positive, d.lexicon_negative)
    stopwords = load_stopwords(d.stopwords)
    rows = build_index(records, lexicon, stopwords, cfg.quarter_start, cfg.quarter_end)
    in_span = sum(r.n_speeches for r in rows)
    report = new_report(
        "build_index",
        country=d.country,
        rows_read=corpus.rows_read,
        rows_skipped=len(corpus.skipped),
        skipped=[{"row": i, "reason": why} for i, why in corpus.skipped],
        speeches_used=in_span,
        speeches_outside_span=len(records) - in_span,
        quarters=len(rows),
        quarters_missing=sum(r.missing for r in rows),
        missing_quarters=[str(r.quarter) for r in rows if r.missing],
        lexicon_conflicts=len(lexicon.conflicts),
        rows=[{"quarter": str(r.quarter), "pos": r.pos_weight, "neg": r.neg_weight_abs, "total": r.total_words,
               "n_speeches": r.n_speeches, "index": r.index} for r in rows],
    )
    return rows, report


# ---------------------------------------------------------------------- join

@dataclass(frozen=True)
class JoinedDataset:
    quarters: tuple[str, ...]
    position: np.ndarray
    sentiment_index: np.ndarray
    animal_spirit: np.ndarray
    fraction_extrapolators: np.ndarray

    def __len__(self) -> int:
        return len(self.quarters)

    def columns(self) -> dict[str, np.ndarray]:
        return {
            "sentiment_index": self.sentiment_index,
            "animal_spirit": self.animal_spirit,
            "fraction_extrapolators": self.fraction_extrapolators,
        }

    def to_series(self, regressors: Sequence[str]) -> TimeSeriesData:
        return TimeSeriesData(DEPENDENT, tuple(regressors), self.columns(), self.quarters)

    def to_csv(self, path: str | Path | None = None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(JOINED_COLUMNS)
        for t in range(len(self)):
            w.writerow([self.quarters[t], int(self.position[t]), repr(float(self.sentiment_index[t])),
                        repr(float(self.animal_spirit[t])), repr(float(self.fraction_extrapolators[t]))])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text

    @classmethod
    def from_csv(cls, path: str | Path) -> "JoinedDataset":
        path = Path(path)
        if not path.is_file():
            raise FileNotFoundError(f"joined CSV not found: {path}")
        with path.open(newline="") as fh:
            reader = csv.DictReader(fh)
            missing = [c for c in JOINED_COLUMNS if c not in (reader.fieldnames or [])]
            if missing:
                raise JoinError(f"{path}: joined CSV lacks column(s) {missing}")
            rows = list(reader)
        for r in rows:
            if not r["sentiment_index"].strip():
                raise JoinError(f"{path}: missing sentiment index for quarter {r['quarter']}")
        return cls(
            tuple(r["quarter"] for r in rows),
            np.array([int(r["position"]) for r in rows]),
            *(np.array([float(r[c]) for r in rows]) for c in JOINED_COLUMNS[2:]),
        )


def join(simulation: Mapping[str, np.ndarray], sentiment: Sequence[QuarterlySentiment],
         start: int, length: int) -> JoinedDataset:
    """Positional join of simulated periods start..start+length-1 with the quarterly rows."""
    if length != len(sentiment):
        raise JoinError(f"window has {length} periods but the sentiment series has {len(sentiment)} quarters")
    period = np.asarray(simulation["period"]).astype(int)
    hits = np.flatnonzero(period == start)
    if hits.size == 0:
        raise WindowError(f"period {start} not in the simulation ({period[0]}..{period[-1]})")
    i0 = int(hits[0])
    if i0 + length > len(period):
        raise WindowError(f"window {start}..{start + length - 1} runs past the last simulated period {period[-1]}")
    for row in sentiment:
        if row.missing:
            raise JoinError(f"sentiment index missing for quarter {row.quarter} inside the estimation window")
    sl = slice(i0, i0 + length)
    return JoinedDataset(
        tuple(str(r.quarter) for r in sentiment),
        period[sl].copy(),
        np.array([r.index for r in sentiment], dtype=float),
        np.asarray(simulation["animal_spirit"], dtype=float)[sl].copy(),
        np.asarray(simulation["extrapolator_index"], dtype=float)[sl].copy(),
    )


def simulation_columns(path: SimPath) -> dict[str, np.ndarray]:
    return {"period": np.arange(path.start, path.start + len(path)),
            "animal_spirit": path.animal_spirit, "extrapolator_index": path.extrapolator_index}


def join_report(joined: JoinedDataset, scheme: ExpectationScheme) -> dict:
    return new_report(
        "join", scheme.value,
        rows=len(joined),
        window_start=int(joined.position[0]),
        window_end=int(joined.position[-1]),
        first_quarter=joined.quarters[0],
        last_quarter=joined.quarters[-1],
        columns={k: _describe(v) for k, v in joined.columns().items()},
    )


# ---------------------------------------------------------------- statistics

def run_adf(joined: JoinedDataset, scheme: ExpectationScheme, lags: int) -> dict:
    cols = joined.columns()
    rows = []
    for name, det, diff in ADF_BATTERY[scheme]:
        x = np.diff(cols[name]) if diff else cols[name]
        res = adf_test(x, deterministic=det, lags=lags)
        rows.append({
            "variable": f"d.{name}" if diff else name,
            **res.to_dict(),
            "decision_5%": "reject unit root" if res.reject(0.05) else "unit root",
        })
    return new_report("adf", scheme.value, rows=rows)


def run_grid(joined: JoinedDataset, scheme: ExpectationScheme, max_p: int, max_q: int) -> tuple[GridResult, dict]:
    regressors = REGRESSORS[scheme]
    grid = LagGrid.full(max_p, max_q, len(regressors))
    result = grid_search(joined.to_series(regressors), grid)
    report = new_report("ardl_search", scheme.value, dependent=DEPENDENT, regressors=list(regressors),
                        shown=min(RANKING_SHOWN, len(result.ranking)), **result.to_dict())
    return result, report


def fit_report(fit: ArdlFit, scheme: ExpectationScheme) -> dict:
    return new_report("ardl_fit", scheme.value, **fit.to_dict())


def run_bounds(fit: ArdlFit, joined: JoinedDataset, scheme: ExpectationScheme, level: float,
               table_path: str | Path | None = None) -> dict:
    table = BoundsTable.load(table_path)
    res, ec = bounds_test(fit, joined.to_series(fit.regressors), level, table)
    return new_report("bounds", scheme.value, spec=str(fit.spec), table=table.source,
                      f_pvalue_ordinary=f_pvalue(res), ec_nobs=ec.fit.n, **res.to_dict())


def run_bg(fit: ArdlFit, scheme: ExpectationScheme, max_lag: int) -> dict:
    return new_report("bg", scheme.value, spec=str(fit.spec), **breusch_godfrey(fit, max_lag).to_dict())


def select_fit(joined: JoinedDataset, scheme: ExpectationScheme, cfg: RunConfig,
               spec: str | None) -> ArdlFit:
    """The named spec on the grid's common sample, or the AIC choice over the grid."""
    regressors = REGRESSORS[scheme]
    if spec is None:
        return run_grid(joined, scheme, cfg.max_p, cfg.max_q)[0].best_fit
    holdout = max(cfg.max_p, cfg.max_q)
    return fit_ardl(joined.to_series(regressors), ArdlSpec.parse(spec), holdout)


# ----------------------------------------------------------------- reproduce

REPORT_NAMES = ("simulate", "join", "adf", "ardl_search", "ardl_fit", "bounds", "bg")


def reproduce(cfg: RunConfig, out: Path) -> dict:
    """Full pipeline for both schemes.

    Layout: ``out/sentiment/`` (index CSV and report), ``out/<scheme>/`` with
    one JSON + text report per stage, and ``out/manifest.json``. Outputs of
    completed stages stay on disk when a later stage fails.
    """
    from .reports import dumps

    out.mkdir(parents=True, exist_ok=True)
    manifest: dict = new_report("manifest", config=cfg.to_dict(),
                                seeds={"model": cfg.model.seed}, stages=[], report_names=list(REPORT_NAMES))

    def stage(name: str, fn):
        try:
            result = fn()
        except Exception as exc:  # noqa: BLE001 - re-raised with the stage name
            manifest["failed_stage"] = name
            (out / "manifest.json").write_text(dumps(manifest))
            raise StageError(name, exc) from exc
        manifest["stages"].append(name)
        return result

    sent_dir = out / "sentiment"

    def do_index():
        rows, report = run_build_index(cfg)
        sent_dir.mkdir(parents=True, exist_ok=True)
        write_sentiment_csv(rows, sent_dir / "sentiment_index.csv")
        write_report(sent_dir, "build_index", report)
        return rows

    paths: dict[ExpectationScheme, SimPath] = {}
    for scheme in ExpectationScheme:
        d = out / scheme.value

        def do_sim():
            path, report = run_simulation(cfg, scheme)
            d.mkdir(parents=True, exist_ok=True)
            path.to_csv(d / "simulation.csv")
            write_report(d, "simulate", report)
            return path

        paths[scheme] = stage(f"{scheme.value}:simulate", do_sim)

    sentiment = stage("build-index", do_index)

    for scheme in ExpectationScheme:
        d, tag = out / scheme.value, scheme.value

        def do_join():
            joined = join(simulation_columns(paths[scheme]), sentiment, cfg.window_start, cfg.window_length)
            joined.to_csv(d / "joined.csv")
            write_report(d, "join", join_report(joined, scheme))
            return joined

        joined = stage(f"{tag}:join", do_join)
        stage(f"{tag}:adf", lambda: write_report(d, "adf", run_adf(joined, scheme, cfg.adf_lags)))

        def do_grid():
            result, report = run_grid(joined, scheme, cfg.max_p, cfg.max_q)
            write_report(d, "ardl_search", report)
            write_report(d, "ardl_fit", fit_report(result.best_fit, scheme))
            return result.best_fit

        fit = stage(f"{tag}:ardl-search", do_grid)
        stage(f"{tag}:bounds", lambda: write_report(
            d, "bounds", run_bounds(fit, joined, scheme, cfg.bounds_level, cfg.bounds_table)))
        stage(f"{tag}:bg", lambda: write_report(d, "bg", run_bg(fit, scheme, cfg.bg_max_lag)))

    (out / "manifest.json").write_text(dumps(manifest))
    return manifest


def load_sentiment(path: str | Path) -> list[QuarterlySentiment]:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"sentiment CSV not found: {path}")
    return read_sentiment_csv(path)
