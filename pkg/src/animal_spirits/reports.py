"""JSON reports and the plain-text tables rendered from them.

Every text table is produced from the report dictionary alone, so each number
printed in a table is ``fmt`` applied to a value stored in the JSON.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Callable, Sequence

SCHEMA_VERSION = 1


def fmt(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            return str(value)
        return format(value, ".6g")
    return str(value)


def table(headers: Sequence[str], rows: Sequence[Sequence[Any]], title: str | None = None) -> str:
    cells = [[fmt(v) for v in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in cells:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]

    def line(values: Sequence[str]) -> str:
        # first column left-aligned (labels), the rest right-aligned
        parts = [values[0].ljust(widths[0])] + [v.rjust(w) for v, w in zip(values[1:], widths[1:])]
        return "  ".join(parts).rstrip()

    rule = "-" * len(line(list(headers)))
    out = [title] if title else []
    out += [line(list(headers)), rule, *(line(r) for r in cells)]
    return "\n".join(out)


def key_values(pairs: Sequence[tuple[str, Any]], title: str | None = None) -> str:
    width = max(len(k) for k, _ in pairs)
    out = [title] if title else []
    out += [f"{k.ljust(width)}  {fmt(v)}" for k, v in pairs]
    return "\n".join(out)


def new_report(kind: str, scheme: str | None = None, **fields: Any) -> dict[str, Any]:
    report: dict[str, Any] = {"schema_version": SCHEMA_VERSION, "report": kind}
    if scheme is not None:
        report["scheme"] = scheme
    report.update(fields)
    return report


def _clean(obj: Any) -> Any:
    # numpy scalars and tuples into plain JSON types
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        return obj.item()
    if isinstance(obj, Path):
        return str(obj)
    return obj


def dumps(report: dict[str, Any]) -> str:
    return json.dumps(_clean(report), indent=2) + "\n"


# ---------------------------------------------------------------- renderers

def _head(r: dict) -> list[tuple[str, Any]]:
    head = [("report", r["report"])]
    if "scheme" in r:
        head.append(("scheme", r["scheme"]))
    return head


def render_simulate(r: dict) -> str:
    s = r["summary"]
    pairs = _head(r) + [("seed", r["seed"]), ("periods", r["periods"]), ("params_sha256", r["params_sha256"]),
                        ("zlb_share", s["zlb_share"])]
    rows = [(name, v["mean"], v["std"], v["min"], v["max"]) for name, v in s["series"].items()]
    return key_values(pairs) + "\n\n" + table(("series", "mean", "std", "min", "max"), rows)


def render_build_index(r: dict) -> str:
    pairs = _head(r) + [("country", r["country"]), ("rows_read", r["rows_read"]),
                        ("rows_skipped", r["rows_skipped"]), ("speeches_used", r["speeches_used"]),
                        ("quarters", r["quarters"]), ("quarters_missing", r["quarters_missing"]),
                        ("lexicon_conflicts", r["lexicon_conflicts"])]
    rows = [(q["quarter"], q["pos"], q["neg"], q["total"], q["n_speeches"], q["index"]) for q in r["rows"]]
    return key_values(pairs) + "\n\n" + table(("quarter", "pos", "neg", "total", "speeches", "index"), rows)


def render_join(r: dict) -> str:
    pairs = _head(r) + [("rows", r["rows"]), ("window_start", r["window_start"]),
                        ("window_end", r["window_end"]), ("first_quarter", r["first_quarter"]),
                        ("last_quarter", r["last_quarter"])]
    rows = [(name, v["mean"], v["std"], v["min"], v["max"]) for name, v in r["columns"].items()]
    return key_values(pairs) + "\n\n" + table(("column", "mean", "std", "min", "max"), rows)


def render_adf(r: dict) -> str:
    rows = [(v["variable"], v["deterministic"], v["lags"], v["nobs"], v["statistic"], v["pvalue"],
             v["critical_values"]["1%"], v["critical_values"]["5%"], v["critical_values"]["10%"],
             v["decision_5%"]) for v in r["rows"]]
    return table(("variable", "det", "lags", "n", "ADF", "p", "cv 1%", "cv 5%", "cv 10%", "at 5%"), rows,
                 title=f"Augmented Dickey-Fuller tests ({r['scheme']})")


def render_ardl_search(r: dict) -> str:
    pairs = _head(r) + [("dependent", r["dependent"]), ("regressors", ", ".join(r["regressors"])),
                        ("candidates", r["candidates"]), ("estimated", r["estimated"]),
                        ("holdout", r["holdout"]), ("nobs", r["nobs"]), ("selected", r["selected"]),
                        ("selected_aic", r["selected_aic"])]
    top = r["ranking"][: r["shown"]]
    rows = [(c["rank"], c["spec"], c["n_params"], c["aic"]) for c in top]
    return key_values(pairs) + "\n\n" + table(("rank", "spec", "params", "AIC"), rows)


def render_ardl_fit(r: dict) -> str:
    pairs = _head(r) + [("spec", r["spec"]), ("dependent", r["dependent"]), ("nobs", r["n"]),
                        ("R-squared", r["r_squared"]), ("Adj R-squared", r["adj_r_squared"]),
                        ("F", r["f_statistic"]), ("Prob > F", r["f_pvalue"]),
                        ("Root MSE", r["root_mse"]), ("Root MSE (ML)", r["root_mse_ml"]),
                        ("Log likelihood", r["log_likelihood"]), ("AIC", r["aic"])]
    rows = [(c["term"], c["coef"], c["std_err"], c["t"], c["p"]) for c in r["coefficients"]]
    return key_values(pairs) + "\n\n" + table(("term", "coef", "std err", "t", "P>|t|"), rows)


def render_bounds(r: dict) -> str:
    pairs = _head(r) + [("spec", r["spec"]), ("case", r["case"]), ("k", r["k"]),
                        ("F", r["F"]), ("t", r["t"]), ("level", r["level"]),
                        ("decision", r["decision_text"])]
    rows = []
    for lv, by_stat in r["critical_values"].items():
        for stat in ("F", "t"):
            rows.append((lv, stat, by_stat[stat]["I0"], by_stat[stat]["I1"], r["per_level"][lv][stat]))
    return key_values(pairs) + "\n\n" + table(("level", "stat", "I(0)", "I(1)", "position"), rows)


def render_bg(r: dict) -> str:
    rows = [(row["lags"], row["chi2"], row["df"], row["pvalue"]) for row in r["rows"]]
    return table(("lags(p)", "chi2", "df", "Prob > chi2"), rows,
                 title=f"Breusch-Godfrey LM test, {r['spec']} ({r['scheme']}), n={r['nobs']}")


RENDERERS: dict[str, Callable[[dict], str]] = {
    "simulate": render_simulate,
    "build_index": render_build_index,
    "join": render_join,
    "adf": render_adf,
    "ardl_search": render_ardl_search,
    "ardl_fit": render_ardl_fit,
    "bounds": render_bounds,
    "bg": render_bg,
}


def render(report: dict[str, Any]) -> str:
    return RENDERERS[report["report"]](json.loads(dumps(report))) + "\n"


def write_report(out_dir: Path, name: str, report: dict[str, Any]) -> tuple[Path, Path]:
    """Write ``name.json`` and ``name.txt``; returns both paths."""
    out_dir.mkdir(parents=True, exist_ok=True)
    js, txt = out_dir / f"{name}.json", out_dir / f"{name}.txt"
    js.write_text(dumps(report))
    txt.write_text(render(report))
    return js, txt
