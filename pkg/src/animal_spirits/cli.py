"""Command-line entry point: ``animal-spirits <subcommand>``.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 numeric failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .config import RunConfig, load_config
from .nk import ConfigError, ExpectationScheme
from .reports import dumps, render, write_report
from .sentiment import write_sentiment_csv
from .stats import DegenerateFitError, NonFiniteInputError, RankDeficientError
from . import workflow as wf

EXIT_OK, EXIT_CONFIG, EXIT_DATA, EXIT_NUMERIC = 0, 2, 3, 4

log = logging.getLogger("animal_spirits")


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, wf.StageError):
        return exit_code_for(exc.cause)
    if isinstance(exc, ConfigError):
        return EXIT_CONFIG
    if isinstance(exc, (ArithmeticError, RankDeficientError, NonFiniteInputError, DegenerateFitError)):
        return EXIT_NUMERIC
    return EXIT_DATA


def _config(args: argparse.Namespace, **need: bool) -> RunConfig:
    cfg = load_config(args.config).with_overrides(seed=args.seed, scheme=args.scheme, out=args.out)
    return cfg.validate(**need)


def _emit(args: argparse.Namespace, report: dict, csv_text: str | None = None) -> None:
    if args.format == "json":
        sys.stdout.write(dumps(report))
    elif args.format == "csv" and csv_text is not None:
        sys.stdout.write(csv_text)
    else:
        sys.stdout.write(render(report))


def cmd_simulate(args: argparse.Namespace) -> None:
    cfg = _config(args, need_simulation=True)
    path, report = wf.run_simulation(cfg, cfg.scheme)
    cfg.out.mkdir(parents=True, exist_ok=True)
    csv_text = path.to_csv(cfg.out / f"simulation_{cfg.scheme.value}.csv")
    write_report(cfg.out, f"simulate_{cfg.scheme.value}", report)
    _emit(args, report, csv_text)


def cmd_build_index(args: argparse.Namespace) -> None:
    cfg = _config(args, need_corpus=True)
    rows, report = wf.run_build_index(cfg)
    cfg.out.mkdir(parents=True, exist_ok=True)
    csv_text = write_sentiment_csv(rows, cfg.out / "sentiment_index.csv")
    write_report(cfg.out, "build_index", report)
    _emit(args, report, csv_text)


def cmd_join(args: argparse.Namespace) -> None:
    cfg = _config(args)
    scheme = cfg.scheme
    sim = wf.read_simulation_csv(args.simulation or cfg.out / f"simulation_{scheme.value}.csv")
    sentiment = wf.load_sentiment(args.sentiment or cfg.out / "sentiment_index.csv")
    start = cfg.window_start if args.start is None else args.start
    length = cfg.window_length if args.length is None else args.length
    joined = wf.join(sim, sentiment, start, length)
    cfg.out.mkdir(parents=True, exist_ok=True)
    csv_text = joined.to_csv(cfg.out / f"joined_{scheme.value}.csv")
    report = wf.join_report(joined, scheme)
    write_report(cfg.out, f"join_{scheme.value}", report)
    _emit(args, report, csv_text)


def _joined(args: argparse.Namespace, cfg: RunConfig) -> wf.JoinedDataset:
    return wf.JoinedDataset.from_csv(args.data or cfg.out / f"joined_{cfg.scheme.value}.csv")


def cmd_adf(args: argparse.Namespace) -> None:
    cfg = _config(args)
    lags = cfg.adf_lags if args.lags is None else args.lags
    report = wf.run_adf(_joined(args, cfg), cfg.scheme, lags)
    write_report(cfg.out, f"adf_{cfg.scheme.value}", report)
    _emit(args, report)


def cmd_ardl_search(args: argparse.Namespace) -> None:
    cfg = _config(args)
    result, report = wf.run_grid(_joined(args, cfg), cfg.scheme, cfg.max_p, cfg.max_q)
    tag = cfg.scheme.value
    write_report(cfg.out, f"ardl_search_{tag}", report)
    write_report(cfg.out, f"ardl_fit_{tag}", wf.fit_report(result.best_fit, cfg.scheme))
    _emit(args, report)


def cmd_bounds(args: argparse.Namespace) -> None:
    cfg = _config(args)
    joined = _joined(args, cfg)
    fit = wf.select_fit(joined, cfg.scheme, cfg, args.spec)
    level = cfg.bounds_level if args.level is None else args.level
    report = wf.run_bounds(fit, joined, cfg.scheme, level, cfg.bounds_table)
    write_report(cfg.out, f"bounds_{cfg.scheme.value}", report)
    _emit(args, report)


def cmd_bg(args: argparse.Namespace) -> None:
    cfg = _config(args)
    fit = wf.select_fit(_joined(args, cfg), cfg.scheme, cfg, args.spec)
    max_lag = cfg.bg_max_lag if args.max_lag is None else args.max_lag
    report = wf.run_bg(fit, cfg.scheme, max_lag)
    write_report(cfg.out, f"bg_{cfg.scheme.value}", report)
    _emit(args, report)


def cmd_reproduce(args: argparse.Namespace) -> None:
    cfg = _config(args, need_corpus=True, need_simulation=True)
    manifest = wf.reproduce(cfg, cfg.out)
    if args.format == "json":
        sys.stdout.write(dumps(manifest))
    else:
        for scheme in ExpectationScheme:
            for name in wf.REPORT_NAMES:
                sys.stdout.write((cfg.out / scheme.value / f"{name}.txt").read_text() + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="YAML/JSON run configuration (default: bundled)")
    common.add_argument("--seed", type=int, help="override the configured seed")
    common.add_argument("--scheme", choices=[s.value for s in ExpectationScheme], help="expectation scheme")
    common.add_argument("--out", type=Path, help="output directory")
    common.add_argument("--format", choices=("json", "table", "csv"), default="table",
                        help="what to print on stdout (files are always written)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="animal-spirits", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=fn)
        return p

    add("simulate", cmd_simulate, "simulate the model and write the path CSV")
    add("build-index", cmd_build_index, "build the quarterly sentiment index from a speech corpus")
    p = add("join", cmd_join, "join a simulation window with the sentiment index by position")
    p.add_argument("--simulation", type=Path, help="simulation CSV (default OUT/simulation_<scheme>.csv)")
    p.add_argument("--sentiment", type=Path, help="sentiment CSV (default OUT/sentiment_index.csv)")
    p.add_argument("--start", type=int, help="first simulated period of the window")
    p.add_argument("--length", type=int, help="window length")
    for name, fn, text in (("adf", cmd_adf, "ADF unit-root battery on the joined data"),
                           ("ardl-search", cmd_ardl_search, "AIC search over the ARDL lag grid"),
                           ("bounds", cmd_bounds, "bounds test for a levels relationship"),
                           ("bg", cmd_bg, "Breusch-Godfrey serial-correlation test")):
        p = add(name, fn, text)
        p.add_argument("--data", type=Path, help="joined CSV (default OUT/joined_<scheme>.csv)")
        if name == "adf":
            p.add_argument("--lags", type=int, help="augmentation lags")
        if name in ("bounds", "bg"):
            p.add_argument("--spec", help="ARDL orders such as 3,0,4 (default: AIC choice)")
        if name == "bounds":
            p.add_argument("--level", type=float, choices=(0.10, 0.05, 0.01), help="significance level")
        if name == "bg":
            p.add_argument("--max-lag", type=int, help="highest residual lag")
    add("reproduce", cmd_reproduce, "run the full pipeline for both schemes")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except Exception as exc:  # noqa: BLE001 - mapped to an exit code
        code = exit_code_for(exc)
        where = f" [{exc.field}]" if isinstance(exc, ConfigError) and exc.field else ""
        print(f"animal-spirits: error{where}: {exc}", file=sys.stderr)
        if args.verbose:
            log.exception("traceback")
        return code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
