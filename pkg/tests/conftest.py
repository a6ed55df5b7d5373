import csv
import datetime as dt
import random
import shutil
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

POSITIVE = ["good", "strong", "growth", "improve", "confident", "gain", "better", "stable"]
NEGATIVE = ["weak", "risk", "decline", "loss", "crisis", "uncertain", "worse", "complex"]
NEUTRAL = ["policy", "rate", "inflation", "committee", "market", "economy", "labor", "federal"]


def write_synthetic_corpus(directory: Path, seed: int = 1, skip_quarter: tuple[int, int] | None = None) -> Path:
    """Two US speeches per quarter 1997Q1-2022Q4 plus one non-US row; returns a config path."""
    rng = random.Random(seed)
    directory.mkdir(parents=True, exist_ok=True)
    with (directory / "speeches.csv").open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["date", "country", "text"])
        for year in range(1997, 2023):
            for q in range(4):
                if skip_quarter == (year, q + 1):
                    continue
                for k in range(2):
                    words = [rng.choice(POSITIVE + NEGATIVE + NEUTRAL * 3) for _ in range(60)]
                    w.writerow([dt.date(year, 3 * q + 1 + k, 10).isoformat(), "United States", " ".join(words)])
        w.writerow(["2001-01-01", "Japan", "good good good"])
    (directory / "positive.txt").write_text("; synthetic\n" + "\n".join(POSITIVE) + "\n")
    (directory / "negative.txt").write_text("; synthetic\n" + "\n".join(NEGATIVE) + "\n")
    cfg = directory / "config.yaml"
    cfg.write_text(
        "model:\n  sigma_demand: 0.005\n  sigma_supply: 0.005\n  sigma_policy: 0.005\n"
        "data:\n  corpus: speeches.csv\n  lexicon_positive: positive.txt\n  lexicon_negative: negative.txt\n"
        "out: results\n"
    )
    return cfg


@pytest.fixture(scope="session")
def synthetic_config(tmp_path_factory) -> Path:
    return write_synthetic_corpus(tmp_path_factory.mktemp("synthetic"))


@pytest.fixture(scope="session")
def reproduce_bundle(synthetic_config, tmp_path_factory) -> Path:
    from animal_spirits.cli import main

    out = tmp_path_factory.mktemp("bundle")
    assert main(["reproduce", "--config", str(synthetic_config), "--out", str(out), "--format", "json"]) == 0
    return out


@pytest.fixture
def fixture_config(tmp_path) -> Path:
    for name in ("speeches.csv", "positive.txt", "negative.txt", "config.yaml"):
        shutil.copy(FIXTURES / name, tmp_path / name)
    return tmp_path / "config.yaml"


ACCEPTANCE_LINES: dict[int, str] = {}


def record(number: int, ok: bool, detail: str, elapsed: float | None = None) -> None:
    timing = f" [{elapsed:.2f}s]" if elapsed is not None else ""
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}{timing}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
