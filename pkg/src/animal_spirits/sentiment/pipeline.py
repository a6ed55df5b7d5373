"""Quarterly lexicon sentiment index from a corpus of dated speeches.

Text is normalised in a fixed order: lowercase, strip punctuation (including
hyphens and apostrophes, which are deleted rather than replaced), strip
digits, drop stopwords, collapse whitespace, split on whitespace and Porter-
stem each token. Lexicon entries go through the same normalisation so that
stems on both sides match.

With word scores s_w = +1 / -1 the weighted sentiment of a quarter,
sum_w n_{w,q} * s_w, splits into a positive count and a negative count, and

    SI_q = (positive_q - |negative_q|) / total_words_q

where total_words_q counts every token left after preprocessing. All speeches
of a quarter are pooled before scoring. Because every token carries weight
+1, -1 or 0 and the denominator is the pooled token count, pooling and
summing per-speech counts give the same numbers.
"""
from __future__ import annotations

import csv
import datetime as dt
import logging
import re
import sys
from collections import Counter
from dataclasses import dataclass, field
from functools import total_ordering
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .porter import stem

log = logging.getLogger(__name__)

_PUNCT = re.compile(r"[^\w\s]|_")
_DIGITS = re.compile(r"\d+")
_DATE_FORMATS = ("%Y-%m-%d", "%Y-%m-%d %H:%M:%S", "%Y/%m/%d", "%Y%m%d", "%d %B %Y", "%B %d, %Y")


class CorpusError(ValueError):
    """Unreadable corpus, missing column or no usable rows."""


class LexiconError(ValueError):
    pass


@total_ordering
@dataclass(frozen=True)
class Quarter:
    year: int
    q: int

    def __post_init__(self):
        if self.q not in (1, 2, 3, 4):
            raise ValueError(f"quarter number must be 1-4, got {self.q}")

    def __str__(self) -> str:
        return f"{self.year}Q{self.q}"

    def __lt__(self, other: "Quarter") -> bool:
        return (self.year, self.q) < (other.year, other.q)

    def next(self) -> "Quarter":
        return Quarter(self.year + 1, 1) if self.q == 4 else Quarter(self.year, self.q + 1)

    @classmethod
    def parse(cls, label: str) -> "Quarter":
        m = re.fullmatch(r"\s*(\d{4})\s*-?\s*Q([1-4])\s*", str(label), flags=re.IGNORECASE)
        if not m:
            raise ValueError(f"not a quarter label: {label!r} (expected e.g. 1997Q1)")
        return cls(int(m.group(1)), int(m.group(2)))


def assign_quarter(date: dt.date) -> Quarter:
    return Quarter(date.year, (date.month - 1) // 3 + 1)


def quarter_span(start: Quarter, end: Quarter) -> list[Quarter]:
    if end < start:
        raise ValueError(f"quarter span ends before it starts: {start}..{end}")
    out = [start]
    while out[-1] < end:
        out.append(out[-1].next())
    return out


@dataclass(frozen=True)
class SpeechRecord:
    date: dt.date
    country: str
    text: str


@dataclass
class Corpus:
    records: list[SpeechRecord]
    rows_read: int
    skipped: list[tuple[int, str]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


def parse_date(raw: str) -> dt.date | None:
    raw = (raw or "").strip()
    if not raw:
        return None
    try:
        return dt.date.fromisoformat(raw[:10])
    except ValueError:
        pass
    for fmt in _DATE_FORMATS:
        try:
            return dt.datetime.strptime(raw, fmt).date()
        except ValueError:
            continue
    return None


def load_corpus(
    path: str | Path,
    date_col: str = "date",
    country_col: str = "country",
    text_col: str = "text",
) -> Corpus:
    """Read a speech CSV. Rows with unparseable dates or empty text are skipped
    and listed in ``Corpus.skipped`` as (data row number, reason)."""
    path = Path(path)
    if not path.is_file():
        raise CorpusError(f"corpus file not found: {path}")
    csv.field_size_limit(min(sys.maxsize, 2**31 - 1))
    records: list[SpeechRecord] = []
    skipped: list[tuple[int, str]] = []
    rows = 0
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for col in (date_col, country_col, text_col):
            if col not in header:
                raise CorpusError(f"{path}: required column {col!r} missing (found {header})")
        for rows, row in enumerate(reader, start=1):
            date = parse_date(row.get(date_col) or "")
            if date is None:
                skipped.append((rows, f"unparseable date {row.get(date_col)!r}"))
                continue
            text = row.get(text_col) or ""
            if not text.strip():
                skipped.append((rows, "empty text"))
                continue
            records.append(SpeechRecord(date, (row.get(country_col) or "").strip(), text))
    if skipped:
        log.warning("%s: skipped %d of %d rows", path, len(skipped), rows)
    if not records:
        raise CorpusError(f"{path}: no usable rows ({rows} read, {len(skipped)} skipped)")
    return Corpus(records, rows, skipped)


def filter_country(records: Iterable[SpeechRecord], label: str) -> list[SpeechRecord]:
    want = label.strip().casefold()
    out = [r for r in records if r.country.strip().casefold() == want]
    if not out:
        log.warning("no speeches with country %r", label)
    return out


def normalize(text: str) -> str:
    text = text.lower()
    text = _PUNCT.sub("", text)
    return _DIGITS.sub("", text)


def load_word_list(path: str | Path) -> list[str]:
    """One entry per line; blank lines and lines starting with ';' are ignored."""
    out = []
    for line in Path(path).read_text(encoding="utf-8", errors="replace").splitlines():
        line = line.strip()
        if line and not line.startswith(";"):
            out.append(line)
    return out


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Stopwords normalised like corpus text. ``None`` loads the bundled English list."""
    if path is None:
        ref = resources.files("animal_spirits") / "data" / "stopwords_en.txt"
        with resources.as_file(ref) as p:
            words = load_word_list(p)
    else:
        words = load_word_list(path)
    return frozenset(w for w in (normalize(x).strip() for x in words) if w)


def preprocess(text: str, stopwords: Iterable[str] = frozenset()) -> list[str]:
    stopwords = stopwords if isinstance(stopwords, (set, frozenset)) else frozenset(stopwords)
    tokens = [t for t in normalize(text).split() if t not in stopwords]
    return [s for s in (stem(t) for t in tokens) if s]


@dataclass(frozen=True)
class Lexicon:
    positive: frozenset[str]
    negative: frozenset[str]
    conflicts: frozenset[str] = frozenset()

    def __post_init__(self):
        both = self.positive & self.negative
        if both:
            raise LexiconError(f"lexicon sides overlap: {sorted(both)[:10]}")

    @classmethod
    def from_words(cls, positive: Iterable[str], negative: Iterable[str]) -> "Lexicon":
        """Normalise and stem raw entries; stems claimed by both sides are dropped."""
        def stems(words: Iterable[str]) -> set[str]:
            out = set()
            for w in words:
                parts = normalize(w).split()
                if len(parts) == 1:
                    out.add(stem(parts[0]))
            return out

        pos, neg = stems(positive), stems(negative)
        conflicts = pos & neg
        if conflicts:
            log.warning("dropping %d stems found on both lexicon sides: %s",
                        len(conflicts), ", ".join(sorted(conflicts)[:20]))
        return cls(frozenset(pos - conflicts), frozenset(neg - conflicts), frozenset(conflicts))

    @classmethod
    def from_files(cls, positive_path: str | Path, negative_path: str | Path) -> "Lexicon":
        for p in (positive_path, negative_path):
            if not Path(p).is_file():
                raise LexiconError(f"lexicon file not found: {p}")
        return cls.from_words(load_word_list(positive_path), load_word_list(negative_path))


def score_quarter(tokens: Iterable[str], lexicon: Lexicon) -> tuple[int, int, int]:
    """(positive hits, negative hits, all tokens)."""
    counts = Counter(tokens)
    pos = sum(n for w, n in counts.items() if w in lexicon.positive)
    neg = sum(n for w, n in counts.items() if w in lexicon.negative)
    return pos, neg, sum(counts.values())


def sentiment_index(pos_weight: int, neg_weight_abs: int, total_words: int) -> float | None:
    """(pos - |neg|) / total, or None for a quarter without words."""
    if total_words < 0:
        raise ValueError("total_words must be non-negative")
    if total_words == 0:
        return None
    return (pos_weight - abs(neg_weight_abs)) / total_words


@dataclass(frozen=True)
class QuarterlySentiment:
    quarter: Quarter
    pos_weight: int
    neg_weight_abs: int
    total_words: int
    n_speeches: int
    index: float | None

    @property
    def missing(self) -> bool:
        return self.index is None


def build_index(
    records: Sequence[SpeechRecord],
    lexicon: Lexicon,
    stopwords: Iterable[str],
    start: Quarter,
    end: Quarter,
) -> list[QuarterlySentiment]:
    """One entry per quarter in ``start..end``; speeches outside are ignored."""
    stopwords = frozenset(stopwords)
    span = quarter_span(start, end)
    pooled: dict[Quarter, Counter] = {q: Counter() for q in span}
    n_speeches: Counter = Counter()
    for rec in records:
        q = assign_quarter(rec.date)
        if q in pooled:
            pooled[q].update(preprocess(rec.text, stopwords))
            n_speeches[q] += 1
    out = []
    for q in span:
        pos, neg, total = score_quarter(pooled[q].elements(), lexicon)
        out.append(QuarterlySentiment(q, pos, neg, total, n_speeches[q], sentiment_index(pos, neg, total)))
    return out


SENTIMENT_COLUMNS = ("quarter", "pos", "neg", "total", "n_speeches", "index")


def write_sentiment_csv(rows: Sequence[QuarterlySentiment], path: str | Path | None = None) -> str:
    """Quarterly CSV; a missing index is written as an empty field."""
    lines = [",".join(SENTIMENT_COLUMNS)]
    for r in rows:
        idx = "" if r.index is None else repr(r.index)
        lines.append(f"{r.quarter},{r.pos_weight},{r.neg_weight_abs},{r.total_words},{r.n_speeches},{idx}")
    text = "\n".join(lines) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def read_sentiment_csv(path: str | Path) -> list[QuarterlySentiment]:
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in ("quarter", "index") if c not in (reader.fieldnames or [])]
        if missing:
            raise CorpusError(f"{path}: sentiment CSV lacks column(s) {missing}")
        out = []
        for row in reader:
            idx = row["index"].strip()
            out.append(QuarterlySentiment(
                Quarter.parse(row["quarter"]),
                int(row.get("pos") or 0),
                int(row.get("neg") or 0),
                int(row.get("total") or 0),
                int(row.get("n_speeches") or 0),
                float(idx) if idx else None,
            ))
    return out
