"""The original Porter (1980) suffix-stripping stemmer.

Implements the algorithm as published, without the later extensions found in
the reference C code (no ``bli -> ble`` or ``logi -> log`` rules). Input is
expected to be a lowercase ASCII word; words of two letters or fewer are
returned unchanged.

Step tables, as (suffix, replacement) pairs; within a step the longest
matching suffix is selected and, if its condition fails, the step ends:

    1a  sses->ss  ies->i  ss->ss  s->
    1b  (m>0) eed->ee   (*v*) ed->   (*v*) ing->
        after ed/ing removal: at->ate  bl->ble  iz->ize,
        double consonant (not l, s, z) -> single,  (m=1 and *o) -> +e
    1c  (*v*) y->i
    2   (m>0) ational->ate tional->tion enci->ence anci->ance izer->ize
        abli->able alli->al entli->ent eli->e ousli->ous ization->ize
        ation->ate ator->ate alism->al iveness->ive fulness->ful
        ousness->ous aliti->al iviti->ive biliti->ble
    3   (m>0) icate->ic ative-> alize->al iciti->ic ical->ic ful-> ness->
    4   (m>1) al ance ence er ic able ible ant ement ment ent
        ion (preceded by s or t) ou ism ate iti ous ive ize  -> removed
    5a  (m>1) e->   (m=1 and not *o) e->
    5b  (m>1 and *d and *L) -> single letter
"""
from __future__ import annotations

from functools import lru_cache

_VOWELS = frozenset("aeiou")

_STEP2 = (
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("abli", "able"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
)
_STEP3 = (
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
)
_STEP4 = (
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment",
    "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
)


def _is_consonant(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        return i == 0 or not _is_consonant(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """m in [C](VC)^m[V]."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        cons = _is_consonant(stem, i)
        if cons and prev_vowel:
            m += 1
        prev_vowel = not cons
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_consonant(stem, i) for i in range(len(stem)))


def _ends_double_consonant(word: str) -> bool:
    return len(word) >= 2 and word[-1] == word[-2] and _is_consonant(word, len(word) - 1)


def _ends_cvc(word: str) -> bool:
    if len(word) < 3:
        return False
    return (
        _is_consonant(word, len(word) - 3)
        and not _is_consonant(word, len(word) - 2)
        and _is_consonant(word, len(word) - 1)
        and word[-1] not in "wxy"
    )


def _longest(word: str, suffixes):
    best = None
    for entry in suffixes:
        suffix = entry[0] if isinstance(entry, tuple) else entry
        if word.endswith(suffix) and (best is None or len(suffix) > len(best[0])):
            best = (suffix, entry)
    return best


def _step1a(w: str) -> str:
    if w.endswith("sses"):
        return w[:-2]
    if w.endswith("ies"):
        return w[:-2]
    if w.endswith("ss"):
        return w
    if w.endswith("s"):
        return w[:-1]
    return w


def _step1b(w: str) -> str:
    if w.endswith("eed"):
        return w[:-1] if _measure(w[:-3]) > 0 else w
    for suffix in ("ed", "ing"):
        if w.endswith(suffix):
            stem = w[: -len(suffix)]
            if not _has_vowel(stem):
                return w
            return _step1b_tidy(stem)
    return w


def _step1b_tidy(w: str) -> str:
    if w.endswith(("at", "bl", "iz")):
        return w + "e"
    if _ends_double_consonant(w) and w[-1] not in "lsz":
        return w[:-1]
    if _measure(w) == 1 and _ends_cvc(w):
        return w + "e"
    return w


def _step1c(w: str) -> str:
    if w.endswith("y") and _has_vowel(w[:-1]):
        return w[:-1] + "i"
    return w


def _replace_step(w: str, table, min_m: int) -> str:
    hit = _longest(w, table)
    if hit is None:
        return w
    suffix, (_, repl) = hit
    stem = w[: -len(suffix)]
    return stem + repl if _measure(stem) > min_m else w


def _step4(w: str) -> str:
    hit = _longest(w, _STEP4)
    if hit is None:
        return w
    suffix = hit[0]
    stem = w[: -len(suffix)]
    if _measure(stem) <= 1:
        return w
    if suffix == "ion" and not stem.endswith(("s", "t")):
        return w
    return stem


def _step5(w: str) -> str:
    if w.endswith("e"):
        stem = w[:-1]
        m = _measure(stem)
        if m > 1 or (m == 1 and not _ends_cvc(stem)):
            w = stem
    if w.endswith("ll") and _measure(w) > 1:
        w = w[:-1]
    return w


@lru_cache(maxsize=65536)
def stem(word: str) -> str:
    """Return the Porter stem of a lowercase word."""
    if len(word) <= 2:
        return word
    w = _step1a(word)
    w = _step1b(w)
    w = _step1c(w)
    w = _replace_step(w, _STEP2, 0)
    w = _replace_step(w, _STEP3, 0)
    w = _step4(w)
    w = _step5(w)
    return w
