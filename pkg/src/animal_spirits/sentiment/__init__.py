from .pipeline import (
    Corpus,
    CorpusError,
    Lexicon,
    LexiconError,
    Quarter,
    QuarterlySentiment,
    SpeechRecord,
    assign_quarter,
    build_index,
    filter_country,
    load_corpus,
    load_stopwords,
    load_word_list,
    normalize,
    preprocess,
    quarter_span,
    read_sentiment_csv,
    score_quarter,
    sentiment_index,
    write_sentiment_csv,
)
from .porter import stem

__all__ = [
    "Corpus",
    "CorpusError",
    "Lexicon",
    "LexiconError",
    "Quarter",
    "QuarterlySentiment",
    "SpeechRecord",
    "assign_quarter",
    "build_index",
    "filter_country",
    "load_corpus",
    "load_stopwords",
    "load_word_list",
    "normalize",
    "preprocess",
    "quarter_span",
    "read_sentiment_csv",
    "score_quarter",
    "sentiment_index",
    "stem",
    "write_sentiment_csv",
]
