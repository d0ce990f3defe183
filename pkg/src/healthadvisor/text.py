"""Deterministic sentence splitting and tokenization shared by the text stages."""
import re
from importlib import resources

_SENTENCE_BREAK = re.compile(r"[.!?\n]")
# anything that is not a letter or digit separates tokens
_TOKEN_BREAK = re.compile(r"[\W_]+", re.UNICODE)


def split_sentences(text):
    """Split on '.', '!', '?' and newlines, dropping empty pieces."""
    return [s.strip() for s in _SENTENCE_BREAK.split(text) if s.strip()]


def tokenize(text):
    return [t for t in _TOKEN_BREAK.split(text.lower()) if t]


def load_stopwords():
    raw = resources.files("healthadvisor").joinpath("data/stopwords.txt").read_text("utf-8")
    return frozenset(
        line.strip().lower() for line in raw.splitlines() if line.strip() and not line.startswith("#")
    )


STOPWORDS = load_stopwords()


def slugify(name):
    """'Parkinson's disease' -> 'parkinson_s_disease'."""
    return "_".join(tokenize(name))
