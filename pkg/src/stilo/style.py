"""Translator-style vectors: 29 features, reference min-max normalization, and
cosine/Pearson comparison between two translations.

Feature conventions, fixed once for comparability across books:
  * word-level features use alphabetic tokens only (a token counts as a word
    when it contains at least one letter), lowercased Turkish-style;
  * sentence lengths are in tokens, punctuation tokens included;
  * focus words and reduplications are rates per 1,000 word tokens;
  * ellipsis/question/exclamation are fractions of sentences;
  * unique-word counts are per 10,000-token window (mean over full windows,
    short documents scaled up from the whole document);
  * standard deviations are population; the median of an even-length list is
    the lower middle value; mode ties break toward the smallest value.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from stilo.errors import DataError
from stilo.ioutil import read_text, write_json
from stilo.morphology import MorphemeSegmenter, default_segmenter
from stilo.textproc import Document, Language, Terminal, lowercase_tr

FOCUS_WORDS = (
    "gelgelelim",
    "gelgeldim",
    "maamafih",
    "gene",
    "ki",
    "ve",
    "pek",
    "hem",
    "derken",
    "acaba",
    "sahiden",
    "doğallıkla",
)

FEATURE_NAMES = (
    # word level
    "type_token_ratio",
    "unique_words",
    "unique_words_t10",
    "mean_word_len_chars",
    "std_word_len_chars",
    "reduplications",
    # sentence level
    "ellipsis_rate",
    "question_rate",
    "exclamation_rate",
    "mean_sent_len",
    "std_sent_len",
    "median_sent_len",
    "mode_sent_len",
    # morphology
    "avg_morph_per_sent",
    "median_morph_per_sent",
    "avg_morph_per_word",
    "median_morph_per_word",
    # focus words
    *(f"freq_{word}" for word in FOCUS_WORDS),
)

WINDOW_TOKENS = 10_000
RATE_BASE = 1_000.0
TYPE_FREQ_THRESHOLD = 10

STATS_VERSION = 1

_VOWELS = set("aeıioöuü")


@dataclass(frozen=True)
class StyleVector:
    values: dict[str, float]
    normalized: bool = False

    def __post_init__(self):
        if tuple(self.values.keys()) != FEATURE_NAMES:
            raise DataError("style vector must carry exactly the 29 canonical features in order")
        for name, value in self.values.items():
            if not math.isfinite(value):
                raise DataError(f"feature {name} is not finite: {value!r}")

    def as_list(self) -> list[float]:
        return [self.values[name] for name in FEATURE_NAMES]


@dataclass(frozen=True)
class ReferenceStats:
    mins: dict[str, float]
    maxs: dict[str, float]
    n_documents: int

    def __post_init__(self):
        if tuple(self.mins.keys()) != FEATURE_NAMES or tuple(self.maxs.keys()) != FEATURE_NAMES:
            raise DataError("reference stats must carry the 29 canonical features in order")
        if self.n_documents < 2:
            raise DataError("reference stats need at least 2 documents")
        for name in FEATURE_NAMES:
            if self.mins[name] > self.maxs[name]:
                raise DataError(f"reference stats: min > max for feature {name}")


def is_word_token(token: str) -> bool:
    return any(ch.isalpha() for ch in token)


def mode_of(lengths: list[int]) -> int:
    """Most frequent value; ties break toward the smallest value."""
    if not lengths:
        raise DataError("mode of an empty list")
    counts = Counter(lengths)
    best_count = max(counts.values())
    return min(value for value, count in counts.items() if count == best_count)


def _median(values: list[float]) -> float:
    if not values:
        raise DataError("median of an empty list")
    ordered = sorted(values)
    return ordered[(len(ordered) - 1) // 2]


def _mean(values: list[float]) -> float:
    return math.fsum(values) / len(values)


def _pstdev(values: list[float], mean: float) -> float:
    return math.sqrt(math.fsum((v - mean) ** 2 for v in values) / len(values))


def _m_echo(word: str) -> str | None:
    """The m-reduplication echo of a word: onset consonants replaced by "m"."""
    idx = 0
    while idx < len(word) and word[idx] not in _VOWELS:
        idx += 1
    if idx == len(word):
        return None
    return "m" + word[idx:]


def _windowed_type_counts(words: list[str]) -> tuple[float, float]:
    """(unique words, unique words with freq >= 10) per 10,000-token window."""
    total = len(words)
    if total >= WINDOW_TOKENS:
        uniques = []
        heavy = []
        for start in range(0, total - WINDOW_TOKENS + 1, WINDOW_TOKENS):
            window = Counter(words[start : start + WINDOW_TOKENS])
            uniques.append(float(len(window)))
            heavy.append(float(sum(1 for c in window.values() if c >= TYPE_FREQ_THRESHOLD)))
        return _mean(uniques), _mean(heavy)
    counts = Counter(words)
    scale = WINDOW_TOKENS / total
    heavy_count = sum(1 for c in counts.values() if c >= TYPE_FREQ_THRESHOLD)
    return len(counts) * scale, heavy_count * scale


def extract_style(doc: Document, segmenter: MorphemeSegmenter | None = None) -> StyleVector:
    """Raw 29-feature style vector of a segmented Turkish document."""
    if segmenter is None:
        segmenter = default_segmenter()
    if doc.language != Language.TR:
        raise DataError(f"style features are defined for Turkish documents, got {doc.language}")
    if not doc.sentences:
        raise DataError(f"document {doc.id!r} has no sentences")

    sent_words: list[list[str]] = []
    for sentence in doc.sentences:
        sent_words.append([lowercase_tr(t) for t in sentence.tokens if is_word_token(t)])
    words = [w for sw in sent_words for w in sw]
    if not words:
        raise DataError(f"document {doc.id!r} has no word tokens")

    word_counts = Counter(words)
    word_lens = [float(len(w)) for w in words]
    mean_word_len = _mean(word_lens)
    unique_words, unique_words_t10 = _windowed_type_counts(words)

    # reduplication: adjacent identical or m-echo word pairs inside a sentence
    redup = 0
    for sentence in doc.sentences:
        lowered = [lowercase_tr(t) for t in sentence.tokens]
        for a, b in zip(lowered, lowered[1:]):
            if not (is_word_token(a) and is_word_token(b)):
                continue
            if a == b or b == _m_echo(a):
                redup += 1

    n_sent = len(doc.sentences)
    sent_lens = [len(s.tokens) for s in doc.sentences]
    mean_sent_len = _mean([float(l) for l in sent_lens])

    morph_cache: dict[str, int] = {}

    def morph_count(word: str) -> int:
        if word not in morph_cache:
            morph_cache[word] = len(segmenter.segment(word, Language.TR))
        return morph_cache[word]

    morph_per_word = [float(morph_count(w)) for w in words]
    morph_per_sent = [float(sum(morph_count(w) for w in sw)) for sw in sent_words]
    total_morphs = math.fsum(morph_per_word)

    n_words = len(words)
    values = {
        "type_token_ratio": len(word_counts) / n_words,
        "unique_words": unique_words,
        "unique_words_t10": unique_words_t10,
        "mean_word_len_chars": mean_word_len,
        "std_word_len_chars": _pstdev(word_lens, mean_word_len),
        "reduplications": redup * RATE_BASE / n_words,
        "ellipsis_rate": sum(s.terminal == Terminal.ELLIPSIS for s in doc.sentences) / n_sent,
        "question_rate": sum(s.terminal == Terminal.QUESTION for s in doc.sentences) / n_sent,
        "exclamation_rate": sum(s.terminal == Terminal.EXCLAMATION for s in doc.sentences)
        / n_sent,
        "mean_sent_len": mean_sent_len,
        "std_sent_len": _pstdev([float(l) for l in sent_lens], mean_sent_len),
        "median_sent_len": _median([float(l) for l in sent_lens]),
        "mode_sent_len": float(mode_of(sent_lens)),
        "avg_morph_per_sent": total_morphs / n_sent,
        "median_morph_per_sent": _median(morph_per_sent),
        "avg_morph_per_word": total_morphs / n_words,
        "median_morph_per_word": _median(morph_per_word),
    }
    for word in FOCUS_WORDS:
        values[f"freq_{word}"] = word_counts.get(word, 0) * RATE_BASE / n_words
    return StyleVector(values=values, normalized=False)


def fit_reference(
    reference_docs: list[Document], segmenter: MorphemeSegmenter | None = None
) -> ReferenceStats:
    """Per-feature min/max over the raw style vectors of the reference corpus."""
    if len(reference_docs) < 2:
        raise DataError("reference corpus needs at least 2 documents")
    if segmenter is None:
        segmenter = default_segmenter()
    vectors = [extract_style(doc, segmenter) for doc in reference_docs]
    mins = {name: min(v.values[name] for v in vectors) for name in FEATURE_NAMES}
    maxs = {name: max(v.values[name] for v in vectors) for name in FEATURE_NAMES}
    return ReferenceStats(mins=mins, maxs=maxs, n_documents=len(reference_docs))


def normalize_style(vector: StyleVector, stats: ReferenceStats) -> StyleVector:
    """Min-max map each feature against the reference corpus range.

    A degenerate reference feature (min == max) maps to 0.5; values outside
    the reference range are not clipped.
    """
    values = {}
    for name in FEATURE_NAMES:
        low = stats.mins[name]
        high = stats.maxs[name]
        raw = vector.values[name]
        if high == low:
            values[name] = 0.5
        else:
            values[name] = (raw - low) / (high - low)
    return StyleVector(values=values, normalized=True)


def style_similarity(a: StyleVector, b: StyleVector) -> tuple[float, float]:
    """(cosine, Pearson) over the 29 normalized entries."""
    if not (a.normalized and b.normalized):
        raise DataError("style_similarity expects normalized vectors")
    xs = a.as_list()
    ys = b.as_list()
    dot = math.fsum(x * y for x, y in zip(xs, ys))
    norm_x = math.sqrt(math.fsum(x * x for x in xs))
    norm_y = math.sqrt(math.fsum(y * y for y in ys))
    if norm_x == 0.0 or norm_y == 0.0:
        raise DataError("cosine undefined for a zero-norm style vector")
    cosine = dot / (norm_x * norm_y)
    mean_x = _mean(xs)
    mean_y = _mean(ys)
    cov = math.fsum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys)) / len(xs)
    std_x = _pstdev(xs, mean_x)
    std_y = _pstdev(ys, mean_y)
    if std_x == 0.0 or std_y == 0.0:
        raise DataError("Pearson undefined for a zero-variance style vector")
    return cosine, cov / (std_x * std_y)


@dataclass(frozen=True)
class StyleReport:
    feature_names: tuple[str, ...]
    raw_a: dict[str, float]
    raw_b: dict[str, float]
    norm_a: dict[str, float]
    norm_b: dict[str, float]
    cosine: float
    pearson: float

    def rows(self) -> list[tuple[str, float, float, float, float]]:
        return [
            (name, self.raw_a[name], self.raw_b[name], self.norm_a[name], self.norm_b[name])
            for name in self.feature_names
        ]

    def to_tsv(self) -> str:
        lines = ["feature\traw_a\traw_b\tnorm_a\tnorm_b"]
        for name, ra, rb, na, nb in self.rows():
            lines.append(f"{name}\t{ra!r}\t{rb!r}\t{na!r}\t{nb!r}")
        return "\n".join(lines) + "\n"

    def summary(self) -> dict[str, float]:
        return {"cosine": self.cosine, "pearson": self.pearson}


def evaluate_style(
    model_translation: Document,
    human_translation: Document,
    stats: ReferenceStats,
    segmenter: MorphemeSegmenter | None = None,
) -> StyleReport:
    """Extract, normalize, and compare two translations of the same source."""
    if segmenter is None:
        segmenter = default_segmenter()
    raw_a = extract_style(model_translation, segmenter)
    raw_b = extract_style(human_translation, segmenter)
    norm_a = normalize_style(raw_a, stats)
    norm_b = normalize_style(raw_b, stats)
    cosine, pearson = style_similarity(norm_a, norm_b)
    return StyleReport(
        feature_names=FEATURE_NAMES,
        raw_a=raw_a.values,
        raw_b=raw_b.values,
        norm_a=norm_a.values,
        norm_b=norm_b.values,
        cosine=cosine,
        pearson=pearson,
    )


def save_stats(stats: ReferenceStats, path) -> None:
    write_json(
        path,
        {
            "version": STATS_VERSION,
            "n_documents": stats.n_documents,
            "features": list(FEATURE_NAMES),
            "min": [stats.mins[name] for name in FEATURE_NAMES],
            "max": [stats.maxs[name] for name in FEATURE_NAMES],
        },
    )


def load_stats(path) -> ReferenceStats:
    import json

    try:
        payload = json.loads(read_text(path))
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: invalid stats JSON: {exc}") from exc
    if payload.get("version") != STATS_VERSION:
        raise DataError(f"{path}: unsupported stats version {payload.get('version')!r}")
    if tuple(payload.get("features", ())) != FEATURE_NAMES:
        raise DataError(f"{path}: stats file does not carry the 29 canonical features")
    mins = dict(zip(FEATURE_NAMES, payload["min"]))
    maxs = dict(zip(FEATURE_NAMES, payload["max"]))
    return ReferenceStats(mins=mins, maxs=maxs, n_documents=int(payload["n_documents"]))
