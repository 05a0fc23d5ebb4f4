"""Sentence-level similarity metrics used as alignment-filter features.

Four scores per candidate pair: BLEU and GLEU on token n-grams, a simplified
METEOR (exact + stem matching only), and a character n-gram F-score that
occupies the fourth, "soft" feature slot. All return values lie in [0, 1].
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Sequence

from stilo.errors import DataError
from stilo.morphology import default_stemmer
from stilo.textproc import Language, tokenize

BLEU_EPSILON = 1e-9
CHRF_ORDER = 6
CHRF_BETA = 2.0


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(hyp_tokens: Sequence[str], ref_tokens: Sequence[str], max_n: int = 4) -> float:
    """Sentence BLEU: geometric mean of modified precisions times brevity penalty.

    Zero precisions (including orders longer than the hypothesis) are floored
    at 1e-9. An empty hypothesis scores 0.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    if not hyp_tokens:
        return 0.0
    log_sum = 0.0
    for n in range(1, max_n + 1):
        hyp_counts = _ngrams(hyp_tokens, n)
        total = sum(hyp_counts.values())
        if total == 0:
            precision = 0.0
        else:
            ref_counts = _ngrams(ref_tokens, n)
            matched = sum(min(count, ref_counts[gram]) for gram, count in hyp_counts.items())
            precision = matched / total
        if precision == 0.0:
            precision = BLEU_EPSILON
        log_sum += math.log(precision)
    brevity = min(1.0, math.exp(1.0 - len(ref_tokens) / len(hyp_tokens)))
    return brevity * math.exp(log_sum / max_n)


def gleu(hyp_tokens: Sequence[str], ref_tokens: Sequence[str], max_n: int = 4) -> float:
    """Google BLEU: min of pooled n-gram precision and recall over n = 1..max_n."""
    if not hyp_tokens and not ref_tokens:
        return 1.0
    if not hyp_tokens or not ref_tokens:
        return 0.0
    matched = 0
    total_hyp = 0
    total_ref = 0
    for n in range(1, max_n + 1):
        hyp_counts = _ngrams(hyp_tokens, n)
        ref_counts = _ngrams(ref_tokens, n)
        matched += sum(min(count, ref_counts[gram]) for gram, count in hyp_counts.items())
        total_hyp += sum(hyp_counts.values())
        total_ref += sum(ref_counts.values())
    if total_hyp == 0 or total_ref == 0:
        return 0.0
    return min(matched / total_hyp, matched / total_ref)


def _greedy_alignment(
    hyp_tokens: Sequence[str], ref_tokens: Sequence[str], stemmer: Callable[[str], str]
) -> list[tuple[int, int]]:
    """One-to-one unigram alignment: exact matches first, then stem matches."""
    hyp_match: dict[int, int] = {}
    ref_used = [False] * len(ref_tokens)
    for i, token in enumerate(hyp_tokens):
        for j, ref_token in enumerate(ref_tokens):
            if not ref_used[j] and token == ref_token:
                hyp_match[i] = j
                ref_used[j] = True
                break
    hyp_stems = [stemmer(t) for t in hyp_tokens]
    ref_stems = [stemmer(t) for t in ref_tokens]
    for i, stem in enumerate(hyp_stems):
        if i in hyp_match:
            continue
        for j, ref_stem in enumerate(ref_stems):
            if not ref_used[j] and stem == ref_stem:
                hyp_match[i] = j
                ref_used[j] = True
                break
    return sorted(hyp_match.items())


def _count_chunks(pairs: list[tuple[int, int]]) -> int:
    chunks = 0
    prev: tuple[int, int] | None = None
    for i, j in pairs:
        if prev is None or i != prev[0] + 1 or j != prev[1] + 1:
            chunks += 1
        prev = (i, j)
    return chunks


def meteor_lite(
    hyp_tokens: Sequence[str],
    ref_tokens: Sequence[str],
    stemmer: Callable[[str], str] | None = None,
) -> float:
    """Simplified METEOR: greedy exact+stem alignment, F-mean, chunk penalty.

    F = 10PR / (R + 9P); penalty = 0.5 * (chunks / matches)^3 where a chunk is
    a maximal run of matches contiguous in both hypothesis and reference order.
    """
    if stemmer is None:
        stemmer = default_stemmer()
    pairs = _greedy_alignment(hyp_tokens, ref_tokens, stemmer)
    matches = len(pairs)
    if matches == 0:
        return 0.0
    precision = matches / len(hyp_tokens)
    recall = matches / len(ref_tokens)
    fmean = 10.0 * precision * recall / (recall + 9.0 * precision)
    chunks = _count_chunks(pairs)
    penalty = 0.5 * (chunks / matches) ** 3
    return fmean * (1.0 - penalty)


def _char_ngrams(text: str, n: int) -> Counter:
    return Counter(text[i : i + n] for i in range(len(text) - n + 1))


def chrf(hyp: str, ref: str, n: int = CHRF_ORDER, beta: float = CHRF_BETA) -> float:
    """Character n-gram F-beta averaged over orders 1..n, whitespace removed.

    Orders where either side has no n-grams are skipped (effective order).
    """
    hyp_chars = "".join(hyp.split())
    ref_chars = "".join(ref.split())
    if not hyp_chars and not ref_chars:
        return 1.0
    if not hyp_chars or not ref_chars:
        return 0.0
    precision_sum = 0.0
    recall_sum = 0.0
    orders = 0
    for order in range(1, n + 1):
        hyp_counts = _char_ngrams(hyp_chars, order)
        ref_counts = _char_ngrams(ref_chars, order)
        total_hyp = sum(hyp_counts.values())
        total_ref = sum(ref_counts.values())
        if total_hyp == 0 or total_ref == 0:
            continue
        matched = sum(min(count, ref_counts[gram]) for gram, count in hyp_counts.items())
        precision_sum += matched / total_hyp
        recall_sum += matched / total_ref
        orders += 1
    if orders == 0:
        return 0.0
    precision = precision_sum / orders
    recall = recall_sum / orders
    if precision == 0.0 and recall == 0.0:
        return 0.0
    beta_sq = beta * beta
    return (1.0 + beta_sq) * precision * recall / (beta_sq * precision + recall)


@dataclass(frozen=True)
class ScoreVector:
    bleu: float
    gleu: float
    meteor: float
    chrf: float

    def __post_init__(self):
        for name, value in self.as_dict().items():
            if not math.isfinite(value) or not 0.0 <= value <= 1.0:
                raise DataError(f"score component {name}={value!r} outside [0, 1]")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.bleu, self.gleu, self.meteor, self.chrf)

    def as_dict(self) -> dict[str, float]:
        return {"bleu": self.bleu, "gleu": self.gleu, "meteor": self.meteor, "chrf": self.chrf}


def score_pair(
    mt_of_src: str,
    tgt: str,
    language: Language = Language.TR,
    stemmer: Callable[[str], str] | None = None,
) -> ScoreVector:
    """Score a candidate pair: the MT output of the source side is the
    reference, the candidate target sentence is the hypothesis."""
    ref_tokens = tokenize(mt_of_src, language)
    hyp_tokens = tokenize(tgt, language)
    if stemmer is None:
        stemmer = default_stemmer(language)
    return ScoreVector(
        bleu=bleu(hyp_tokens, ref_tokens),
        gleu=gleu(hyp_tokens, ref_tokens),
        meteor=meteor_lite(hyp_tokens, ref_tokens, stemmer),
        chrf=chrf(tgt, mt_of_src),
    )
