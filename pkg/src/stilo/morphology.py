"""Pluggable morpheme segmentation and stemming.

The default segmenter is lexicon-backed with a heuristic fallback that strips
a fixed, ordered inventory of common Turkish inflectional suffixes. It is a
stand-in: any analyzer satisfying the MorphemeSegmenter protocol can replace
it, and the segment invariant (concatenation == lowercased token, >= 1 piece)
is all downstream code relies on.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Callable, Protocol

from stilo.errors import DataError
from stilo.textproc import Language, lowercase_tr


class MorphemeSegmenter(Protocol):
    def segment(self, token: str, language: Language) -> list[str]: ...


# Ordered longest-first inside each pass; plural before case before possessive
# mirrors the usual surface order when peeling from the right.
_TR_SUFFIXES = (
    "lardan", "lerden", "larda", "lerde", "ların", "lerin", "ları", "leri",
    "lar", "ler",
    "ımız", "imiz", "umuz", "ümüz", "ınız", "iniz", "unuz", "ünüz",
    "ndan", "nden", "nda", "nde", "nın", "nin", "nun", "nün",
    "dan", "den", "tan", "ten", "da", "de", "ta", "te",
    "yı", "yi", "yu", "yü", "ya", "ye",
    "ın", "in", "un", "ün", "ım", "im", "um", "üm",
    "sı", "si", "su", "sü",
    "mış", "miş", "muş", "müş", "acak", "ecek", "ıyor", "iyor", "uyor", "üyor",
    "dı", "di", "du", "dü", "tı", "ti", "tu", "tü",
    "mak", "mek", "ca", "ce", "ça", "çe", "la", "le", "ki",
    "ı", "i", "u", "ü", "a", "e",
)

_EN_SUFFIXES = ("ingly", "edly", "ings", "ing", "edness", "ed", "ness", "ly", "es", "s")

_MIN_STEM = 2


def _strip_suffixes(word: str, suffixes: tuple[str, ...]) -> list[str]:
    pieces: list[str] = []
    while True:
        hit = None
        for suffix in suffixes:
            if word.endswith(suffix) and len(word) - len(suffix) >= _MIN_STEM:
                hit = suffix
                break
        if hit is None:
            break
        pieces.append(hit)
        word = word[: -len(hit)]
    pieces.append(word)
    pieces.reverse()
    return pieces


class SuffixSegmenter:
    """Heuristic fallback: peel known inflectional suffixes off the right edge."""

    def segment(self, token: str, language: Language) -> list[str]:
        word = lowercase_tr(token) if language == Language.TR else token.lower()
        if not word:
            return [word]
        if "'" in word:
            # Turkish clitics after an apostrophe count as one bound piece.
            head, _, tail = word.rpartition("'")
            if head and tail:
                return _strip_suffixes(head, self._table(language)) + ["'" + tail]
        return _strip_suffixes(word, self._table(language))

    @staticmethod
    def _table(language: Language) -> tuple[str, ...]:
        return _TR_SUFFIXES if language == Language.TR else _EN_SUFFIXES


class LexiconSegmenter:
    """TSV lexicon (token<TAB>seg1+seg2+...) consulted first, fallback after."""

    def __init__(self, lexicon: dict[str, list[str]], fallback: MorphemeSegmenter | None = None):
        self.lexicon = lexicon
        self.fallback = fallback or SuffixSegmenter()

    @classmethod
    def from_tsv(cls, path: str | Path, fallback: MorphemeSegmenter | None = None) -> "LexiconSegmenter":
        lexicon: dict[str, list[str]] = {}
        for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip():
                continue
            try:
                token, segmentation = line.split("\t")
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: expected token<TAB>segments") from exc
            segments = [s for s in segmentation.strip().split("+") if s]
            if not segments or "".join(segments) != lowercase_tr(token.strip()):
                raise DataError(
                    f"{path}:{lineno}: segments must concatenate to the lowercased token"
                )
            lexicon[lowercase_tr(token.strip())] = segments
        return cls(lexicon, fallback)

    def segment(self, token: str, language: Language) -> list[str]:
        word = lowercase_tr(token) if language == Language.TR else token.lower()
        hit = self.lexicon.get(word)
        if hit is not None:
            return list(hit)
        return self.fallback.segment(token, language)


def default_segmenter() -> LexiconSegmenter:
    """Bundled demo lexicon plus the suffix-stripping fallback."""
    with resources.as_file(resources.files("stilo.data") / "morph_lexicon_tr.tsv") as path:
        return LexiconSegmenter.from_tsv(path)


def default_stemmer(language: Language = Language.TR) -> Callable[[str], str]:
    """Longest-suffix-strip stemmer: the first morpheme of the fallback segmenter."""
    segmenter = SuffixSegmenter()

    def stem(token: str) -> str:
        return segmenter.segment(token, language)[0]

    return stem


def identity_stemmer(token: str) -> str:
    return token
