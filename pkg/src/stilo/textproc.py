"""Text ingestion: punctuation normalization, sentence segmentation, tokenization.

Everything downstream (alignment, metrics, style features) consumes the
Document/Sentence objects produced here, so the conventions are fixed once:
sentence lengths are measured in tokens, punctuation tokens included, and
word-level statistics later filter to alphabetic tokens themselves.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path

from stilo.errors import DataError


class Language(str, Enum):
    EN = "en"
    TR = "tr"


class Terminal(str, Enum):
    PERIOD = "Period"
    QUESTION = "Question"
    EXCLAMATION = "Exclamation"
    ELLIPSIS = "Ellipsis"
    NONE = "None"


# Dash variants (hyphen, non-breaking hyphen, figure dash, en dash, em dash,
# horizontal bar) -> HYPHEN-MINUS; double-quote variants incl. guillemets and
# low quotes -> U+0022; single-quote/apostrophe variants -> U+0027; horizontal
# ellipsis -> three periods. Everything else passes through unchanged.
_CHAR_MAP = str.maketrans(
    {
        "‐": "-",
        "‑": "-",
        "‒": "-",
        "–": "-",
        "—": "-",
        "―": "-",
        "“": '"',
        "”": '"',
        "„": '"',
        "‟": '"',
        "«": '"',
        "»": '"',
        "‘": "'",
        "’": "'",
        "‚": "'",
        "‛": "'",
        "ʼ": "'",
        "…": "...",
    }
)


def normalize_text(raw: str) -> str:
    """Apply NFC, then the punctuation mapping table. Idempotent."""
    return unicodedata.normalize("NFC", raw).translate(_CHAR_MAP)


def lowercase_tr(token: str) -> str:
    """Turkish-aware lowercase: dotted/dotless I handled before str.lower."""
    return token.replace("I", "ı").replace("İ", "i").lower()


_ELLIPSIS_HEAD = re.compile(r"^\.{3,}")
_ELLIPSIS_TAIL = re.compile(r"\.{3,}$")


def _split_chunk(chunk: str) -> list[str]:
    lead: list[str] = []
    while chunk and not chunk[0].isalnum():
        match = _ELLIPSIS_HEAD.match(chunk)
        if match:
            lead.append(match.group(0))
            chunk = chunk[match.end():]
        else:
            lead.append(chunk[0])
            chunk = chunk[1:]
    trail: list[str] = []
    while chunk and not chunk[-1].isalnum():
        match = _ELLIPSIS_TAIL.search(chunk)
        if match:
            trail.append(match.group(0))
            chunk = chunk[: match.start()]
        else:
            trail.append(chunk[-1])
            chunk = chunk[:-1]
    trail.reverse()
    if chunk:
        return lead + [chunk] + trail
    return lead + trail


def tokenize(sentence_text: str, language: Language = Language.TR) -> list[str]:
    """Whitespace split, then peel leading/trailing punctuation into own tokens.

    Interior apostrophes and hyphens stay attached ("Ali'nin", "3,5"), and a
    run of three or more periods is kept as a single ellipsis token.
    """
    tokens: list[str] = []
    for chunk in sentence_text.split():
        tokens.extend(_split_chunk(chunk))
    return tokens


@dataclass(frozen=True)
class Sentence:
    text: str
    tokens: tuple[str, ...]
    terminal: Terminal


@dataclass(frozen=True)
class Document:
    id: str
    language: Language
    raw_text: str
    sentences: tuple[Sentence, ...]

    def sentence_texts(self) -> list[str]:
        return [s.text for s in self.sentences]


def derive_terminal(text: str) -> Terminal:
    """Terminal mark from the trailing punctuation, closing quotes ignored."""
    stripped = text.rstrip("\"')]")
    if stripped.endswith("..."):
        return Terminal.ELLIPSIS
    if stripped.endswith("?"):
        return Terminal.QUESTION
    if stripped.endswith("!"):
        return Terminal.EXCLAMATION
    if stripped.endswith("."):
        return Terminal.PERIOD
    return Terminal.NONE


def _builtin_abbreviations(language: Language) -> frozenset[str]:
    name = f"abbrev_{language.value}.txt"
    text = resources.files("stilo.data").joinpath(name).read_text("utf-8")
    return frozenset(_casefold_abbrev(line) for line in text.splitlines() if line.strip())


def _casefold_abbrev(entry: str) -> str:
    return lowercase_tr(entry.strip())


def load_abbreviations(path: str | Path) -> frozenset[str]:
    """One abbreviation per line, trailing period included (e.g. "Dr.")."""
    text = Path(path).read_text(encoding="utf-8")
    return frozenset(_casefold_abbrev(line) for line in text.splitlines() if line.strip())


_ABBREV_CACHE: dict[Language, frozenset[str]] = {}


def _abbreviations(language: Language) -> frozenset[str]:
    if language not in _ABBREV_CACHE:
        _ABBREV_CACHE[language] = _builtin_abbreviations(language)
    return _ABBREV_CACHE[language]


_BOUNDARY = re.compile(r"([.!?]+)([\"')\]]*)")
_WS = re.compile(r"\s+")


def _word_before(text: str, pos: int) -> str:
    start = pos
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    return text[start:pos]


def segment_sentences(
    text: str,
    language: Language = Language.TR,
    abbreviations: frozenset[str] | None = None,
) -> list[Sentence]:
    """Split normalized text into sentences.

    A terminal run (., ?, !, or ...) plus optional closing quotes ends a
    sentence when followed by whitespace and an uppercase letter, or by end of
    text. A single period attached to a listed abbreviation never splits.
    """
    if abbreviations is None:
        abbreviations = _abbreviations(language)
    breaks: list[int] = []
    for match in _BOUNDARY.finditer(text):
        punct = match.group(1)
        end = match.end()
        if end < len(text):
            if not text[end].isspace():
                continue
            follow = text[end:].lstrip()
            if not follow or not follow[0].isupper():
                continue
        if punct == ".":
            word = _word_before(text, match.start()) + "."
            if _casefold_abbrev(word) in abbreviations:
                continue
        breaks.append(end)
    pieces = []
    prev = 0
    for pos in breaks:
        pieces.append(text[prev:pos])
        prev = pos
    pieces.append(text[prev:])
    sentences = []
    for piece in pieces:
        clean = _WS.sub(" ", piece).strip()
        if not clean:
            continue
        tokens = tuple(tokenize(clean, language))
        if not tokens:
            continue
        sentences.append(Sentence(text=clean, tokens=tokens, terminal=derive_terminal(clean)))
    return sentences


def build_document(
    doc_id: str,
    language: Language,
    raw_text: str,
    abbreviations: frozenset[str] | None = None,
) -> Document:
    """Normalize raw text and segment it into a Document."""
    normalized = normalize_text(raw_text)
    sentences = tuple(segment_sentences(normalized, language, abbreviations))
    return Document(id=doc_id, language=language, raw_text=raw_text, sentences=sentences)


def document_records(doc: Document) -> list[dict]:
    """JSONL schema: one record per sentence."""
    return [
        {
            "doc_id": doc.id,
            "idx": idx,
            "text": sentence.text,
            "tokens": list(sentence.tokens),
            "terminal": sentence.terminal.value,
        }
        for idx, sentence in enumerate(doc.sentences)
    ]


def document_from_records(doc_id: str, language: Language, records: list[dict]) -> Document:
    ordered = sorted(records, key=lambda r: r["idx"])
    sentences = []
    for record in ordered:
        tokens = tuple(record["tokens"])
        if not tokens:
            raise DataError(f"document {doc_id}: sentence {record['idx']} has no tokens")
        sentences.append(
            Sentence(
                text=record["text"],
                tokens=tokens,
                terminal=Terminal(record["terminal"]),
            )
        )
    text = " ".join(s.text for s in sentences)
    return Document(id=doc_id, language=language, raw_text=text, sentences=tuple(sentences))
