"""Shared synthetic-corpus generators for the test suite."""

from __future__ import annotations

import random

import pytest

from stilo.textproc import Document, Language, Sentence, Terminal, build_document

_CONSONANTS = "bcçdgklmnprsştvyz"
_VOWELS = "aeıioöuü"

FOCUS_POOL = (
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


def random_word(rng: random.Random, syllables: tuple[int, int] = (1, 4)) -> str:
    parts = []
    for _ in range(rng.randint(*syllables)):
        parts.append(rng.choice(_CONSONANTS) + rng.choice(_VOWELS))
        if rng.random() < 0.3:
            parts.append(rng.choice(_CONSONANTS))
    return "".join(parts)


def random_turkish_text(
    rng: random.Random,
    n_sentences: int,
    focus_rate: float = 0.05,
    redup_rate: float = 0.02,
) -> str:
    sentences = []
    for _ in range(n_sentences):
        n_tokens = rng.randint(3, 18)
        words = []
        while len(words) < n_tokens:
            roll = rng.random()
            if roll < focus_rate:
                words.append(rng.choice(FOCUS_POOL))
            elif roll < focus_rate + redup_rate:
                word = random_word(rng)
                words.append(word)
                words.append(word if rng.random() < 0.5 else "m" + word.lstrip(_CONSONANTS))
            else:
                words.append(random_word(rng))
        words[0] = words[0].capitalize()
        if rng.random() < 0.15:
            comma_at = rng.randint(1, len(words) - 1)
            words[comma_at - 1] = words[comma_at - 1] + ","
        terminal = rng.choices([".", "?", "!", "..."], weights=[70, 12, 10, 8])[0]
        sentences.append(" ".join(words) + terminal)
    return " ".join(sentences)


def make_turkish_document(rng: random.Random, doc_id: str, n_sentences: int) -> Document:
    return build_document(doc_id, Language.TR, random_turkish_text(rng, n_sentences))


def make_sized_document(doc_id: str, char_lengths: list[int], language=Language.EN) -> Document:
    """Document whose sentence texts have exactly the given character lengths."""
    sentences = []
    for length in char_lengths:
        text = "a" * max(1, length)
        sentences.append(Sentence(text=text, tokens=(text,), terminal=Terminal.NONE))
    return Document(id=doc_id, language=language, raw_text=" ".join(s.text for s in sentences),
                    sentences=tuple(sentences))


def plan_bilingual_lengths(
    rng: random.Random, n_src: int, deletion_rate: float = 0.05, merge_rate: float = 0.05
) -> tuple[list[int], list[int], list[tuple[int, tuple[int, ...], tuple[int, ...]]]]:
    """Plant a bead plan over n_src source sentences.

    Returns (src_lengths, tgt_lengths, beads) where each bead is
    (kind_id, src_indices, tgt_indices) with kind ids in DP order. Deleted
    sentences are drawn short and merged parts mid-sized so the plan stays
    recoverable from lengths alone.
    """
    src_lens: list[int] = []
    tgt_lens: list[int] = []
    beads: list[tuple[int, tuple[int, ...], tuple[int, ...]]] = []
    i = 0
    while i < n_src:
        roll = rng.random()
        if roll < deletion_rate:
            src_lens.append(rng.randint(12, 40))
            beads.append((1, (i,), ()))
            i += 1
        elif roll < deletion_rate + merge_rate and i + 1 < n_src:
            first = rng.randint(25, 60)
            second = rng.randint(25, 60)
            src_lens.extend([first, second])
            tgt_lens.append(first + second + rng.randint(-2, 2))
            beads.append((3, (i, i + 1), (len(tgt_lens) - 1,)))
            i += 2
        else:
            length = rng.randint(10, 120)
            src_lens.append(length)
            tgt_lens.append(max(3, length + rng.randint(-2, 2)))
            beads.append((0, (i,), (len(tgt_lens) - 1,)))
            i += 1
    return src_lens, tgt_lens, beads


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260810)
