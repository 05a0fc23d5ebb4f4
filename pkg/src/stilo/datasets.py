"""Assembly of training corpora: augmentation mixes, size slices, validation
splits, and the balanced manual/auto book partition."""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from stilo.errors import DataError
from stilo.ioutil import read_jsonl, write_json, write_jsonl
from stilo.oracle import Direction, MtOracle, translate_in_batches
from stilo.textproc import Language, tokenize

MIN_TOKENS = 3
MAX_TOKENS = 128
VALIDATION_FRACTION = 0.05


class Origin(str, Enum):
    MANUAL = "manual"
    AUTO = "auto"
    BACK_TRANSLATED = "back_translated"
    SELF_TRAINED = "self_trained"


class AugmentationMode(str, Enum):
    BACK_TRANSLATION = "back-translation"
    SELF_TRAINING = "self-training"


@dataclass(frozen=True)
class Pair:
    src: str
    tgt: str
    origin: Origin


class ParallelDataset:
    """Named list of (src, tgt, origin) pairs; both sides always non-empty."""

    def __init__(self, name: str, pairs: list[Pair]):
        for idx, pair in enumerate(pairs):
            if not pair.src or not pair.tgt:
                raise DataError(f"dataset {name!r}: pair {idx} has an empty side")
        self.name = name
        self.pairs = list(pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def origin_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for pair in self.pairs:
            counts[pair.origin.value] = counts.get(pair.origin.value, 0) + 1
        return counts


def sample_monolingual(
    sentences: list[str],
    count: int,
    min_tokens: int = MIN_TOKENS,
    max_tokens: int = MAX_TOKENS,
    seed: int = 0,
    language: Language = Language.TR,
) -> list[str]:
    """Uniform sample without replacement among sentences whose token count
    falls within [min_tokens, max_tokens]."""
    eligible = [
        s for s in sentences if min_tokens <= len(tokenize(s, language)) <= max_tokens
    ]
    if count > len(eligible):
        raise DataError(
            f"requested {count} sentences but only {len(eligible)} of "
            f"{len(sentences)} are eligible ({min_tokens}..{max_tokens} tokens)"
        )
    return random.Random(seed).sample(eligible, count)


def build_augmented(
    manual: ParallelDataset,
    synthetic_sentences: list[str],
    oracle: MtOracle,
    mode: AugmentationMode,
    name: str | None = None,
) -> ParallelDataset:
    """Concatenate manual pairs with oracle-generated synthetic pairs.

    Back-translation translates target-language monolingual text into a
    synthetic source side; self-training translates source-language text into
    a synthetic target side.
    """
    if mode == AugmentationMode.BACK_TRANSLATION:
        translations = translate_in_batches(oracle, synthetic_sentences, Direction.TR_TO_EN)
        synthetic = [
            Pair(src=mt, tgt=original, origin=Origin.BACK_TRANSLATED)
            for mt, original in zip(translations, synthetic_sentences)
        ]
    elif mode == AugmentationMode.SELF_TRAINING:
        translations = translate_in_batches(oracle, synthetic_sentences, Direction.EN_TO_TR)
        synthetic = [
            Pair(src=original, tgt=mt, origin=Origin.SELF_TRAINED)
            for original, mt in zip(synthetic_sentences, translations)
        ]
    else:
        raise DataError(f"unknown augmentation mode {mode!r}")
    return ParallelDataset(
        name=name or f"{manual.name}+{mode.value}-{len(synthetic)}",
        pairs=manual.pairs + synthetic,
    )


def slice_dataset(
    dataset: ParallelDataset, sizes: list[int], seed: int = 0
) -> list[ParallelDataset]:
    """Nested random subsets: each smaller slice is contained in every larger one."""
    if not sizes:
        return []
    if max(sizes) > len(dataset):
        raise DataError(
            f"slice size {max(sizes)} exceeds dataset size {len(dataset)}"
        )
    if min(sizes) < 0:
        raise DataError("slice sizes must be non-negative")
    order = list(range(len(dataset)))
    random.Random(seed).shuffle(order)
    slices = []
    for size in sizes:
        picked = sorted(order[:size])
        slices.append(
            ParallelDataset(
                name=f"{dataset.name}-{size}",
                pairs=[dataset.pairs[i] for i in picked],
            )
        )
    return slices


def split_validation(
    dataset: ParallelDataset, fraction: float = VALIDATION_FRACTION, seed: int = 0
) -> tuple[ParallelDataset, ParallelDataset]:
    """Random (train, valid) partition with |valid| = round(fraction * |dataset|)."""
    total = len(dataset)
    if total < 20:
        raise DataError(f"dataset too small to split: {total} < 20 pairs")
    if not 0.0 < fraction < 1.0:
        raise DataError("validation fraction must lie in (0, 1)")
    n_valid = round(fraction * total)
    picked = set(random.Random(seed).sample(range(total), n_valid))
    valid = [dataset.pairs[i] for i in range(total) if i in picked]
    train = [dataset.pairs[i] for i in range(total) if i not in picked]
    return (
        ParallelDataset(name=f"{dataset.name}-train", pairs=train),
        ParallelDataset(name=f"{dataset.name}-valid", pairs=valid),
    )


def partition_books(book_sentence_counts: dict[str, int]) -> tuple[list[str], list[str]]:
    """Greedy two-way partition of books balancing total sentence counts.

    Interpretation of the half-manual/half-automatic corpus mix: books are
    assigned largest-first to the lighter side.
    """
    if not book_sentence_counts:
        raise DataError("no books to partition")
    ordered = sorted(book_sentence_counts.items(), key=lambda kv: (-kv[1], kv[0]))
    side_a: list[str] = []
    side_b: list[str] = []
    total_a = total_b = 0
    for book, count in ordered:
        if total_a <= total_b:
            side_a.append(book)
            total_a += count
        else:
            side_b.append(book)
            total_b += count
    return side_a, side_b


def write_dataset(dataset: ParallelDataset, path: str | Path) -> None:
    write_jsonl(
        path,
        (
            {"src": pair.src, "tgt": pair.tgt, "origin": pair.origin.value}
            for pair in dataset.pairs
        ),
    )


def read_dataset(path: str | Path, name: str | None = None) -> ParallelDataset:
    pairs = []
    for record in read_jsonl(path):
        try:
            pairs.append(
                Pair(
                    src=record["src"],
                    tgt=record["tgt"],
                    origin=Origin(record.get("origin", Origin.MANUAL.value)),
                )
            )
        except (KeyError, ValueError) as exc:
            raise DataError(f"{path}: bad dataset record: {exc}") from exc
    return ParallelDataset(name=name or Path(path).stem, pairs=pairs)


def write_manifest(
    path: str | Path,
    dataset: ParallelDataset,
    seed: int | None,
    source_files: list[str],
    recipe: str,
) -> None:
    """Record what a built dataset instantiates: sizes by origin, seed, inputs."""
    write_json(
        path,
        {
            "name": dataset.name,
            "recipe": recipe,
            "total_pairs": len(dataset),
            "sizes": dataset.origin_counts(),
            "seed": seed,
            "source_files": [str(p) for p in source_files],
        },
    )
