"""Length-based dynamic-programming sentence alignment of a bilingual book pair.

Costs combine a per-kind prior with a normal model of the character-length
ratio; the DP minimizes total cost over six bead kinds (1-1, 1-0, 0-1, 2-1,
1-2, 2-2), which covers translator omissions and merges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from stilo import _kernels
from stilo.errors import DataError
from stilo.textproc import Document


class BeadKind(str, Enum):
    B_1_1 = "1-1"
    B_1_0 = "1-0"
    B_0_1 = "0-1"
    B_2_1 = "2-1"
    B_1_2 = "1-2"
    B_2_2 = "2-2"

    @property
    def src_count(self) -> int:
        return int(self.value[0])

    @property
    def tgt_count(self) -> int:
        return int(self.value[2])


# Kernel kind ids follow this order; it is also the tie-break preference.
KIND_ORDER = (
    BeadKind.B_1_1,
    BeadKind.B_1_0,
    BeadKind.B_0_1,
    BeadKind.B_2_1,
    BeadKind.B_1_2,
    BeadKind.B_2_2,
)


@dataclass(frozen=True)
class AlignParams:
    """Bead priors plus the length-model constants (mean ratio c, variance s2)."""

    priors: dict[BeadKind, float] = field(
        default_factory=lambda: {
            BeadKind.B_1_1: 0.89,
            BeadKind.B_1_0: 0.0099,
            BeadKind.B_0_1: 0.0099,
            BeadKind.B_2_1: 0.045,
            BeadKind.B_1_2: 0.045,
            BeadKind.B_2_2: 0.011,
        }
    )
    c: float = 1.0
    s2: float = 6.8

    def __post_init__(self):
        for kind in KIND_ORDER:
            prior = self.priors.get(kind)
            if prior is None or prior <= 0.0:
                raise DataError(f"alignment prior for {kind.value} must be positive")
        if self.c <= 0.0 or self.s2 <= 0.0:
            raise DataError("length-model constants c and s2 must be positive")

    def neg_log_priors(self) -> list[float]:
        return [-math.log(self.priors[kind]) for kind in KIND_ORDER]


@dataclass(frozen=True)
class Bead:
    kind: BeadKind
    src_indices: tuple[int, ...]
    tgt_indices: tuple[int, ...]
    cost: float


@dataclass(frozen=True)
class AlignmentCandidate:
    src_text: str
    tgt_text: str
    bead_kind: BeadKind
    src_indices: tuple[int, ...]
    tgt_indices: tuple[int, ...]
    gold_label: bool | None = None


def bead_cost(kind: BeadKind, l_src: float, l_tgt: float, params: AlignParams) -> float:
    return -math.log(params.priors[kind]) + _kernels.length_cost(
        float(l_src), float(l_tgt), params.c, params.s2
    )


def gale_church_align(
    src_doc: Document, tgt_doc: Document, params: AlignParams | None = None
) -> list[Bead]:
    """Minimum-cost bead sequence for the two documents (lengths in characters)."""
    if params is None:
        params = AlignParams()
    if not src_doc.sentences:
        raise DataError(f"source document {src_doc.id!r} has no sentences")
    if not tgt_doc.sentences:
        raise DataError(f"target document {tgt_doc.id!r} has no sentences")
    src_lens = [float(len(s.text)) for s in src_doc.sentences]
    tgt_lens = [float(len(s.text)) for s in tgt_doc.sentences]
    _, kind_ids = _kernels.align_kinds(
        src_lens, tgt_lens, params.neg_log_priors(), params.c, params.s2
    )
    beads = []
    i = j = 0
    for kind_id in kind_ids:
        kind = KIND_ORDER[kind_id]
        src_indices = tuple(range(i, i + kind.src_count))
        tgt_indices = tuple(range(j, j + kind.tgt_count))
        l_src = sum(src_lens[k] for k in src_indices)
        l_tgt = sum(tgt_lens[k] for k in tgt_indices)
        beads.append(
            Bead(
                kind=kind,
                src_indices=src_indices,
                tgt_indices=tgt_indices,
                cost=bead_cost(kind, l_src, l_tgt, params),
            )
        )
        i += kind.src_count
        j += kind.tgt_count
    return beads


def beads_to_candidates(
    beads: list[Bead], src_doc: Document, tgt_doc: Document
) -> list[AlignmentCandidate]:
    """One candidate per two-sided bead; one-sided beads (1-0, 0-1) drop out."""
    candidates = []
    for bead in beads:
        if not bead.src_indices or not bead.tgt_indices:
            continue
        candidates.append(
            AlignmentCandidate(
                src_text=" ".join(src_doc.sentences[k].text for k in bead.src_indices),
                tgt_text=" ".join(tgt_doc.sentences[k].text for k in bead.tgt_indices),
                bead_kind=bead.kind,
                src_indices=bead.src_indices,
                tgt_indices=bead.tgt_indices,
            )
        )
    return candidates


def estimate_length_model(src_doc: Document, tgt_doc: Document) -> tuple[float, float]:
    """Estimate (c, s2) from a provisional by-index pairing of the two documents.

    Crude but serviceable: c is the total target/source character ratio, s2 the
    mean squared per-character deviation under that ratio.
    """
    if not src_doc.sentences or not tgt_doc.sentences:
        raise DataError("cannot estimate a length model from an empty document")
    src_lens = [len(s.text) for s in src_doc.sentences]
    tgt_lens = [len(s.text) for s in tgt_doc.sentences]
    total_src = sum(src_lens)
    total_tgt = sum(tgt_lens)
    if total_src == 0 or total_tgt == 0:
        raise DataError("documents contain no characters")
    c = total_tgt / total_src
    paired = min(len(src_lens), len(tgt_lens))
    squares = [
        (tgt_lens[k] - c * src_lens[k]) ** 2 / max(src_lens[k], 1) for k in range(paired)
    ]
    s2 = sum(squares) / paired
    return c, max(s2, 1e-6)


def candidate_records(candidates: list[AlignmentCandidate]) -> list[dict]:
    """JSONL schema shared with the filter and dataset stages."""
    return [
        {
            "src": cand.src_text,
            "tgt": cand.tgt_text,
            "bead_kind": cand.bead_kind.value,
            "src_indices": list(cand.src_indices),
            "tgt_indices": list(cand.tgt_indices),
        }
        for cand in candidates
    ]


def candidates_from_records(records: list[dict]) -> list[AlignmentCandidate]:
    candidates = []
    for record in records:
        candidates.append(
            AlignmentCandidate(
                src_text=record["src"],
                tgt_text=record["tgt"],
                bead_kind=BeadKind(record.get("bead_kind", "1-1")),
                src_indices=tuple(record.get("src_indices", ())),
                tgt_indices=tuple(record.get("tgt_indices", ())),
                gold_label=record.get("gold_label"),
            )
        )
    return candidates
