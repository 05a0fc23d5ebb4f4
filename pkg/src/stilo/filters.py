"""Alignment filtering: label candidates against manual beads, score them with
MT-reference metrics, train the linear SVM, and split keep/drop."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from stilo.align import AlignmentCandidate, Bead
from stilo.errors import DataError
from stilo.ioutil import read_text, write_json
from stilo.metrics import ScoreVector, score_pair
from stilo.oracle import Direction, MtOracle, translate_in_batches
from stilo.svm import train_linear_svm
from stilo.textproc import Language

MODEL_VERSION = 1
FEATURE_COUNT = 4


@dataclass(frozen=True)
class SvmModel:
    weights: tuple[float, ...]
    bias: float
    feature_means: tuple[float, ...]
    feature_stds: tuple[float, ...]
    hyperparam_C: float

    def __post_init__(self):
        for field in (self.weights, self.feature_means, self.feature_stds):
            if len(field) != FEATURE_COUNT:
                raise DataError(f"model expects {FEATURE_COUNT} features, got {len(field)}")
        if any(s <= 0.0 for s in self.feature_stds):
            raise DataError("feature stds must be positive")

    def decision(self, features: ScoreVector) -> float:
        x = features.as_tuple()
        return (
            sum(
                w * (v - m) / s
                for w, v, m, s in zip(self.weights, x, self.feature_means, self.feature_stds)
            )
            + self.bias
        )


@dataclass(frozen=True)
class LabeledExample:
    features: ScoreVector
    label: bool


def candidate_features(
    candidates: list[AlignmentCandidate],
    oracle: MtOracle,
    direction: Direction = Direction.EN_TO_TR,
    language: Language = Language.TR,
) -> list[ScoreVector]:
    """Score every candidate against the oracle translation of its source side."""
    translations = translate_in_batches(oracle, [c.src_text for c in candidates], direction)
    return [
        score_pair(mt, cand.tgt_text, language)
        for mt, cand in zip(translations, candidates)
    ]


def build_training_set(
    manual_beads: list[Bead],
    auto_candidates: list[AlignmentCandidate],
    oracle: MtOracle,
    direction: Direction = Direction.EN_TO_TR,
    language: Language = Language.TR,
) -> list[LabeledExample]:
    """Label each auto candidate true iff its index sets exactly match a manual bead."""
    gold = {(bead.src_indices, bead.tgt_indices) for bead in manual_beads}
    features = candidate_features(auto_candidates, oracle, direction, language)
    return [
        LabeledExample(
            features=vector,
            label=(cand.src_indices, cand.tgt_indices) in gold,
        )
        for vector, cand in zip(features, auto_candidates)
    ]


def svm_train(examples: list[LabeledExample], C: float = 1.0, seed: int = 0) -> SvmModel:
    if len(examples) < 2:
        raise DataError("need at least 2 labeled examples")
    X = np.array([e.features.as_tuple() for e in examples], dtype=np.float64)
    y = np.array([1.0 if e.label else -1.0 for e in examples])
    weights, bias, means, stds, _ = train_linear_svm(X, y, C=C, seed=seed)
    return SvmModel(
        weights=tuple(float(w) for w in weights),
        bias=float(bias),
        feature_means=tuple(float(m) for m in means),
        feature_stds=tuple(float(s) for s in stds),
        hyperparam_C=float(C),
    )


def svm_predict(model: SvmModel, features: ScoreVector) -> tuple[bool, float]:
    """Label and margin; a decision value of exactly 0 counts as a keep."""
    margin = model.decision(features)
    return margin >= 0.0, margin


def filter_candidates(
    candidates: list[AlignmentCandidate],
    model: SvmModel,
    oracle: MtOracle,
    direction: Direction = Direction.EN_TO_TR,
    language: Language = Language.TR,
) -> tuple[list[AlignmentCandidate], list[AlignmentCandidate]]:
    """Partition candidates into (kept, dropped), preserving input order."""
    features = candidate_features(candidates, oracle, direction, language)
    kept = []
    dropped = []
    for cand, vector in zip(candidates, features):
        label, _ = svm_predict(model, vector)
        (kept if label else dropped).append(cand)
    return kept, dropped


def save_model(model: SvmModel, path: str | Path) -> None:
    write_json(
        path,
        {
            "version": MODEL_VERSION,
            "weights": list(model.weights),
            "bias": model.bias,
            "means": list(model.feature_means),
            "stds": list(model.feature_stds),
            "C": model.hyperparam_C,
        },
    )


def load_model(path: str | Path) -> SvmModel:
    import json

    try:
        payload = json.loads(read_text(path))
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: invalid model JSON: {exc}") from exc
    if payload.get("version") != MODEL_VERSION:
        raise DataError(f"{path}: unsupported model version {payload.get('version')!r}")
    try:
        return SvmModel(
            weights=tuple(payload["weights"]),
            bias=float(payload["bias"]),
            feature_means=tuple(payload["means"]),
            feature_stds=tuple(payload["stds"]),
            hyperparam_C=float(payload["C"]),
        )
    except KeyError as exc:
        raise DataError(f"{path}: model file missing field {exc}") from exc
