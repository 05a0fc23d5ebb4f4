"""The stilo command line: normalize, segment, align, score, filter-train,
filter-apply, style-fit, style-compare, dataset-build, dataset-slice.

Exit codes: 0 success, 1 usage error, 2 data error, 3 oracle error. Every
output file is written atomically, and identical inputs plus identical seeds
give byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from multiprocessing import Pool
from pathlib import Path

from stilo import __version__
from stilo.align import (
    Bead,
    beads_to_candidates,
    candidate_records,
    candidates_from_records,
    estimate_length_model,
    gale_church_align,
)
from stilo.config import Config, load_config, _replace_align
from stilo.datasets import (
    AugmentationMode,
    Origin,
    Pair,
    ParallelDataset,
    read_dataset,
    sample_monolingual,
    slice_dataset,
    split_validation,
    write_dataset,
    write_manifest,
)
from stilo.errors import DataError, OracleError
from stilo.filters import (
    build_training_set,
    filter_candidates,
    load_model,
    save_model,
    svm_train,
)
from stilo.ioutil import atomic_write, dump_json, read_jsonl, read_text, write_json, write_jsonl
from stilo.metrics import score_pair
from stilo.morphology import LexiconSegmenter, default_segmenter
from stilo.oracle import Direction, resolve_oracle, translate_in_batches
from stilo.style import evaluate_style, fit_reference, load_stats, save_stats
from stilo.textproc import (
    Document,
    Language,
    build_document,
    document_from_records,
    document_records,
    load_abbreviations,
    normalize_text,
)

log = logging.getLogger("stilo")


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; the toolkit reserves 2 for
    data errors, so map usage problems to exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _language(value: str) -> Language:
    try:
        return Language(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unsupported language {value!r} (use en or tr)")


def _load_document(path: str, doc_id: str | None, language: Language) -> Document:
    records = read_jsonl(path)
    if not records:
        raise DataError(f"{path}: empty document file")
    return document_from_records(doc_id or Path(path).stem, language, records)


def _segmenter_from(config: Config):
    if config.style_lexicon:
        return LexiconSegmenter.from_tsv(config.style_lexicon)
    return default_segmenter()


def _document_from_text_file(path: str, language: Language, abbrev_path: str | None) -> Document:
    abbreviations = load_abbreviations(abbrev_path) if abbrev_path else None
    return build_document(Path(path).stem, language, read_text(path), abbreviations)


def _build_parser() -> _Parser:
    parser = _Parser(prog="stilo", description=__doc__)
    parser.add_argument("--version", action="version", version=f"stilo {__version__}")
    parser.add_argument("--config", help="INI config file shared by all stages")
    parser.add_argument("--quiet", action="store_true", help="suppress progress logging")
    parser.add_argument(
        "--jobs", type=int, default=1, help="worker processes for per-pair stages"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="normalize punctuation of a text file")
    p.add_argument("--in", dest="input", required=True, help="UTF-8 input file")
    p.add_argument("--out", required=True, help="normalized output file")

    p = sub.add_parser("segment", help="segment a text file into sentence JSONL")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--language", type=_language, default=Language.TR)
    p.add_argument("--doc-id", help="document id (default: input stem)")
    p.add_argument("--abbrev", help="abbreviation list overriding the bundled one")

    p = sub.add_parser("align", help="align two segmented documents into candidate pairs")
    p.add_argument("--src", required=True, help="source document JSONL")
    p.add_argument("--tgt", required=True, help="target document JSONL")
    p.add_argument("--out", required=True, help="candidate JSONL")
    p.add_argument("--src-language", type=_language, default=Language.EN)
    p.add_argument("--tgt-language", type=_language, default=Language.TR)
    p.add_argument(
        "--estimate-length-model",
        action="store_true",
        help="estimate c and s2 from the document pair instead of config values",
    )
    p.add_argument("--beads-out", help="also write the raw bead sequence JSONL")

    p = sub.add_parser("score", help="append metric features to candidate pairs")
    p.add_argument("--pairs", required=True, help="JSONL with src/tgt fields")
    p.add_argument("--out", required=True)
    p.add_argument("--mt-cache", help="JSONL of {src, mt} reference translations")
    p.add_argument("--oracle", help="oracle command for missing translations")
    p.add_argument("--language", type=_language, default=Language.TR)

    p = sub.add_parser("filter-train", help="train the alignment-filter SVM")
    p.add_argument("--auto", required=True, help="automatic candidates JSONL")
    p.add_argument("--manual", required=True, help="manual beads/candidates JSONL")
    p.add_argument("--oracle", required=True, help="MT oracle command")
    p.add_argument("--out", required=True, help="model JSON")
    p.add_argument("--C", type=float, help="soft-margin C (default from config, 1.0)")
    p.add_argument("--seed", type=int, help="SMO seed (default from config, 0)")

    p = sub.add_parser("filter-apply", help="partition candidates with a trained model")
    p.add_argument("--model", required=True)
    p.add_argument("--candidates", required=True)
    p.add_argument("--oracle", required=True)
    p.add_argument("--kept", required=True, help="output JSONL of kept candidates")
    p.add_argument("--dropped", help="optional output JSONL of dropped candidates")

    p = sub.add_parser("style-fit", help="fit reference min/max stats from a corpus directory")
    p.add_argument("--ref-dir", required=True, help="directory of UTF-8 text files")
    p.add_argument("--out", required=True, help="stats JSON")
    p.add_argument("--abbrev", help="abbreviation list overriding the bundled one")

    p = sub.add_parser("style-compare", help="compare the style of two translations")
    p.add_argument("--a", dest="file_a", required=True)
    p.add_argument("--b", dest="file_b", required=True)
    p.add_argument("--stats", required=True)
    p.add_argument("--report", help="optional per-feature TSV output")
    p.add_argument("--out", help="optional JSON summary output (also printed)")
    p.add_argument("--abbrev", help="abbreviation list overriding the bundled one")

    p = sub.add_parser("dataset-build", help="build a parallel dataset, optionally augmented")
    p.add_argument("--manual", required=True, help="manual pairs JSONL")
    p.add_argument("--out", required=True)
    p.add_argument("--manifest", help="manifest JSON path")
    p.add_argument("--name", help="dataset name (default: output stem)")
    p.add_argument("--synthetic", help="monolingual sentences, one per line")
    p.add_argument(
        "--mode",
        choices=[m.value for m in AugmentationMode],
        help="augmentation mode (required with --synthetic)",
    )
    p.add_argument("--oracle", help="MT oracle command (required with --synthetic)")
    p.add_argument("--count", type=int, help="number of synthetic sentences to sample")
    p.add_argument("--seed", type=int, help="sampling seed (default from config, 0)")
    p.add_argument("--validation-out", help="also split and write a validation set")

    p = sub.add_parser("dataset-slice", help="nested random slices of a dataset")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--sizes", required=True, help="comma-separated sizes, e.g. 50000,100000")
    p.add_argument("--out-prefix", required=True, help="slices written as PREFIX.SIZE.jsonl")
    p.add_argument("--seed", type=int, help="slice seed (default from config, 0)")

    return parser


def _cmd_normalize(args, config: Config) -> int:
    text = normalize_text(read_text(args.input))
    with atomic_write(args.out) as handle:
        handle.write(text)
    return 0


def _cmd_segment(args, config: Config) -> int:
    doc = _document_from_text_file(args.input, args.language, args.abbrev)
    if args.doc_id:
        doc = Document(
            id=args.doc_id, language=doc.language, raw_text=doc.raw_text, sentences=doc.sentences
        )
    write_jsonl(args.out, document_records(doc))
    log.info("segment: %d sentences -> %s", len(doc.sentences), args.out)
    return 0


def _cmd_align(args, config: Config) -> int:
    src_doc = _load_document(args.src, None, args.src_language)
    tgt_doc = _load_document(args.tgt, None, args.tgt_language)
    params = config.align
    if args.estimate_length_model:
        c, s2 = estimate_length_model(src_doc, tgt_doc)
        params = _replace_align(params, c=c, s2=s2)
        log.info("align: estimated c=%.4f s2=%.4f", c, s2)
    beads = gale_church_align(src_doc, tgt_doc, params)
    candidates = beads_to_candidates(beads, src_doc, tgt_doc)
    write_jsonl(args.out, candidate_records(candidates))
    if args.beads_out:
        write_jsonl(
            args.beads_out,
            (
                {
                    "kind": bead.kind.value,
                    "src_indices": list(bead.src_indices),
                    "tgt_indices": list(bead.tgt_indices),
                    "cost": bead.cost,
                }
                for bead in beads
            ),
        )
    log.info("align: %d beads, %d candidates", len(beads), len(candidates))
    return 0


def _score_one(item: tuple[dict, str, str]) -> dict:
    record, mt, language = item
    scores = score_pair(mt, record["tgt"], Language(language))
    merged = dict(record)
    merged.update(scores.as_dict())
    return merged


def _cmd_score(args, config: Config) -> int:
    records = read_jsonl(args.pairs)
    for idx, record in enumerate(records):
        if "src" not in record or "tgt" not in record:
            raise DataError(f"{args.pairs}: record {idx} lacks src/tgt")
    mt_by_src: dict[str, str] = {}
    if args.mt_cache:
        for record in read_jsonl(args.mt_cache):
            mt_by_src[record["src"]] = record["mt"]
    missing = [r["src"] for r in records if r["src"] not in mt_by_src]
    if missing:
        if not args.oracle:
            raise DataError(
                f"{len(missing)} source sentences lack MT translations; "
                "provide --oracle or extend --mt-cache"
            )
        oracle = resolve_oracle(args.oracle)
        unique = sorted(set(missing))
        for src, mt in zip(unique, translate_in_batches(oracle, unique, Direction.EN_TO_TR)):
            mt_by_src[src] = mt
    items = [(r, mt_by_src[r["src"]], args.language.value) for r in records]
    if args.jobs > 1:
        with Pool(args.jobs) as pool:
            scored = pool.map(_score_one, items, chunksize=64)
    else:
        scored = [_score_one(item) for item in items]
    write_jsonl(args.out, scored)
    log.info("score: %d pairs -> %s", len(scored), args.out)
    return 0


def _cmd_filter_train(args, config: Config) -> int:
    auto = candidates_from_records(read_jsonl(args.auto))
    manual_records = read_jsonl(args.manual)
    manual = candidates_from_records(manual_records)
    if not auto or not manual:
        raise DataError("filter-train needs non-empty auto and manual files")
    manual_beads = [
        Bead(
            kind=c.bead_kind,
            src_indices=c.src_indices,
            tgt_indices=c.tgt_indices,
            cost=0.0,
        )
        for c in manual
    ]
    oracle = resolve_oracle(args.oracle)
    examples = build_training_set(manual_beads, auto, oracle)
    c_value = args.C if args.C is not None else config.filter_c
    seed = args.seed if args.seed is not None else config.filter_seed
    model = svm_train(examples, C=c_value, seed=seed)
    save_model(model, args.out)
    positives = sum(e.label for e in examples)
    log.info(
        "filter-train: %d examples (%d positive) -> %s", len(examples), positives, args.out
    )
    return 0


def _cmd_filter_apply(args, config: Config) -> int:
    model = load_model(args.model)
    candidates = candidates_from_records(read_jsonl(args.candidates))
    oracle = resolve_oracle(args.oracle)
    kept, dropped = filter_candidates(candidates, model, oracle)
    write_jsonl(args.kept, candidate_records(kept))
    if args.dropped:
        write_jsonl(args.dropped, candidate_records(dropped))
    log.info("filter-apply: kept %d / dropped %d", len(kept), len(dropped))
    return 0


def _cmd_style_fit(args, config: Config) -> int:
    ref_dir = Path(args.ref_dir)
    paths = sorted(p for p in ref_dir.glob("*.txt") if p.is_file())
    if len(paths) < 2:
        raise DataError(f"{ref_dir}: need at least 2 reference .txt files, found {len(paths)}")
    docs = [_document_from_text_file(str(p), Language.TR, args.abbrev) for p in paths]
    stats = fit_reference(docs, _segmenter_from(config))
    save_stats(stats, args.out)
    log.info("style-fit: %d documents -> %s", len(docs), args.out)
    return 0


def _cmd_style_compare(args, config: Config) -> int:
    stats = load_stats(args.stats)
    doc_a = _document_from_text_file(args.file_a, Language.TR, args.abbrev)
    doc_b = _document_from_text_file(args.file_b, Language.TR, args.abbrev)
    report = evaluate_style(doc_a, doc_b, stats, _segmenter_from(config))
    summary = dump_json(report.summary())
    sys.stdout.write(summary + "\n")
    if args.out:
        write_json(args.out, report.summary())
    if args.report:
        with atomic_write(args.report) as handle:
            handle.write(report.to_tsv())
    return 0


def _cmd_dataset_build(args, config: Config) -> int:
    manual = read_dataset(args.manual, name=args.name or Path(args.out).stem)
    sources = [args.manual]
    seed = args.seed if args.seed is not None else config.datasets_seed
    dataset = manual
    recipe = "manual"
    if args.synthetic:
        if not args.mode or not args.oracle:
            raise DataError("--synthetic requires both --mode and --oracle")
        sentences = [
            line for line in read_text(args.synthetic).splitlines() if line.strip()
        ]
        if args.count is not None:
            sentences = sample_monolingual(
                sentences,
                args.count,
                min_tokens=config.min_tokens,
                max_tokens=config.max_tokens,
                seed=seed,
            )
        oracle = resolve_oracle(args.oracle)
        dataset = build_augmented(
            manual,
            sentences,
            oracle,
            AugmentationMode(args.mode),
            name=manual.name,
        )
        sources.append(args.synthetic)
        recipe = f"manual+{args.mode}-{len(sentences)}"
    write_dataset(dataset, args.out)
    if args.validation_out:
        train, valid = split_validation(dataset, config.validation_fraction, seed)
        write_dataset(valid, args.validation_out)
        write_dataset(train, args.out)
        recipe += f"+valid{config.validation_fraction}"
    if args.manifest:
        write_manifest(args.manifest, dataset, seed, sources, recipe)
    log.info("dataset-build: %d pairs (%s) -> %s", len(dataset), recipe, args.out)
    return 0


def _cmd_dataset_slice(args, config: Config) -> int:
    dataset = read_dataset(args.input)
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError as exc:
        raise DataError(f"bad --sizes value {args.sizes!r}: {exc}") from exc
    if not sizes:
        raise DataError("--sizes is empty")
    seed = args.seed if args.seed is not None else config.datasets_seed
    slices = slice_dataset(dataset, sizes, seed)
    for size, piece in zip(sizes, slices):
        write_dataset(piece, f"{args.out_prefix}.{size}.jsonl")
    log.info("dataset-slice: %s -> %d slices", args.sizes, len(slices))
    return 0


_COMMANDS = {
    "normalize": _cmd_normalize,
    "segment": _cmd_segment,
    "align": _cmd_align,
    "score": _cmd_score,
    "filter-train": _cmd_filter_train,
    "filter-apply": _cmd_filter_apply,
    "style-fit": _cmd_style_fit,
    "style-compare": _cmd_style_compare,
    "dataset-build": _cmd_dataset_build,
    "dataset-slice": _cmd_dataset_slice,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(name)s: %(message)s",
    )
    try:
        config = load_config(args.config) if args.config else Config()
        return _COMMANDS[args.command](args, config)
    except OracleError as exc:
        print(f"stilo: oracle error: {exc}", file=sys.stderr)
        return 3
    except DataError as exc:
        print(f"stilo: data error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"stilo: data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
