"""Pluggable MT oracles: subprocess line protocol, dictionary stub, disk cache.

The toolkit never trains or runs a neural model itself; anything that can map
a batch of sentences to translations can stand behind the MtOracle protocol.
Run ``python -m stilo.oracle --dict words.tsv --direction en-tr`` for the
bundled word-by-word stub as a line-protocol subprocess.
"""

from __future__ import annotations

import hashlib
import json
import os
import shlex
import subprocess
import sys
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Protocol, Sequence

from stilo.errors import DataError, OracleError
from stilo.ioutil import read_text
from stilo.textproc import Language, tokenize

CACHE_ENV_VAR = "STILO_CACHE_DIR"


class Direction(str, Enum):
    EN_TO_TR = "en-tr"
    TR_TO_EN = "tr-en"


class MtOracle(Protocol):
    def translate_batch(self, sentences: Sequence[str], direction: Direction) -> list[str]: ...


class DictionaryOracle:
    """Word-by-word substitution against a TSV dictionary; the test stub.

    Unknown words pass through unchanged, so output token counts mirror the
    input. Lookup is exact first, lowercase second.
    """

    def __init__(self, en_to_tr: dict[str, str]):
        self.en_to_tr = dict(en_to_tr)
        self.tr_to_en: dict[str, str] = {}
        for en, tr in en_to_tr.items():
            self.tr_to_en.setdefault(tr, en)

    @classmethod
    def from_tsv(cls, path: str | Path) -> "DictionaryOracle":
        mapping: dict[str, str] = {}
        for lineno, line in enumerate(read_text(path).splitlines(), 1):
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
                raise DataError(f"{path}:{lineno}: expected word<TAB>translation")
            mapping[parts[0].strip()] = parts[1].strip()
        return cls(mapping)

    @classmethod
    def bundled(cls) -> "DictionaryOracle":
        with resources.as_file(resources.files("stilo.data") / "stub_dict_en_tr.tsv") as path:
            return cls.from_tsv(path)

    def _lookup(self, word: str, table: dict[str, str]) -> str:
        if word in table:
            return table[word]
        lowered = word.lower()
        if lowered in table:
            translated = table[lowered]
            if word[:1].isupper():
                return translated[:1].upper() + translated[1:]
            return translated
        return word

    def translate_batch(self, sentences: Sequence[str], direction: Direction) -> list[str]:
        table = self.en_to_tr if direction == Direction.EN_TO_TR else self.tr_to_en
        language = Language.TR if direction == Direction.EN_TO_TR else Language.EN
        out = []
        for sentence in sentences:
            tokens = tokenize(sentence, language)
            out.append(" ".join(self._lookup(t, table) for t in tokens))
        return out


class SubprocessOracle:
    """Spawn a command per batch: one sentence per stdin line, one translation
    per stdout line, in order. Any newline inside a sentence becomes a space."""

    def __init__(self, command: str | Sequence[str]):
        self.argv = shlex.split(command) if isinstance(command, str) else list(command)
        if not self.argv:
            raise DataError("oracle command is empty")

    def translate_batch(self, sentences: Sequence[str], direction: Direction) -> list[str]:
        if not sentences:
            return []
        payload = "\n".join(" ".join(s.split()) for s in sentences) + "\n"
        env = dict(os.environ, STILO_DIRECTION=direction.value)
        try:
            proc = subprocess.run(
                self.argv,
                input=payload.encode("utf-8"),
                stdout=subprocess.PIPE,
                stderr=subprocess.PIPE,
                env=env,
            )
        except OSError as exc:
            raise OracleError(f"cannot spawn oracle {self.argv[0]!r}: {exc}") from exc
        if proc.returncode != 0:
            detail = proc.stderr.decode("utf-8", "replace").strip()
            raise OracleError(f"oracle exited with status {proc.returncode}: {detail}")
        lines = proc.stdout.decode("utf-8").splitlines()
        if len(lines) != len(sentences):
            raise OracleError(
                f"oracle protocol violation: sent {len(sentences)} lines, got {len(lines)}"
            )
        return lines


def _sentence_key(sentence: str) -> str:
    return hashlib.sha256(sentence.encode("utf-8")).hexdigest()


class TranslationCache:
    """Append-only JSONL cache per direction, keyed by sentence hash."""

    def __init__(self, cache_dir: str | Path):
        self.cache_dir = Path(cache_dir)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        self._tables: dict[Direction, dict[str, str]] = {}

    def _path(self, direction: Direction) -> Path:
        return self.cache_dir / f"mt-{direction.value}.jsonl"

    def _table(self, direction: Direction) -> dict[str, str]:
        if direction not in self._tables:
            table: dict[str, str] = {}
            path = self._path(direction)
            if path.exists():
                for line in read_text(path).splitlines():
                    if not line.strip():
                        continue
                    record = json.loads(line)
                    table[record["key"]] = record["mt"]
            self._tables[direction] = table
        return self._tables[direction]

    def get(self, direction: Direction, sentence: str) -> str | None:
        return self._table(direction).get(_sentence_key(sentence))

    def put_many(self, direction: Direction, items: list[tuple[str, str]]) -> None:
        table = self._table(direction)
        fresh = []
        for sentence, translation in items:
            key = _sentence_key(sentence)
            if key not in table:
                table[key] = translation
                fresh.append({"key": key, "mt": translation})
        if fresh:
            with open(self._path(direction), "a", encoding="utf-8") as handle:
                for record in fresh:
                    handle.write(json.dumps(record, ensure_ascii=False, sort_keys=True))
                    handle.write("\n")


class CachedOracle:
    """Wrap an oracle with a TranslationCache; only misses hit the backend."""

    def __init__(self, inner: MtOracle, cache: TranslationCache):
        self.inner = inner
        self.cache = cache

    def translate_batch(self, sentences: Sequence[str], direction: Direction) -> list[str]:
        results: list[str | None] = [self.cache.get(direction, s) for s in sentences]
        misses = [i for i, r in enumerate(results) if r is None]
        if misses:
            fresh = self.inner.translate_batch([sentences[i] for i in misses], direction)
            self.cache.put_many(direction, [(sentences[i], t) for i, t in zip(misses, fresh)])
            for i, t in zip(misses, fresh):
                results[i] = t
        return [r for r in results if r is not None]


def default_cache_dir() -> Path | None:
    value = os.environ.get(CACHE_ENV_VAR)
    return Path(value) if value else None


def resolve_oracle(command: str, cache_dir: str | Path | None = None) -> MtOracle:
    """Build a subprocess oracle from a command string, cached when a cache
    directory is given or the cache env var is set."""
    oracle: MtOracle = SubprocessOracle(command)
    if cache_dir is None:
        cache_dir = default_cache_dir()
    if cache_dir is not None:
        oracle = CachedOracle(oracle, TranslationCache(cache_dir))
    return oracle


def translate_in_batches(
    oracle: MtOracle, sentences: Sequence[str], direction: Direction, batch_size: int = 512
) -> list[str]:
    """Batch helper; failures abort with the failing batch index attached."""
    out: list[str] = []
    for batch_index, start in enumerate(range(0, len(sentences), batch_size)):
        batch = sentences[start : start + batch_size]
        try:
            translated = oracle.translate_batch(batch, direction)
        except OracleError as exc:
            raise OracleError(f"batch {batch_index}: {exc}") from exc
        if len(translated) != len(batch):
            raise OracleError(
                f"batch {batch_index}: oracle returned {len(translated)} translations "
                f"for {len(batch)} sentences"
            )
        out.extend(translated)
    return out


def _main(argv: Sequence[str] | None = None) -> int:
    """Line-protocol entry point for the bundled dictionary stub."""
    import argparse

    parser = argparse.ArgumentParser(
        prog="python -m stilo.oracle",
        description="Word-by-word dictionary translator speaking the oracle line protocol",
    )
    parser.add_argument("--dict", dest="dict_path", help="TSV dictionary (default: bundled demo)")
    parser.add_argument(
        "--direction",
        choices=[d.value for d in Direction],
        default=Direction.EN_TO_TR.value,
    )
    args = parser.parse_args(argv)
    oracle = (
        DictionaryOracle.from_tsv(args.dict_path) if args.dict_path else DictionaryOracle.bundled()
    )
    direction = Direction(args.direction)
    sentences = sys.stdin.read().splitlines()
    for line in oracle.translate_batch(sentences, direction):
        sys.stdout.write(line + "\n")
    return 0


if __name__ == "__main__":
    raise SystemExit(_main())
