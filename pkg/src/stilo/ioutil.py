"""File helpers: UTF-8 reading with offset-reporting errors, atomic writes, JSONL."""

from __future__ import annotations

import json
import os
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterable, Iterator

from stilo.errors import DataError


def read_text(path: str | os.PathLike) -> str:
    """Read a UTF-8 file; a bad byte raises DataError naming its offset."""
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DataError(
            f"{path}: invalid UTF-8 at byte offset {exc.start}"
        ) from exc


@contextmanager
def atomic_write(path: str | os.PathLike) -> Iterator[Any]:
    """Write via a temp file in the target directory, then rename into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            yield handle
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def dump_json(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=True)


def write_json(path: str | os.PathLike, obj: Any) -> None:
    with atomic_write(path) as handle:
        handle.write(dump_json(obj))
        handle.write("\n")


def write_jsonl(path: str | os.PathLike, records: Iterable[dict]) -> None:
    with atomic_write(path) as handle:
        for record in records:
            handle.write(dump_json(record))
            handle.write("\n")


def read_jsonl(path: str | os.PathLike) -> list[dict]:
    records = []
    for lineno, line in enumerate(read_text(path).splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise DataError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
    return records
