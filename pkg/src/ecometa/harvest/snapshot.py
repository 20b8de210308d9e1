"""Snapshot persistence: schema-tagged JSON-lines files for records and audits."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Callable, Iterable, TypeVar

from ecometa.harvest.models import LinkAudit, PackageRecord

PACKAGES_SCHEMA = "ecometa/packages@1"
LINKS_SCHEMA = "ecometa/links@1"

T = TypeVar("T")


class SnapshotError(Exception):
    pass


def _write_jsonl(path: Path, schema: str, rows: Iterable[dict]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        fh.write(json.dumps({"schema": schema}) + "\n")
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")


def _read_jsonl(path: Path, schema: str, parse: Callable[[dict], T]) -> list[T]:
    if not path.exists():
        raise SnapshotError(f"snapshot file not found: {path}")
    with path.open("r", encoding="utf-8") as fh:
        header_line = fh.readline()
        try:
            header = json.loads(header_line)
        except json.JSONDecodeError as exc:
            raise SnapshotError(f"{path} has no schema header") from exc
        if header.get("schema") != schema:
            raise SnapshotError(
                f"{path} has schema {header.get('schema')!r}, expected {schema!r}"
            )
        return [parse(json.loads(line)) for line in fh if line.strip()]


def write_packages(path: str | Path, records: list[PackageRecord]) -> None:
    _write_jsonl(Path(path), PACKAGES_SCHEMA, (r.to_json() for r in records))


def read_packages(path: str | Path) -> list[PackageRecord]:
    return _read_jsonl(Path(path), PACKAGES_SCHEMA, PackageRecord.from_json)


def write_links(path: str | Path, audits: list[LinkAudit]) -> None:
    _write_jsonl(Path(path), LINKS_SCHEMA, (a.to_json() for a in audits))


def read_links(path: str | Path) -> list[LinkAudit]:
    return _read_jsonl(Path(path), LINKS_SCHEMA, LinkAudit.from_json)
