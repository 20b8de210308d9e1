"""Append-only archive of topic-modeling runs, one JSON file per run."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

RUN_SCHEMA = "ecometa/run@1"


class ArchiveError(Exception):
    pass


@dataclass
class QuestionRun:
    """Raw and merged topic maps for one question within one run."""

    raw: dict[str, list[str]] = field(default_factory=dict)
    merged: dict[str, list[str]] = field(default_factory=dict)
    failed: bool = False
    error: str | None = None
    failed_response: str = ""
    keyword_warnings: int = 0
    attempts: int = 0

    def to_json(self) -> dict:
        return {
            "raw": self.raw,
            "merged": self.merged,
            "failed": self.failed,
            "error": self.error,
            "failed_response": self.failed_response,
            "keyword_warnings": self.keyword_warnings,
            "attempts": self.attempts,
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuestionRun":
        return cls(
            raw={k: list(v) for k, v in data.get("raw", {}).items()},
            merged={k: list(v) for k, v in data.get("merged", {}).items()},
            failed=bool(data.get("failed", False)),
            error=data.get("error"),
            failed_response=data.get("failed_response", ""),
            keyword_warnings=int(data.get("keyword_warnings", 0)),
            attempts=int(data.get("attempts", 0)),
        )


@dataclass
class RunRecord:
    """Full provenance of one pipeline run: configuration plus per-question maps."""

    run_id: str
    started_at: str
    survey_id: str
    model_id: str
    seed: int
    temperature: float
    batch_size: int
    prompt_fingerprints: dict[str, str] = field(default_factory=dict)
    questions: dict[str, QuestionRun] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "schema": RUN_SCHEMA,
            "run_id": self.run_id,
            "started_at": self.started_at,
            "survey_id": self.survey_id,
            "model_id": self.model_id,
            "seed": self.seed,
            "temperature": self.temperature,
            "batch_size": self.batch_size,
            "prompt_fingerprints": self.prompt_fingerprints,
            "questions": {qid: run.to_json() for qid, run in self.questions.items()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "RunRecord":
        if data.get("schema") != RUN_SCHEMA:
            raise ArchiveError(f"unexpected run schema {data.get('schema')!r}")
        record = cls(
            run_id=data["run_id"],
            started_at=data["started_at"],
            survey_id=data["survey_id"],
            model_id=data["model_id"],
            seed=int(data["seed"]),
            temperature=float(data["temperature"]),
            batch_size=int(data["batch_size"]),
            prompt_fingerprints=dict(data.get("prompt_fingerprints", {})),
        )
        for qid, run in data.get("questions", {}).items():
            record.questions[qid] = QuestionRun.from_json(run)
        return record


class RunArchive:
    """Directory of archived runs; writes never mutate existing files."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def write(self, record: RunRecord) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.directory / f"{record.run_id}.json"
        if path.exists():
            raise ArchiveError(f"run {record.run_id} already archived")
        path.write_text(
            json.dumps(record.to_json(), ensure_ascii=False, indent=1), encoding="utf-8"
        )
        return path

    def load(self, run_id: str) -> RunRecord:
        path = self.directory / f"{run_id}.json"
        if not path.exists():
            raise ArchiveError(f"run {run_id} not found in {self.directory}")
        return RunRecord.from_json(json.loads(path.read_text(encoding="utf-8")))

    def list_runs(self, survey_id: str | None = None) -> list[RunRecord]:
        if not self.directory.exists():
            return []
        records = [
            RunRecord.from_json(json.loads(path.read_text(encoding="utf-8")))
            for path in sorted(self.directory.glob("*.json"))
        ]
        if survey_id is not None:
            records = [r for r in records if r.survey_id == survey_id]
        records.sort(key=lambda r: (r.started_at, r.run_id))
        return records
