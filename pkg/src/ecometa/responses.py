"""Survey response ingestion, noise normalization, and per-question statistics."""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, asdict
from pathlib import Path

log = logging.getLogger(__name__)

RESPONSES_SCHEMA = "ecometa/responses@1"

PLACEHOLDER = "not applicable"

# Noise variants observed in free-text survey answers; extensible via config.
DEFAULT_DENYLIST = ("n/a", "* n.a.", "not applicable.", "pass", ".", "-")


@dataclass
class SurveyResponse:
    survey_id: str
    question_id: str
    raw_text: str
    cleaned_text: str
    is_placeholder: bool

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "SurveyResponse":
        return cls(
            survey_id=data["survey_id"],
            question_id=data["question_id"],
            raw_text=data["raw_text"],
            cleaned_text=data["cleaned_text"],
            is_placeholder=bool(data["is_placeholder"]),
        )


@dataclass
class QuestionStats:
    question_id: str
    count: int
    mean_char_length: float | None


class IngestError(Exception):
    pass


def _normalize(text: str) -> str:
    return text.strip().casefold()


def clean_response(raw: str, denylist: tuple[str, ...] = DEFAULT_DENYLIST) -> tuple[str, bool]:
    """Substitute noise answers with the standard placeholder.

    Matching is exact after trimming and case folding; anything else passes
    through untouched, so cleaning never rewrites real content.  The
    placeholder itself always normalizes to the placeholder, which keeps the
    operation idempotent.
    """
    if not denylist:
        raise ValueError("denylist must not be empty")
    normalized = _normalize(raw)
    if normalized == _normalize(PLACEHOLDER) or normalized in {_normalize(d) for d in denylist}:
        return PLACEHOLDER, True
    return raw, False


def make_response(
    survey_id: str, question_id: str, raw: str, denylist: tuple[str, ...] = DEFAULT_DENYLIST
) -> SurveyResponse:
    cleaned, is_placeholder = clean_response(raw, denylist)
    return SurveyResponse(
        survey_id=survey_id,
        question_id=question_id,
        raw_text=raw,
        cleaned_text=cleaned,
        is_placeholder=is_placeholder,
    )


def ingest_csv(
    path: str | Path,
    schema: dict[str, str],
    survey_id: str,
    denylist: tuple[str, ...] = DEFAULT_DENYLIST,
) -> list[SurveyResponse]:
    """One cleaned SurveyResponse per non-empty cell of each mapped column.

    ``schema`` maps question_id -> CSV column name.  Short rows are skipped
    with a warning counter; a missing mapped column fails immediately.
    """
    path = Path(path)
    if not path.exists():
        raise IngestError(f"response CSV not found: {path}")
    responses: list[SurveyResponse] = []
    skipped_rows = 0
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestError(f"response CSV is empty: {path}") from None
        columns = {name: idx for idx, name in enumerate(header)}
        for question_id, column in schema.items():
            if column not in columns:
                raise IngestError(f"column {column!r} for question {question_id} not in CSV header")
        needed = max(columns[column] for column in schema.values()) + 1
        for row in reader:
            if not row:
                continue
            if len(row) < needed:
                skipped_rows += 1
                continue
            for question_id, column in schema.items():
                cell = row[columns[column]]
                if not cell.strip():
                    continue
                responses.append(make_response(survey_id, question_id, cell, denylist))
    if skipped_rows:
        log.warning("skipped %d malformed CSV rows in %s", skipped_rows, path)
    log.info("ingested %d responses from %s", len(responses), path)
    return responses


def question_stats(responses: list[SurveyResponse]) -> list[QuestionStats]:
    """Non-placeholder counts and mean character length (code points) per question."""
    grouped: dict[str, list[int]] = {}
    for response in responses:
        lengths = grouped.setdefault(response.question_id, [])
        if not response.is_placeholder:
            lengths.append(len(response.raw_text))
    stats = []
    for question_id in sorted(grouped):
        lengths = grouped[question_id]
        mean = sum(lengths) / len(lengths) if lengths else None
        stats.append(QuestionStats(question_id=question_id, count=len(lengths), mean_char_length=mean))
    return stats


def render_stats(stats: list[QuestionStats]) -> str:
    lines = ["question      count  mean chars"]
    for entry in stats:
        mean = "n/a" if entry.mean_char_length is None else f"{entry.mean_char_length:.0f}"
        lines.append(f"{entry.question_id.ljust(12)}  {str(entry.count).rjust(5)}  {mean.rjust(10)}")
    return "\n".join(lines) + "\n"


def write_responses(path: str | Path, responses: list[SurveyResponse]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        fh.write(json.dumps({"schema": RESPONSES_SCHEMA}) + "\n")
        for response in responses:
            fh.write(json.dumps(response.to_json(), ensure_ascii=False) + "\n")


def read_responses(path: str | Path) -> list[SurveyResponse]:
    path = Path(path)
    if not path.exists():
        raise IngestError(f"response store not found: {path}")
    with path.open("r", encoding="utf-8") as fh:
        header = json.loads(fh.readline())
        if header.get("schema") != RESPONSES_SCHEMA:
            raise IngestError(f"{path} has unexpected schema {header.get('schema')!r}")
        return [SurveyResponse.from_json(json.loads(line)) for line in fh if line.strip()]
