"""Two-stage topic modeling: batched extraction with carry-over, then merging."""

from __future__ import annotations

import json
import logging
import re
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone

from ecometa.responses import SurveyResponse
from ecometa.topics import prompts
from ecometa.topics.archive import QuestionRun, RunRecord

log = logging.getLogger(__name__)

STAGE_RAW = "raw"
STAGE_MERGED = "merged"


@dataclass
class TopicMap:
    """Ordered topic label -> keyword list for one question."""

    question_id: str
    topics: dict[str, list[str]] = field(default_factory=dict)
    stage: str = STAGE_RAW

    def labels(self) -> list[str]:
        return list(self.topics.keys())


@dataclass
class EngineConfig:
    model_id: str
    seed: int
    temperature: float = 0.0
    batch_size: int = 10
    retry_limit: int = 3
    json_mode: bool = True


class TopicParseError(Exception):
    """The model's output was not a valid topic->keywords JSON object."""

    def __init__(self, message: str, response_text: str = ""):
        super().__init__(message)
        self.response_text = response_text


class QuestionFailed(Exception):
    """All retries for one batch were exhausted; the question is abandoned."""

    def __init__(self, question_id: str, message: str, response_text: str = ""):
        super().__init__(f"{question_id}: {message}")
        self.question_id = question_id
        self.response_text = response_text


def normalize_label(label: str) -> str:
    """Canonical comparison form: case-folded, whitespace/underscore runs -> '_'."""
    collapsed = re.sub(r"[\s_]+", "_", label.strip().casefold())
    return collapsed.strip("_")


def render_label(label: str) -> str:
    """Display form of a normalized label: 'forgot_to_assign' -> 'Forgot To Assign'."""
    words = [w for w in normalize_label(label).split("_") if w]
    return " ".join(w.capitalize() for w in words)


def parse_topic_json(text: str) -> tuple[dict[str, list[str]], int]:
    """Validate a topic->keywords object; returns (topics, keyword_count_warnings).

    Structural violations raise TopicParseError (and trigger a retry); only
    keyword counts outside the requested 2-5 band are tolerated with a
    warning, since keywords are a secondary output.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TopicParseError(f"response is not valid JSON: {exc}", text) from exc
    if not isinstance(data, dict):
        raise TopicParseError("response JSON is not an object", text)
    topics: dict[str, list[str]] = {}
    warnings = 0
    for label, keywords in data.items():
        if not str(label).strip():
            raise TopicParseError("response contains an empty topic label", text)
        if not isinstance(keywords, list) or not keywords:
            raise TopicParseError(f"topic {label!r} lacks a keyword list", text)
        cleaned = [str(k).strip() for k in keywords if str(k).strip()]
        if not cleaned:
            raise TopicParseError(f"topic {label!r} has only blank keywords", text)
        if not 2 <= len(cleaned) <= 5:
            warnings += 1
        topics[str(label)] = cleaned
    return topics, warnings


def make_batches(responses: list[SurveyResponse], batch_size: int) -> list[list[SurveyResponse]]:
    """Placeholder-free batches in original order; all full except possibly the last."""
    if batch_size < 1:
        raise ValueError(f"batch_size must be >= 1, got {batch_size}")
    kept = [r for r in responses if not r.is_placeholder]
    return [kept[i : i + batch_size] for i in range(0, len(kept), batch_size)]


def _generate_parsed(
    client, config: EngineConfig, system: str, user: str, question_id: str
) -> tuple[dict[str, list[str]], int, int]:
    """Send a prompt, retrying the identical prompt on malformed output."""
    last_error: TopicParseError | None = None
    for attempt in range(1, config.retry_limit + 1):
        text = client.generate(
            system, user, seed=config.seed, temperature=config.temperature, json_mode=config.json_mode
        )
        try:
            topics, warnings = parse_topic_json(text)
            return topics, warnings, attempt
        except TopicParseError as exc:
            last_error = exc
            log.warning("%s: malformed model output on attempt %d: %s", question_id, attempt, exc)
    assert last_error is not None
    raise QuestionFailed(question_id, str(last_error), last_error.response_text)


def extract_topics_batch(
    client,
    config: EngineConfig,
    question_id: str,
    question_text: str,
    batch: list[SurveyResponse],
    prior_topics: list[str],
) -> tuple[TopicMap, int, int]:
    """Raw topics for one batch; returns (map, keyword_warnings, attempts)."""
    system = prompts.render_extract_system(question_text)
    user = prompts.render_extract_user([r.cleaned_text for r in batch], prior_topics)
    topics, warnings, attempts = _generate_parsed(client, config, system, user, question_id)
    return TopicMap(question_id=question_id, topics=topics, stage=STAGE_RAW), warnings, attempts


def merge_topics(
    client,
    config: EngineConfig,
    question_id: str,
    question_text: str,
    raw_union: TopicMap,
) -> tuple[TopicMap, int, int]:
    """Prompt-based de-duplication of the accumulated raw map; labels normalized."""
    if not raw_union.topics:
        return TopicMap(question_id=question_id, stage=STAGE_MERGED), 0, 0
    system = prompts.render_merge_system(question_text)
    user = prompts.render_merge_user(raw_union.topics)
    topics, warnings, attempts = _generate_parsed(client, config, system, user, question_id)
    merged: dict[str, list[str]] = {}
    for label, keywords in topics.items():
        normalized = normalize_label(label)
        if normalized in merged:
            log.warning("%s: merge output repeats label %r after normalization", question_id, label)
            merged[normalized] = _union(merged[normalized], keywords)
        else:
            merged[normalized] = keywords
    return TopicMap(question_id=question_id, topics=merged, stage=STAGE_MERGED), warnings, attempts


def _union(first: list[str], second: list[str]) -> list[str]:
    combined = list(first)
    seen = set(first)
    for item in second:
        if item not in seen:
            seen.add(item)
            combined.append(item)
    return combined


def _accumulate(raw_union: TopicMap, batch_map: TopicMap) -> None:
    # Identical labels across batches union their keywords, insertion-ordered.
    for label, keywords in batch_map.topics.items():
        if label in raw_union.topics:
            raw_union.topics[label] = _union(raw_union.topics[label], keywords)
        else:
            raw_union.topics[label] = keywords


def run_question(
    client,
    config: EngineConfig,
    question_id: str,
    question_text: str,
    responses: list[SurveyResponse],
) -> QuestionRun:
    """Strictly sequential batches (carry-over dependency), then one merge pass."""
    raw_union = TopicMap(question_id=question_id, stage=STAGE_RAW)
    warnings = 0
    max_attempts = 0
    try:
        for batch in make_batches(responses, config.batch_size):
            prior = raw_union.labels()
            batch_map, batch_warnings, attempts = extract_topics_batch(
                client, config, question_id, question_text, batch, prior
            )
            warnings += batch_warnings
            max_attempts = max(max_attempts, attempts)
            _accumulate(raw_union, batch_map)
        merged, merge_warnings, attempts = merge_topics(
            client, config, question_id, question_text, raw_union
        )
        warnings += merge_warnings
        max_attempts = max(max_attempts, attempts)
    except QuestionFailed as exc:
        log.error("question %s failed: %s", question_id, exc)
        return QuestionRun(
            raw=dict(raw_union.topics),
            merged={},
            failed=True,
            error=str(exc),
            failed_response=exc.response_text,
            keyword_warnings=warnings,
            attempts=max_attempts,
        )
    return QuestionRun(
        raw=dict(raw_union.topics),
        merged=dict(merged.topics),
        keyword_warnings=warnings,
        attempts=max_attempts,
    )


def run_pipeline(
    responses: list[SurveyResponse],
    questions: dict[str, str],
    config: EngineConfig,
    client,
    survey_id: str,
) -> RunRecord:
    """One full archived run: every question extracted and merged independently.

    A failed question is recorded with its failure marker; the others still
    complete.
    """
    by_question: dict[str, list[SurveyResponse]] = {qid: [] for qid in questions}
    for response in responses:
        if response.question_id in by_question:
            by_question[response.question_id].append(response)

    record = RunRecord(
        run_id=uuid.uuid4().hex[:12],
        started_at=datetime.now(timezone.utc).isoformat(),
        survey_id=survey_id,
        model_id=config.model_id,
        seed=config.seed,
        temperature=config.temperature,
        batch_size=config.batch_size,
        prompt_fingerprints=prompts.prompt_fingerprints(),
    )
    for question_id in sorted(questions):
        record.questions[question_id] = run_question(
            client, config, question_id, questions[question_id], by_question[question_id]
        )
    return record
