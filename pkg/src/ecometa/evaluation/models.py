"""Rating bundle schema: parsing and strict validation of rater JSON exports.

Gating violations are rejected, never repaired: a bundle that answers a
downstream question for a topic it marked uninterpretable is evidence of a
corrupted export, not something to patch over.
"""

from __future__ import annotations

from dataclasses import dataclass, field

_BUNDLE_KEYS = {"form_hash", "rater_id", "survey_id", "questions"}
# "notes" is the documented optional extension carrying rater commentary.
_QUESTION_KEYS = {"question_id", "judgments", "duplicate_groups", "notes"}
_JUDGMENT_KEYS = {"topic_id", "interpretable", "fits_question", "too_specific"}


class BundleRejected(Exception):
    def __init__(self, label: str, reasons: list[str]):
        super().__init__(f"{label}: " + "; ".join(reasons))
        self.label = label
        self.reasons = reasons


@dataclass
class TopicJudgment:
    topic_id: str
    interpretable: bool
    fits_question: bool | None
    too_specific: bool | None


@dataclass
class QuestionRatings:
    question_id: str
    judgments: list[TopicJudgment] = field(default_factory=list)
    duplicate_groups: list[list[str]] = field(default_factory=list)
    notes: str = ""


@dataclass
class RatingBundle:
    form_hash: str
    rater_id: str | None
    survey_id: str
    questions: list[QuestionRatings] = field(default_factory=list)


def _check_judgment(entry: object, known_ids: set[str], seen: set[str], reasons: list[str]) -> TopicJudgment | None:
    if not isinstance(entry, dict):
        reasons.append(f"judgment is not an object: {entry!r}")
        return None
    unknown = set(entry) - _JUDGMENT_KEYS
    missing = _JUDGMENT_KEYS - set(entry)
    if unknown or missing:
        reasons.append(f"judgment keys mismatch (unknown {sorted(unknown)}, missing {sorted(missing)})")
        return None
    topic_id = entry["topic_id"]
    interpretable = entry["interpretable"]
    fits = entry["fits_question"]
    too_specific = entry["too_specific"]
    if not isinstance(topic_id, str):
        reasons.append(f"topic_id is not a string: {topic_id!r}")
        return None
    if topic_id not in known_ids:
        reasons.append(f"unknown topic id {topic_id!r}")
        return None
    if topic_id in seen:
        reasons.append(f"topic {topic_id!r} judged more than once")
        return None
    seen.add(topic_id)
    if not isinstance(interpretable, bool):
        reasons.append(f"{topic_id}: interpretable must be a boolean")
        return None
    if fits is not None and not isinstance(fits, bool):
        reasons.append(f"{topic_id}: fits_question must be boolean or null")
        return None
    if too_specific is not None and not isinstance(too_specific, bool):
        reasons.append(f"{topic_id}: too_specific must be boolean or null")
        return None
    if (fits is not None) != (interpretable is True):
        reasons.append(f"{topic_id}: fits_question present iff interpretable is yes")
        return None
    if (too_specific is not None) != (fits is True):
        reasons.append(f"{topic_id}: too_specific present iff fits_question is yes")
        return None
    return TopicJudgment(topic_id, interpretable, fits, too_specific)


def _check_groups(groups: object, known_ids: set[str], reasons: list[str]) -> list[list[str]]:
    if not isinstance(groups, list):
        reasons.append("duplicate_groups is not a list")
        return []
    grouped: set[str] = set()
    result: list[list[str]] = []
    for group in groups:
        if not isinstance(group, list) or not all(isinstance(t, str) for t in group):
            reasons.append(f"duplicate group is not a list of topic ids: {group!r}")
            continue
        if len(set(group)) != len(group) or len(group) < 2:
            reasons.append(f"duplicate group needs >= 2 distinct members: {group!r}")
            continue
        bad = [t for t in group if t not in known_ids]
        if bad:
            reasons.append(f"duplicate group references unknown topics {bad!r}")
            continue
        overlap = [t for t in group if t in grouped]
        if overlap:
            reasons.append(f"topics {overlap!r} appear in more than one duplicate group")
            continue
        grouped.update(group)
        result.append(list(group))
    return result


def parse_bundle(
    data: object,
    topics_by_question: dict[str, list[str]],
    survey_id: str,
    label: str = "bundle",
) -> RatingBundle:
    """Validate one rater export against the form's topic lists.

    Raises BundleRejected listing every problem found; a valid bundle may
    still cover only a subset of questions or topics.
    """
    reasons: list[str] = []
    if not isinstance(data, dict):
        raise BundleRejected(label, ["bundle is not a JSON object"])
    unknown = set(data) - _BUNDLE_KEYS
    missing = _BUNDLE_KEYS - set(data)
    if unknown:
        reasons.append(f"unknown top-level keys {sorted(unknown)}")
    if missing:
        reasons.append(f"missing top-level keys {sorted(missing)}")
    if reasons:
        raise BundleRejected(label, reasons)
    if not isinstance(data["form_hash"], str) or not data["form_hash"]:
        reasons.append("form_hash must be a non-empty string")
    if data["rater_id"] is not None and not isinstance(data["rater_id"], str):
        reasons.append("rater_id must be a string or null")
    if data["survey_id"] != survey_id:
        reasons.append(f"survey_id {data['survey_id']!r} does not match form {survey_id!r}")
    if not isinstance(data["questions"], list):
        reasons.append("questions must be a list")
        raise BundleRejected(label, reasons)

    bundle = RatingBundle(
        form_hash=str(data["form_hash"]),
        rater_id=data["rater_id"],
        survey_id=survey_id,
    )
    seen_questions: set[str] = set()
    for entry in data["questions"]:
        if not isinstance(entry, dict):
            reasons.append(f"question entry is not an object: {entry!r}")
            continue
        unknown = set(entry) - _QUESTION_KEYS
        if unknown:
            reasons.append(f"question entry has unknown keys {sorted(unknown)}")
            continue
        question_id = entry.get("question_id")
        if question_id not in topics_by_question:
            reasons.append(f"unknown question id {question_id!r}")
            continue
        if question_id in seen_questions:
            reasons.append(f"question {question_id} appears more than once")
            continue
        seen_questions.add(question_id)
        known_ids = set(topics_by_question[question_id])
        judged: set[str] = set()
        judgments = []
        raw_judgments = entry.get("judgments")
        if not isinstance(raw_judgments, list):
            reasons.append(f"{question_id}: judgments is not a list")
            continue
        for raw in raw_judgments:
            judgment = _check_judgment(raw, known_ids, judged, reasons)
            if judgment is not None:
                judgments.append(judgment)
        groups = _check_groups(entry.get("duplicate_groups", []), known_ids, reasons)
        notes = entry.get("notes", "")
        if not isinstance(notes, str):
            reasons.append(f"{question_id}: notes must be a string")
            notes = ""
        bundle.questions.append(
            QuestionRatings(
                question_id=question_id,
                judgments=judgments,
                duplicate_groups=groups,
                notes=notes,
            )
        )
    if reasons:
        raise BundleRejected(label, reasons)
    return bundle
