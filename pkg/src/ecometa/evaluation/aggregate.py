"""Aggregation of rating bundles into topic-quality metrics and agreement."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ecometa.evaluation.form import FormPayload
from ecometa.evaluation.kappa import randolph_kappa
from ecometa.evaluation.models import QuestionRatings, RatingBundle

log = logging.getLogger(__name__)

OUTCOME_MEETS_ALL = "meets_all"
OUTCOME_UNINTERPRETABLE = "uninterpretable"
OUTCOME_NOT_FITTING = "not_fitting"
OUTCOME_TOO_SPECIFIC = "too_specific"

KAPPA_DIMENSIONS = ("interpretable", "fits_question", "too_specific", "duplicate")


class AggregationError(Exception):
    pass


@dataclass
class QualityRow:
    """Pooled judgment outcomes for one question (or the whole survey)."""

    question_id: str
    topic_count: int
    judged_pairs: int
    meets_all: float | None
    uninterpretable: float | None
    not_fitting: float | None
    too_specific: float | None
    duplicate: float | None
    kappa: dict[str, float | None] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "question_id": self.question_id,
            "topic_count": self.topic_count,
            "judged_pairs": self.judged_pairs,
            "meets_all": self.meets_all,
            "uninterpretable": self.uninterpretable,
            "not_fitting": self.not_fitting,
            "too_specific": self.too_specific,
            "duplicate": self.duplicate,
            "kappa": self.kappa,
        }


@dataclass
class QualityReport:
    survey_id: str
    form_hash: str
    rater_count: int
    questions: list[QualityRow] = field(default_factory=list)
    overall: QualityRow | None = None
    rejected: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema": "ecometa/quality@1",
            "survey_id": self.survey_id,
            "form_hash": self.form_hash,
            "rater_count": self.rater_count,
            "questions": [row.to_json() for row in self.questions],
            "overall": self.overall.to_json() if self.overall else None,
            "rejected_bundles": self.rejected,
        }


def _classify(interpretable: bool, fits: bool | None, too_specific: bool | None) -> str:
    if not interpretable:
        return OUTCOME_UNINTERPRETABLE
    if not fits:
        return OUTCOME_NOT_FITTING
    if too_specific:
        return OUTCOME_TOO_SPECIFIC
    return OUTCOME_MEETS_ALL


@dataclass
class _QuestionPool:
    """Raw tallies for one question before turning them into proportions."""

    topic_ids: list[str]
    outcomes: dict[str, int] = field(default_factory=dict)
    judged: int = 0
    duplicate_yes: int = 0
    duplicate_total: int = 0
    # per-topic [yes, no] counts per kappa dimension
    votes: dict[str, dict[str, list[int]]] = field(default_factory=dict)

    def __post_init__(self):
        self.outcomes = {
            OUTCOME_MEETS_ALL: 0,
            OUTCOME_UNINTERPRETABLE: 0,
            OUTCOME_NOT_FITTING: 0,
            OUTCOME_TOO_SPECIFIC: 0,
        }
        self.votes = {
            dim: {topic: [0, 0] for topic in self.topic_ids} for dim in KAPPA_DIMENSIONS
        }

    def add_rating(self, entry: QuestionRatings, gated_as_no: bool = False) -> None:
        grouped = {topic for group in entry.duplicate_groups for topic in group}
        for topic_id in self.topic_ids:
            self.duplicate_total += 1
            flagged = topic_id in grouped
            self.duplicate_yes += int(flagged)
            self.votes["duplicate"][topic_id][0 if flagged else 1] += 1
        for judgment in entry.judgments:
            self.judged += 1
            self.outcomes[
                _classify(judgment.interpretable, judgment.fits_question, judgment.too_specific)
            ] += 1
            self.votes["interpretable"][judgment.topic_id][0 if judgment.interpretable else 1] += 1
            # Gated-out answers are missing data by default; the treat-as-no
            # mode exists for sensitivity analysis of that choice.
            fits = judgment.fits_question
            if fits is None and gated_as_no:
                fits = False
            if fits is not None:
                self.votes["fits_question"][judgment.topic_id][0 if fits else 1] += 1
            too_specific = judgment.too_specific
            if too_specific is None and gated_as_no:
                too_specific = False
            if too_specific is not None:
                self.votes["too_specific"][judgment.topic_id][0 if too_specific else 1] += 1

    def merge(self, other: "_QuestionPool") -> None:
        for key, value in other.outcomes.items():
            self.outcomes[key] += value
        self.judged += other.judged
        self.duplicate_yes += other.duplicate_yes
        self.duplicate_total += other.duplicate_total
        for dim in KAPPA_DIMENSIONS:
            self.votes[dim].update(other.votes[dim])


def _row(question_id: str, pool: _QuestionPool) -> QualityRow:
    judged = pool.judged
    kappa: dict[str, float | None] = {}
    for dim in KAPPA_DIMENSIONS:
        # Gating makes downstream dimensions sparse: only items with at
        # least two ratings on that dimension can witness (dis)agreement.
        items = [counts for counts in pool.votes[dim].values() if sum(counts) >= 2]
        kappa[dim] = randolph_kappa(items, 2)
    present = [v for v in kappa.values() if v is not None]
    kappa["mean"] = sum(present) / len(present) if present else None
    return QualityRow(
        question_id=question_id,
        topic_count=len(pool.topic_ids),
        judged_pairs=judged,
        meets_all=pool.outcomes[OUTCOME_MEETS_ALL] / judged if judged else None,
        uninterpretable=pool.outcomes[OUTCOME_UNINTERPRETABLE] / judged if judged else None,
        not_fitting=pool.outcomes[OUTCOME_NOT_FITTING] / judged if judged else None,
        too_specific=pool.outcomes[OUTCOME_TOO_SPECIFIC] / judged if judged else None,
        duplicate=pool.duplicate_yes / pool.duplicate_total if pool.duplicate_total else None,
        kappa=kappa,
    )


def aggregate_ratings(
    bundles: list[RatingBundle], payload: FormPayload, gated_as_no: bool = False
) -> QualityReport:
    """Pool judgments over (rater, topic) pairs per question, plus survey-wide.

    Proportions are pooled rather than majority-voted, so every individual
    judgment carries equal weight.  All bundles must reference the payload's
    form version.  ``gated_as_no`` switches the kappa treatment of gated-out
    answers from missing-data to an explicit "no".
    """
    if not bundles:
        raise AggregationError("no rating bundles to aggregate")
    hashes = {bundle.form_hash for bundle in bundles}
    expected = payload.form_hash
    if hashes != {expected}:
        raise AggregationError(
            f"mixed or mismatched form versions: bundles carry {sorted(hashes)}, form is {expected}"
        )

    topics = payload.topics_by_question()
    pools = {qid: _QuestionPool(topic_ids=ids) for qid, ids in topics.items()}
    for bundle in bundles:
        for entry in bundle.questions:
            pools[entry.question_id].add_rating(entry, gated_as_no)

    report = QualityReport(
        survey_id=payload.survey_id, form_hash=expected, rater_count=len(bundles)
    )
    overall = _QuestionPool(topic_ids=[])
    for question in payload.questions:
        pool = pools[question.question_id]
        report.questions.append(_row(question.question_id, pool))
        overall.topic_ids.extend(pool.topic_ids)
        overall.merge(pool)
    report.overall = _row("overall", overall)
    return report


def render_quality(report: QualityReport) -> str:
    def fmt(value: float | None) -> str:
        return "  n/a" if value is None else f"{value:.2f}"

    lines = [
        f"survey: {report.survey_id}   form: {report.form_hash}   raters: {report.rater_count}",
        "question      topics  meets  unint  nofit  2spec  dupl   kappa",
    ]
    for row in report.questions + ([report.overall] if report.overall else []):
        lines.append(
            f"{row.question_id.ljust(12)}  {str(row.topic_count).rjust(6)}  "
            f"{fmt(row.meets_all)}   {fmt(row.uninterpretable)}   {fmt(row.not_fitting)}   "
            f"{fmt(row.too_specific)}   {fmt(row.duplicate)}   {fmt(row.kappa.get('mean'))}"
        )
    if report.rejected:
        lines.append(f"rejected bundles: {len(report.rejected)}")
        for item in report.rejected:
            lines.append(f"  {item['label']}: {'; '.join(item['reasons'])}")
    return "\n".join(lines) + "\n"
