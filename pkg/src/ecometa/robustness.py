"""Cross-run consistency of topic sets: lexical (Jaccard) and semantic (cosine)."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from ecometa.topics.archive import RunRecord
from ecometa.topics.engine import normalize_label

log = logging.getLogger(__name__)

# How two topic *sets* are compared semantically; carried into reports so the
# numbers stay interpretable.
AGGREGATION_NOTE = (
    "semantic score is the symmetric mean of per-label best-match cosine: "
    "each label's maximum cosine against the other set, averaged per direction, "
    "then averaged over both directions"
)


class RobustnessError(Exception):
    pass


@dataclass
class QuestionRobustness:
    question_id: str
    run_count: int
    jaccard: float
    cosine: float


@dataclass
class RobustnessReport:
    survey_id: str
    embed_model: str
    questions: list[QuestionRobustness] = field(default_factory=list)
    note: str = AGGREGATION_NOTE

    @property
    def average(self) -> tuple[float, float]:
        jaccard = sum(q.jaccard for q in self.questions) / len(self.questions)
        cosine = sum(q.cosine for q in self.questions) / len(self.questions)
        return jaccard, cosine

    def to_json(self) -> dict:
        jaccard, cosine = self.average if self.questions else (None, None)
        return {
            "schema": "ecometa/robustness@1",
            "survey_id": self.survey_id,
            "embed_model": self.embed_model,
            "note": self.note,
            "questions": [
                {
                    "question_id": q.question_id,
                    "run_count": q.run_count,
                    "jaccard": q.jaccard,
                    "cosine": q.cosine,
                }
                for q in self.questions
            ],
            "average": {"jaccard": jaccard, "cosine": cosine},
        }


def jaccard(set_a: set[str], set_b: set[str]) -> float:
    """|A∩B| / |A∪B| over normalized labels; two empty sets agree perfectly."""
    if not set_a and not set_b:
        return 1.0
    return len(set_a & set_b) / len(set_a | set_b)


def _spaced(label: str) -> str:
    return normalize_label(label).replace("_", " ")


def semantic_similarity(set_a: set[str], set_b: set[str], embedder) -> float:
    """Symmetric best-match cosine between two label sets.

    Labels are rendered as spaced words before embedding.  Conventions for
    degenerate inputs: both empty -> 1.0 (agreement on emptiness), one empty
    -> 0.0.
    """
    if not set_a and not set_b:
        return 1.0
    if not set_a or not set_b:
        return 0.0
    labels_a = sorted({_spaced(label) for label in set_a})
    labels_b = sorted({_spaced(label) for label in set_b})
    vectors = embedder.embed(labels_a + labels_b)
    matrix = np.stack([np.asarray(v, dtype=float) for v in vectors])
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    if np.any(norms == 0):
        raise RobustnessError("embedder returned a zero vector")
    matrix = matrix / norms
    similarity = matrix[: len(labels_a)] @ matrix[len(labels_a) :].T
    forward = float(similarity.max(axis=1).mean())
    backward = float(similarity.max(axis=0).mean())
    return (forward + backward) / 2.0


def _merged_label_sets(runs: list[RunRecord], question_id: str) -> list[set[str]]:
    sets = []
    for run in runs:
        question = run.questions.get(question_id)
        if question is None or question.failed:
            continue
        sets.append({normalize_label(label) for label in question.merged})
    return sets


def robustness_report(
    runs: list[RunRecord], survey_id: str, embedder, embed_model: str = ""
) -> RobustnessReport:
    """Mean pairwise similarity over all unordered run pairs, per question.

    Pure with respect to the archive subset it reads; questions with fewer
    than two usable runs are a hard error rather than a silent gap.
    """
    survey_runs = [r for r in runs if r.survey_id == survey_id]
    if len(survey_runs) < 2:
        raise RobustnessError(
            f"survey {survey_id!r} has {len(survey_runs)} archived runs; need at least 2"
        )
    question_ids = sorted({qid for run in survey_runs for qid in run.questions})
    report = RobustnessReport(survey_id=survey_id, embed_model=embed_model)
    for question_id in question_ids:
        label_sets = _merged_label_sets(survey_runs, question_id)
        if len(label_sets) < 2:
            raise RobustnessError(
                f"question {question_id} has {len(label_sets)} usable runs; need at least 2"
            )
        pairs = list(combinations(label_sets, 2))
        jaccard_mean = sum(jaccard(a, b) for a, b in pairs) / len(pairs)
        cosine_mean = sum(semantic_similarity(a, b, embedder) for a, b in pairs) / len(pairs)
        report.questions.append(
            QuestionRobustness(
                question_id=question_id,
                run_count=len(label_sets),
                jaccard=jaccard_mean,
                cosine=cosine_mean,
            )
        )
    return report


def render_robustness(report: RobustnessReport) -> str:
    lines = [
        f"survey: {report.survey_id}",
        "question      runs  jaccard  cosine",
    ]
    for q in report.questions:
        lines.append(
            f"{q.question_id.ljust(12)}  {str(q.run_count).rjust(4)}  "
            f"{q.jaccard:7.3f}  {q.cosine:6.3f}"
        )
    if report.questions:
        jaccard_avg, cosine_avg = report.average
        runs = max(q.run_count for q in report.questions)
        lines.append(
            f"{'average'.ljust(12)}  {str(runs).rjust(4)}  {jaccard_avg:7.3f}  {cosine_avg:6.3f}"
        )
    lines.append(f"note: {report.note}")
    return "\n".join(lines) + "\n"
