"""Builders for form payloads and rating bundles used across evaluation tests."""

from __future__ import annotations

import random

from ecometa.evaluation.form import FormPayload, FormQuestion, FormTopic


def make_payload(topics_per_question=(3, 3), survey_id="repository_url") -> FormPayload:
    payload = FormPayload(survey_id=survey_id)
    for q_index, topic_count in enumerate(topics_per_question, start=1):
        question_id = f"SQ-1.{q_index}"
        question = FormQuestion(question_id=question_id, question_text=f"Question {q_index}?")
        for t_index in range(1, topic_count + 1):
            question.topics.append(
                FormTopic(
                    topic_id=f"{question_id}:topic_{t_index}",
                    label=f"Topic {t_index}",
                    keywords=["alpha", "beta"],
                )
            )
        payload.questions.append(question)
    return payload


def judgment(topic_id: str, interpretable: bool, fits=None, too_specific=None) -> dict:
    return {
        "topic_id": topic_id,
        "interpretable": interpretable,
        "fits_question": fits,
        "too_specific": too_specific,
    }


def uniform_bundle(
    payload: FormPayload,
    rater_id: str | None = None,
    verdict=(True, True, False),
    groups: dict[str, list[list[str]]] | None = None,
) -> dict:
    """Every topic judged with the same verdict tuple (gating-consistent)."""
    interpretable, fits, too_specific = verdict
    questions = []
    for question in payload.questions:
        judgments = []
        for topic in question.topics:
            judgments.append(
                judgment(
                    topic.topic_id,
                    interpretable,
                    fits if interpretable else None,
                    too_specific if interpretable and fits else None,
                )
            )
        questions.append(
            {
                "question_id": question.question_id,
                "judgments": judgments,
                "duplicate_groups": (groups or {}).get(question.question_id, []),
            }
        )
    return {
        "form_hash": payload.form_hash,
        "rater_id": rater_id,
        "survey_id": payload.survey_id,
        "questions": questions,
    }


def random_bundle(payload: FormPayload, rng: random.Random, rater_id: str) -> dict:
    """A gating-valid bundle with random verdicts and random duplicate groups."""
    questions = []
    for question in payload.questions:
        judgments = []
        for topic in question.topics:
            interpretable = rng.random() < 0.8
            fits = (rng.random() < 0.8) if interpretable else None
            too_specific = (rng.random() < 0.3) if fits else None
            judgments.append(judgment(topic.topic_id, interpretable, fits, too_specific))
        groups = []
        available = [t.topic_id for t in question.topics]
        rng.shuffle(available)
        while len(available) >= 2 and rng.random() < 0.4:
            size = rng.randint(2, min(3, len(available)))
            groups.append([available.pop() for _ in range(size)])
        questions.append(
            {"question_id": question.question_id, "judgments": judgments, "duplicate_groups": groups}
        )
    return {
        "form_hash": payload.form_hash,
        "rater_id": rater_id,
        "survey_id": payload.survey_id,
        "questions": questions,
    }
