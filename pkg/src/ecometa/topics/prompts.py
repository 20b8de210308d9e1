"""Prompt templates for topic extraction and merging.

The templates are frozen strings; golden tests pin the rendered output, so
any edit here must update those fixtures deliberately.  Variables are
substituted literally ({documents}, {topics}, {question}, {topic_keywords}),
with collections rendered as compact JSON for unambiguous parsing.
"""

from __future__ import annotations

import hashlib
import json

EXTRACT_SYSTEM = (
    "Generate topics by simulating topic modeling on the given documents. "
    "Documents are survey responses to the question '{question}'. "
    "Each topic should preserve detail in context of the question and be fewer than 5 words. "
    "Create more abstract topics if no detail is lost, but ensure high granularity in context "
    "of the question. "
    "For each topic, provide a list of 2-5 relevant, meaningful keywords from the corresponding "
    "documents. "
    "Keywords should be diverse and not the same as the topic name. "
    "Return a JSON object where each topic is a key, and its keywords are a list of values."
)

EXTRACT_USER = "Write the results of simulating topic modeling for the following documents: {documents}"

CARRY_OVER = "If possible, re-use the following topics: {topics}"

MERGE_SYSTEM = (
    "De-duplicate the results of topic modeling of survey responses to the question {question}. "
    "The topic name is followed by relevant keywords. "
    "De-duplicate topics only if they have the same exact meaning. "
    "Merge duplicates into one topic, do not mention the removal. "
    "Each topic should contain fewer than 5 words. "
    "For each unique topic, merge duplicate topic keywords. "
    "Keywords should be diverse and not the same as the topic name. "
    "Make the topic name descriptive, human-readable and interpretable. "
    "Each word in the topic name should be separated by an underscore (_). "
    "Return a JSON object where each topic is a key, and its keywords are a list of values."
)

MERGE_USER = (
    "De-duplicate the following topic modeling results by merging duplicates into one topic "
    "without mentioning removal: {topic_keywords}"
)


def _compact_json(value) -> str:
    return json.dumps(value, ensure_ascii=False, separators=(", ", ": "))


def render_extract_system(question: str) -> str:
    return EXTRACT_SYSTEM.replace("{question}", question)


def render_extract_user(documents: list[str], prior_topics: list[str]) -> str:
    """User prompt for one batch; the re-use phrase appears only with prior topics."""
    prompt = EXTRACT_USER.replace("{documents}", _compact_json(documents))
    if prior_topics:
        prompt += " " + CARRY_OVER.replace("{topics}", _compact_json(prior_topics))
    return prompt


def render_merge_system(question: str) -> str:
    return MERGE_SYSTEM.replace("{question}", question)


def render_merge_user(topic_keywords: dict[str, list[str]]) -> str:
    return MERGE_USER.replace("{topic_keywords}", _compact_json(topic_keywords))


def prompt_fingerprints() -> dict[str, str]:
    """Stable digest per template; changes exactly when a template changes."""
    templates = {
        "extract_system": EXTRACT_SYSTEM,
        "extract_user": EXTRACT_USER,
        "carry_over": CARRY_OVER,
        "merge_system": MERGE_SYSTEM,
        "merge_user": MERGE_USER,
    }
    return {
        name: hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]
        for name, text in templates.items()
    }
