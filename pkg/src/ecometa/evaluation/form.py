"""Self-contained evaluation form: topic payload + rating UI in one HTML file."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ecometa.topics.archive import RunRecord
from ecometa.topics.engine import normalize_label, render_label


class FormError(Exception):
    pass


@dataclass
class FormTopic:
    topic_id: str
    label: str
    keywords: list[str]


@dataclass
class FormQuestion:
    question_id: str
    question_text: str
    topics: list[FormTopic] = field(default_factory=list)


@dataclass
class FormPayload:
    survey_id: str
    questions: list[FormQuestion] = field(default_factory=list)

    def body_json(self) -> dict:
        return {
            "survey_id": self.survey_id,
            "questions": [
                {
                    "question_id": q.question_id,
                    "question_text": q.question_text,
                    "topics": [
                        {"topic_id": t.topic_id, "label": t.label, "keywords": t.keywords}
                        for t in q.topics
                    ],
                }
                for q in self.questions
            ],
        }

    @property
    def form_hash(self) -> str:
        canonical = json.dumps(self.body_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]

    def to_json(self) -> dict:
        data = self.body_json()
        data["form_hash"] = self.form_hash
        return data

    def topics_by_question(self) -> dict[str, list[str]]:
        return {q.question_id: [t.topic_id for t in q.topics] for q in self.questions}

    @classmethod
    def from_json(cls, data: dict) -> "FormPayload":
        payload = cls(survey_id=data["survey_id"])
        for q in data["questions"]:
            payload.questions.append(
                FormQuestion(
                    question_id=q["question_id"],
                    question_text=q["question_text"],
                    topics=[
                        FormTopic(t["topic_id"], t["label"], list(t["keywords"]))
                        for t in q["topics"]
                    ],
                )
            )
        stored = data.get("form_hash")
        if stored and stored != payload.form_hash:
            raise FormError(f"stored form hash {stored} does not match payload")
        return payload


def build_payload(record: RunRecord, question_texts: dict[str, str]) -> FormPayload:
    """Form payload from a run's merged topic maps; topic ids are content-based."""
    payload = FormPayload(survey_id=record.survey_id)
    for question_id in sorted(record.questions):
        run = record.questions[question_id]
        question = FormQuestion(
            question_id=question_id,
            question_text=question_texts.get(question_id, question_id),
        )
        used: set[str] = set()
        for label, keywords in run.merged.items():
            slug = normalize_label(label)
            topic_id = f"{question_id}:{slug}"
            counter = 2
            while topic_id in used:
                topic_id = f"{question_id}:{slug}-{counter}"
                counter += 1
            used.add(topic_id)
            question.topics.append(
                FormTopic(topic_id=topic_id, label=render_label(label), keywords=list(keywords))
            )
        payload.questions.append(question)
    if not any(q.topics for q in payload.questions):
        raise FormError(f"run {record.run_id} has no merged topics to evaluate")
    return payload


def load_ui_bundle(path: str | Path | None = None) -> str:
    """The rating UI script: explicit path, or the packaged build artifact."""
    if path is not None:
        path = Path(path)
        if not path.exists():
            raise FormError(f"UI bundle not found at {path}")
        return path.read_text(encoding="utf-8")
    asset = resources.files("ecometa.evaluation").joinpath("assets/form_ui.js")
    try:
        return asset.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise FormError(
            "packaged UI bundle missing; build the frontend (cd frontend && npm run build) "
            "or pass an explicit bundle path"
        ) from None


_GUIDE = """
<section class="guide">
<h2>How to rate</h2>
<p>Below you will find, for each survey question, the topics an automated
pipeline extracted from the free-text answers. Please judge every topic:</p>
<ol>
<li><strong>Is this topic interpretable?</strong> Answer yes when the name expresses a
clear, coherent concept on its own. A name like <em>Clear Documentation</em> is
interpretable; a word salad like <em>Mouse Kitchen Yesterday</em> is not.</li>
<li><strong>Does the topic fit the question?</strong> Shown only after a yes above.
Answer yes when the concept is a plausible answer to the survey question it
belongs to, not merely a valid concept from elsewhere.</li>
<li><strong>Is the topic too specific?</strong> Shown only after a yes above. Answer yes
when the name pins down incidental detail that a broader topic would cover
just as well.</li>
</ol>
<p>Afterwards, group topics you consider duplicates of each other: select two
or more topics within a question and add them as a group. Leave the duplicate
section untouched if you see none. A notes field per question is available for
any remarks.</p>
<p>When every shown control is answered, use <strong>Export ratings</strong> to save your
responses as a JSON file and return that file to the study team. You can pause
at any time: exporting and later importing the file restores your progress.
Everything runs locally in this file; no network connection is used.</p>
</section>
"""

_STYLE = """
body { font-family: system-ui, sans-serif; margin: 2rem auto; max-width: 60rem;
       line-height: 1.45; color: #1a1a1a; }
h1 { font-size: 1.5rem; }
section.guide { background: #f6f8fa; border: 1px solid #d0d7de; border-radius: 6px;
                padding: 0.5rem 1.25rem; margin-bottom: 1.5rem; }
.question { border-top: 2px solid #d0d7de; margin-top: 2rem; padding-top: 0.5rem; }
.topic { border: 1px solid #d0d7de; border-radius: 6px; padding: 0.75rem 1rem;
         margin: 0.75rem 0; }
.topic h4 { margin: 0 0 0.5rem 0; }
.keywords { color: #57606a; font-size: 0.9rem; }
.gated { margin-left: 1.5rem; }
.controls label { margin-right: 1rem; }
.dup-builder { margin-top: 1rem; padding: 0.5rem 0; }
.group-chip { display: inline-block; background: #ddf4ff; border: 1px solid #54aeff;
              border-radius: 1rem; padding: 0.1rem 0.75rem; margin: 0.2rem; }
.group-chip button { border: none; background: none; cursor: pointer; }
.error-banner { background: #ffebe9; border: 1px solid #ff8182; padding: 0.75rem 1rem;
                border-radius: 6px; }
.export-bar { position: sticky; bottom: 0; background: #fff; border-top: 2px solid #d0d7de;
              padding: 0.75rem 0; margin-top: 2rem; }
button.primary { background: #1f883d; color: #fff; border: none; border-radius: 6px;
                 padding: 0.5rem 1rem; font-size: 1rem; cursor: pointer; }
button.primary:disabled { background: #94a3b8; cursor: not-allowed; }
textarea { width: 100%; }
"""


def generate_form(payload: FormPayload, ui_bundle: str) -> str:
    """One deterministic HTML document, no external references of any kind."""
    if not ui_bundle.strip():
        raise FormError("UI bundle is empty; build the frontend before generating forms")
    if not any(q.topics for q in payload.questions):
        raise FormError("refusing to generate a form without topics")
    # </ must not terminate the embedding script tags early; \/ is valid in
    # both JSON and JS string literals.
    payload_json = json.dumps(payload.to_json(), ensure_ascii=False).replace("</", "<\\/")
    script = ui_bundle.replace("</script", "<\\/script")
    return f"""<!doctype html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>Topic quality evaluation: {payload.survey_id}</title>
<style>{_STYLE}</style>
</head>
<body>
<h1>Topic quality evaluation</h1>
{_GUIDE}
<div id="app"><p class="error-banner">This form needs JavaScript enabled to collect ratings.</p></div>
<script id="form-payload" type="application/json">{payload_json}</script>
<script>{script}</script>
</body>
</html>
"""
