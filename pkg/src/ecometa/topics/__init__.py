"""LLM topic modeling: batched extraction with label carry-over, then merging."""

from ecometa.topics.engine import TopicMap, make_batches, normalize_label, render_label, run_pipeline
from ecometa.topics.archive import RunArchive, RunRecord

__all__ = [
    "RunArchive",
    "RunRecord",
    "TopicMap",
    "make_batches",
    "normalize_label",
    "render_label",
    "run_pipeline",
]
