"""Deterministic stand-ins for the inference server, used offline and in tests."""

from __future__ import annotations

import hashlib
import json
import re

import numpy as np

from ecometa.topics.engine import normalize_label
from ecometa.topics import prompts

_EXTRACT_PREFIX = prompts.EXTRACT_USER.split("{documents}")[0]
_CARRY_MARKER = prompts.CARRY_OVER.split("{topics}")[0]
_MERGE_PREFIX = prompts.MERGE_USER.split("{topic_keywords}")[0]


def _decode_json_at(text: str, start_char: str):
    index = text.find(start_char)
    if index < 0:
        raise ValueError(f"no {start_char!r} found in prompt")
    value, _end = json.JSONDecoder().raw_decode(text[index:])
    return value


class ScriptedChatClient:
    """Returns canned responses in order; records each exchange for assertions."""

    def __init__(self, responses: list[str]):
        self.responses = list(responses)
        self.calls: list[dict] = []

    def generate(self, system, user, *, seed, temperature, json_mode=True) -> str:
        self.calls.append(
            {"system": system, "user": user, "seed": seed, "temperature": temperature}
        )
        if not self.responses:
            raise AssertionError("scripted client ran out of responses")
        return self.responses.pop(0)


class SimulatedChatClient:
    """Derives plausible topics from the prompt content, fully deterministically.

    Extraction labels come from each document's leading words; the carry-over
    list is honored so repeated phrasing re-uses existing labels.  Merging
    collapses labels that normalize identically and emits underscore names,
    matching the merge-prompt contract.  Same prompts in, same text out.
    """

    def __init__(self, perturb_run: int = 0):
        # perturb_run > 0 renames one merged label per value, for drift tests.
        self.perturb_run = perturb_run
        self.calls = 0

    def generate(self, system, user, *, seed, temperature, json_mode=True) -> str:
        self.calls += 1
        if user.startswith(_MERGE_PREFIX):
            return self._merge(user)
        if user.startswith(_EXTRACT_PREFIX):
            return self._extract(user)
        raise ValueError("simulated client received an unknown prompt shape")

    def _extract(self, user: str) -> str:
        carry_at = user.find(_CARRY_MARKER)
        docs_part = user if carry_at < 0 else user[:carry_at]
        documents = _decode_json_at(docs_part, "[")
        prior = _decode_json_at(user[carry_at:], "[") if carry_at >= 0 else []
        prior_by_norm = {normalize_label(p): p for p in prior}

        topics: dict[str, list[str]] = {}
        for doc in documents:
            words = re.findall(r"[A-Za-z0-9']+", str(doc))
            label = " ".join(w.capitalize() for w in words[:2]) if words else "Misc"
            label = prior_by_norm.get(normalize_label(label), label)
            keywords = [w.lower() for w in words[2:6]]
            while len(keywords) < 2:
                keywords.append(("context", "detail")[len(keywords) % 2])
            existing = topics.setdefault(label, [])
            for keyword in keywords[:5]:
                if keyword not in existing and len(existing) < 5:
                    existing.append(keyword)
        return json.dumps(topics, ensure_ascii=False)

    def _merge(self, user: str) -> str:
        raw = _decode_json_at(user, "{")
        merged: dict[str, list[str]] = {}
        for label, keywords in raw.items():
            normalized = normalize_label(label)
            bucket = merged.setdefault(normalized, [])
            for keyword in keywords:
                if keyword not in bucket:
                    bucket.append(keyword)
        if self.perturb_run and merged:
            first = sorted(merged)[0]
            merged[f"{first}_v{self.perturb_run}"] = merged.pop(first)
        return json.dumps(merged, ensure_ascii=False)


class HashEmbedder:
    """Text -> unit vector drawn from a digest-seeded RNG; stable across calls."""

    def __init__(self, dim: int = 384, model_id: str = "mock-hash"):
        self.dim = dim
        self.model_id = model_id

    def _vector(self, text: str) -> np.ndarray:
        digest = hashlib.sha256(text.encode("utf-8")).digest()
        rng = np.random.RandomState(int.from_bytes(digest[:4], "big"))
        vec = rng.standard_normal(self.dim)
        return vec / np.linalg.norm(vec)

    def embed(self, texts: list[str]) -> list[np.ndarray]:
        return [self._vector(t) for t in texts]


class OrthogonalEmbedder:
    """Every distinct text gets its own basis vector: cosine is 1 or 0 exactly."""

    def __init__(self, dim: int = 64, model_id: str = "mock-orthogonal"):
        self.dim = dim
        self.model_id = model_id
        self._index: dict[str, int] = {}

    def embed(self, texts: list[str]) -> list[np.ndarray]:
        vectors = []
        for text in texts:
            if text not in self._index:
                if len(self._index) >= self.dim:
                    raise ValueError("orthogonal embedder capacity exceeded")
                self._index[text] = len(self._index)
            vec = np.zeros(self.dim)
            vec[self._index[text]] = 1.0
            vectors.append(vec)
        return vectors
