"""HTTP clients for a locally hosted inference server (chat + embeddings).

The wire contract mirrors the Ollama JSON API: one POST per generation with
model id, system/user messages, seed, temperature, and an optional JSON-mode
flag; embeddings come from the companion embed endpoint.
"""

from __future__ import annotations

import logging

import numpy as np
import requests

log = logging.getLogger(__name__)


class LlmServerError(Exception):
    pass


class HttpChatClient:
    def __init__(self, base_url: str, model_id: str, timeout_s: float = 300.0):
        self.base_url = base_url.rstrip("/")
        self.model_id = model_id
        self.timeout_s = timeout_s

    def generate(
        self, system: str, user: str, *, seed: int, temperature: float, json_mode: bool = True
    ) -> str:
        payload = {
            "model": self.model_id,
            "messages": [
                {"role": "system", "content": system},
                {"role": "user", "content": user},
            ],
            "options": {"seed": seed, "temperature": temperature},
            "stream": False,
        }
        if json_mode:
            payload["format"] = "json"
        try:
            resp = requests.post(f"{self.base_url}/api/chat", json=payload, timeout=self.timeout_s)
            resp.raise_for_status()
            data = resp.json()
        except (requests.RequestException, ValueError) as exc:
            raise LlmServerError(f"chat request to {self.base_url} failed: {exc}") from exc
        try:
            return data["message"]["content"]
        except (KeyError, TypeError) as exc:
            raise LlmServerError(f"unexpected chat response shape: {data!r}") from exc


class HttpEmbedder:
    def __init__(self, base_url: str, model_id: str, timeout_s: float = 120.0):
        self.base_url = base_url.rstrip("/")
        self.model_id = model_id
        self.timeout_s = timeout_s

    def embed(self, texts: list[str]) -> list[np.ndarray]:
        if not texts:
            return []
        payload = {"model": self.model_id, "input": texts}
        try:
            resp = requests.post(f"{self.base_url}/api/embed", json=payload, timeout=self.timeout_s)
            resp.raise_for_status()
            data = resp.json()
        except (requests.RequestException, ValueError) as exc:
            raise LlmServerError(f"embed request to {self.base_url} failed: {exc}") from exc
        vectors = data.get("embeddings")
        if not isinstance(vectors, list) or len(vectors) != len(texts):
            raise LlmServerError(f"unexpected embed response shape: {data!r}")
        return [np.asarray(v, dtype=float) for v in vectors]
