"""Workbench configuration: one YAML file, schema-validated, flag overrides win."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema
import yaml

from ecometa.responses import DEFAULT_DENYLIST

LLM_BASE_URL_ENV = "ECOMETA_LLM_BASE_URL"


class ConfigError(Exception):
    pass


@dataclass
class QuestionConfig:
    text: str
    column: str | None = None


@dataclass
class SurveyConfig:
    questions: dict[str, QuestionConfig] = field(default_factory=dict)

    def question_texts(self) -> dict[str, str]:
        return {qid: q.text for qid, q in self.questions.items()}

    def column_map(self) -> dict[str, str]:
        missing = [qid for qid, q in self.questions.items() if q.column is None]
        if missing:
            raise ConfigError(f"surveys: questions {missing} lack a 'column' mapping for ingest")
        return {qid: q.column for qid, q in self.questions.items()}


@dataclass
class WorkbenchConfig:
    output_dir: Path = Path("workdir")
    replay_dir: Path | None = None
    record_dir: Path | None = None

    registry_base_url: str = "https://pypi.org"
    registry_concurrency: int = 8
    registry_timeout_s: float = 10.0
    registry_min_host_interval_ms: float = 100.0
    registry_retries: int = 3

    llm_mode: str = "live"
    llm_base_url: str = "http://localhost:11434"
    llm_model: str = "llama3.3:70b"
    # No implicit randomness: model runs refuse to start without a seed.
    llm_seed: int | None = None
    llm_temperature: float = 0.0
    llm_batch_size: int = 10
    llm_retry_limit: int = 3

    embed_model: str = "all-MiniLM-L6-v2"

    denylist: tuple[str, ...] = DEFAULT_DENYLIST
    surveys: dict[str, SurveyConfig] = field(default_factory=dict)

    def survey(self, survey_id: str) -> SurveyConfig:
        if survey_id not in self.surveys:
            raise ConfigError(
                f"surveys: unknown survey {survey_id!r}; configured: {sorted(self.surveys)}"
            )
        return self.surveys[survey_id]

    def require_seed(self) -> int:
        if self.llm_seed is None:
            raise ConfigError("config field llm.seed: a fixed seed is required for model runs")
        return self.llm_seed


def config_schema() -> dict:
    text = resources.files("ecometa").joinpath("config_schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def _validate(data: dict) -> None:
    validator = jsonschema.Draft202012Validator(config_schema())
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        where = ".".join(str(p) for p in first.absolute_path) or "<root>"
        raise ConfigError(f"config field {where}: {first.message}")


def load_config(path: str | Path | None) -> WorkbenchConfig:
    """Parse and validate the YAML config; the LLM base URL honors its env override."""
    data: dict = {}
    if path is not None:
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        try:
            data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        except yaml.YAMLError as exc:
            raise ConfigError(f"config file is not valid YAML: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must contain a mapping at the top level")
    _validate(data)

    cfg = WorkbenchConfig()
    if "output_dir" in data:
        cfg.output_dir = Path(data["output_dir"])
    if data.get("replay_dir"):
        cfg.replay_dir = Path(data["replay_dir"])
    if data.get("record_dir"):
        cfg.record_dir = Path(data["record_dir"])

    registry = data.get("registry", {})
    cfg.registry_base_url = registry.get("base_url", cfg.registry_base_url)
    cfg.registry_concurrency = registry.get("concurrency", cfg.registry_concurrency)
    cfg.registry_timeout_s = registry.get("timeout_s", cfg.registry_timeout_s)
    cfg.registry_min_host_interval_ms = registry.get(
        "min_host_interval_ms", cfg.registry_min_host_interval_ms
    )
    cfg.registry_retries = registry.get("retries", cfg.registry_retries)

    llm = data.get("llm", {})
    if llm:
        cfg.llm_seed = llm["seed"]
    cfg.llm_mode = llm.get("mode", cfg.llm_mode)
    cfg.llm_base_url = llm.get("base_url", cfg.llm_base_url)
    cfg.llm_model = llm.get("model", cfg.llm_model)
    cfg.llm_temperature = llm.get("temperature", cfg.llm_temperature)
    cfg.llm_batch_size = llm.get("batch_size", cfg.llm_batch_size)
    cfg.llm_retry_limit = llm.get("retry_limit", cfg.llm_retry_limit)
    # Secrets-free deployment hook: the server location is the only setting
    # that may come from the environment.
    env_base = os.environ.get(LLM_BASE_URL_ENV)
    if env_base:
        cfg.llm_base_url = env_base

    cfg.embed_model = data.get("embedding", {}).get("model", cfg.embed_model)

    if "denylist" in data:
        cfg.denylist = tuple(data["denylist"])

    for survey_id, survey in data.get("surveys", {}).items():
        questions = {
            qid: QuestionConfig(text=q["text"], column=q.get("column"))
            for qid, q in survey["questions"].items()
        }
        cfg.surveys[survey_id] = SurveyConfig(questions=questions)
    return cfg
