"""Command-line orchestration: each pipeline stage is one subcommand with file handoffs."""

from __future__ import annotations

import functools
import json
import logging
import sys
from pathlib import Path

import click

from ecometa.config import ConfigError, WorkbenchConfig, load_config
from ecometa.harvest import graph as graphmod
from ecometa.harvest import snapshot
from ecometa.harvest.liveness import AuditPolicy, audit_liveness
from ecometa.harvest.models import CATEGORY_OTHER
from ecometa.harvest.pipeline import harvest_snapshot
from ecometa.harvest.report import ecosystem_report, render_report
from ecometa.harvest.sample import sample_participants
from ecometa.httpio import ReplayMiss, TransportError, make_client
from ecometa import responses as responses_mod
from ecometa.robustness import RobustnessError, render_robustness, robustness_report
from ecometa.topics.archive import ArchiveError, RunArchive
from ecometa.topics.client import HttpChatClient, HttpEmbedder, LlmServerError
from ecometa.topics.engine import EngineConfig, run_pipeline
from ecometa.topics.mock import HashEmbedder, SimulatedChatClient
from ecometa.evaluation.aggregate import AggregationError, aggregate_ratings, render_quality
from ecometa.evaluation.form import FormError, FormPayload, build_payload, generate_form, load_ui_bundle
from ecometa.evaluation.models import BundleRejected, parse_bundle

log = logging.getLogger(__name__)

_RECOVERABLE = (
    ConfigError,
    snapshot.SnapshotError,
    responses_mod.IngestError,
    TransportError,
    ReplayMiss,
    ArchiveError,
    RobustnessError,
    AggregationError,
    FormError,
    LlmServerError,
    ValueError,
)


def _fail(message: str) -> None:
    click.echo(json.dumps({"error": message}), err=True)
    sys.exit(1)


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _RECOVERABLE as exc:
            _fail(str(exc))

    return wrapper


class Workbench:
    """Resolved configuration plus the standard output layout."""

    def __init__(self, config: WorkbenchConfig, out_override: str | None):
        self.config = config
        self.out = Path(out_override) if out_override else config.output_dir

    def path(self, *parts: str) -> Path:
        target = self.out.joinpath(*parts)
        target.parent.mkdir(parents=True, exist_ok=True)
        return target

    def http_client(self, replay: str | None, record: str | None):
        cfg = self.config
        replay_dir = replay or cfg.replay_dir
        record_dir = record or cfg.record_dir
        return make_client(
            replay_dir=replay_dir,
            record_dir=record_dir,
            timeout_s=cfg.registry_timeout_s,
            retries=cfg.registry_retries,
            min_host_interval_s=cfg.registry_min_host_interval_ms / 1000.0,
        )

    def chat_client(self):
        if self.config.llm_mode == "mock":
            return SimulatedChatClient()
        return HttpChatClient(self.config.llm_base_url, self.config.llm_model)

    def embedder(self, model_override: str | None):
        model = model_override or self.config.embed_model
        if self.config.llm_mode == "mock":
            return HashEmbedder(model_id=model)
        return HttpEmbedder(self.config.llm_base_url, model)

    # Stage artifact locations
    @property
    def packages_file(self) -> Path:
        return self.out / "snapshot" / "packages.jsonl"

    @property
    def links_file(self) -> Path:
        return self.out / "snapshot" / "links.jsonl"

    @property
    def audited_links_file(self) -> Path:
        return self.out / "snapshot" / "links_audited.jsonl"

    @property
    def graph_file(self) -> Path:
        return self.out / "snapshot" / "graph.json"

    def responses_file(self, survey_id: str) -> Path:
        return self.out / "responses" / f"{survey_id}.jsonl"

    @property
    def runs_dir(self) -> Path:
        return self.out / "runs"


@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None, help="Workbench YAML config.")
@click.option("--out", "out_dir", type=click.Path(), default=None, help="Output directory (overrides config).")
@click.option("--verbose", is_flag=True, help="Debug-level logging.")
@click.pass_context
def main(ctx, config_path, out_dir, verbose):
    """Registry metadata audits and survey topic modeling, one stage per subcommand."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = load_config(config_path)
    except ConfigError as exc:
        _fail(str(exc))
        return
    ctx.obj = Workbench(config, out_dir)


@main.command()
@click.option("--replay", type=click.Path(), default=None, help="Serve all fetches from this fixture directory.")
@click.option("--record", type=click.Path(), default=None, help="Record every live response into this directory.")
@click.option("--concurrency", type=int, default=None)
@click.pass_obj
@handle_errors
def harvest(wb: Workbench, replay, record, concurrency):
    """Fetch the package index, per-package metadata, and funding manifests."""
    client = wb.http_client(replay, record)
    workers = concurrency or wb.config.registry_concurrency
    records, audits = harvest_snapshot(
        client, wb.config.registry_base_url, concurrency=workers
    )
    snapshot.write_packages(wb.path("snapshot", "packages.jsonl"), records)
    snapshot.write_links(wb.path("snapshot", "links.jsonl"), audits)
    click.echo(f"harvested {len(records)} packages, {len(audits)} classified links")


@main.command()
@click.option("--replay", type=click.Path(), default=None)
@click.option("--record", type=click.Path(), default=None)
@click.option("--concurrency", type=int, default=None)
@click.pass_obj
@handle_errors
def audit(wb: Workbench, replay, record, concurrency):
    """Check liveness of classified repository and donation links."""
    client = wb.http_client(replay, record)
    links = snapshot.read_links(wb.links_file)
    policy = AuditPolicy(concurrency=concurrency or wb.config.registry_concurrency)
    to_check = [a for a in links if a.category != CATEGORY_OTHER]
    checked = {id(a): b for a, b in zip(to_check, audit_liveness(to_check, client, policy))}
    merged = [checked.get(id(a), a) for a in links]
    snapshot.write_links(wb.path("snapshot", "links_audited.jsonl"), merged)
    click.echo(f"audited {len(to_check)} of {len(merged)} links")


@main.command()
@click.option("--damping", type=float, default=0.85, show_default=True)
@click.option("--epsilon", type=float, default=1e-10, show_default=True)
@click.option("--max-iter", type=int, default=200, show_default=True)
@click.pass_obj
@handle_errors
def rank(wb: Workbench, damping, epsilon, max_iter):
    """Build the dependency graph and score packages with PageRank."""
    records = snapshot.read_packages(wb.packages_file)
    graph = graphmod.build_dependency_graph(records)
    graphmod.pagerank(graph, damping=damping, epsilon=epsilon, max_iter=max_iter)
    wb.path("snapshot", "graph.json").write_text(
        json.dumps(graph.to_json(), ensure_ascii=False, indent=1), encoding="utf-8"
    )
    state = "converged" if graph.converged else "did not converge"
    click.echo(f"ranked {len(graph.nodes)} nodes ({state} after {graph.iterations} iterations)")


@main.command()
@click.option("--percentiles", default="1", show_default=True, help="Comma-separated top percentiles.")
@click.pass_obj
@handle_errors
def report(wb: Workbench, percentiles):
    """Aggregate snapshot, audit, and ranking into the ecosystem report."""
    try:
        parsed = tuple(float(p.strip()) for p in percentiles.split(",") if p.strip())
    except ValueError:
        raise ConfigError(f"--percentiles must be comma-separated numbers, got {percentiles!r}")
    records = snapshot.read_packages(wb.packages_file)
    links_path = wb.audited_links_file if wb.audited_links_file.exists() else wb.links_file
    audits = snapshot.read_links(links_path)
    if wb.graph_file.exists():
        graph = graphmod.DependencyGraph.from_json(
            json.loads(wb.graph_file.read_text(encoding="utf-8"))
        )
    else:
        graph = graphmod.build_dependency_graph(records)
        graphmod.pagerank(graph)
    result = ecosystem_report(records, audits, graph, percentiles=parsed or (1.0,))
    wb.path("reports", "ecosystem.json").write_text(
        json.dumps(result.to_json(), ensure_ascii=False, indent=1), encoding="utf-8"
    )
    text = render_report(result)
    wb.path("reports", "ecosystem.txt").write_text(text, encoding="utf-8")
    click.echo(text, nl=False)


@main.command()
@click.option("--n", "count", type=int, required=True, help="Number of participants to draw.")
@click.option("--seed", type=int, required=True, help="Sampling seed.")
@click.pass_obj
@handle_errors
def sample(wb: Workbench, count, seed):
    """Draw a uniform no-replacement sample of maintainer contact addresses."""
    records = snapshot.read_packages(wb.packages_file)
    emails = sample_participants(records, count, seed)
    target = wb.path("samples", "participants.txt")
    target.write_text("\n".join(emails) + "\n", encoding="utf-8")
    click.echo(f"sampled {len(emails)} addresses into {target}")


@main.command()
@click.option("--csv", "csv_path", type=click.Path(), required=True)
@click.option("--survey", "survey_id", required=True)
@click.pass_obj
@handle_errors
def ingest(wb: Workbench, csv_path, survey_id):
    """Ingest survey answers from CSV, normalize noise, and write the response store."""
    survey = wb.config.survey(survey_id)
    rows = responses_mod.ingest_csv(
        csv_path, survey.column_map(), survey_id, wb.config.denylist
    )
    responses_mod.write_responses(wb.path("responses", f"{survey_id}.jsonl"), rows)
    stats = responses_mod.question_stats(rows)
    stats_json = [
        {"question_id": s.question_id, "count": s.count, "mean_char_length": s.mean_char_length}
        for s in stats
    ]
    wb.path("reports", f"stats_{survey_id}.json").write_text(
        json.dumps({"schema": "ecometa/stats@1", "survey_id": survey_id, "questions": stats_json},
                   ensure_ascii=False, indent=1),
        encoding="utf-8",
    )
    text = responses_mod.render_stats(stats)
    wb.path("reports", f"stats_{survey_id}.txt").write_text(text, encoding="utf-8")
    click.echo(text, nl=False)


@main.command()
@click.option("--survey", "survey_id", required=True)
@click.option("--runs", type=int, default=1, show_default=True)
@click.pass_obj
@handle_errors
def model(wb: Workbench, survey_id, runs):
    """Execute archived topic-modeling runs against the configured model server."""
    survey = wb.config.survey(survey_id)
    rows = responses_mod.read_responses(wb.responses_file(survey_id))
    engine_config = EngineConfig(
        model_id=wb.config.llm_model,
        seed=wb.config.require_seed(),
        temperature=wb.config.llm_temperature,
        batch_size=wb.config.llm_batch_size,
        retry_limit=wb.config.llm_retry_limit,
    )
    client = wb.chat_client()
    archive = RunArchive(wb.runs_dir)
    for index in range(runs):
        record = run_pipeline(rows, survey.question_texts(), engine_config, client, survey_id)
        archive.write(record)
        failed = sum(1 for q in record.questions.values() if q.failed)
        status = "" if not failed else f" ({failed} questions failed)"
        click.echo(f"run {index + 1}/{runs}: archived {record.run_id}{status}")


@main.command()
@click.option("--survey", "survey_id", required=True)
@click.option("--embed-model", default=None)
@click.pass_obj
@handle_errors
def robustness(wb: Workbench, survey_id, embed_model):
    """Cross-run topic consistency (lexical and semantic) over the archive."""
    archive = RunArchive(wb.runs_dir)
    runs = archive.list_runs(survey_id)
    embedder = wb.embedder(embed_model)
    result = robustness_report(
        runs, survey_id, embedder, embed_model=embed_model or wb.config.embed_model
    )
    wb.path("reports", f"robustness_{survey_id}.json").write_text(
        json.dumps(result.to_json(), ensure_ascii=False, indent=1), encoding="utf-8"
    )
    text = render_robustness(result)
    wb.path("reports", f"robustness_{survey_id}.txt").write_text(text, encoding="utf-8")
    click.echo(text, nl=False)


@main.command()
@click.option("--run", "run_id", default=None, help="Run id to evaluate (default: latest for --survey).")
@click.option("--survey", "survey_id", default=None)
@click.option("--out", "out_path", type=click.Path(), default=None, help="HTML output path.")
@click.option("--bundle", "bundle_path", type=click.Path(), default=None, help="UI bundle override.")
@click.pass_obj
@handle_errors
def evalform(wb: Workbench, run_id, survey_id, out_path, bundle_path):
    """Generate the self-contained HTML evaluation form for one run's topics."""
    archive = RunArchive(wb.runs_dir)
    if run_id is None:
        if survey_id is None:
            raise ConfigError("evalform needs --run or --survey")
        runs = archive.list_runs(survey_id)
        if not runs:
            raise ArchiveError(f"no archived runs for survey {survey_id!r}")
        record = runs[-1]
    else:
        record = archive.load(run_id)
    texts = {}
    if record.survey_id in wb.config.surveys:
        texts = wb.config.surveys[record.survey_id].question_texts()
    payload = build_payload(record, texts)
    html = generate_form(payload, load_ui_bundle(bundle_path))
    target = (
        Path(out_path)
        if out_path
        else wb.path("forms", f"{record.survey_id}-{record.run_id}.form.html")
    )
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(html, encoding="utf-8")
    name = target.name
    sidecar_name = name[: -len(".form.html")] + ".form.json" if name.endswith(".form.html") else name + ".form.json"
    sidecar = target.parent / sidecar_name
    sidecar.write_text(
        json.dumps(payload.to_json(), ensure_ascii=False, indent=1), encoding="utf-8"
    )
    click.echo(f"wrote {target} (form hash {payload.form_hash})")


def _find_payload(wb: Workbench, form_path: str | None, bundle_hashes: set[str]) -> FormPayload:
    if form_path:
        return FormPayload.from_json(json.loads(Path(form_path).read_text(encoding="utf-8")))
    forms_dir = wb.out / "forms"
    candidates = sorted(forms_dir.glob("*.form.json")) if forms_dir.exists() else []
    for candidate in candidates:
        payload = FormPayload.from_json(json.loads(candidate.read_text(encoding="utf-8")))
        if payload.form_hash in bundle_hashes:
            return payload
    raise AggregationError(
        "no form payload matches the rating bundles; pass --form <payload.json>"
    )


@main.command()
@click.option("--ratings", "ratings_dir", type=click.Path(), required=True)
@click.option("--form", "form_path", type=click.Path(), default=None, help="Form payload sidecar JSON.")
@click.option(
    "--gated-as-no",
    is_flag=True,
    help="Sensitivity mode: count gated-out answers as 'no' in agreement statistics.",
)
@click.pass_obj
@handle_errors
def evalreport(wb: Workbench, ratings_dir, form_path, gated_as_no):
    """Aggregate rater JSON exports into quality metrics and agreement."""
    ratings = sorted(Path(ratings_dir).glob("*.json"))
    if not ratings:
        raise AggregationError(f"no rating bundles (*.json) found in {ratings_dir}")
    raw_bundles: list[tuple[str, object]] = []
    rejected: list[dict] = []
    for path in ratings:
        try:
            raw_bundles.append((path.name, json.loads(path.read_text(encoding="utf-8"))))
        except json.JSONDecodeError as exc:
            rejected.append({"label": path.name, "reasons": [f"not valid JSON: {exc}"]})
    hashes = {d.get("form_hash") for _n, d in raw_bundles if isinstance(d, dict)}
    payload = _find_payload(wb, form_path, {h for h in hashes if isinstance(h, str)})

    topics = payload.topics_by_question()
    bundles = []
    for name, data in raw_bundles:
        try:
            bundles.append(parse_bundle(data, topics, payload.survey_id, label=name))
        except BundleRejected as exc:
            log.warning("rejected %s: %s", name, "; ".join(exc.reasons))
            rejected.append({"label": exc.label, "reasons": exc.reasons})
    result = aggregate_ratings(bundles, payload, gated_as_no=gated_as_no)
    result.rejected = rejected
    wb.path("reports", f"quality_{payload.survey_id}.json").write_text(
        json.dumps(result.to_json(), ensure_ascii=False, indent=1), encoding="utf-8"
    )
    text = render_quality(result)
    wb.path("reports", f"quality_{payload.survey_id}.txt").write_text(text, encoding="utf-8")
    click.echo(text, nl=False)


if __name__ == "__main__":
    main()
