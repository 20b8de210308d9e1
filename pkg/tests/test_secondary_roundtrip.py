"""Cross-component check: genuine UI exports must aggregate with zero rejects.

Drives the frontend's real reducer and serializer through node, then feeds
the emitted bundles to the aggregation pipeline.  Skipped when the frontend
toolchain is not available.
"""

from __future__ import annotations

import json
import shutil
import subprocess
from pathlib import Path

import pytest

from ecometa.evaluation.aggregate import aggregate_ratings
from ecometa.evaluation.models import BundleRejected, parse_bundle
from ecometa.evaluation.form import build_payload
from ecometa.topics.archive import QuestionRun, RunRecord

FRONTEND = Path(__file__).resolve().parents[1] / "frontend"
ESBUILD = FRONTEND / "node_modules" / ".bin" / "esbuild"

pytestmark = pytest.mark.skipif(
    shutil.which("node") is None or not ESBUILD.exists(),
    reason="frontend toolchain not installed",
)


def _emit_bundles(tmp_path: Path, payload_json: dict, seed: int, count: int) -> list[dict]:
    script = tmp_path / "emit_bundles.cjs"
    subprocess.run(
        [
            str(ESBUILD),
            str(FRONTEND / "scripts" / "emit_bundles.ts"),
            "--bundle",
            "--platform=node",
            "--format=cjs",
            f"--outfile={script}",
            "--log-level=error",
        ],
        check=True,
        cwd=FRONTEND,
    )
    payload_path = tmp_path / "payload.json"
    payload_path.write_text(json.dumps(payload_json), encoding="utf-8")
    result = subprocess.run(
        ["node", str(script), str(payload_path), str(seed), str(count)],
        check=True,
        capture_output=True,
        text=True,
    )
    return json.loads(result.stdout)


def _payload():
    record = RunRecord(
        run_id="run1",
        started_at="2025-01-01T00:00:00+00:00",
        survey_id="repository_url",
        model_id="mock",
        seed=7,
        temperature=0.0,
        batch_size=10,
        questions={
            "SQ-1.1": QuestionRun(merged={"share_code": ["reuse", "users"], "submit_issues": ["bugs", "fixes"], "easy_discovery": ["search", "find"]}),
            "SQ-1.2": QuestionRun(merged={"feature_preference": ["ci", "runners"], "institutional_choice": ["employer", "rules"]}),
        },
    )
    return build_payload(record, {"SQ-1.1": "Why link?", "SQ-1.2": "Why elsewhere?"})


def test_ui_exports_are_accepted_with_zero_rejects(tmp_path):
    payload = _payload()
    bundles_json = _emit_bundles(tmp_path, payload.to_json(), seed=17, count=8)
    assert len(bundles_json) == 8

    topics = payload.topics_by_question()
    accepted = []
    for index, data in enumerate(bundles_json):
        try:
            accepted.append(parse_bundle(data, topics, payload.survey_id, label=f"ui-{index}"))
        except BundleRejected as exc:  # pragma: no cover - failure reporting
            pytest.fail(f"aggregator rejected a genuine UI export: {exc}")
    report = aggregate_ratings(accepted, payload)
    assert report.rater_count == 8
    for row in report.questions + [report.overall]:
        total = row.meets_all + row.uninterpretable + row.not_fitting + row.too_specific
        assert total == pytest.approx(1.0, abs=1e-9)
