from __future__ import annotations

import random

import pytest

from ecometa.evaluation.aggregate import AggregationError, aggregate_ratings, render_quality
from ecometa.evaluation.models import parse_bundle

from eval_helpers import judgment, make_payload, random_bundle, uniform_bundle


def _parse(payload, data, label="bundle"):
    return parse_bundle(data, payload.topics_by_question(), payload.survey_id, label)


def test_two_rater_two_topic_fixture():
    # Derived fixture: rater1 judges (Y,Y,N) and (N,-,-); rater2 (Y,Y,N) and (Y,N,-).
    payload = make_payload((2,))
    rater1 = {
        "form_hash": payload.form_hash,
        "rater_id": "r1",
        "survey_id": payload.survey_id,
        "questions": [
            {
                "question_id": "SQ-1.1",
                "judgments": [
                    judgment("SQ-1.1:topic_1", True, True, False),
                    judgment("SQ-1.1:topic_2", False),
                ],
                "duplicate_groups": [],
            }
        ],
    }
    rater2 = {
        "form_hash": payload.form_hash,
        "rater_id": "r2",
        "survey_id": payload.survey_id,
        "questions": [
            {
                "question_id": "SQ-1.1",
                "judgments": [
                    judgment("SQ-1.1:topic_1", True, True, False),
                    judgment("SQ-1.1:topic_2", True, False),
                ],
                "duplicate_groups": [],
            }
        ],
    }
    report = aggregate_ratings([_parse(payload, rater1), _parse(payload, rater2)], payload)
    row = report.questions[0]
    assert row.meets_all == pytest.approx(0.50)
    assert row.uninterpretable == pytest.approx(0.25)
    assert row.not_fitting == pytest.approx(0.25)
    assert row.too_specific == pytest.approx(0.00)
    assert row.duplicate == 0.0
    # Kappa per dimension on this fixture, computed by hand:
    # interpretable items [2,0],[1,1] -> Po=0.5 -> 0; fits [2,0] only -> 1;
    # too_specific [0,2] -> 1; duplicate all-no -> 1.
    assert row.kappa["interpretable"] == pytest.approx(0.0)
    assert row.kappa["fits_question"] == pytest.approx(1.0)
    assert row.kappa["too_specific"] == pytest.approx(1.0)
    assert row.kappa["duplicate"] == pytest.approx(1.0)
    assert row.kappa["mean"] == pytest.approx(0.75)


def test_unanimous_raters_perfect_report():
    payload = make_payload((3, 2))
    bundles = [
        _parse(payload, uniform_bundle(payload, rater_id=f"r{i}", verdict=(True, True, False)))
        for i in range(3)
    ]
    report = aggregate_ratings(bundles, payload)
    assert report.overall.meets_all == 1.0
    assert report.overall.uninterpretable == 0.0
    assert report.overall.not_fitting == 0.0
    assert report.overall.too_specific == 0.0
    assert report.overall.duplicate == 0.0
    for dim in ("interpretable", "fits_question", "too_specific", "duplicate", "mean"):
        assert report.overall.kappa[dim] == pytest.approx(1.0)


def test_outcome_proportions_sum_to_one_on_randomized_bundles():
    payload = make_payload((3, 4))
    rng = random.Random(1234)
    for trial in range(200):
        raters = rng.randint(2, 5)
        bundles = [
            _parse(payload, random_bundle(payload, rng, f"r{i}"), label=f"t{trial}-r{i}")
            for i in range(raters)
        ]
        report = aggregate_ratings(bundles, payload)
        for row in report.questions + [report.overall]:
            total = row.meets_all + row.uninterpretable + row.not_fitting + row.too_specific
            assert total == pytest.approx(1.0, abs=1e-9)
            for kappa in row.kappa.values():
                if kappa is not None:
                    assert -1.0 - 1e-9 <= kappa <= 1.0 + 1e-9


def test_duplicate_proportion_counts_flagged_pairs():
    payload = make_payload((3,))
    groups = {"SQ-1.1": [["SQ-1.1:topic_1", "SQ-1.1:topic_2"]]}
    flagger = uniform_bundle(payload, rater_id="r1", groups=groups)
    plain = uniform_bundle(payload, rater_id="r2")
    report = aggregate_ratings([_parse(payload, flagger), _parse(payload, plain)], payload)
    # 2 of 6 (rater, topic) pairs are inside a duplicate group.
    assert report.questions[0].duplicate == pytest.approx(2 / 6)


def test_mixed_form_versions_error():
    payload = make_payload((2,))
    good = _parse(payload, uniform_bundle(payload))
    stale = uniform_bundle(payload)
    stale["form_hash"] = "0" * 16
    with pytest.raises(AggregationError):
        aggregate_ratings(
            [good, parse_bundle(stale, payload.topics_by_question(), payload.survey_id)], payload
        )


def test_no_bundles_error():
    with pytest.raises(AggregationError):
        aggregate_ratings([], make_payload((2,)))


def test_bundle_order_does_not_matter():
    payload = make_payload((3, 2))
    rng = random.Random(9)
    bundles = [_parse(payload, random_bundle(payload, rng, f"r{i}")) for i in range(4)]
    forward = aggregate_ratings(bundles, payload)
    backward = aggregate_ratings(list(reversed(bundles)), payload)
    assert forward.to_json()["questions"] == backward.to_json()["questions"]
    assert forward.to_json()["overall"] == backward.to_json()["overall"]


def test_gated_out_judgments_are_missing_not_no():
    # One rater says uninterpretable, the other two agree fits=yes: the fits
    # item must use only the two actual ratings.
    payload = make_payload((1,))
    uninterpretable = uniform_bundle(payload, rater_id="r1", verdict=(False, None, None))
    yes_a = uniform_bundle(payload, rater_id="r2", verdict=(True, True, False))
    yes_b = uniform_bundle(payload, rater_id="r3", verdict=(True, True, False))
    report = aggregate_ratings(
        [
            _parse(payload, uninterpretable),
            _parse(payload, yes_a),
            _parse(payload, yes_b),
        ],
        payload,
    )
    assert report.questions[0].kappa["fits_question"] == pytest.approx(1.0)


def test_gated_as_no_sensitivity_mode():
    # In treat-as-no mode the uninterpretable rater contributes fits=no, so
    # the previously unanimous fits item becomes a 2/1 split.
    payload = make_payload((1,))
    bundles = [
        _parse(payload, uniform_bundle(payload, rater_id="r1", verdict=(False, None, None))),
        _parse(payload, uniform_bundle(payload, rater_id="r2", verdict=(True, True, False))),
        _parse(payload, uniform_bundle(payload, rater_id="r3", verdict=(True, True, False))),
    ]
    default = aggregate_ratings(bundles, payload)
    sensitivity = aggregate_ratings(bundles, payload, gated_as_no=True)
    assert default.questions[0].kappa["fits_question"] == pytest.approx(1.0)
    assert sensitivity.questions[0].kappa["fits_question"] == pytest.approx(-1 / 3)
    # Pooled outcome proportions are outcome counts and do not move.
    assert default.questions[0].meets_all == sensitivity.questions[0].meets_all


def test_sparse_dimension_reports_absent_kappa():
    # A single interpretable=yes rating leaves the fits dimension with one
    # rating on its only item, so no agreement statistic exists.
    payload = make_payload((1,))
    lone = uniform_bundle(payload, rater_id="r1", verdict=(True, True, False))
    nay = uniform_bundle(payload, rater_id="r2", verdict=(False, None, None))
    report = aggregate_ratings([_parse(payload, lone), _parse(payload, nay)], payload)
    assert report.questions[0].kappa["fits_question"] is None
    assert report.questions[0].kappa["too_specific"] is None
    assert report.questions[0].kappa["mean"] is not None


def test_overall_pools_across_questions():
    payload = make_payload((1, 1))
    mixed = {
        "form_hash": payload.form_hash,
        "rater_id": "r1",
        "survey_id": payload.survey_id,
        "questions": [
            {
                "question_id": "SQ-1.1",
                "judgments": [judgment("SQ-1.1:topic_1", True, True, False)],
                "duplicate_groups": [],
            },
            {
                "question_id": "SQ-1.2",
                "judgments": [judgment("SQ-1.2:topic_1", False)],
                "duplicate_groups": [],
            },
        ],
    }
    other = uniform_bundle(payload, rater_id="r2")
    report = aggregate_ratings([_parse(payload, mixed), _parse(payload, other)], payload)
    assert report.overall.judged_pairs == 4
    assert report.overall.meets_all == pytest.approx(3 / 4)
    assert report.overall.uninterpretable == pytest.approx(1 / 4)


def test_render_quality_mentions_rejections():
    payload = make_payload((2,))
    report = aggregate_ratings([_parse(payload, uniform_bundle(payload))], payload)
    report.rejected = [{"label": "bad.json", "reasons": ["unknown topic id 'x'"]}]
    text = render_quality(report)
    assert "bad.json" in text
    assert "overall" in text
