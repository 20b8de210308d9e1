from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from ecometa.responses import (
    DEFAULT_DENYLIST,
    PLACEHOLDER,
    IngestError,
    clean_response,
    ingest_csv,
    make_response,
    question_stats,
    read_responses,
    write_responses,
)


@pytest.mark.parametrize("raw", ["N/a", "n/a", "* N.A.", "Not applicable.", "pass", ".", "-", "  PASS  "])
def test_denylist_variants_become_placeholder(raw):
    cleaned, is_placeholder = clean_response(raw)
    assert cleaned == PLACEHOLDER
    assert is_placeholder


def test_real_content_passes_through_unchanged():
    raw = "I want to share my code"
    cleaned, is_placeholder = clean_response(raw)
    assert cleaned == raw
    assert not is_placeholder


def test_near_miss_is_not_matched():
    # Exact matching only: a denylist entry embedded in a sentence stays.
    cleaned, is_placeholder = clean_response("pass the salt")
    assert not is_placeholder
    assert cleaned == "pass the salt"


def test_placeholder_token_itself_normalizes():
    cleaned, is_placeholder = clean_response("Not Applicable")
    assert is_placeholder
    assert cleaned == PLACEHOLDER


def test_empty_denylist_rejected():
    with pytest.raises(ValueError):
        clean_response("x", ())


@given(st.text(max_size=80))
def test_clean_is_idempotent(raw):
    cleaned, first = clean_response(raw)
    assert clean_response(cleaned) == (cleaned, first)


@given(st.text(max_size=80))
def test_invariant_placeholder_iff_token(raw):
    cleaned, is_placeholder = clean_response(raw)
    assert is_placeholder == (cleaned == PLACEHOLDER)
    if not is_placeholder:
        assert cleaned == raw


def _csv(tmp_path, text):
    path = tmp_path / "answers.csv"
    path.write_text(text, encoding="utf-8")
    return path


def test_ingest_skips_empty_cells(tmp_path):
    path = _csv(tmp_path, "Q1,Q2\nfirst answer,\nsecond answer,other answer\n")
    rows = ingest_csv(path, {"SQ-1.1": "Q1", "SQ-1.2": "Q2"}, "repository_url")
    by_question = {}
    for row in rows:
        by_question.setdefault(row.question_id, []).append(row)
    assert len(by_question["SQ-1.1"]) == 2
    assert len(by_question["SQ-1.2"]) == 1


def test_ingest_cleans_on_the_way_in(tmp_path):
    path = _csv(tmp_path, "Q1\npass\n")
    rows = ingest_csv(path, {"SQ-1.1": "Q1"}, "repository_url")
    assert rows[0].is_placeholder
    assert rows[0].cleaned_text == PLACEHOLDER
    assert rows[0].raw_text == "pass"


def test_ingest_fully_populated_grid(tmp_path):
    path = _csv(tmp_path, "Q1,Q2\na1,b1\na2,b2\na3,b3\n")
    rows = ingest_csv(path, {"SQ-1.1": "Q1", "SQ-1.2": "Q2"}, "repository_url")
    assert len(rows) == 6


def test_ingest_missing_column_names_it(tmp_path):
    path = _csv(tmp_path, "Q1\nanswer\n")
    with pytest.raises(IngestError) as err:
        ingest_csv(path, {"SQ-1.2": "Q9"}, "repository_url")
    assert "Q9" in str(err.value)


def test_ingest_short_row_skipped_with_warning(tmp_path, caplog):
    path = _csv(tmp_path, "Q1,Q2\nok,fine\nonlyone\n")
    rows = ingest_csv(path, {"SQ-1.1": "Q1", "SQ-1.2": "Q2"}, "repository_url")
    assert len(rows) == 2


def test_stats_basic_arithmetic():
    rows = [
        make_response("repository_url", "SQ-1.1", "ab"),
        make_response("repository_url", "SQ-1.1", "abcd"),
    ]
    stats = question_stats(rows)
    assert stats[0].count == 2
    assert stats[0].mean_char_length == 3.0


def test_stats_all_placeholders_absent_mean():
    rows = [make_response("repository_url", "SQ-1.1", "n/a")]
    stats = question_stats(rows)
    assert stats[0].count == 0
    assert stats[0].mean_char_length is None


def test_stats_permutation_invariant():
    rows = [
        make_response("repository_url", "SQ-1.1", "one answer"),
        make_response("repository_url", "SQ-1.2", "two"),
        make_response("repository_url", "SQ-1.1", "three!"),
    ]
    assert question_stats(rows) == question_stats(list(reversed(rows)))


def test_cleaning_preserves_count():
    raws = ["keep me", "n/a", "-", "also keep"]
    rows = [make_response("repository_url", "SQ-1.1", raw) for raw in raws]
    assert len(rows) == len(raws)


def test_unicode_lengths_count_code_points():
    rows = [make_response("repository_url", "SQ-1.1", "héllo✓")]
    assert question_stats(rows)[0].mean_char_length == 6.0


def test_store_roundtrip(tmp_path):
    rows = [
        make_response("repository_url", "SQ-1.1", "keep"),
        make_response("repository_url", "SQ-1.2", "N/a"),
    ]
    path = tmp_path / "responses.jsonl"
    write_responses(path, rows)
    assert read_responses(path) == rows


def test_default_denylist_matches_documented_set():
    assert DEFAULT_DENYLIST == ("n/a", "* n.a.", "not applicable.", "pass", ".", "-")
