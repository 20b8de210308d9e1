from __future__ import annotations

import pytest

from ecometa.harvest.graph import DependencyGraph, build_dependency_graph, pagerank
from ecometa.harvest.models import EcosystemReport, LinkAudit, PackageRecord
from ecometa.harvest.report import ecosystem_report, render_report


def _record(name):
    return PackageRecord(name=name)


def _repo(pkg, url, platform="github", status="unchecked"):
    return LinkAudit(url=url, category="repository", platform=platform, package=pkg, status=status)


def _donation(pkg, url, platform="patreon", source="project_links", status="unchecked"):
    return LinkAudit(
        url=url, category="donation", platform=platform, source=source, package=pkg, status=status
    )


def test_share_with_repo_link():
    records = [_record(f"p{i}") for i in range(10)]
    audits = [_repo(f"p{i}", f"https://github.com/x/p{i}") for i in range(6)]
    report = ecosystem_report(records, audits, DependencyGraph())
    assert report.share_with_repo_link == 0.6


def test_outdated_repo_share_over_checked_github_links():
    records = [_record(f"p{i}") for i in range(4)]
    audits = [
        _repo("p0", "https://github.com/x/p0", status="reachable"),
        _repo("p1", "https://github.com/x/p1", status="reachable"),
        _repo("p2", "https://github.com/x/p2", status="reachable"),
        _repo("p3", "https://github.com/x/p3", status="not_found"),
    ]
    report = ecosystem_report(records, audits, DependencyGraph())
    assert report.outdated_repo_share == 0.25


def test_donation_location_split_hand_count():
    # 3 donation links: 1 registry-declared, 2 manifest-only -> (1/3, 2/3).
    records = [_record("a"), _record("b"), _record("c")]
    audits = [
        _donation("a", "https://www.patreon.com/a"),
        _donation("b", "https://github.com/sponsors/b", platform="github_sponsors", source="funding_yml"),
        _donation("c", "https://ko-fi.com/c", platform="ko_fi", source="funding_yml"),
    ]
    report = ecosystem_report(records, audits, DependencyGraph())
    assert report.donation_location_split == (pytest.approx(1 / 3), pytest.approx(2 / 3))


def test_same_url_in_both_sources_counts_as_registry():
    records = [_record("a")]
    audits = [
        _donation("a", "https://www.patreon.com/a", source="funding_yml"),
        _donation("a", "https://www.patreon.com/a", source="project_links"),
    ]
    report = ecosystem_report(records, audits, DependencyGraph())
    assert report.donation_location_split == (1.0, 0.0)


def test_platform_distribution_sums_to_one():
    records = [_record("a"), _record("b"), _record("c")]
    audits = [
        _repo("a", "https://github.com/x/a"),
        _repo("b", "https://gitlab.com/x/b", platform="gitlab"),
        _repo("c", "https://github.com/x/c"),
    ]
    report = ecosystem_report(records, audits, DependencyGraph())
    assert sum(report.platform_distribution.values()) == pytest.approx(1.0, abs=1e-9)
    assert report.platform_distribution["github"] == pytest.approx(2 / 3)


def test_empty_snapshot_reports_absent_ratios():
    report = ecosystem_report([], [], DependencyGraph())
    assert report.total_packages == 0
    assert report.share_with_repo_link is None
    assert report.outdated_repo_share is None
    assert report.donation_location_split == (None, None)
    assert report.platform_distribution == {}
    # Rendering the degenerate report must not blow up.
    assert "n/a" in render_report(report)


def test_top_percentile_shares_use_pagerank_ranking():
    # p0 is the most depended-on package; top 10% of 10 packages = 1 package.
    records = [PackageRecord(name=f"p{i}", dependencies=["p0"] if i else []) for i in range(10)]
    graph = build_dependency_graph(records)
    pagerank(graph)
    audits = [_repo("p0", "https://github.com/x/p0")]
    report = ecosystem_report(records, audits, graph, percentiles=(10.0,))
    repo_share, donation_share = report.top_percentile_shares[10.0]
    assert repo_share == 1.0
    assert donation_share == 0.0


def test_flagged_records_excluded_from_totals():
    records = [_record("a"), PackageRecord(name="gone", flag="absent")]
    report = ecosystem_report(records, [], DependencyGraph())
    assert report.total_packages == 1


def test_report_reproducible_from_same_snapshot():
    records = [_record(f"p{i}") for i in range(5)]
    audits = [_repo("p0", "https://github.com/x/p0", status="reachable")]
    graph = build_dependency_graph(records)
    pagerank(graph)
    first = ecosystem_report(records, audits, graph)
    second = ecosystem_report(records, audits, graph)
    assert first == second
    assert isinstance(first, EcosystemReport)
