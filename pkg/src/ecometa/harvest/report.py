"""Ecosystem-level link statistics over one harvested snapshot."""

from __future__ import annotations

import logging
from collections import Counter

from ecometa.harvest.graph import DependencyGraph
from ecometa.harvest.models import (
    CATEGORY_DONATION,
    CATEGORY_REPOSITORY,
    FLAG_OK,
    SOURCE_PROJECT_LINKS,
    STATUS_NOT_FOUND,
    STATUS_UNCHECKED,
    EcosystemReport,
    LinkAudit,
    PackageRecord,
)

log = logging.getLogger(__name__)


def _ratio(numerator: int, denominator: int) -> float | None:
    return numerator / denominator if denominator else None


def _top_slice(ranked: list[str], percentile: float) -> list[str]:
    count = max(1, int(len(ranked) * percentile / 100.0)) if ranked else 0
    return ranked[:count]


def ecosystem_report(
    records: list[PackageRecord],
    audits: list[LinkAudit],
    graph: DependencyGraph,
    percentiles: tuple[float, ...] = (1.0,),
) -> EcosystemReport:
    """Pure aggregation of the snapshot; ratios with empty denominators are absent.

    Outdated shares follow the audit convention: a link is outdated iff its
    final status after redirects was 404, measured over checked links only.
    """
    ok = [r for r in records if r.flag == FLAG_OK]
    total = len(ok)

    repo_audits = [a for a in audits if a.category == CATEGORY_REPOSITORY]
    donation_audits = [a for a in audits if a.category == CATEGORY_DONATION]

    repo_linked = {a.package for a in repo_audits}
    donation_linked = {a.package for a in donation_audits}

    ranked = sorted(ok, key=lambda r: (-graph.pagerank.get(r.name, 0.0), r.name))
    ranked_names = [r.name for r in ranked]
    top_shares: dict[float, tuple[float | None, float | None]] = {}
    for percentile in percentiles:
        top = _top_slice(ranked_names, percentile)
        top_shares[percentile] = (
            _ratio(sum(1 for name in top if name in repo_linked), len(top)),
            _ratio(sum(1 for name in top if name in donation_linked), len(top)),
        )

    github_repo = [
        a for a in repo_audits if a.platform == "github" and a.status != STATUS_UNCHECKED
    ]
    sponsors = [
        a
        for a in donation_audits
        if a.platform == "github_sponsors" and a.status != STATUS_UNCHECKED
    ]

    platform_counts = Counter(a.platform for a in repo_audits)
    platform_distribution = (
        {platform: count / len(repo_audits) for platform, count in sorted(platform_counts.items())}
        if repo_audits
        else {}
    )

    # A donation URL present both in the registry metadata and in the funding
    # manifest counts as registry-declared.
    donation_sources: dict[tuple[str, str], str] = {}
    for audit in donation_audits:
        key = (audit.package, audit.url)
        if audit.source == SOURCE_PROJECT_LINKS or key not in donation_sources:
            donation_sources[key] = audit.source
    registry_declared = sum(1 for s in donation_sources.values() if s == SOURCE_PROJECT_LINKS)

    return EcosystemReport(
        total_packages=total,
        share_with_repo_link=_ratio(sum(1 for r in ok if r.name in repo_linked), total),
        share_with_donation_link=_ratio(sum(1 for r in ok if r.name in donation_linked), total),
        top_percentile_shares=top_shares,
        outdated_repo_share=_ratio(
            sum(1 for a in github_repo if a.status == STATUS_NOT_FOUND), len(github_repo)
        ),
        outdated_sponsors_share=_ratio(
            sum(1 for a in sponsors if a.status == STATUS_NOT_FOUND), len(sponsors)
        ),
        platform_distribution=platform_distribution,
        donation_location_split=(
            _ratio(registry_declared, len(donation_sources)),
            _ratio(len(donation_sources) - registry_declared, len(donation_sources)),
        ),
    )


def render_report(report: EcosystemReport) -> str:
    """Human-readable summary of the ecosystem report."""

    def pct(value: float | None) -> str:
        return "n/a" if value is None else f"{100.0 * value:.1f}%"

    lines = [
        f"packages in snapshot           {report.total_packages}",
        f"with repository link           {pct(report.share_with_repo_link)}",
        f"with donation link             {pct(report.share_with_donation_link)}",
        f"outdated GitHub repo links     {pct(report.outdated_repo_share)}",
        f"outdated sponsor links         {pct(report.outdated_sponsors_share)}",
    ]
    for percentile, (repo, donation) in sorted(report.top_percentile_shares.items()):
        lines.append(
            f"top {percentile:g}% by PageRank".ljust(31)
            + f"repo {pct(repo)}, donation {pct(donation)}"
        )
    if report.platform_distribution:
        lines.append("repository platforms:")
        for platform, share in report.platform_distribution.items():
            lines.append(f"  {platform.ljust(28)} {pct(share)}")
    registry, funding_only = report.donation_location_split
    lines.append(
        "donation link location         "
        + f"registry {pct(registry)}, funding manifest only {pct(funding_only)}"
    )
    return "\n".join(lines) + "\n"
