"""Harvest orchestration: index -> metadata -> link classification -> manifests."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor

from ecometa.harvest.links import classify_package_links, expand_funding_manifest, funding_manifest_urls
from ecometa.harvest.models import (
    CATEGORY_REPOSITORY,
    FLAG_OK,
    LinkAudit,
    PackageRecord,
)
from ecometa.harvest.registry import fetch_package_index, fetch_package_metadata
from ecometa.httpio import HttpClient, ReplayMiss, TransportError

log = logging.getLogger(__name__)


def _fetch_manifest_audits(client: HttpClient, record: PackageRecord, repo_url: str) -> tuple[list[LinkAudit], int]:
    for url in funding_manifest_urls(repo_url):
        try:
            result = client.fetch(url)
        except (TransportError, ReplayMiss):
            continue
        if result.status == 200:
            return expand_funding_manifest(record.name, result.body)
        if result.status != 404:
            break
    return [], 0


def harvest_snapshot(
    client: HttpClient,
    registry_base: str,
    concurrency: int = 8,
    limit: int | None = None,
) -> tuple[list[PackageRecord], list[LinkAudit]]:
    """Fetch the whole registry snapshot and classify every declared link.

    Records come back sorted by name so snapshot files are byte-reproducible
    regardless of worker scheduling.
    """
    names = fetch_package_index(client, registry_base)
    if limit is not None:
        names = names[:limit]

    with ThreadPoolExecutor(max_workers=max(1, concurrency)) as pool:
        records = list(pool.map(lambda n: fetch_package_metadata(client, registry_base, n), names))
    records.sort(key=lambda r: r.name)
    skipped = sum(1 for r in records if r.flag != FLAG_OK)
    if skipped:
        log.info("flagged %d of %d metadata documents as absent or malformed", skipped, len(records))

    audits: list[LinkAudit] = []
    manifest_jobs: list[tuple[PackageRecord, str]] = []
    for record in records:
        if record.flag != FLAG_OK:
            continue
        package_audits = classify_package_links(record.name, record.declared_urls)
        audits.extend(package_audits)
        for audit in package_audits:
            if audit.category == CATEGORY_REPOSITORY and audit.platform == "github":
                manifest_jobs.append((record, audit.url))

    manifest_warnings = 0
    with ThreadPoolExecutor(max_workers=max(1, concurrency)) as pool:
        results = list(
            pool.map(lambda job: _fetch_manifest_audits(client, job[0], job[1]), manifest_jobs)
        )
    seen = {(a.package, a.url) for a in audits}
    for manifest_audits, warnings in results:
        manifest_warnings += warnings
        for audit in manifest_audits:
            if (audit.package, audit.url) not in seen:
                seen.add((audit.package, audit.url))
                audits.append(audit)
    if manifest_warnings:
        log.warning("%d funding manifest warnings", manifest_warnings)

    audits.sort(key=lambda a: (a.package, a.source, a.url))
    return records, audits
