"""Liveness audit: resolve each link's final HTTP status after redirects."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from ecometa.harvest.models import (
    STATUS_NOT_FOUND,
    STATUS_REACHABLE,
    STATUS_UNREACHABLE,
    LinkAudit,
)
from ecometa.httpio import HttpClient, ReplayMiss, TransportError

log = logging.getLogger(__name__)


@dataclass
class AuditPolicy:
    concurrency: int = 8
    max_redirects: int = 10
    retries: int = 2
    timeout_s: float | None = None


def status_for(http_status: int) -> str:
    """Map a final HTTP status to an audit verdict.

    404 is the only status that counts as a dead (outdated) link; server
    errors and non-404 client errors mean the check itself failed.
    """
    if http_status == 404:
        return STATUS_NOT_FOUND
    if 200 <= http_status < 400:
        return STATUS_REACHABLE
    return STATUS_UNREACHABLE


def _check_one(client: HttpClient, audit: LinkAudit) -> LinkAudit:
    try:
        result = client.fetch(audit.url)
    except (TransportError, ReplayMiss) as exc:
        log.info("audit of %s failed: %s", audit.url, exc)
        return replace(audit, status=STATUS_UNREACHABLE, checked_at=_now(client))
    return replace(audit, status=status_for(result.status), checked_at=result.recorded_at)


def _now(client: HttpClient) -> str:
    from datetime import datetime, timezone

    from ecometa.httpio import SYNTHETIC_RECORDED_AT, ReplayTransport

    if isinstance(client.transport, ReplayTransport):
        return SYNTHETIC_RECORDED_AT
    return datetime.now(timezone.utc).isoformat()


def audit_liveness(
    links: list[LinkAudit], client: HttpClient, policy: AuditPolicy | None = None
) -> list[LinkAudit]:
    """Check every link; per-link failures never abort the batch.

    Only status/checked_at change; classification fields ride through
    untouched.  Output order matches input order.
    """
    policy = policy or AuditPolicy()
    client.retries = policy.retries
    client.max_redirects = policy.max_redirects
    if policy.timeout_s is not None and hasattr(client.transport, "timeout_s"):
        client.transport.timeout_s = policy.timeout_s
    if not links:
        return []
    with ThreadPoolExecutor(max_workers=max(1, policy.concurrency)) as pool:
        checked = list(pool.map(lambda a: _check_one(client, a), links))
    failures = sum(1 for a in checked if a.status == STATUS_UNREACHABLE)
    dead = sum(1 for a in checked if a.status == STATUS_NOT_FOUND)
    log.info("audited %d links: %d not found, %d unreachable", len(checked), dead, failures)
    return checked
