"""Registry harvesting: package metadata, link audits, dependency ranking."""

from ecometa.harvest.graph import DependencyGraph, build_dependency_graph, pagerank
from ecometa.harvest.links import classify_link, expand_funding_manifest, funding_manifest_urls
from ecometa.harvest.liveness import AuditPolicy, audit_liveness
from ecometa.harvest.models import EcosystemReport, LinkAudit, PackageRecord
from ecometa.harvest.registry import fetch_package_index, fetch_package_metadata, normalize_name
from ecometa.harvest.report import ecosystem_report
from ecometa.harvest.sample import sample_participants

__all__ = [
    "AuditPolicy",
    "DependencyGraph",
    "EcosystemReport",
    "LinkAudit",
    "PackageRecord",
    "audit_liveness",
    "build_dependency_graph",
    "classify_link",
    "ecosystem_report",
    "expand_funding_manifest",
    "fetch_package_index",
    "fetch_package_metadata",
    "funding_manifest_urls",
    "normalize_name",
    "pagerank",
    "sample_participants",
]
