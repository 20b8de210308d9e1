"""Registry endpoints: the simple package index and per-package metadata JSON."""

from __future__ import annotations

import json
import logging
import re
from email.utils import getaddresses
from html.parser import HTMLParser

from ecometa.harvest.models import FLAG_ABSENT, FLAG_MALFORMED, PackageRecord
from ecometa.harvest.links import is_valid_url
from ecometa.httpio import HttpClient, TransportError

log = logging.getLogger(__name__)


class IndexParseError(Exception):
    """The simple index document could not be parsed."""


def normalize_name(name: str) -> str:
    """Registry-normalized package name: lowercase, runs of -_. collapse to -."""
    return re.sub(r"[-_.]+", "-", name.strip()).lower()


class _AnchorCollector(HTMLParser):
    def __init__(self) -> None:
        super().__init__()
        self.names: list[str] = []
        self._in_anchor = False
        self._buffer: list[str] = []

    def handle_starttag(self, tag, attrs):
        if tag == "a":
            self._in_anchor = True
            self._buffer = []

    def handle_data(self, data):
        if self._in_anchor:
            self._buffer.append(data)

    def handle_endtag(self, tag):
        if tag == "a" and self._in_anchor:
            text = "".join(self._buffer).strip()
            if text:
                self.names.append(text)
            self._in_anchor = False


def _parse_simple_index(body: str) -> list[str]:
    text = body.lstrip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise IndexParseError(f"index JSON is malformed: {exc}") from exc
        projects = data.get("projects")
        if not isinstance(projects, list):
            raise IndexParseError("index JSON lacks a 'projects' list")
        names = []
        for entry in projects:
            if not isinstance(entry, dict) or "name" not in entry:
                raise IndexParseError(f"index JSON has a malformed project entry: {entry!r}")
            names.append(str(entry["name"]))
        return names
    parser = _AnchorCollector()
    try:
        parser.feed(body)
    except Exception as exc:  # html.parser raises bare exceptions on bad markup
        raise IndexParseError(f"index HTML is malformed: {exc}") from exc
    return parser.names


def fetch_package_index(client: HttpClient, registry_base: str) -> list[str]:
    """All package names from ``<registry_base>/simple/``, normalized and deduplicated."""
    url = registry_base.rstrip("/") + "/simple/"
    result = client.fetch(url)
    if result.status != 200:
        raise TransportError(f"index fetch returned HTTP {result.status} for {url}")
    names = sorted({normalize_name(n) for n in _parse_simple_index(result.body) if n.strip()})
    log.info("package index lists %d packages", len(names))
    return names


def _parse_emails(*fields: object) -> list[str]:
    raw = [str(f) for f in fields if f]
    emails: list[str] = []
    seen: set[str] = set()
    for _name, addr in getaddresses(raw):
        addr = addr.strip()
        if not addr or "@" not in addr:
            continue
        key = addr.casefold()
        if key not in seen:
            seen.add(key)
            emails.append(addr)
    return emails


def fetch_package_metadata(client: HttpClient, registry_base: str, name: str) -> PackageRecord:
    """One PackageRecord from ``<registry_base>/pypi/<name>/json``.

    Missing fields yield empty collections; a 404 or unparsable document is
    returned as a flagged record rather than an exception so batch harvesting
    never aborts.
    """
    url = f"{registry_base.rstrip('/')}/pypi/{name}/json"
    result = client.fetch(url)
    if result.status == 404:
        return PackageRecord(name=name, raw_fetched_at=result.recorded_at, flag=FLAG_ABSENT)
    if result.status != 200:
        raise TransportError(f"metadata fetch returned HTTP {result.status} for {url}")
    try:
        data = json.loads(result.body)
        info = data.get("info") or {}
        if not isinstance(info, dict):
            raise ValueError("'info' is not an object")
    except (json.JSONDecodeError, ValueError) as exc:
        log.warning("malformed metadata document for %s: %s", name, exc)
        return PackageRecord(name=name, raw_fetched_at=result.recorded_at, flag=FLAG_MALFORMED)

    declared: dict[str, str] = {}
    project_urls = info.get("project_urls")
    if isinstance(project_urls, dict):
        for label, value in project_urls.items():
            if value:
                declared[str(label)] = str(value)
    home_page = info.get("home_page")
    if home_page and "Homepage" not in declared:
        declared["Homepage"] = str(home_page)

    warnings = [
        f"declared URL for {label!r} is not a valid absolute URL: {value!r}"
        for label, value in declared.items()
        if not is_valid_url(value)
    ]

    requires = info.get("requires_dist") or []
    dependencies = [str(d) for d in requires] if isinstance(requires, list) else []

    return PackageRecord(
        name=name,
        emails=_parse_emails(info.get("author_email"), info.get("maintainer_email")),
        declared_urls=declared,
        dependencies=dependencies,
        raw_fetched_at=result.recorded_at,
        warnings=warnings,
    )
