"""URL classification and funding-manifest expansion.

Classification is a host table: exact registrable-domain matches decide the
platform, plus one path rule for sponsor profiles hosted on the code forge.
"""

from __future__ import annotations

import logging
from urllib.parse import urlsplit

import yaml

from ecometa.harvest.models import (
    CATEGORY_DONATION,
    CATEGORY_OTHER,
    CATEGORY_REPOSITORY,
    SOURCE_FUNDING_YML,
    LinkAudit,
)

log = logging.getLogger(__name__)

_REPOSITORY_HOSTS = {
    "github.com": "github",
    "gitlab.com": "gitlab",
    "bitbucket.org": "bitbucket",
    "gitea.com": "gitea",
    "codeberg.org": "codeberg",
    "sr.ht": "sourcehut",
}

_DONATION_HOSTS = {
    "opencollective.com": "open_collective",
    "patreon.com": "patreon",
    "ko-fi.com": "ko_fi",
    "liberapay.com": "liberapay",
    "tidelift.com": "tidelift",
    "buymeacoffee.com": "buy_me_a_coffee",
}

# FUNDING.yml key -> (platform, URL builder).  Unrecognized keys are ignored.
_FUNDING_KEYS = {
    "github": ("github_sponsors", "https://github.com/sponsors/{}"),
    "patreon": ("patreon", "https://www.patreon.com/{}"),
    "open_collective": ("open_collective", "https://opencollective.com/{}"),
    "ko_fi": ("ko_fi", "https://ko-fi.com/{}"),
    "tidelift": ("tidelift", "https://tidelift.com/funding/github/{}"),
    "liberapay": ("liberapay", "https://liberapay.com/{}"),
    "buy_me_a_coffee": ("buy_me_a_coffee", "https://buymeacoffee.com/{}"),
}


def is_valid_url(url: str) -> bool:
    try:
        parts = urlsplit(url)
    except ValueError:
        return False
    return parts.scheme in ("http", "https") and bool(parts.netloc)


def _host_matches(host: str, domain: str) -> bool:
    return host == domain or host.endswith("." + domain)


def classify_link(url: str) -> tuple[str, str]:
    """Classify a valid absolute URL into (category, platform).

    Deterministic and total: unknown hosts fall through to (other, none).
    """
    parts = urlsplit(url)
    host = parts.netloc.lower().split("@")[-1].split(":")[0]
    path = parts.path

    if _host_matches(host, "github.com"):
        if path == "/sponsors" or path.startswith("/sponsors/"):
            return (CATEGORY_DONATION, "github_sponsors")
        return (CATEGORY_REPOSITORY, "github")
    for domain, platform in _REPOSITORY_HOSTS.items():
        if _host_matches(host, domain):
            return (CATEGORY_REPOSITORY, platform)
    for domain, platform in _DONATION_HOSTS.items():
        if _host_matches(host, domain):
            return (CATEGORY_DONATION, platform)
    return (CATEGORY_OTHER, "none")


def classify_package_links(package: str, declared_urls: dict[str, str]) -> list[LinkAudit]:
    """Audit stubs for every syntactically valid declared URL, deduplicated."""
    audits: list[LinkAudit] = []
    seen: set[str] = set()
    for _label, url in declared_urls.items():
        if not is_valid_url(url) or url in seen:
            continue
        seen.add(url)
        category, platform = classify_link(url)
        audits.append(LinkAudit(url=url, category=category, platform=platform, package=package))
    return audits


def expand_funding_manifest(package: str, manifest_text: str) -> tuple[list[LinkAudit], int]:
    """Expand FUNDING.yml content into donation audits.

    Returns (audits, warning_count); parse failures and unknown keys only warn.
    """
    warnings = 0
    try:
        data = yaml.safe_load(manifest_text)
    except yaml.YAMLError:
        log.warning("unparsable funding manifest for %s", package)
        return [], 1
    if not isinstance(data, dict):
        if data is not None:
            log.warning("funding manifest for %s is not a mapping", package)
            warnings += 1
        return [], warnings

    audits: list[LinkAudit] = []
    for key, value in data.items():
        if value is None:
            continue
        values = value if isinstance(value, list) else [value]
        if key == "custom":
            for entry in values:
                url = str(entry).strip()
                if not is_valid_url(url):
                    warnings += 1
                    continue
                audits.append(
                    LinkAudit(
                        url=url,
                        category=CATEGORY_DONATION,
                        platform="custom",
                        source=SOURCE_FUNDING_YML,
                        package=package,
                    )
                )
            continue
        spec = _FUNDING_KEYS.get(str(key))
        if spec is None:
            log.warning("funding manifest for %s: ignoring unrecognized key %r", package, key)
            warnings += 1
            continue
        platform, template = spec
        for entry in values:
            handle = str(entry).strip()
            if not handle:
                warnings += 1
                continue
            audits.append(
                LinkAudit(
                    url=template.format(handle),
                    category=CATEGORY_DONATION,
                    platform=platform,
                    source=SOURCE_FUNDING_YML,
                    package=package,
                )
            )
    return audits, warnings


def funding_manifest_urls(repo_url: str) -> list[str]:
    """Candidate raw-file URLs for a GitHub repository's funding manifest.

    Tried in order; the default-branch names cover the overwhelming majority
    of repositories.
    """
    parts = urlsplit(repo_url)
    segments = [s for s in parts.path.split("/") if s]
    if len(segments) < 2:
        return []
    owner, repo = segments[0], segments[1]
    if repo.endswith(".git"):
        repo = repo[:-4]
    return [
        f"https://raw.githubusercontent.com/{owner}/{repo}/{branch}/.github/FUNDING.yml"
        for branch in ("main", "master")
    ]
