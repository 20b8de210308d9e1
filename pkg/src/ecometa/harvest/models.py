"""Domain records produced by the harvest stages."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

CATEGORY_REPOSITORY = "repository"
CATEGORY_DONATION = "donation"
CATEGORY_OTHER = "other"

REPOSITORY_PLATFORMS = frozenset({"github", "gitlab", "bitbucket", "gitea", "codeberg", "sourcehut"})
DONATION_PLATFORMS = frozenset(
    {
        "github_sponsors",
        "open_collective",
        "patreon",
        "ko_fi",
        "liberapay",
        "tidelift",
        "buy_me_a_coffee",
        "custom",
    }
)

SOURCE_PROJECT_LINKS = "project_links"
SOURCE_FUNDING_YML = "funding_yml"

STATUS_REACHABLE = "reachable"
STATUS_NOT_FOUND = "not_found"
STATUS_UNREACHABLE = "unreachable"
STATUS_UNCHECKED = "unchecked"

FLAG_OK = "ok"
FLAG_ABSENT = "absent"
FLAG_MALFORMED = "malformed"


@dataclass
class PackageRecord:
    """One registry package as fetched from the metadata endpoint.

    ``flag`` marks records the registry could not serve (absent) or whose
    metadata document failed to parse (malformed); those records are kept in
    the snapshot but skipped by aggregate statistics.
    """

    name: str
    emails: list[str] = field(default_factory=list)
    declared_urls: dict[str, str] = field(default_factory=dict)
    dependencies: list[str] = field(default_factory=list)
    raw_fetched_at: str = ""
    flag: str = FLAG_OK
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "PackageRecord":
        return cls(
            name=data["name"],
            emails=list(data.get("emails", [])),
            declared_urls=dict(data.get("declared_urls", {})),
            dependencies=list(data.get("dependencies", [])),
            raw_fetched_at=data.get("raw_fetched_at", ""),
            flag=data.get("flag", FLAG_OK),
            warnings=list(data.get("warnings", [])),
        )


@dataclass
class LinkAudit:
    """A classified URL with its liveness verdict.

    ``package`` is the snapshot join key; classification fields never change
    after creation, the audit stage only fills ``status``/``checked_at``.
    """

    url: str
    category: str
    platform: str
    source: str = SOURCE_PROJECT_LINKS
    status: str = STATUS_UNCHECKED
    checked_at: str | None = None
    package: str = ""

    def __post_init__(self) -> None:
        if self.category == CATEGORY_REPOSITORY and self.platform not in REPOSITORY_PLATFORMS:
            raise ValueError(f"repository link with non-repository platform {self.platform!r}")
        if self.category == CATEGORY_DONATION and self.platform not in DONATION_PLATFORMS:
            raise ValueError(f"donation link with non-donation platform {self.platform!r}")

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "LinkAudit":
        return cls(
            url=data["url"],
            category=data["category"],
            platform=data["platform"],
            source=data.get("source", SOURCE_PROJECT_LINKS),
            status=data.get("status", STATUS_UNCHECKED),
            checked_at=data.get("checked_at"),
            package=data.get("package", ""),
        )


@dataclass
class EcosystemReport:
    """Aggregate link statistics over one snapshot.

    Ratios are ``None`` when their denominator is empty, never 0/0.
    """

    total_packages: int
    share_with_repo_link: float | None
    share_with_donation_link: float | None
    top_percentile_shares: dict[float, tuple[float | None, float | None]]
    outdated_repo_share: float | None
    outdated_sponsors_share: float | None
    platform_distribution: dict[str, float]
    donation_location_split: tuple[float | None, float | None]

    def to_json(self) -> dict:
        return {
            "total_packages": self.total_packages,
            "share_with_repo_link": self.share_with_repo_link,
            "share_with_donation_link": self.share_with_donation_link,
            "top_percentile_shares": {
                str(p): {"repo": repo, "donation": donation}
                for p, (repo, donation) in sorted(self.top_percentile_shares.items())
            },
            "outdated_repo_share": self.outdated_repo_share,
            "outdated_sponsors_share": self.outdated_sponsors_share,
            "platform_distribution": self.platform_distribution,
            "donation_location_split": {
                "registry": self.donation_location_split[0],
                "funding_yml_only": self.donation_location_split[1],
            },
        }
