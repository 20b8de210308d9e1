"""Participant sampling over harvested contact addresses."""

from __future__ import annotations

import random

from ecometa.harvest.models import FLAG_OK, PackageRecord


def unique_emails(records: list[PackageRecord]) -> list[str]:
    """All distinct contact addresses, case-insensitively deduplicated, sorted."""
    seen: dict[str, str] = {}
    for record in records:
        if record.flag != FLAG_OK:
            continue
        for email in record.emails:
            seen.setdefault(email.casefold(), email)
    return sorted(seen.values(), key=str.casefold)


def sample_participants(records: list[PackageRecord], n: int, seed: int) -> list[str]:
    """Uniform sample of n addresses without replacement, deterministic per seed."""
    population = unique_emails(records)
    if n > len(population):
        raise ValueError(
            f"cannot sample {n} participants from {len(population)} unique email addresses"
        )
    return random.Random(seed).sample(population, n)
