from __future__ import annotations

from ecometa.harvest.pipeline import harvest_snapshot
from ecometa.httpio import make_client

from fixture_registry import REGISTRY_BASE


def test_harvest_fixture_snapshot_shape(registry_fixture_dir):
    client = make_client(replay_dir=registry_fixture_dir)
    records, audits = harvest_snapshot(client, REGISTRY_BASE, concurrency=4)

    assert len(records) == 10
    assert [r.name for r in records] == sorted(r.name for r in records)

    repo_packages = {a.package for a in audits if a.category == "repository"}
    assert len(repo_packages) == 6
    github_repo = [a for a in audits if a.category == "repository" and a.platform == "github"]
    assert len(github_repo) == 4

    donation = [a for a in audits if a.category == "donation"]
    assert len(donation) == 3
    assert sum(1 for a in donation if a.source == "project_links") == 1
    assert sum(1 for a in donation if a.source == "funding_yml") == 2


def test_harvest_funding_yml_branch_fallback(registry_fixture_dir):
    client = make_client(replay_dir=registry_fixture_dir)
    _records, audits = harvest_snapshot(client, REGISTRY_BASE)
    # delta's manifest lives on master; beta's on main.
    assert any(a.package == "delta" and a.url == "https://ko-fi.com/dave" for a in audits)
    assert any(a.package == "beta" and a.url == "https://github.com/sponsors/bob" for a in audits)


def test_harvest_is_deterministic(registry_fixture_dir):
    client = make_client(replay_dir=registry_fixture_dir)
    first = harvest_snapshot(client, REGISTRY_BASE, concurrency=8)
    second = harvest_snapshot(client, REGISTRY_BASE, concurrency=2)
    assert first == second
