from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fixture_registry import build_registry_fixtures  # noqa: E402


@pytest.fixture
def registry_fixture_dir(tmp_path: Path) -> Path:
    directory = tmp_path / "registry-fixtures"
    build_registry_fixtures(directory)
    return directory


@pytest.fixture
def stub_ui_bundle(tmp_path: Path) -> Path:
    path = tmp_path / "stub_ui.js"
    path.write_text('document.getElementById("app").textContent = "stub UI";\n', encoding="utf-8")
    return path


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    rows = []
    for status, passed in (("passed", True), ("failed", False), ("error", False)):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" in nodeid and getattr(report, "when", "call") == "call":
                rows.append((nodeid.split("::")[-1], passed))
    if rows:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, passed in sorted(rows):
            terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}")
