"""HTTP fetch layer with record/replay fixtures, redirects, retries and host pacing.

Every network access in the workbench goes through :class:`HttpClient` so a
directory of recorded responses can stand in for the live network.  Fixtures
are keyed by URL and capture one hop each (no resolved redirects), which lets
replay reproduce full redirect chains deterministically.
"""

from __future__ import annotations

import hashlib
import json
import logging
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from urllib.parse import urljoin, urlsplit

import requests

log = logging.getLogger(__name__)

REDIRECT_STATUSES = frozenset({301, 302, 303, 307, 308})

# Fixed timestamp written into fixtures that were built by hand rather than
# recorded from a live server.
SYNTHETIC_RECORDED_AT = "1970-01-01T00:00:00+00:00"


class TransportError(Exception):
    """A request failed below the HTTP layer (timeout, connection refused...)."""


class ReplayMiss(Exception):
    """Replay mode was asked for a URL with no recorded fixture."""


@dataclass
class RawResponse:
    """One HTTP hop: status and body for a single URL, redirects not followed."""

    url: str
    status: int
    headers: dict[str, str]
    body: str
    recorded_at: str


@dataclass
class FetchResult:
    """Final outcome of a fetch after redirect following."""

    url: str
    final_url: str
    status: int
    body: str
    hops: int
    recorded_at: str


def fixture_path(directory: Path, url: str) -> Path:
    digest = hashlib.sha256(url.encode("utf-8")).hexdigest()[:24]
    return Path(directory) / f"{digest}.json"


class FixtureStore:
    """Directory of per-URL response fixtures."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def put(
        self,
        url: str,
        status: int,
        body: str = "",
        headers: dict[str, str] | None = None,
        recorded_at: str = SYNTHETIC_RECORDED_AT,
    ) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = fixture_path(self.directory, url)
        payload = {
            "url": url,
            "status": status,
            "headers": headers or {},
            "body": body,
            "recorded_at": recorded_at,
        }
        path.write_text(json.dumps(payload, ensure_ascii=False, indent=1), encoding="utf-8")
        return path

    def put_error(self, url: str, error: str, recorded_at: str = SYNTHETIC_RECORDED_AT) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = fixture_path(self.directory, url)
        payload = {"url": url, "error": error, "recorded_at": recorded_at}
        path.write_text(json.dumps(payload, ensure_ascii=False, indent=1), encoding="utf-8")
        return path

    def get(self, url: str) -> RawResponse:
        path = fixture_path(self.directory, url)
        if not path.exists():
            raise ReplayMiss(f"no fixture recorded for {url}")
        data = json.loads(path.read_text(encoding="utf-8"))
        if "error" in data:
            raise TransportError(f"recorded failure for {url}: {data['error']}")
        return RawResponse(
            url=url,
            status=int(data["status"]),
            headers={str(k).lower(): str(v) for k, v in data.get("headers", {}).items()},
            body=data.get("body", ""),
            recorded_at=data.get("recorded_at", SYNTHETIC_RECORDED_AT),
        )


class _HostPacer:
    """Enforces a minimum interval between requests to the same host."""

    def __init__(self, min_interval_s: float):
        self.min_interval_s = min_interval_s
        self._lock = threading.Lock()
        self._last: dict[str, float] = {}

    def wait(self, host: str) -> None:
        if self.min_interval_s <= 0:
            return
        while True:
            with self._lock:
                now = time.monotonic()
                last = self._last.get(host, 0.0)
                delay = self.min_interval_s - (now - last)
                if delay <= 0:
                    self._last[host] = now
                    return
            time.sleep(delay)


class LiveTransport:
    """Single-hop GET against the real network, with per-host pacing."""

    def __init__(self, timeout_s: float = 10.0, min_host_interval_s: float = 0.1):
        self.timeout_s = timeout_s
        self._pacer = _HostPacer(min_host_interval_s)
        self._session = requests.Session()
        self._session_lock = threading.Lock()

    def get(self, url: str) -> RawResponse:
        host = urlsplit(url).netloc
        self._pacer.wait(host)
        try:
            resp = self._session.get(url, timeout=self.timeout_s, allow_redirects=False)
        except requests.RequestException as exc:
            raise TransportError(str(exc)) from exc
        from datetime import datetime, timezone

        return RawResponse(
            url=url,
            status=resp.status_code,
            headers={k.lower(): v for k, v in resp.headers.items()},
            body=resp.text,
            recorded_at=datetime.now(timezone.utc).isoformat(),
        )


class ReplayTransport:
    """Single-hop GET answered entirely from a fixture directory."""

    def __init__(self, directory: str | Path):
        self.store = FixtureStore(directory)

    def get(self, url: str) -> RawResponse:
        return self.store.get(url)


class RecordingTransport:
    """Live transport that also writes every response into a fixture directory."""

    def __init__(self, inner: LiveTransport, directory: str | Path):
        self.inner = inner
        self.store = FixtureStore(directory)

    def get(self, url: str) -> RawResponse:
        try:
            raw = self.inner.get(url)
        except TransportError as exc:
            self.store.put_error(url, str(exc))
            raise
        self.store.put(url, raw.status, raw.body, raw.headers, raw.recorded_at)
        return raw


class HttpClient:
    """Redirect-following fetches with bounded retries over any transport."""

    def __init__(
        self,
        transport,
        max_redirects: int = 10,
        retries: int = 3,
        backoff_s: float = 0.25,
    ):
        self.transport = transport
        self.max_redirects = max_redirects
        self.retries = retries
        # Replay needs no politeness between attempts.
        self.backoff_s = 0.0 if isinstance(transport, ReplayTransport) else backoff_s

    def _get_with_retries(self, url: str) -> RawResponse:
        last_exc: Exception | None = None
        for attempt in range(self.retries + 1):
            try:
                return self.transport.get(url)
            except TransportError as exc:
                last_exc = exc
                if attempt < self.retries and self.backoff_s:
                    time.sleep(self.backoff_s * (2**attempt))
        assert last_exc is not None
        raise last_exc

    def fetch(self, url: str, follow_redirects: bool = True) -> FetchResult:
        """GET ``url``; follow up to ``max_redirects`` Location hops.

        Raises TransportError once retries are exhausted.  A redirect chain
        longer than the limit raises TransportError as well, so callers can
        fold it into their "unreachable" bucket.
        """
        current = url
        hops = 0
        while True:
            raw = self._get_with_retries(current)
            if follow_redirects and raw.status in REDIRECT_STATUSES:
                location = raw.headers.get("location")
                if location:
                    if hops >= self.max_redirects:
                        raise TransportError(f"redirect limit exceeded fetching {url}")
                    current = urljoin(current, location)
                    hops += 1
                    continue
            return FetchResult(
                url=url,
                final_url=current,
                status=raw.status,
                body=raw.body,
                hops=hops,
                recorded_at=raw.recorded_at,
            )


def make_client(
    replay_dir: str | Path | None = None,
    record_dir: str | Path | None = None,
    timeout_s: float = 10.0,
    retries: int = 3,
    min_host_interval_s: float = 0.1,
) -> HttpClient:
    """Build the client for the configured mode: replay, record, or plain live."""
    if replay_dir is not None:
        return HttpClient(ReplayTransport(replay_dir), retries=retries)
    live = LiveTransport(timeout_s=timeout_s, min_host_interval_s=min_host_interval_s)
    if record_dir is not None:
        return HttpClient(RecordingTransport(live, record_dir), retries=retries)
    return HttpClient(live, retries=retries)
