"""Dependency graph construction and PageRank scoring."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

from ecometa.harvest.models import FLAG_OK, PackageRecord
from ecometa.harvest.registry import normalize_name

log = logging.getLogger(__name__)

# Leading package name of a dependency specifier; everything after the name
# (extras, version pins, environment markers) is noise here.
_DEP_NAME = re.compile(r"^\s*([A-Za-z0-9][A-Za-z0-9._-]*)")


@dataclass
class DependencyGraph:
    nodes: set[str] = field(default_factory=set)
    edges: set[tuple[str, str]] = field(default_factory=set)
    stubs: set[str] = field(default_factory=set)
    pagerank: dict[str, float] = field(default_factory=dict)
    converged: bool = False
    iterations: int = 0

    def to_json(self) -> dict:
        return {
            "nodes": sorted(self.nodes),
            "edges": sorted(self.edges),
            "stubs": sorted(self.stubs),
            "pagerank": {name: self.pagerank[name] for name in sorted(self.pagerank)},
            "converged": self.converged,
            "iterations": self.iterations,
        }

    @classmethod
    def from_json(cls, data: dict) -> "DependencyGraph":
        return cls(
            nodes=set(data.get("nodes", [])),
            edges={(a, b) for a, b in data.get("edges", [])},
            stubs=set(data.get("stubs", [])),
            pagerank=dict(data.get("pagerank", {})),
            converged=bool(data.get("converged", False)),
            iterations=int(data.get("iterations", 0)),
        )


def parse_dependency_name(spec: str) -> str | None:
    """Bare normalized package name from a dependency specifier, or None.

    Environment markers (after ';'), extras and version constraints are
    stripped; only the leading name matters for the graph.
    """
    head = spec.split(";", 1)[0]
    match = _DEP_NAME.match(head)
    if not match:
        return None
    return normalize_name(match.group(1))


def build_dependency_graph(records: list[PackageRecord]) -> DependencyGraph:
    """One edge per (dependent -> dependency) pair; self-edges dropped.

    Dependencies naming packages outside the snapshot become stub nodes so
    edge endpoints always exist.
    """
    graph = DependencyGraph()
    ok_records = [r for r in records if r.flag == FLAG_OK]
    graph.nodes = {r.name for r in ok_records}
    known = set(graph.nodes)
    skipped = 0
    for record in ok_records:
        for spec in record.dependencies:
            dep = parse_dependency_name(spec)
            if dep is None:
                skipped += 1
                continue
            if dep == record.name:
                continue
            if dep not in known:
                graph.stubs.add(dep)
                graph.nodes.add(dep)
                known.add(dep)
            graph.edges.add((record.name, dep))
    if skipped:
        log.warning("skipped %d unparsable dependency strings", skipped)
    return graph


def pagerank(
    graph: DependencyGraph,
    damping: float = 0.85,
    epsilon: float = 1e-10,
    max_iter: int = 200,
) -> dict[str, float]:
    """Power iteration with uniform teleport and uniform dangling redistribution.

    Converged when the L1 delta between iterations drops below epsilon; the
    graph records whether that happened within ``max_iter``.
    """
    if not 0.0 < damping < 1.0:
        raise ValueError(f"damping must be in (0,1), got {damping}")
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")

    nodes = sorted(graph.nodes)
    n = len(nodes)
    if n == 0:
        graph.pagerank = {}
        graph.converged = True
        graph.iterations = 0
        return {}

    out_edges: dict[str, list[str]] = {node: [] for node in nodes}
    for src, dst in sorted(graph.edges):
        out_edges[src].append(dst)
    dangling = [node for node in nodes if not out_edges[node]]

    rank = {node: 1.0 / n for node in nodes}
    teleport = (1.0 - damping) / n
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        dangling_mass = damping * sum(rank[node] for node in dangling) / n
        nxt = {node: teleport + dangling_mass for node in nodes}
        for src in nodes:
            targets = out_edges[src]
            if targets:
                share = damping * rank[src] / len(targets)
                for dst in targets:
                    nxt[dst] += share
        delta = sum(abs(nxt[node] - rank[node]) for node in nodes)
        rank = nxt
        if delta < epsilon:
            converged = True
            break
    log.info(
        "pagerank %s after %d iterations over %d nodes",
        "converged" if converged else "hit the iteration cap",
        iterations,
        n,
    )
    graph.pagerank = rank
    graph.converged = converged
    graph.iterations = iterations
    return rank
