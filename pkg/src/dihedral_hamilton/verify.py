"""Certificate checker for Hamilton decompositions.

Works from the graph's vertex and edge lists and the raw vertex sequences of
the certificate.  It does not reuse any of the construction helpers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Sequence

from .cayley import CayleyGraph


@dataclass(frozen=True)
class Finding:
    part: int | None  # index into cycles, len(cycles) for the matching, None for global
    kind: str
    detail: str
    witness: tuple[Any, ...]

    def to_json(self) -> dict[str, Any]:
        return {
            "part": self.part,
            "kind": self.kind,
            "detail": self.detail,
            "witness": [_token(w) for w in self.witness],
        }


@dataclass
class VerificationReport:
    failures: list[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def kinds(self) -> set[str]:
        return {f.kind for f in self.failures}

    def add(self, part: int | None, kind: str, detail: str, *witness: Any) -> None:
        self.failures.append(Finding(part, kind, detail, tuple(witness)))

    def to_json(self) -> dict[str, Any]:
        return {"ok": self.ok, "failures": [f.to_json() for f in self.failures]}


def _token(w: Any) -> Any:
    if hasattr(w, "token"):
        return w.token
    if isinstance(w, (tuple, list)):
        return [_token(x) for x in w]
    return w


def _pair(u: Hashable, v: Hashable) -> frozenset:
    return frozenset((u, v))


def _graph_edges(graph: CayleyGraph) -> set[frozenset]:
    return {_pair(u, v) for u, v in graph.edges}


def _cycle_findings(
    vertices: set, edges: set[frozenset], cycle: Sequence, part: int, report: VerificationReport
) -> None:
    counts = Counter(cycle)
    repeated = sorted(v for v, c in counts.items() if c > 1)
    if repeated:
        report.add(part, "repeated_vertex", "cycle visits a vertex more than once", *repeated)
    stray = sorted(v for v in counts if v not in vertices)
    if stray:
        report.add(part, "unknown_vertex", "cycle visits a vertex outside the graph", *stray)
    missing = sorted(vertices - counts.keys())
    if len(cycle) != len(vertices) or missing:
        report.add(
            part,
            "wrong_length",
            f"cycle has length {len(cycle)}, graph has {len(vertices)} vertices",
            *missing,
        )
    for t in range(len(cycle)):
        u, v = cycle[t - 1], cycle[t]
        if u == v or _pair(u, v) not in edges:
            report.add(part, "non_edge", "consecutive vertices are not adjacent", u, v)


def is_hamilton_cycle(graph: CayleyGraph, cycle: Iterable) -> bool:
    report = VerificationReport()
    _cycle_findings(set(graph.vertices), _graph_edges(graph), list(cycle), 0, report)
    return report.ok


def _matching_findings(
    vertices: set, edges: set[frozenset], matching: Sequence, part: int, report: VerificationReport
) -> None:
    hits: Counter = Counter()
    for u, v in matching:
        if u == v or _pair(u, v) not in edges:
            report.add(part, "matching_non_edge", "matching pair is not a graph edge", u, v)
        hits[u] += 1
        hits[v] += 1
    shared = sorted(v for v, c in hits.items() if c > 1)
    if shared:
        report.add(part, "matching_overlap", "vertex is covered more than once", *shared)
    uncovered = sorted(vertices - hits.keys())
    if uncovered:
        report.add(part, "matching_uncovered", "vertex is not covered", *uncovered)


def is_perfect_matching(graph: CayleyGraph, edges: Iterable) -> bool:
    report = VerificationReport()
    _matching_findings(set(graph.vertices), _graph_edges(graph), list(edges), 0, report)
    return report.ok


def verify_parts(
    graph: CayleyGraph, cycles: Sequence[Sequence], matching: Sequence | None
) -> VerificationReport:
    """Check that ``cycles`` and ``matching`` partition the graph's edges as required."""
    report = VerificationReport()
    vertices = set(graph.vertices)
    edges = _graph_edges(graph)
    cycles = [list(c) for c in cycles]

    for t, cyc in enumerate(cycles):
        _cycle_findings(vertices, edges, cyc, t, report)
    if matching is not None:
        _matching_findings(vertices, edges, list(matching), len(cycles), report)

    owner: dict[frozenset, int] = {}
    for t, cyc in enumerate(cycles):
        for e in {_pair(cyc[i - 1], cyc[i]) for i in range(len(cyc))}:
            if e in owner:
                report.add(t, "edge_reused", f"edge already used by part {owner[e]}", *sorted(e))
            else:
                owner[e] = t
    if matching is not None:
        part = len(cycles)
        for u, v in matching:
            e = _pair(u, v)
            if e in owner:
                report.add(part, "edge_reused", f"edge already used by part {owner[e]}", *sorted(e))
            else:
                owner[e] = part

    uncovered = sorted(tuple(sorted(e)) for e in edges - owner.keys())
    if uncovered:
        report.add(None, "edge_uncovered", f"{len(uncovered)} graph edges belong to no part", *uncovered)
    extra = sorted(tuple(sorted(e)) for e in owner.keys() - edges)
    if extra:
        report.add(None, "extra_edge", f"{len(extra)} part edges are not graph edges", *extra)

    degree = len(graph.connection_set.elements)
    if len(cycles) != degree // 2:
        report.add(None, "cycle_count", f"expected {degree // 2} Hamilton cycles, got {len(cycles)}", len(cycles))
    if (matching is not None) != (degree % 2 == 1):
        report.add(
            None,
            "matching_presence",
            "a perfect matching is required exactly when the valency is odd",
            degree,
        )
    return report


def verify_decomposition(graph: CayleyGraph, d) -> VerificationReport:
    return verify_parts(graph, [list(c.vertices) for c in d.cycles], d.matching)
