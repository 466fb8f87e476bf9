"""Certificate exchange format: JSON (canonical), plus text and DOT views."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from . import __version__
from .cayley import CayleyGraph, ConnectionSet, edge_key, validate_connection_set
from .decomp import Cycle, Decomposition
from .dihedral import parse_element

TOOL_NAME = "dihedral-hamilton"


class CertificateFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Certificate:
    n: int
    connection_set: tuple[str, ...]
    cycles: tuple[tuple[str, ...], ...]
    matching: tuple[tuple[str, str], ...] | None = None
    meta: dict[str, Any] = field(default_factory=dict, compare=True, hash=False)

    @classmethod
    def from_decomposition(cls, S: ConnectionSet, d: Decomposition) -> Certificate:
        matching = None
        if d.matching is not None:
            matching = tuple((u.token, v.token) for u, v in d.matching)
        meta = {
            "tool": TOOL_NAME,
            "version": __version__,
            "routes": list(d.routes),
            "matching_route": d.matching_route,
        }
        return cls(
            d.n,
            tuple(S.tokens()),
            tuple(tuple(c.tokens()) for c in d.cycles),
            matching,
            meta,
        )

    def connection(self) -> ConnectionSet:
        elements = [parse_element(t, self.n) for t in self.connection_set]
        if len(set(elements)) != len(elements):
            raise CertificateFormatError("duplicate element in connection_set")
        return validate_connection_set(self.n, elements)

    def to_decomposition(self) -> Decomposition:
        """Parse the tokens back into group elements (no validity checks beyond parsing)."""
        cycles = tuple(Cycle(tuple(parse_element(t, self.n) for t in c)) for c in self.cycles)
        matching = None
        if self.matching is not None:
            matching = tuple(
                edge_key(parse_element(u, self.n), parse_element(v, self.n)) for u, v in self.matching
            )
        routes = tuple(self.meta.get("routes") or ())
        return Decomposition(self.n, cycles, matching, routes, self.meta.get("matching_route"))

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "connection_set": list(self.connection_set),
            "cycles": [list(c) for c in self.cycles],
            "matching": None if self.matching is None else [list(e) for e in self.matching],
            "meta": self.meta,
        }

    @classmethod
    def from_json(cls, data: Any) -> Certificate:
        if not isinstance(data, dict):
            raise CertificateFormatError("certificate must be a JSON object")
        missing = {"n", "connection_set", "cycles"} - data.keys()
        if missing:
            raise CertificateFormatError(f"certificate lacks fields {sorted(missing)}")
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise CertificateFormatError(f"n must be a positive integer, got {n!r}")
        try:
            conn = tuple(_str(t) for t in data["connection_set"])
            cycles = tuple(tuple(_str(t) for t in c) for c in data["cycles"])
            matching = data.get("matching")
            if matching is not None:
                pairs = []
                for e in matching:
                    if len(e) != 2:
                        raise CertificateFormatError(f"matching entry {e!r} is not a pair")
                    pairs.append((_str(e[0]), _str(e[1])))
                matching = tuple(pairs)
        except TypeError as exc:
            raise CertificateFormatError(f"malformed certificate: {exc}") from exc
        meta = data.get("meta") or {}
        if not isinstance(meta, dict):
            raise CertificateFormatError("meta must be an object")
        return cls(n, conn, cycles, matching, meta)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def loads(cls, text: str) -> Certificate:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateFormatError(f"not valid JSON: {exc}") from exc
        return cls.from_json(data)


def _str(x: Any) -> str:
    if not isinstance(x, str):
        raise CertificateFormatError(f"expected an element token, got {x!r}")
    return x


def render_text(cert: Certificate) -> str:
    routes = cert.meta.get("routes") or []
    lines = [f"D_{2 * cert.n}  S = {{{','.join(cert.connection_set)}}}"]
    for t, cyc in enumerate(cert.cycles):
        route = f" [{routes[t]}]" if t < len(routes) else ""
        lines.append(f"H{t + 1}{route}: {' '.join(cyc)}")
    if cert.matching is not None:
        route = cert.meta.get("matching_route")
        tag = f" [{route}]" if route else ""
        lines.append(f"M{tag}: {' '.join(f'{u}-{v}' for u, v in cert.matching)}")
    return "\n".join(lines) + "\n"


_PALETTE = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan", "gold"]


def render_dot(graph: CayleyGraph, d: Decomposition) -> str:
    """Graphviz source: every vertex once, every graph edge once, tagged with its part."""
    owner: dict = {}
    for t, cyc in enumerate(d.cycles):
        for key in cyc.edges():
            owner[key] = (f"H{t + 1}", _PALETTE[t % len(_PALETTE)], "solid")
    for key in d.matching or ():
        owner[key] = ("M", "black", "dashed")
    lines = [f"graph cayley_D{2 * graph.n} {{"]
    for v in graph.vertices:
        lines.append(f'  "{v.token}";')
    for (u, v), label in graph.edges.items():
        part, color, style = owner.get((u, v), ("none", "gray", "dotted"))
        lines.append(
            f'  "{u.token}" -- "{v.token}" [part="{part}", color="{color}", '
            f'style="{style}", label="{label.token}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
