"""Cayley graphs Cay(D_2n, S) with generator-labelled edges."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

from .dihedral import (
    ElementParseError,
    GroupElement,
    all_elements,
    generates,
    inverse,
    multiply,
    parse_element,
    power,
)

EdgeKey = tuple[GroupElement, GroupElement]
# Edge sets map the sorted endpoint pair to the edge's generator-class label.
EdgeSet = dict[EdgeKey, GroupElement]


class InvalidConnectionSet(ValueError):
    pass


class ContainsIdentity(InvalidConnectionSet):
    pass


class NotInverseClosed(InvalidConnectionSet):
    def __init__(self, witness: GroupElement):
        super().__init__(f"{witness} is in S but its inverse {inverse(witness)} is not")
        self.witness = witness


class NotGenerating(InvalidConnectionSet):
    pass


def edge_key(u: GroupElement, v: GroupElement) -> EdgeKey:
    return (u, v) if u < v else (v, u)


def class_label(s: GroupElement) -> GroupElement:
    """Canonical representative of the class {s, s^-1}.

    Reflections are their own class; a rotation class is keyed by the
    exponent in [0, n/2].
    """
    if s.reflected:
        return s
    k = s.exponent
    return s if k <= s.n - k else inverse(s)


class LabeledEdge(NamedTuple):
    u: GroupElement
    v: GroupElement
    label: GroupElement


@dataclass(frozen=True)
class ConnectionSet:
    n: int
    elements: frozenset[GroupElement]

    @property
    def rotations(self) -> frozenset[GroupElement]:
        return frozenset(s for s in self.elements if not s.reflected)

    @property
    def reflections(self) -> frozenset[GroupElement]:
        return frozenset(s for s in self.elements if s.reflected)

    @property
    def degree(self) -> int:
        return len(self.elements)

    def sorted(self) -> list[GroupElement]:
        return sorted(self.elements)

    def labels(self) -> list[GroupElement]:
        return sorted({class_label(s) for s in self.elements})

    def tokens(self) -> list[str]:
        return [s.token for s in self.sorted()]

    def __str__(self) -> str:
        return ",".join(self.tokens())


def validate_connection_set(n: int, raw: Iterable[GroupElement]) -> ConnectionSet:
    elements = frozenset(raw)
    for s in elements:
        if s.n != n:
            raise InvalidConnectionSet(f"{s} belongs to D_{2 * s.n}, expected D_{2 * n}")
    if any(s.is_identity for s in elements):
        raise ContainsIdentity("the identity r0 may not be in a connection set")
    for s in sorted(elements):
        if inverse(s) not in elements:
            raise NotInverseClosed(s)
    if not generates(n, elements):
        raise NotGenerating(f"{{{','.join(s.token for s in sorted(elements))}}} does not generate D_{2 * n}")
    return ConnectionSet(n, elements)


def parse_connection_set(text: str, n: int) -> ConnectionSet:
    """Parse ``r1,r6,s0`` style input and validate it."""
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    if not tokens:
        raise ElementParseError("empty connection set")
    elements = [parse_element(t, n) for t in tokens]
    if len(set(elements)) != len(elements):
        raise ElementParseError(f"duplicate element in {text!r}")
    return validate_connection_set(n, elements)


@dataclass(frozen=True)
class CayleyGraph:
    n: int
    connection_set: ConnectionSet
    edges: EdgeSet
    adjacency: dict[GroupElement, tuple[GroupElement, ...]] = field(repr=False)

    @property
    def vertices(self) -> list[GroupElement]:
        return all_elements(self.n)

    @property
    def order(self) -> int:
        return 2 * self.n

    def labeled_edges(self) -> Iterator[LabeledEdge]:
        for (u, v), label in self.edges.items():
            yield LabeledEdge(u, v, label)

    def has_edge(self, u: GroupElement, v: GroupElement) -> bool:
        return edge_key(u, v) in self.edges

    def degree(self, v: GroupElement) -> int:
        return len(self.adjacency[v])


def build_graph(S: ConnectionSet) -> CayleyGraph:
    n = S.n
    edges: EdgeSet = {}
    gens = S.sorted()
    labels = {s: class_label(s) for s in gens}
    for g in all_elements(n):
        for s in gens:
            key = edge_key(g, multiply(s, g))
            if key not in edges:
                edges[key] = labels[s]
    adjacency: dict[GroupElement, list[GroupElement]] = {g: [] for g in all_elements(n)}
    for u, v in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    return CayleyGraph(n, S, edges, {g: tuple(sorted(nb)) for g, nb in adjacency.items()})


def edges_for_class(graph: CayleyGraph, label: GroupElement) -> EdgeSet:
    """All edges produced by the generator class of ``label``."""
    label = class_label(label)
    if label not in {class_label(s) for s in graph.connection_set.elements}:
        raise KeyError(f"{label} is not a generator of this graph")
    return {key: lab for key, lab in graph.edges.items() if lab == label}


def coset_cycles(rot: GroupElement) -> tuple[list[GroupElement], list[GroupElement]]:
    """Vertex sequences of the two cycles traced by the class {rot, rot^-1}.

    The first lies on the rotation coset and starts at r0, the second on the
    reflection coset and starts at s0.  Each has length n when the rotation
    generates the rotation subgroup, which is what the decompositions use.
    """
    if rot.reflected or rot.is_identity:
        raise ValueError(f"{rot} is not a non-trivial rotation")
    n = rot.n
    order = n // math.gcd(rot.exponent, n)
    rotations = [power(rot, t) for t in range(order)]
    b = GroupElement(True, 0, n)
    reflections = [multiply(r, b) for r in rotations]
    return rotations, reflections

