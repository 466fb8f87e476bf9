"""Ground truth at desk scale: exhaustive search and connection-set enumeration."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .cayley import CayleyGraph, ConnectionSet, edge_key, validate_connection_set
from .decomp import Cycle, Decomposition
from .dihedral import GroupElement, generates, is_prime, reflection, rotation

BRUTE_FORCE_ORACLE = "brute_force"
MAX_VERTICES = 14
MAX_EDGES = 49


class InstanceTooLarge(ValueError):
    pass


def brute_force_decomposition(graph: CayleyGraph) -> Decomposition | None:
    """Backtracking search for a Hamilton decomposition; None if none exists.

    Cycles are grown one at a time from vertex 0, always extending along the
    lowest-indexed free edge first.  With an even valency the last cycle is
    whatever remains, provided it is connected; with an odd valency the
    remainder after the last cycle is automatically a perfect matching.
    """
    verts = graph.vertices
    nv = len(verts)
    if nv > MAX_VERTICES or len(graph.edges) > MAX_EDGES:
        raise InstanceTooLarge(
            f"search is limited to {MAX_VERTICES} vertices and {MAX_EDGES} edges, "
            f"got {nv} and {len(graph.edges)}"
        )
    index = {v: t for t, v in enumerate(verts)}
    free = [set() for _ in range(nv)]
    for u, v in graph.edges:
        free[index[u]].add(index[v])
        free[index[v]].add(index[u])
    degree = len(free[0])
    slots = degree // 2
    searched = slots if degree % 2 else slots - 1

    cycles: list[list[int]] = []

    def remainder_is_cycle() -> list[int] | None:
        path, prev, cur = [0], -1, 0
        while True:
            a, b = free[cur]
            nxt = b if a == prev else a
            if nxt == 0:
                break
            path.append(nxt)
            prev, cur = cur, nxt
        return path if len(path) == nv else None

    def extend(path: list[int], on_path: list[bool]) -> bool:
        cur = path[-1]
        if len(path) == nv:
            if 0 in free[cur] and path[1] < cur:
                free[cur].discard(0)
                free[0].discard(cur)
                cycles.append(list(path))
                if place(len(cycles)):
                    return True
                cycles.pop()
                free[cur].add(0)
                free[0].add(cur)
            return False
        for nxt in sorted(free[cur]):
            if on_path[nxt]:
                continue
            free[cur].discard(nxt)
            free[nxt].discard(cur)
            on_path[nxt] = True
            path.append(nxt)
            if extend(path, on_path):
                return True
            path.pop()
            on_path[nxt] = False
            free[cur].add(nxt)
            free[nxt].add(cur)
        return False

    def place(filled: int) -> bool:
        if filled == searched:
            if degree % 2 == 0 and slots > 0:
                last = remainder_is_cycle()
                if last is None:
                    return False
                cycles.append(last)
            return True
        on_path = [False] * nv
        on_path[0] = True
        return extend([0], on_path)

    if degree == 0 or not place(0):
        return None
    matching = None
    if degree % 2:
        matching = tuple(sorted({edge_key(verts[u], verts[v]) for u in range(nv) for v in free[u]}))
    return Decomposition(
        graph.n,
        tuple(Cycle(tuple(verts[t] for t in c)) for c in cycles),
        matching,
        (BRUTE_FORCE_ORACLE,) * len(cycles),
        BRUTE_FORCE_ORACLE if matching else None,
    )


def _candidates(p: int) -> tuple[list[tuple[GroupElement, ...]], list[GroupElement]]:
    classes = []
    for k in range(1, p // 2 + 1):
        pair = {rotation(k, p), rotation(-k, p)}
        classes.append(tuple(sorted(pair)))
    return classes, [reflection(k, p) for k in range(p)]


@dataclass
class InstanceSweep:
    """Every valid connection set on D_2p, in canonical order.

    Sets are ordered by the bit mask of rotation classes, then by the bit
    mask of reflections, low bits first.
    """

    p: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __iter__(self) -> Iterator[ConnectionSet]:
        classes, refl = _candidates(self.p)
        for rmask in range(1 << len(classes)):
            rots = [r for t, cls in enumerate(classes) if rmask >> t & 1 for r in cls]
            for smask in range(1, 1 << len(refl)):
                elements = rots + [x for t, x in enumerate(refl) if smask >> t & 1]
                if generates(self.p, elements):
                    yield ConnectionSet(self.p, frozenset(elements))


def enumerate_connection_sets(p: int) -> Iterator[ConnectionSet]:
    return iter(InstanceSweep(p))


def sample_connection_sets(p: int, count: int, seed: int = 0) -> list[ConnectionSet]:
    """Uniform sample (with replacement) of valid connection sets, by rejection."""
    rng = random.Random(seed)
    classes, refl = _candidates(p)
    out = []
    while len(out) < count:
        rots = [r for cls in classes if rng.getrandbits(1) for r in cls]
        elements = rots + [x for x in refl if rng.getrandbits(1)]
        if elements and generates(p, elements):
            out.append(validate_connection_set(p, elements))
    return out
