"""Hamilton decompositions of Cayley graphs on dihedral groups.

The constructions all follow one pattern: the edges of a rotation class
{a^i, a^-i} split into two n-cycles, one per coset of the rotation subgroup.
Taking the symmetric difference with a 4-cycle that uses one edge from each
coset cycle and two reflection edges splices the two cycles into a single
Hamilton cycle.  Whatever the 4-cycles take away from the reflection edges is
handed back as rotation edges, and the leftover part (a perfect matching, or a
Hamilton cycle built from two reflections) stays valid as long as the 4-cycles
are vertex-disjoint and laid out by :func:`choose_base_points`.

Every construction checks its output as it goes; a failed check raises rather
than returning a bad certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cayley import (
    CayleyGraph,
    ConnectionSet,
    EdgeKey,
    EdgeSet,
    build_graph,
    class_label,
    coset_cycles,
    edge_key,
    validate_connection_set,
)
from .dihedral import (
    GroupElement,
    all_elements,
    inverse,
    is_prime,
    multiply,
    reflection,
    rotation,
    rotation_log,
)

ONE_REFLECTION = "one_reflection"
ALL_REFLECTIONS = "all_reflections"
TETRAVALENT = "tetravalent"
TWO_REFLECTIONS = "two_reflections"
D4_TABLE = "d4_table"


class DecompositionError(RuntimeError):
    """A construction produced something that is not what it should be."""


class NotASingleCycle(DecompositionError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Cycle:
    vertices: tuple[GroupElement, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def edges(self) -> list[EdgeKey]:
        vs = self.vertices
        return [edge_key(vs[t - 1], vs[t]) for t in range(len(vs))]

    def edge_set(self) -> EdgeSet:
        return labelled(self.edges())

    def tokens(self) -> list[str]:
        return [v.token for v in self.vertices]


@dataclass(frozen=True)
class Decomposition:
    """Hamilton cycles plus an optional perfect matching.

    ``routes`` names the construction behind each cycle; ``matching_route``
    does the same for the matching.
    """

    n: int
    cycles: tuple[Cycle, ...]
    matching: tuple[EdgeKey, ...] | None = None
    routes: tuple[str, ...] = ()
    matching_route: str | None = None

    def parts(self) -> list[list[EdgeKey]]:
        parts = [c.edges() for c in self.cycles]
        if self.matching is not None:
            parts.append(list(self.matching))
        return parts

    def __add__(self, other: Decomposition) -> Decomposition:
        if self.n != other.n:
            raise ValueError("cannot combine decompositions of different groups")
        if self.matching is not None and other.matching is not None:
            raise ValueError("both parts carry a perfect matching")
        matching, route = (self.matching, self.matching_route)
        if matching is None:
            matching, route = (other.matching, other.matching_route)
        return Decomposition(
            self.n,
            self.cycles + other.cycles,
            matching,
            self.routes + other.routes,
            route,
        )


@dataclass(frozen=True)
class BasePlan:
    """Anchor exponents for the surgery squares: square t spans [m_t, m_t + i_t]."""

    p: int
    exponents: tuple[int, ...]
    base_points: tuple[int, ...]

    def intervals(self) -> list[tuple[int, int]]:
        return [(m, m + i) for m, i in zip(self.base_points, self.exponents)]


def edge_label(u: GroupElement, v: GroupElement) -> GroupElement:
    return class_label(multiply(v, inverse(u)))


def labelled(keys: Iterable[EdgeKey]) -> EdgeSet:
    return {key: edge_label(*key) for key in keys}


def symmetric_difference(e1: EdgeSet, e2: EdgeSet) -> EdgeSet:
    out = {k: lab for k, lab in e1.items() if k not in e2}
    out.update((k, lab) for k, lab in e2.items() if k not in e1)
    return out


def trace_cycles(keys: Iterable[EdgeKey]) -> list[Cycle]:
    """Split a 2-regular edge set into its cycles.

    Each cycle starts at its smallest vertex and leaves through the smaller
    of that vertex's two neighbours, so the output is canonical.
    """
    adj: dict[GroupElement, list[GroupElement]] = {}
    for u, v in keys:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    for v, nb in adj.items():
        if len(nb) != 2:
            raise NotASingleCycle(f"vertex {v} has degree {len(nb)}, expected 2")
    cycles = []
    seen: set[GroupElement] = set()
    for start in sorted(adj):
        if start in seen:
            continue
        walk = [start]
        seen.add(start)
        prev, cur = start, min(adj[start])
        while cur != start:
            walk.append(cur)
            seen.add(cur)
            a, b = adj[cur]
            prev, cur = cur, (b if a == prev else a)
        cycles.append(Cycle(tuple(walk)))
    return cycles


def hamilton_cycle(keys: Iterable[EdgeKey], n: int, what: str) -> Cycle:
    cycles = trace_cycles(keys)
    if len(cycles) != 1 or len(cycles[0]) != 2 * n:
        sizes = sorted(len(c) for c in cycles)
        raise NotASingleCycle(f"{what}: expected one {2 * n}-cycle, got components of sizes {sizes}")
    return cycles[0]


def _generator_edges(gens: Iterable[GroupElement], n: int) -> EdgeSet:
    out: EdgeSet = {}
    for s in gens:
        label = class_label(s)
        for g in all_elements(n):
            out[edge_key(g, multiply(s, g))] = label
    return out


def _fold(rotations: Iterable[GroupElement]) -> list[GroupElement]:
    """One representative per inverse pair, sorted by exponent."""
    return sorted({class_label(r) for r in rotations})


def _check_rotation_set(S1: Iterable[GroupElement], p: int) -> frozenset[GroupElement]:
    S1 = frozenset(S1)
    for r in S1:
        if r.reflected or r.n != p or r.is_identity:
            raise PreconditionError(f"{r} is not a non-identity rotation of D_{2 * p}")
        if inverse(r) not in S1:
            raise PreconditionError(f"rotation set is not inverse-closed at {r}")
    return S1


def _check_odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise PreconditionError(f"{p} is not an odd prime")


def choose_base_points(exponents: Sequence[int], p: int) -> BasePlan:
    """Place one interval [m_t, m_t + i_t] per exponent so any two are nested or disjoint.

    Intervals with the largest exponent of each parity class nest outward
    from 0 in the lower half [0, (p-1)/2]; the other parity class nests in
    the upper half [(p+1)/2, p-1].
    """
    exps = tuple(exponents)
    if p < 3 or p % 2 == 0:
        raise PreconditionError(f"p must be an odd number >= 3, got {p}")
    if not exps:
        raise PreconditionError("need at least one exponent")
    if any(i < 1 or i > (p - 1) // 2 for i in exps):
        raise PreconditionError(f"exponents {exps} must lie in [1, {(p - 1) // 2}]")
    if any(a >= b for a, b in zip(exps, exps[1:])):
        raise PreconditionError(f"exponents {exps} are not strictly increasing")

    s = len(exps)
    k, odd = divmod(s, 2)
    upper = (p + 1) // 2
    m = [0] * (s + 1)  # 1-indexed
    if odd:
        for h in range(k + 1):
            m[2 * h + 1] = k - h
        for h in range(1, k + 1):
            m[2 * h] = upper + k - h
    else:
        for h in range(1, k + 1):
            m[2 * h] = k - h
            m[2 * h - 1] = upper + k - h
    plan = BasePlan(p, exps, tuple(m[1:]))

    spans = plan.intervals()
    for t, (lo, hi) in enumerate(spans):
        if hi > p - 1:
            raise DecompositionError(f"interval {t} wraps around: {(lo, hi)}")
        for lo2, hi2 in spans[t + 1:]:
            if not (hi < lo2 or hi2 < lo or lo < lo2 < hi2 < hi or lo2 < lo < hi < hi2):
                raise DecompositionError(f"intervals {(lo, hi)} and {(lo2, hi2)} cross")
    return plan


def _square(a: GroupElement, b: GroupElement, m: int, i: int) -> Cycle:
    """The 4-cycle (a^m, a^(m+i), b a^(m+i), b a^m)."""
    lo, hi = a ** m, a ** (m + i)
    return Cycle((lo, hi, multiply(b, hi), multiply(b, lo)))


def join_cosets(graph: CayleyGraph | None, rot: GroupElement, square: Cycle) -> Cycle:
    """Splice the two coset cycles of the class of ``rot`` into one Hamilton cycle."""
    n = rot.n
    if rot.reflected or math.gcd(rot.exponent, n) != 1:
        raise PreconditionError(f"{rot} does not generate the rotation subgroup")
    rotations, reflections = coset_cycles(rot)
    coset_edges = Cycle(tuple(rotations)).edge_set()
    coset_edges.update(Cycle(tuple(reflections)).edge_set())

    if len(square) != 4 or len(set(square)) != 4:
        raise NotASingleCycle(f"{square.tokens()} is not a 4-cycle")
    sq_edges = square.edge_set()
    if graph is not None:
        missing = [k for k in sq_edges if k not in graph.edges]
        if missing:
            raise NotASingleCycle(f"square uses non-edges {missing}")
    shared = [k for k in sq_edges if k in coset_edges]
    bridges = [k for k in sq_edges if k not in coset_edges]
    if (
        len(shared) != 2
        or {u.reflected for u, _ in shared} != {False, True}
        or any(u.reflected == v.reflected for u, v in bridges)
    ):
        raise NotASingleCycle(
            f"square {square.tokens()} must share one edge with each coset cycle "
            "and bridge the cosets with its other two edges"
        )
    return hamilton_cycle(symmetric_difference(coset_edges, sq_edges), n, "coset join")


def decompose_one_reflection(
    p: int, S1: Iterable[GroupElement], b: GroupElement, graph: CayleyGraph | None = None
) -> Decomposition:
    _check_odd_prime(p)
    S1 = _check_rotation_set(S1, p)
    if not S1:
        raise PreconditionError("need at least one pair of rotations")
    if not b.reflected or b.n != p:
        raise PreconditionError(f"{b} is not a reflection of D_{2 * p}")

    reps = _fold(S1)
    plan = choose_base_points([r.exponent for r in reps], p)
    alpha = rotation(1, p)
    matching = _generator_edges([b], p)
    cycles = []
    for rep, m in zip(reps, plan.base_points):
        square = _square(alpha, b, m, rep.exponent)
        cycles.append(join_cosets(graph, rep, square))
        matching = symmetric_difference(matching, square.edge_set())

    covered = [v for key in matching for v in key]
    if len(covered) != 2 * p or len(set(covered)) != 2 * p:
        raise DecompositionError("modified reflection edges are not a perfect matching")
    return Decomposition(
        p,
        tuple(cycles),
        tuple(sorted(matching)),
        (ONE_REFLECTION,) * len(cycles),
        ONE_REFLECTION,
    )


def decompose_all_reflections(p: int, S2: Iterable[GroupElement]) -> Decomposition:
    _check_odd_prime(p)
    refl = sorted(set(S2))
    if len(refl) < 2:
        raise PreconditionError("need at least two reflections")
    if any(not x.reflected or x.n != p for x in refl):
        raise PreconditionError("all elements must be reflections of the same group")

    cycles = []
    for x, y in zip(refl[0::2], refl[1::2]):
        cycles.append(hamilton_cycle(_generator_edges([x, y], p), p, f"{x},{y}-edges"))
    matching = None
    if len(refl) % 2:
        matching = tuple(sorted(_generator_edges([refl[-1]], p)))
    return Decomposition(
        p,
        tuple(cycles),
        matching,
        (ALL_REFLECTIONS,) * len(cycles),
        ALL_REFLECTIONS if matching else None,
    )


def decompose_tetravalent(
    n: int, i: int, j: int, k: int, graph: CayleyGraph | None = None
) -> Decomposition:
    """Two Hamilton cycles for S = {a^i, a^-i, b a^j, b a^k} on D_2n, any n >= 3."""
    if n < 3:
        raise PreconditionError(f"n must be at least 3, got {n}")
    if not (1 <= i <= n - 1 and 0 <= j < k <= n - 1):
        raise PreconditionError(f"need 1 <= i <= n-1 and 0 <= j < k <= n-1, got {(i, j, k)}")
    if math.gcd(i, n) != 1 or math.gcd(k - j, n) != 1:
        raise PreconditionError(f"gcd(i, n) and gcd(k-j, n) must be 1, got {(i, j, k)} with n={n}")

    a = rotation(i, n)
    b = reflection(j, n)
    s = rotation_log(a, rotation(k - j, n))
    if multiply(b, a ** s) != reflection(k, n):
        raise DecompositionError(f"rebasing failed: b a^{s} != s{k}")
    gens = [a, inverse(a), b, reflection(k, n)]
    if graph is None:
        graph = build_graph(validate_connection_set(n, gens))

    one = rotation(0, n)
    square = Cycle((inverse(a), one, b, multiply(b, inverse(a))))
    h_a = join_cosets(graph, a, square)
    used = set(h_a.edges())
    rest = [key for key in _generator_edges(gens, n) if key not in used]
    h_b = hamilton_cycle(rest, n, "complement of the spliced cycle")
    return Decomposition(n, (h_a, h_b), None, (TETRAVALENT, TETRAVALENT))


def decompose_two_reflections(
    p: int,
    S1: Iterable[GroupElement],
    b: GroupElement,
    c: GroupElement,
    graph: CayleyGraph | None = None,
) -> Decomposition:
    _check_odd_prime(p)
    S1 = _check_rotation_set(S1, p)
    if b == c or not (b.reflected and c.reflected) or b.n != p or c.n != p:
        raise PreconditionError(f"{b} and {c} must be two distinct reflections of D_{2 * p}")
    b, c = sorted((b, c))

    reflection_edges = _generator_edges([b, c], p)
    if not S1:
        cycle = hamilton_cycle(reflection_edges, p, f"{b},{c}-edges")
        return Decomposition(p, (cycle,), None, (TWO_REFLECTIONS,))
    if len(S1) == 2:
        (rep,) = _fold(S1)
        return decompose_tetravalent(p, rep.exponent, b.exponent, c.exponent, graph)

    a = multiply(b, c)
    exps = sorted({min(e, p - e) for e in (rotation_log(a, r) for r in S1)})
    plan = choose_base_points(exps, p)
    cycles = []
    leftover = reflection_edges
    for i, m in zip(exps, plan.base_points):
        square = _square(a, b, m, i)
        cycles.append(join_cosets(graph, a ** i, square))
        leftover = symmetric_difference(leftover, square.edge_set())
    cycles.append(hamilton_cycle(leftover, p, "reflection cycle after surgery"))
    return Decomposition(p, tuple(cycles), None, (TWO_REFLECTIONS,) * len(cycles))


def _d4_table() -> dict[frozenset[str], tuple[list[list[str]], list[tuple[str, str]] | None]]:
    return {
        frozenset({"r1", "s0"}): ([["r0", "r1", "s1", "s0"]], None),
        frozenset({"r1", "s1"}): ([["r0", "r1", "s0", "s1"]], None),
        frozenset({"s0", "s1"}): ([["r0", "s0", "r1", "s1"]], None),
        frozenset({"r1", "s0", "s1"}): ([["r0", "r1", "s1", "s0"]], [("r0", "s1"), ("r1", "s0")]),
    }


def _decompose_d4(S: ConnectionSet) -> Decomposition:
    from .dihedral import parse_element

    cycles, matching = _d4_table()[frozenset(S.tokens())]
    cyc = tuple(Cycle(tuple(parse_element(t, 2) for t in c)) for c in cycles)
    mat = None
    if matching is not None:
        mat = tuple(sorted(edge_key(parse_element(u, 2), parse_element(v, 2)) for u, v in matching))
    return Decomposition(2, cyc, mat, (D4_TABLE,) * len(cyc), D4_TABLE if mat else None)


def decompose(p: int, S: ConnectionSet, graph: CayleyGraph | None = None) -> Decomposition:
    """Hamilton decomposition of Cay(D_2p, S) for prime p."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if S.n != p:
        raise PreconditionError(f"connection set belongs to D_{2 * S.n}, not D_{2 * p}")
    S = validate_connection_set(p, S.elements)
    if p == 2:
        return _decompose_d4(S)

    S1 = S.rotations
    S2 = sorted(S.reflections)
    if len(S2) == 1:
        return decompose_one_reflection(p, S1, S2[0], graph)
    if not S1:
        return decompose_all_reflections(p, S2)
    if len(S2) == 2:
        return decompose_two_reflections(p, S1, S2[0], S2[1], graph)
    if len(S2) % 2 == 0:
        head = decompose_two_reflections(p, S1, S2[0], S2[1], graph)
        return head + decompose_all_reflections(p, S2[2:])
    head = decompose_one_reflection(p, S1, S2[0], graph)
    return head + decompose_all_reflections(p, S2[1:])
