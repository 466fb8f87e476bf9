from itertools import combinations

import pytest

from dihedral_hamilton.cayley import build_graph, parse_connection_set, validate_connection_set
from dihedral_hamilton.decomp import (
    ALL_REFLECTIONS,
    D4_TABLE,
    ONE_REFLECTION,
    TETRAVALENT,
    TWO_REFLECTIONS,
    Cycle,
    NotASingleCycle,
    PreconditionError,
    choose_base_points,
    decompose,
    decompose_all_reflections,
    decompose_one_reflection,
    decompose_tetravalent,
    decompose_two_reflections,
    join_cosets,
    labelled,
    symmetric_difference,
    trace_cycles,
)
from dihedral_hamilton.dihedral import parse_element
from dihedral_hamilton.oracle import enumerate_connection_sets
from dihedral_hamilton.verify import verify_decomposition

from oracles import intervals_nested_or_disjoint


def el(tok, n):
    return parse_element(tok, n)


def els(tokens, n):
    return [parse_element(t, n) for t in tokens.split(",")]


def cyc(tokens, n):
    return Cycle(tuple(els(tokens, n)))


def check(d, tokens, n):
    g = build_graph(parse_connection_set(tokens, n))
    report = verify_decomposition(g, d)
    assert report.ok, report.failures
    return g


# symmetric difference

def test_symmetric_difference_examples():
    E = labelled([(el("r0", 7), el("r1", 7)), (el("r0", 7), el("s0", 7))])
    assert symmetric_difference(E, E) == {}
    assert symmetric_difference(E, {}) == E
    e1, e2, e3 = (el("r0", 7), el("r1", 7)), (el("r1", 7), el("r2", 7)), (el("r2", 7), el("r3", 7))
    assert set(symmetric_difference(labelled([e1, e2]), labelled([e2, e3]))) == {e1, e3}


def test_symmetric_difference_keeps_labels():
    a = {(el("r0", 7), el("r1", 7)): el("r1", 7)}
    b = {(el("r1", 7), el("s1", 7)): el("s0", 7)}
    assert symmetric_difference(a, b) == {**a, **b}


# base points

@pytest.mark.parametrize(
    "p, exps, expected",
    [
        (7, (1, 2), (4, 0)),
        (7, (1, 2, 3), (1, 4, 0)),
        (11, (1, 2, 3, 4), (7, 1, 6, 0)),
        (5, (2,), (0,)),
    ],
)
def test_choose_base_points_examples(p, exps, expected):
    plan = choose_base_points(exps, p)
    assert plan.base_points == expected
    assert intervals_nested_or_disjoint(plan.intervals(), p)


@pytest.mark.parametrize("p, exps", [(7, (1, 4)), (7, (2, 2)), (7, (2, 1)), (7, ()), (8, (1,)), (7, (0, 1))])
def test_choose_base_points_rejects(p, exps):
    with pytest.raises(PreconditionError):
        choose_base_points(exps, p)


def test_base_points_sound_for_small_odd_moduli():
    for p in range(3, 24, 2):
        half = (p - 1) // 2
        for size in range(1, half + 1):
            for exps in combinations(range(1, half + 1), size):
                plan = choose_base_points(exps, p)
                assert intervals_nested_or_disjoint(plan.intervals(), p)


# coset surgery

def test_join_cosets_d14():
    g = build_graph(parse_connection_set("r1,r6,s0", 7))
    h = join_cosets(g, el("r1", 7), cyc("r0,r1,s1,s0", 7))
    assert h.tokens() == "r0 r6 r5 r4 r3 r2 r1 s1 s2 s3 s4 s5 s6 s0".split()


def test_join_cosets_d10_step_two():
    g = build_graph(parse_connection_set("r2,r3,s0", 5))
    h = join_cosets(g, el("r2", 5), cyc("r0,r2,s2,s0", 5))
    assert h.tokens() == "r0 r3 r1 r4 r2 s2 s4 s1 s3 s0".split()
    rot = sum(1 for u, v in h.edges() if u.reflected == v.reflected)
    assert (rot, len(h)) == (2 * 5 - 2, 10)


def test_join_cosets_rejects_unrelated_square():
    g = build_graph(parse_connection_set("r1,r6,r2,r5,s0", 7))
    with pytest.raises(NotASingleCycle):
        join_cosets(g, el("r1", 7), cyc("r0,r2,s2,s0", 7))
    with pytest.raises(NotASingleCycle):
        join_cosets(g, el("r1", 7), cyc("r0,r1,r2,r3", 7))


def test_trace_cycles_splits_components():
    keys = cyc("r0,r1,r2", 7).edges() + cyc("s0,s1,s2", 7).edges()
    assert [c.tokens() for c in trace_cycles(keys)] == [["r0", "r1", "r2"], ["s0", "s1", "s2"]]


# the four constructions

@pytest.mark.parametrize(
    "p, rots, b, cycles",
    [(7, "r1,r6", "s0", 1), (7, "r1,r2,r5,r6", "s0", 2), (5, "r1,r2,r3,r4", "s3", 2)],
)
def test_one_reflection(p, rots, b, cycles):
    d = decompose_one_reflection(p, els(rots, p), el(b, p))
    assert len(d.cycles) == cycles and len(d.matching) == p
    assert set(d.routes) == {ONE_REFLECTION}
    check(d, f"{rots},{b}", p)


def test_anchoring_squares_at_their_index_collides():
    # squares (a^t, a^(t+i_t), b a^(t+i_t), b a^t) for i = (1, 2) share a^2
    first = set(cyc("r1,r2,s2,s1", 7))
    second = set(cyc("r2,r4,s4,s2", 7))
    assert first & second == set(els("r2,s2", 7))
    plan = choose_base_points((1, 2), 7)
    squares = [set(range(m, m + i + 1, i)) for m, i in zip(plan.base_points, plan.exponents)]
    assert not squares[0] & squares[1]


def test_one_reflection_with_adjacent_exponents():
    # squares anchored at r1 and r2 would share r2; the base-point scheme keeps them apart
    for b in range(7):
        d = decompose_one_reflection(7, els("r1,r6,r2,r5,r3,r4", 7), el(f"s{b}", 7))
        check(d, f"r1,r6,r2,r5,r3,r4,s{b}", 7)


@pytest.mark.parametrize(
    "p, refl, cycles, matching",
    [(7, "s0,s1", 1, False), (7, "s0,s1,s4", 1, True), (5, "s0,s1,s2,s3,s4", 2, True)],
)
def test_all_reflections(p, refl, cycles, matching):
    d = decompose_all_reflections(p, els(refl, p))
    assert len(d.cycles) == cycles and (d.matching is not None) == matching
    g = check(d, refl, p)
    if matching:
        last = els(refl, p)[-1]
        assert set(d.matching) == {key for key, label in g.edges.items() if label == last}


@pytest.mark.parametrize("n, i, j, k", [(7, 1, 0, 1), (12, 5, 1, 2), (7, 1, 0, 2), (9, 2, 3, 8)])
def test_tetravalent(n, i, j, k):
    d = decompose_tetravalent(n, i, j, k)
    assert len(d.cycles) == 2 and d.matching is None
    assert set(d.routes) == {TETRAVALENT}
    a, b = (set(c.edges()) for c in d.cycles)
    assert not a & b and len(a | b) == 4 * n
    check(d, f"r{i},r{-i % n},s{j},s{k}", n)


@pytest.mark.parametrize("n, i, j, k", [(12, 2, 1, 2), (12, 5, 1, 3), (7, 0, 0, 1), (7, 1, 3, 3), (2, 1, 0, 1)])
def test_tetravalent_rejects(n, i, j, k):
    with pytest.raises(PreconditionError):
        decompose_tetravalent(n, i, j, k)


@pytest.mark.parametrize(
    "p, rots, b, c, cycles, route",
    [
        (7, "", "s0", "s3", 1, TWO_REFLECTIONS),
        (7, "r1,r6", "s0", "s3", 2, TETRAVALENT),
        (7, "r1,r6,r2,r5", "s0", "s1", 3, TWO_REFLECTIONS),
        (11, "r1,r10,r2,r9,r3,r8", "s0", "s4", 4, TWO_REFLECTIONS),
    ],
)
def test_two_reflections(p, rots, b, c, cycles, route):
    d = decompose_two_reflections(p, els(rots, p) if rots else [], el(b, p), el(c, p))
    assert len(d.cycles) == cycles and d.matching is None
    assert set(d.routes) == {route}
    check(d, ",".join(x for x in (rots, b, c) if x), p)


def test_two_reflections_is_symmetric_in_b_and_c():
    args = (11, els("r1,r10,r2,r9,r3,r8", 11))
    assert decompose_two_reflections(*args, el("s0", 11), el("s4", 11)) == decompose_two_reflections(
        *args, el("s4", 11), el("s0", 11)
    )


# dispatcher

@pytest.mark.parametrize(
    "p, tokens, cycles, matching, routes",
    [
        (3, "r1,r2,s0,s1,s2", 2, True, {ONE_REFLECTION, ALL_REFLECTIONS}),
        (5, "r1,r4,s0,s1,s2", 2, True, {ONE_REFLECTION, ALL_REFLECTIONS}),
        (2, "r1,s0,s1", 1, True, {D4_TABLE}),
        (7, "r1,r6,s0,s1,s2,s3", 3, False, {TETRAVALENT, ALL_REFLECTIONS}),
        (7, "s0,s2,s5", 1, True, {ALL_REFLECTIONS}),
    ],
)
def test_decompose_examples(p, tokens, cycles, matching, routes):
    S = parse_connection_set(tokens, p)
    d = decompose(p, S)
    assert len(d.cycles) == cycles and (d.matching is not None) == matching
    assert set(d.routes) | ({d.matching_route} if d.matching_route else set()) == routes
    check(d, tokens, p)


def test_d4_table_certificate():
    d = decompose(2, parse_connection_set("r1,s0,s1", 2))
    assert d.cycles[0].tokens() == ["r0", "r1", "s1", "s0"]
    assert [(u.token, v.token) for u, v in d.matching] == [("r0", "s1"), ("r1", "s0")]


def test_decompose_rejects_composite_and_mismatch():
    with pytest.raises(PreconditionError):
        decompose(9, validate_connection_set(9, els("r1,r8,s0", 9)))
    with pytest.raises(PreconditionError):
        decompose(5, parse_connection_set("r1,r6,s0", 7))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_every_instance_verifies(p):
    for S in enumerate_connection_sets(p):
        g = build_graph(S)
        d = decompose(p, S, g)
        assert len(d.cycles) == S.degree // 2
        assert (d.matching is not None) == (S.degree % 2 == 1)
        assert len(d.routes) == len(d.cycles)
        assert verify_decomposition(g, d).ok, str(S)


def test_deterministic():
    S = parse_connection_set("r1,r10,r3,r8,s0,s2,s5,s9", 11)
    assert decompose(11, S) == decompose(11, S)
    assert decompose(11, S, build_graph(S)) == decompose(11, S)


def test_cycle_order_puts_surgery_cycles_first():
    d = decompose(7, parse_connection_set("r1,r6,r2,r5,r3,r4,s0,s1", 7))
    assert d.routes == (TWO_REFLECTIONS,) * 4
    # the last cycle is the reflection cycle after surgery: it still uses reflection edges
    assert any(u.reflected != v.reflected for u, v in d.cycles[-1].edges())
