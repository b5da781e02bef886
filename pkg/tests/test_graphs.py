"""Tests for graphs, copy enumeration, planarity, graph6, and edge measures.

Expected counts come from independent oracles implemented right here:
permutation brute force for path/cycle/pair copies, a Wagner minor search
for planarity, and networkx for graph6 cross-checks.
"""

import itertools
import math
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pathex import (
    EdgeMeasure,
    InvalidAnchorError,
    InvalidGraphError,
    InvalidMeasureError,
    SimpleGraph,
    all_edges,
    enumerate_anchored_pair_copies,
    enumerate_cycle_copies,
    enumerate_path_copies,
    is_planar,
    normalize_edge,
    read_graph6,
    write_graph6,
)


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------

def brute_path_count(G: SimpleGraph, k: int) -> int:
    """Count unlabeled k-vertex path copies by filtering raw permutations."""
    if k < 2:
        raise ValueError("paths need at least two vertices")
    hits = 0
    for seq in itertools.permutations(range(1, G.n + 1), k):
        if all(G.has_edge(seq[i], seq[i + 1]) for i in range(k - 1)):
            hits += 1
    assert hits % 2 == 0
    return hits // 2


def brute_cycle_count(G: SimpleGraph, k: int) -> int:
    """Count unlabeled k-cycles; each copy shows up as 2k closed sequences."""
    if k < 3:
        raise ValueError("cycles need at least three vertices")
    hits = 0
    for seq in itertools.permutations(range(1, G.n + 1), k):
        if all(G.has_edge(seq[i], seq[(i + 1) % k]) for i in range(k)):
            hits += 1
    assert hits % (2 * k) == 0
    return hits // (2 * k)


def brute_anchored_count(G: SimpleGraph, s: int, t: int, a: int, b: int) -> int:
    """Count vertex-disjoint anchored path pairs from raw vertex tuples."""
    hits = 0
    others = [v for v in range(1, G.n + 1) if v not in (a, b)]
    for first_tail in itertools.permutations(others, s):
        first = (a,) + first_tail
        if not all(G.has_edge(first[i], first[i + 1]) for i in range(s)):
            continue
        rest = [v for v in others if v not in first_tail]
        for second_tail in itertools.permutations(rest, t):
            second = (b,) + second_tail
            if all(G.has_edge(second[i], second[i + 1]) for i in range(t)):
                hits += 1
    return hits


def _connected_in(G: SimpleGraph, verts: list[int]) -> bool:
    vs = set(verts)
    stack = [verts[0]]
    seen = {verts[0]}
    while stack:
        u = stack.pop()
        for w in G.neighbors(u):
            if w in vs and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vs


def has_minor(G: SimpleGraph, h_edges: list[tuple[int, int]], h_size: int) -> bool:
    """Brute-force minor test: assign vertices to branch sets (or drop them)."""
    labels = list(range(1, G.n + 1))
    for assignment in itertools.product(range(h_size + 1), repeat=G.n):
        groups: list[list[int]] = [[] for _ in range(h_size)]
        for v, c in zip(labels, assignment):
            if c < h_size:
                groups[c].append(v)
        if any(not grp for grp in groups):
            continue
        if not all(_connected_in(G, grp) for grp in groups):
            continue
        if all(
            any(G.has_edge(u, w) for u in groups[i] for w in groups[j])
            for i, j in h_edges
        ):
            return True
    return False


def planar_by_wagner(G: SimpleGraph) -> bool:
    k5_edges = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    k33_edges = [(i, j) for i in range(3) for j in range(3, 6)]
    return not (has_minor(G, k5_edges, 5) or has_minor(G, k33_edges, 6))


# ---------------------------------------------------------------------------
# Edges and graph construction
# ---------------------------------------------------------------------------

def test_normalize_edge_sorts_and_rejects_loops():
    assert normalize_edge(3, 1) == (1, 3)
    assert normalize_edge(1, 3) == (1, 3)
    with pytest.raises(InvalidGraphError):
        normalize_edge(2, 2)


def test_all_edges_lexicographic():
    assert all_edges(4) == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    assert len(all_edges(9)) == math.comb(9, 2)


def test_graph_constructors_and_queries():
    g = SimpleGraph.cycle(5)
    assert g.edge_count == 5
    assert g.neighbors(1) == (2, 5)
    assert g.degree(3) == 2
    k = SimpleGraph.complete(6)
    assert k.edge_count == 15
    b = SimpleGraph.complete_bipartite(2, 4)
    assert b.n == 6
    assert b.edge_count == 8
    assert not b.has_edge(1, 2)
    assert b.has_edge(1, 3)
    with pytest.raises(InvalidGraphError):
        SimpleGraph.from_edges(3, [(1, 4)])
    with pytest.raises(InvalidGraphError):
        SimpleGraph.from_edges(3, [(2, 2)])


def test_relabel_roundtrip():
    g = SimpleGraph.from_edges(4, [(1, 2), (2, 3), (3, 4)])
    perm = {1: 3, 2: 1, 3: 4, 4: 2}
    h = g.relabel(perm)
    assert h.sorted_edges == [(1, 3), (1, 4), (2, 4)]
    inverse = {v: k for k, v in perm.items()}
    assert h.relabel(inverse) == g


# ---------------------------------------------------------------------------
# Path copies
# ---------------------------------------------------------------------------

def test_path_copies_complete_graph_closed_form():
    for n in range(2, 8):
        for k in range(2, n + 1):
            got = sum(1 for _ in enumerate_path_copies(SimpleGraph.complete(n), k))
            assert got == math.factorial(n) // (2 * math.factorial(n - k))


def test_path_copies_k4_equals_wedge_count():
    g = SimpleGraph.complete(4)
    expected = sum(math.comb(g.degree(v), 2) for v in range(1, 5))
    assert sum(1 for _ in enumerate_path_copies(g, 3)) == expected == 12


def test_path_copies_four_cycle():
    g = SimpleGraph.cycle(4)
    assert sum(1 for _ in enumerate_path_copies(g, 4)) == 4
    assert sum(1 for _ in enumerate_path_copies(g, 3)) == 4
    assert sum(1 for _ in enumerate_path_copies(g, 2)) == 4


def test_path_copies_single_edge_has_no_long_paths():
    g = SimpleGraph.from_edges(5, [(2, 4)])
    assert sum(1 for _ in enumerate_path_copies(g, 3)) == 0
    assert [c.vertices for c in enumerate_path_copies(g, 2)] == [(2, 4)]


def test_path_copies_match_brute_force_on_random_graphs():
    import random

    rng = random.Random(20250814)
    for trial in range(12):
        n = rng.randrange(5, 8)
        edges = [e for e in all_edges(n) if rng.random() < 0.55]
        g = SimpleGraph.from_edges(n, edges)
        for k in (3, 4, 5):
            got = sum(1 for _ in enumerate_path_copies(g, k))
            assert got == brute_path_count(g, k)


def test_path_copies_canonical_unique_and_sorted():
    g = SimpleGraph.complete(5)
    copies = list(enumerate_path_copies(g, 4))
    seqs = [c.vertices for c in copies]
    assert all(c.canonical for c in copies)
    assert len(set(seqs)) == len(seqs)
    assert seqs == sorted(seqs)
    for c in copies:
        assert c.endpoints == (c.vertices[0], c.vertices[-1])
        assert len(c.edges) == 3


# ---------------------------------------------------------------------------
# Cycle copies
# ---------------------------------------------------------------------------

def test_cycle_copies_fixtures():
    assert sum(1 for _ in enumerate_cycle_copies(SimpleGraph.cycle(4), 4)) == 1
    assert sum(1 for _ in enumerate_cycle_copies(SimpleGraph.complete(4), 3)) == 4
    assert sum(1 for _ in enumerate_cycle_copies(SimpleGraph.complete(5), 5)) == 12
    assert sum(1 for _ in enumerate_cycle_copies(SimpleGraph.cycle(5), 3)) == 0


def test_cycle_copies_match_brute_force_on_random_graphs():
    import random

    rng = random.Random(4096)
    for trial in range(10):
        n = rng.randrange(5, 8)
        edges = [e for e in all_edges(n) if rng.random() < 0.6]
        g = SimpleGraph.from_edges(n, edges)
        for k in (3, 4, 5):
            got = sum(1 for _ in enumerate_cycle_copies(g, k))
            assert got == brute_cycle_count(g, k)


def test_cycle_copies_are_canonically_rooted():
    for copy in enumerate_cycle_copies(SimpleGraph.complete(5), 4):
        vs = copy.vertices
        assert vs[0] == min(vs)
        assert vs[1] < vs[-1]
        assert len(set(vs)) == len(vs)


# ---------------------------------------------------------------------------
# Anchored pairs
# ---------------------------------------------------------------------------

def test_anchored_pairs_k4_fixture():
    g = SimpleGraph.complete(4)
    copies = list(enumerate_anchored_pair_copies(g, 1, 1, 1, 2))
    assert len(copies) == 2
    assert {(c.first, c.second) for c in copies} == {((1, 3), (2, 4)), ((1, 4), (2, 3))}


def test_anchored_pairs_bare_anchors():
    g = SimpleGraph.empty(5)
    copies = list(enumerate_anchored_pair_copies(g, 0, 0, 2, 5))
    assert len(copies) == 1
    assert copies[0].vertices == (2, 5)
    assert copies[0].edges == ()


def test_anchored_pairs_blocked_by_disjointness():
    g = SimpleGraph.path_on([1, 2, 3], 3)
    assert sum(1 for _ in enumerate_anchored_pair_copies(g, 2, 0, 1, 3)) == 0
    assert sum(1 for _ in enumerate_anchored_pair_copies(g, 1, 1, 1, 3)) == 0
    assert sum(1 for _ in enumerate_anchored_pair_copies(g, 1, 0, 1, 3)) == 1


def test_anchored_pairs_match_brute_force():
    import random

    rng = random.Random(77)
    for trial in range(10):
        n = rng.randrange(4, 7)
        edges = [e for e in all_edges(n) if rng.random() < 0.6]
        g = SimpleGraph.from_edges(n, edges)
        a, b = rng.sample(range(1, n + 1), 2)
        for s in range(3):
            for t in range(3):
                got = sum(1 for _ in enumerate_anchored_pair_copies(g, s, t, a, b))
                assert got == brute_anchored_count(g, s, t, a, b)


def test_anchored_pairs_swap_symmetry():
    g = SimpleGraph.complete(5)
    for s, t in [(0, 2), (1, 2), (2, 1), (1, 3)]:
        lhs = sum(1 for _ in enumerate_anchored_pair_copies(g, s, t, 1, 4))
        rhs = sum(1 for _ in enumerate_anchored_pair_copies(g, t, s, 4, 1))
        assert lhs == rhs


def test_anchored_pairs_reject_bad_anchors():
    g = SimpleGraph.complete(4)
    with pytest.raises(InvalidAnchorError):
        list(enumerate_anchored_pair_copies(g, 1, 1, 2, 2))
    with pytest.raises(InvalidAnchorError):
        list(enumerate_anchored_pair_copies(g, 1, 1, 0, 2))


def test_copy_counts_invariant_under_relabeling():
    import random

    rng = random.Random(9)
    g = SimpleGraph.complete_bipartite(2, 4)
    for trial in range(5):
        perm = list(range(1, 7))
        rng.shuffle(perm)
        h = g.relabel(perm)
        for k in (3, 4, 5):
            assert sum(1 for _ in enumerate_path_copies(g, k)) == sum(
                1 for _ in enumerate_path_copies(h, k)
            )
        assert sum(1 for _ in enumerate_cycle_copies(g, 4)) == sum(
            1 for _ in enumerate_cycle_copies(h, 4)
        )


# ---------------------------------------------------------------------------
# Planarity
# ---------------------------------------------------------------------------

def test_planarity_known_families():
    assert is_planar(SimpleGraph.complete(4))
    assert not is_planar(SimpleGraph.complete(5))
    assert not is_planar(SimpleGraph.complete_bipartite(3, 3))
    assert is_planar(SimpleGraph.complete_bipartite(2, 4))
    assert is_planar(SimpleGraph.cycle(8))
    for n in range(0, 5):
        assert is_planar(SimpleGraph.complete(n))


def test_planarity_agrees_with_wagner_minor_search():
    octahedron = SimpleGraph.from_edges(
        6, [e for e in all_edges(6) if e not in {(1, 2), (3, 4), (5, 6)}]
    )
    wheel = SimpleGraph.from_edges(
        6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (6, 1), (6, 2), (6, 3), (6, 4), (6, 5)]
    )
    k5_minus = SimpleGraph.from_edges(5, [e for e in all_edges(5) if e != (1, 2)])
    prism = SimpleGraph.from_edges(6, [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4), (1, 4), (2, 5), (3, 6)])
    cases = [
        SimpleGraph.complete(4),
        SimpleGraph.complete(5),
        SimpleGraph.complete(6),
        SimpleGraph.complete_bipartite(3, 3),
        SimpleGraph.complete_bipartite(2, 4),
        SimpleGraph.cycle(6),
        octahedron,
        wheel,
        k5_minus,
        prism,
    ]
    for g in cases:
        assert is_planar(g) == planar_by_wagner(g), g.sorted_edges


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

def test_graph6_known_vectors():
    assert write_graph6(SimpleGraph.complete(4)) == "C~"
    assert write_graph6(SimpleGraph.complete(5)) == "D~{"
    assert read_graph6("C~") == SimpleGraph.complete(4)


def test_graph6_matches_networkx():
    import random

    rng = random.Random(63)
    graphs = [SimpleGraph.empty(0), SimpleGraph.empty(1), SimpleGraph.cycle(7)]
    for trial in range(8):
        n = rng.randrange(2, 12)
        edges = [e for e in all_edges(n) if rng.random() < 0.5]
        graphs.append(SimpleGraph.from_edges(n, edges))
    for g in graphs:
        mine = write_graph6(g)
        theirs = nx.to_graph6_bytes(g.to_networkx(), header=False).decode().strip()
        assert mine == theirs
        assert read_graph6(mine) == g


@given(st.integers(min_value=0, max_value=10), st.integers(min_value=0, max_value=2**45 - 1))
def test_graph6_roundtrip_random(n, mask):
    edges = [e for i, e in enumerate(all_edges(n)) if (mask >> i) & 1]
    g = SimpleGraph.from_edges(n, edges)
    assert read_graph6(write_graph6(g)) == g


def test_graph6_rejects_garbage():
    with pytest.raises(InvalidGraphError):
        read_graph6("")
    with pytest.raises(InvalidGraphError):
        read_graph6("D~")
    with pytest.raises(InvalidGraphError):
        read_graph6("~~~")


# ---------------------------------------------------------------------------
# Edge measures
# ---------------------------------------------------------------------------

def test_measure_validation():
    with pytest.raises(InvalidMeasureError):
        EdgeMeasure(3, {(1, 2): -0.5})
    with pytest.raises(InvalidMeasureError):
        EdgeMeasure(3, {(1, 4): 0.5})
    with pytest.raises(InvalidGraphError):
        EdgeMeasure(3, {(2, 2): 0.5})
    m = EdgeMeasure(4, {(2, 1): Fraction(1, 3), (3, 4): 0})
    assert m.support == [(1, 2)]
    assert m.weight(1, 2) == m.weight(2, 1) == Fraction(1, 3)
    assert m.weight(3, 4) == 0


def test_measure_mass_and_degrees():
    m = EdgeMeasure.uniform_on(5, [(1, 2), (2, 3), (3, 1)])
    assert m.mass == Fraction(1)
    assert m.is_rational
    assert m.is_probability()
    degs = m.weighted_degrees()
    assert degs[1] == degs[2] == degs[3] == Fraction(2, 3)
    assert degs[4] == degs[5] == 0
    assert sum(degs.values()) == 2 * m.mass


def test_measure_uniform_on_and_vectors():
    m = EdgeMeasure.uniform_on(4, SimpleGraph.cycle(4).sorted_edges, mass=2)
    assert m.mass == Fraction(2)
    assert m.weight(1, 4) == Fraction(1, 2)
    vec = m.to_float().to_vector()
    assert len(vec) == 6
    back = EdgeMeasure.from_vector(4, vec)
    assert back.support == m.support
    assert back.mass == pytest.approx(2.0)
    with pytest.raises(InvalidMeasureError):
        EdgeMeasure.uniform_on(4, [])
    with pytest.raises(InvalidMeasureError):
        EdgeMeasure.from_vector(4, [1.0, 2.0])


def test_measure_json_roundtrip_exact_and_float():
    m = EdgeMeasure(4, {(1, 2): Fraction(1, 3), (2, 3): Fraction(2, 3)})
    blob = m.to_json_dict()
    assert blob["entries"] == [[1, 2, "1/3"], [2, 3, "2/3"]]
    back = EdgeMeasure.from_json_dict(blob)
    assert back == m
    assert back.is_rational
    f = m.to_float()
    blob_f = f.to_json_dict()
    assert isinstance(blob_f["entries"][0][2], float)
    back_f = EdgeMeasure.from_json_dict(blob_f)
    assert back_f.weight(1, 2) == pytest.approx(1 / 3)


def test_measure_transformations():
    m = EdgeMeasure(4, {(1, 2): Fraction(1, 4), (3, 4): Fraction(3, 4)})
    doubled = m.scaled(2)
    assert doubled.mass == Fraction(2)
    moved = m.relabel({1: 4, 2: 3, 3: 2, 4: 1})
    assert moved.weight(3, 4) == Fraction(1, 4)
    assert moved.weight(1, 2) == Fraction(3, 4)
    assert moved.mass == m.mass
    bumped = m.with_weight(1, 3, Fraction(1, 2))
    assert bumped.weight(1, 3) == Fraction(1, 2)
    assert bumped.support_size == 3
    cleared = m.with_weight(3, 4, 0)
    assert cleared.support == [(1, 2)]


def test_measure_support_graph():
    m = EdgeMeasure.uniform_on(6, [(1, 2), (2, 3)])
    g = m.support_graph()
    assert g.n == 6
    assert g.sorted_edges == [(1, 2), (2, 3)]
