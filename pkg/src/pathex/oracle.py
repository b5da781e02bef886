"""Exhaustive maximum copy counts over small planar hosts.

Two search strategies, cross-checkable where they overlap:

* all-graphs: walk every labeled graph on n <= 6 vertices, count copies,
  and take the maximum over those that pass the planarity test;
* maximal-planar: generate every edge-maximal planar graph (triangulation)
  up to isomorphism and count only there.  Adding edges never removes
  non-induced copies, so for the connected patterns handled here the
  maximum over planar graphs is attained on a triangulation.

Triangulations are generated by vertex splitting: every triangulation on
k+1 >= 5 vertices arises from one on k vertices by splitting a vertex along
two of its neighbors in the (unique) planar rotation system.  Starting from
K4 and deduplicating by isomorphism yields the full catalog.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .density import PatternSpec
from .errors import (
    InvalidPatternError,
    InvalidSpecError,
    PathexError,
    ResourceLimitError,
)
from .graphs import (
    SimpleGraph,
    all_edges,
    enumerate_cycle_copies,
    enumerate_path_copies,
    is_planar,
    read_graph6,
    write_graph6,
)

_ALL_GRAPHS_LIMIT = 6  # 2^15 masks at n=6; beyond that only triangulations


@dataclass(frozen=True)
class OracleQuery:
    """A maximum-copies question: host size, pattern, search mode."""

    n: int
    pattern: PatternSpec
    mode: str = "auto"  # all-graphs | maximal-planar | auto
    cap: int = 8
    witness_cap: int = 10

    def __post_init__(self) -> None:
        if self.pattern.kind not in ("path", "cycle"):
            raise InvalidPatternError(
                f"oracle handles path/cycle patterns, got {self.pattern.kind}"
            )
        if self.n < 1:
            raise InvalidSpecError(f"host size must be positive, got {self.n}")
        if self.pattern.m > self.n:
            raise InvalidSpecError(
                f"pattern needs {self.pattern.m} vertices, host has {self.n}"
            )
        if self.mode not in ("auto", "all-graphs", "maximal-planar"):
            raise InvalidSpecError(f"unknown oracle mode {self.mode!r}")


@dataclass(frozen=True)
class OracleResult:
    max_count: int
    witnesses: tuple[str, ...]
    graphs_examined: int
    mode: str


def count_copies(G: SimpleGraph, pattern: PatternSpec) -> int:
    """Exact number of unlabeled copies of the pattern in G."""
    if pattern.kind == "path":
        return sum(1 for _ in enumerate_path_copies(G, pattern.m))
    if pattern.kind == "cycle":
        return sum(1 for _ in enumerate_cycle_copies(G, pattern.m))
    raise InvalidPatternError(f"count_copies handles path/cycle, got {pattern.kind}")


# ---------------------------------------------------------------------------
# Triangulation catalog
# ---------------------------------------------------------------------------

def _rotation_system(T: SimpleGraph) -> dict[int, list[int]]:
    ok, embedding = nx.check_planarity(T.to_networkx())
    if not ok:
        raise PathexError("triangulation candidate is not planar")
    return {v: neighbors for v, neighbors in embedding.get_data().items()}


def _vertex_splits(T: SimpleGraph) -> list[SimpleGraph]:
    """All graphs obtained by splitting one vertex of the triangulation T.

    The split vertex keeps one arc of its rotation, the new vertex (label
    n+1) takes the complementary arc; the two arcs share their endpoints
    and the split pair is joined by an edge.  Every result is again a
    triangulation.
    """
    rotation = _rotation_system(T)
    new_n = T.n + 1
    out = []
    for v in range(1, T.n + 1):
        cycle = rotation[v]
        d = len(cycle)
        base = [e for e in T.sorted_edges if v not in e]
        for i in range(d):
            for j in range(i + 1, d):
                kept_arc = cycle[i : j + 1]
                moved_arc = cycle[j:] + cycle[: i + 1]
                edges = list(base)
                edges += [(v, u) for u in kept_arc]
                edges += [(new_n, u) for u in moved_arc]
                edges.append((v, new_n))
                candidate = SimpleGraph.from_edges(new_n, edges)
                if candidate.edge_count != 3 * new_n - 6:
                    raise PathexError("vertex split produced a non-triangulation")
                out.append(candidate)
    return out


def _dedupe_isomorphic(graphs: list[SimpleGraph]) -> list[SimpleGraph]:
    buckets: dict[str, list[SimpleGraph]] = {}
    unique: list[SimpleGraph] = []
    for G in graphs:
        g_nx = G.to_networkx()
        key = nx.weisfeiler_lehman_graph_hash(g_nx)
        bucket = buckets.setdefault(key, [])
        if not any(nx.is_isomorphic(g_nx, H.to_networkx()) for H in bucket):
            bucket.append(G)
            unique.append(G)
    return unique


def triangulations(n: int) -> list[SimpleGraph]:
    """All edge-maximal planar graphs on n vertices, one per isomorphism
    class, sorted by their graph6 string."""
    if n < 1:
        raise InvalidSpecError(f"host size must be positive, got {n}")
    if n <= 4:
        return [SimpleGraph.complete(n)]
    level = [SimpleGraph.complete(4)]
    for _ in range(5, n + 1):
        candidates = []
        for T in level:
            candidates.extend(_vertex_splits(T))
        level = _dedupe_isomorphic(candidates)
    return sorted(level, key=write_graph6)


# ---------------------------------------------------------------------------
# Maximum search
# ---------------------------------------------------------------------------

def _mask_graph(n: int, mask: int, edges: list) -> SimpleGraph:
    chosen = [e for i, e in enumerate(edges) if mask >> i & 1]
    return SimpleGraph.from_edges(n, chosen)


def _search_all_graphs(q: OracleQuery) -> OracleResult:
    edges = all_edges(q.n)
    counted = []
    for mask in range(1 << len(edges)):
        counted.append((count_copies(_mask_graph(q.n, mask, edges), q.pattern), mask))
    counted.sort(key=lambda item: (-item[0], item[1]))

    best = None
    witnesses: list[str] = []
    for count, mask in counted:
        if best is not None and count < best:
            break
        G = _mask_graph(q.n, mask, edges)
        if is_planar(G):
            best = count
            if len(witnesses) < q.witness_cap:
                witnesses.append(write_graph6(G))
    return OracleResult(
        max_count=int(best),
        witnesses=tuple(witnesses),
        graphs_examined=1 << len(edges),
        mode="all-graphs",
    )


def _search_maximal_planar(q: OracleQuery) -> OracleResult:
    catalog = triangulations(q.n)
    counts = [(count_copies(G, q.pattern), write_graph6(G)) for G in catalog]
    best = max(count for count, _ in counts)
    witnesses = tuple(
        g6 for count, g6 in sorted(counts, key=lambda item: item[1])
        if count == best
    )[: q.witness_cap]
    return OracleResult(
        max_count=best,
        witnesses=witnesses,
        graphs_examined=len(catalog),
        mode="maximal-planar",
    )


def max_copies_planar(q: OracleQuery) -> OracleResult:
    """Exact max of copy counts over all planar graphs on n vertices."""
    if q.n > q.cap:
        raise ResourceLimitError(f"host size {q.n} above the cap {q.cap}")
    mode = q.mode
    if mode == "auto":
        mode = "all-graphs" if q.n <= _ALL_GRAPHS_LIMIT else "maximal-planar"
    if mode == "all-graphs":
        if q.n > _ALL_GRAPHS_LIMIT:
            raise ResourceLimitError(
                f"all-graphs search is capped at n = {_ALL_GRAPHS_LIMIT}"
            )
        result = _search_all_graphs(q)
    else:
        result = _search_maximal_planar(q)

    for g6 in result.witnesses:
        W = read_graph6(g6)
        if not is_planar(W) or count_copies(W, q.pattern) != result.max_count:
            raise PathexError(f"witness {g6!r} failed re-verification")
    return result
