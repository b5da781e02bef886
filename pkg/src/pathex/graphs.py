"""Graph and edge-measure primitives.

Vertices are labeled ``1..n`` throughout, so statements like "the path starts
at vertex 1" can be taken literally.  Two value types flow through the same
code paths: ``fractions.Fraction`` for exact work and ``float`` for
optimization.  Edge keys are always normalized tuples ``(i, j)`` with
``i < j``.

The enumeration functions are deterministic: copies stream in ascending
lexicographic order of their vertex sequences, and each unlabeled copy is
produced exactly once (paths are orientation-normalized, cycles are
rotation- and orientation-normalized).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import networkx as nx

from .errors import (
    InvalidAnchorError,
    InvalidGraphError,
    InvalidMeasureError,
    InvalidPatternError,
    InvalidVertexError,
)

Edge = tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    """Return the unordered pair {u, v} as a sorted tuple."""
    if u == v:
        raise InvalidGraphError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def all_edges(n: int) -> list[Edge]:
    """All edges of K_n in lexicographic order: (1,2), (1,3), ..., (n-1,n)."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on vertex set {1, ..., n}."""

    n: int
    edges: frozenset[Edge]
    _adj: dict[int, tuple[int, ...]] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidGraphError(f"vertex count must be nonnegative, got {self.n}")
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for e in self.edges:
            i, j = e
            if not (1 <= i < j <= self.n):
                raise InvalidGraphError(f"edge {e} not a sorted pair inside [1, {self.n}]")
            adj[i].append(j)
            adj[j].append(i)
        object.__setattr__(
            self, "_adj", {v: tuple(sorted(nbrs)) for v, nbrs in adj.items()}
        )

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        return cls(n, frozenset(normalize_edge(u, v) for u, v in edges))

    @classmethod
    def empty(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset())

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset(all_edges(n)))

    @classmethod
    def cycle(cls, n: int) -> "SimpleGraph":
        """The cycle 1-2-...-n-1."""
        if n < 3:
            raise InvalidGraphError(f"a cycle needs at least 3 vertices, got {n}")
        return cls.cycle_on(range(1, n + 1), n)

    @classmethod
    def cycle_on(cls, vertices: Iterable[int], n: int) -> "SimpleGraph":
        """A cycle through the given vertices (in order) inside [1, n]."""
        vs = list(vertices)
        if len(vs) < 3:
            raise InvalidGraphError("a cycle needs at least 3 vertices")
        edges = [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]
        return cls.from_edges(n, edges)

    @classmethod
    def path_on(cls, vertices: Iterable[int], n: int) -> "SimpleGraph":
        vs = list(vertices)
        return cls.from_edges(n, zip(vs, vs[1:]))

    @classmethod
    def complete_bipartite(cls, p: int, q: int) -> "SimpleGraph":
        """K_{p,q} with sides {1..p} and {p+1..p+q}."""
        return cls.from_edges(
            p + q, ((i, j) for i in range(1, p + 1) for j in range(p + 1, p + q + 1))
        )

    # -- basic queries -----------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edges

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def _check_vertex(self, v: int) -> None:
        if not (1 <= v <= self.n):
            raise InvalidVertexError(f"vertex {v} outside [1, {self.n}]")

    def relabel(self, perm: Mapping[int, int] | Sequence[int]) -> "SimpleGraph":
        """Apply a permutation of [n]; perm maps old label -> new label."""
        mapping = _normalize_perm(perm, self.n)
        return SimpleGraph.from_edges(
            self.n, ((mapping[u], mapping[v]) for u, v in self.edges)
        )

    def add_edge(self, u: int, v: int) -> "SimpleGraph":
        e = normalize_edge(u, v)
        for x in e:
            self._check_vertex(x)
        return SimpleGraph(self.n, self.edges | {e})

    def to_networkx(self) -> "nx.Graph":
        g = nx.Graph()
        g.add_nodes_from(range(1, self.n + 1))
        g.add_edges_from(self.edges)
        return g

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges]}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "SimpleGraph":
        return cls.from_edges(int(data["n"]), data["edges"])

    def to_graph6(self) -> str:
        return write_graph6(self)

    @classmethod
    def from_graph6(cls, text: str) -> "SimpleGraph":
        return read_graph6(text)


def _normalize_perm(perm: Mapping[int, int] | Sequence[int], n: int) -> dict[int, int]:
    """Accept {old: new} mappings or sequences with perm[old-1] = new."""
    if isinstance(perm, Mapping):
        mapping = {int(k): int(v) for k, v in perm.items()}
    else:
        mapping = {i + 1: int(v) for i, v in enumerate(perm)}
    if sorted(mapping) != list(range(1, n + 1)) or sorted(mapping.values()) != list(
        range(1, n + 1)
    ):
        raise InvalidGraphError(f"not a permutation of [1, {n}]: {perm!r}")
    return mapping


# ---------------------------------------------------------------------------
# Copies
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathCopy:
    """An unlabeled copy of a path, stored as its canonical vertex sequence.

    The canonical orientation is the lexicographically smaller of the two,
    which for a path is simply the one whose first endpoint is smaller.
    """

    vertices: tuple[int, ...]

    @property
    def canonical(self) -> bool:
        return self.vertices <= self.vertices[::-1]

    @property
    def edges(self) -> tuple[Edge, ...]:
        vs = self.vertices
        return tuple(normalize_edge(vs[k], vs[k + 1]) for k in range(len(vs) - 1))

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]


@dataclass(frozen=True)
class CycleCopy:
    """An unlabeled cycle copy: minimum vertex first, second < last."""

    vertices: tuple[int, ...]

    @property
    def edges(self) -> tuple[Edge, ...]:
        vs = self.vertices
        return tuple(
            normalize_edge(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))
        )


@dataclass(frozen=True)
class AnchoredPairCopy:
    """A copy of two vertex-disjoint paths with fixed start vertices.

    ``first`` starts at the first anchor and carries s edges (s+1 vertices);
    ``second`` starts at the second anchor and carries t edges.  A 0-edge
    path is the bare anchor vertex.
    """

    first: tuple[int, ...]
    second: tuple[int, ...]

    @property
    def edges(self) -> tuple[Edge, ...]:
        es = [normalize_edge(u, v) for u, v in zip(self.first, self.first[1:])]
        es += [normalize_edge(u, v) for u, v in zip(self.second, self.second[1:])]
        return tuple(es)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.first + self.second


def _extend_paths(
    adj: Mapping[int, tuple[int, ...]],
    prefix: list[int],
    used: set[int],
    remaining: int,
) -> Iterator[tuple[int, ...]]:
    """Yield all simple extensions of ``prefix`` by ``remaining`` more edges."""
    if remaining == 0:
        yield tuple(prefix)
        return
    for w in adj[prefix[-1]]:
        if w not in used:
            prefix.append(w)
            used.add(w)
            yield from _extend_paths(adj, prefix, used, remaining - 1)
            used.discard(w)
            prefix.pop()


def _paths_from(
    G: SimpleGraph, start: int, edge_count: int, forbidden: set[int]
) -> Iterator[tuple[int, ...]]:
    """Simple paths with ``edge_count`` edges starting at ``start``,
    avoiding ``forbidden`` vertices entirely."""
    if start in forbidden:
        return
    yield from _extend_paths(G._adj, [start], {start} | set(forbidden), edge_count)


def enumerate_path_copies(G: SimpleGraph, k: int) -> Iterator[PathCopy]:
    """Stream every unlabeled copy of the k-vertex path in G exactly once.

    Copies appear in lexicographic order of their canonical sequence; a
    sequence is canonical when its first endpoint is smaller than its last.
    """
    if k < 2:
        raise InvalidPatternError(f"a path pattern needs at least 2 vertices, got {k}")
    for start in range(1, G.n + 1):
        for seq in _paths_from(G, start, k - 1, set()):
            if seq[0] < seq[-1]:
                yield PathCopy(seq)


def enumerate_cycle_copies(G: SimpleGraph, k: int) -> Iterator[CycleCopy]:
    """Stream every unlabeled copy of the k-cycle in G exactly once.

    Canonical form: the minimum vertex first, oriented so the second vertex
    is smaller than the last.
    """
    if k < 3:
        raise InvalidPatternError(f"a cycle pattern needs at least 3 vertices, got {k}")

    adj = G._adj

    def extend(prefix: list[int], used: set[int]) -> Iterator[CycleCopy]:
        if len(prefix) == k:
            # close the cycle; orientation check against the last vertex
            if prefix[0] in adj[prefix[-1]] and prefix[1] < prefix[-1]:
                yield CycleCopy(tuple(prefix))
            return
        for w in adj[prefix[-1]]:
            # vertices after the root must exceed it (root = min of the cycle)
            if w > prefix[0] and w not in used:
                prefix.append(w)
                used.add(w)
                yield from extend(prefix, used)
                used.discard(w)
                prefix.pop()

    for root in range(1, G.n + 1):
        yield from extend([root], {root})


def enumerate_anchored_pair_copies(
    G: SimpleGraph, s: int, t: int, a: int, b: int
) -> Iterator[AnchoredPairCopy]:
    """Stream copies of the disjoint path pair anchored at a and b.

    The first path starts at ``a`` with ``s`` edges, the second starts at
    ``b`` with ``t`` edges, and the two paths share no vertex.  For
    ``s = t = 0`` this yields exactly the single bare copy {a, b}.
    """
    if s < 0 or t < 0:
        raise InvalidPatternError(f"path lengths must be nonnegative, got s={s}, t={t}")
    if a == b:
        raise InvalidAnchorError(f"anchors must differ, got a = b = {a}")
    for v in (a, b):
        if not (1 <= v <= G.n):
            raise InvalidAnchorError(f"anchor {v} outside [1, {G.n}]")
    for first in _paths_from(G, a, s, {b}):
        for second in _paths_from(G, b, t, set(first)):
            yield AnchoredPairCopy(first, second)


# ---------------------------------------------------------------------------
# Planarity
# ---------------------------------------------------------------------------

def is_planar(G: SimpleGraph) -> bool:
    """Exact planarity test, intended for small hosts (n <= 16).

    Cheap filters first (order <= 4 is always planar, |E| > 3n - 6 never
    is), then the left-right algorithm via networkx.
    """
    if G.n <= 4:
        return True
    if G.edge_count > 3 * G.n - 6:
        return False
    ok, _ = nx.check_planarity(G.to_networkx(), counterexample=False)
    return bool(ok)


# ---------------------------------------------------------------------------
# graph6 codec (bit-exact for n <= 62)
# ---------------------------------------------------------------------------

def write_graph6(G: SimpleGraph) -> str:
    """Encode in graph6: N(n) then the upper triangle, column by column."""
    if G.n > 62:
        raise InvalidGraphError("graph6 writer supports n <= 62 only")
    out = [chr(G.n + 63)]
    bits: list[int] = []
    for j in range(2, G.n + 1):
        for i in range(1, j):
            bits.append(1 if (i, j) in G.edges else 0)
    while len(bits) % 6:
        bits.append(0)
    for p in range(0, len(bits), 6):
        val = 0
        for bit in bits[p : p + 6]:
            val = (val << 1) | bit
        out.append(chr(val + 63))
    return "".join(out)


def read_graph6(text: str) -> SimpleGraph:
    """Decode a single graph6 line (optional >>graph6<< header tolerated)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise InvalidGraphError("empty graph6 string")
    if s[0] == "~":
        raise InvalidGraphError("graph6 reader supports n <= 62 only")
    n = ord(s[0]) - 63
    if not (0 <= n <= 62):
        raise InvalidGraphError(f"bad graph6 size byte {s[0]!r}")
    need = (n * (n - 1) // 2 + 5) // 6
    body = s[1 : 1 + need]
    if len(body) < need:
        raise InvalidGraphError("graph6 string truncated")
    bits: list[int] = []
    for ch in body:
        val = ord(ch) - 63
        if not (0 <= val < 64):
            raise InvalidGraphError(f"bad graph6 byte {ch!r}")
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    edges = []
    pos = 0
    for j in range(2, n + 1):
        for i in range(1, j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return SimpleGraph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# Edge measures
# ---------------------------------------------------------------------------

Weight = Fraction | float | int


@dataclass(frozen=True)
class EdgeMeasure:
    """Nonnegative weights on the edges of K_n.

    Only strictly positive entries are stored, so ``support`` is exactly the
    key set.  Weights may be Fractions (exact mode) or floats; mixed
    measures are treated as float mode.  Instances are immutable: use
    ``with_weight`` / ``scaled`` to derive new measures.
    """

    n: int
    weights: dict[Edge, Weight]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidMeasureError(f"vertex count must be nonnegative, got {self.n}")
        clean: dict[Edge, Weight] = {}
        for (u, v), w in self.weights.items():
            e = normalize_edge(u, v)
            if not (1 <= e[0] < e[1] <= self.n):
                raise InvalidMeasureError(f"edge {e} outside K_{self.n}")
            if w < 0:
                raise InvalidMeasureError(f"negative weight {w} on edge {e}")
            if w != 0:
                clean[e] = clean.get(e, 0) + w
        object.__setattr__(self, "weights", clean)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "EdgeMeasure":
        return cls(n, {})

    @classmethod
    def from_entries(cls, n: int, entries: Iterable[Sequence]) -> "EdgeMeasure":
        return cls(n, {(int(i), int(j)): w for i, j, w in entries})

    @classmethod
    def uniform_on(
        cls, n: int, edges: Iterable[Sequence[int]], mass: Weight = 1, exact: bool = True
    ) -> "EdgeMeasure":
        """Spread ``mass`` uniformly over the given edge set."""
        es = [normalize_edge(u, v) for u, v in edges]
        if not es:
            raise InvalidMeasureError("cannot spread mass over an empty edge set")
        share = Fraction(mass, len(es)) if exact else mass / len(es)
        return cls(n, {e: share for e in set(es)})

    @classmethod
    def from_vector(cls, n: int, vec: Sequence[float]) -> "EdgeMeasure":
        """Interpret ``vec`` as weights on all_edges(n) in lexicographic order."""
        edges = all_edges(n)
        if len(vec) != len(edges):
            raise InvalidMeasureError(
                f"vector length {len(vec)} != number of edges {len(edges)}"
            )
        return cls(n, {e: float(w) for e, w in zip(edges, vec) if w != 0})

    # -- queries -----------------------------------------------------------

    def weight(self, u: int, v: int) -> Weight:
        return self.weights.get(normalize_edge(u, v), 0)

    @property
    def mass(self) -> Weight:
        return sum(self.weights.values())

    @property
    def support(self) -> list[Edge]:
        return sorted(self.weights)

    @property
    def support_size(self) -> int:
        return len(self.weights)

    def support_graph(self) -> SimpleGraph:
        return SimpleGraph(self.n, frozenset(self.weights))

    def items(self) -> list[tuple[Edge, Weight]]:
        return sorted(self.weights.items())

    @property
    def is_rational(self) -> bool:
        return all(isinstance(w, (Fraction, int)) for w in self.weights.values())

    def is_probability(self, tol: float = 1e-9) -> bool:
        """Mass-1 check: exact for rational measures, |mass - 1| <= tol otherwise."""
        if self.is_rational:
            return self.mass == 1
        return abs(self.mass - 1) <= tol

    def weighted_degrees(self) -> dict[int, Weight]:
        deg: dict[int, Weight] = {v: 0 for v in range(1, self.n + 1)}
        for (u, v), w in self.weights.items():
            deg[u] += w
            deg[v] += w
        return deg

    # -- derivations -------------------------------------------------------

    def with_weight(self, u: int, v: int, w: Weight) -> "EdgeMeasure":
        new = dict(self.weights)
        e = normalize_edge(u, v)
        if w == 0:
            new.pop(e, None)
        else:
            new[e] = w
        return EdgeMeasure(self.n, new)

    def scaled(self, c: Weight) -> "EdgeMeasure":
        if c < 0:
            raise InvalidMeasureError(f"negative scale factor {c}")
        return EdgeMeasure(self.n, {e: c * w for e, w in self.weights.items()})

    def relabel(self, perm: Mapping[int, int] | Sequence[int]) -> "EdgeMeasure":
        mapping = _normalize_perm(perm, self.n)
        return EdgeMeasure(
            self.n, {(mapping[u], mapping[v]): w for (u, v), w in self.weights.items()}
        )

    def to_float(self) -> "EdgeMeasure":
        return EdgeMeasure(self.n, {e: float(w) for e, w in self.weights.items()})

    def to_vector(self) -> list[float]:
        return [float(self.weights.get(e, 0.0)) for e in all_edges(self.n)]

    # -- serialization -----------------------------------------------------

    def to_json_dict(self, exact: bool | None = None) -> dict:
        """Entries as [i, j, w] with w a string in exact mode, float otherwise.

        Exact values serialize as Fraction strings ("1/3"); the reader also
        accepts plain decimal strings.
        """
        if exact is None:
            exact = self.is_rational
        entries = []
        for (u, v), w in self.items():
            if exact:
                entries.append([u, v, str(Fraction(w))])
            else:
                entries.append([u, v, float(w)])
        return {"n": self.n, "entries": entries}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "EdgeMeasure":
        entries = []
        for i, j, w in data["entries"]:
            entries.append((i, j, Fraction(w) if isinstance(w, str) else float(w)))
        return cls.from_entries(int(data["n"]), entries)
