"""Density functionals on edge measures and their exact gradients.

Four objectives share one evaluation style:

* path density: sum over unlabeled k-vertex path copies of the product of
  edge weights;
* cycle density: same over unlabeled cycle copies;
* anchored pair density: same over vertex-disjoint path pairs pinned at two
  anchor vertices;
* walk density: sum over ordered tuples of distinct vertices of the edge
  products with weighted-degree factors at both ends.

Evaluation enumerates copies restricted to the support of the measure, so
sparse measures (the interesting ones) are cheap.  All functions accept
Fraction weights and then return exact rationals; float weights return
floats.

The walk objective is a polynomial of degree m + 1 in the edge weights and
is not multilinear: a pendant degree factor can reuse an edge of the path,
which is why its Euler sum is (m + 1) times the value rather than
(m - 1) times.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InvalidAnchorError,
    InvalidPatternError,
    InvalidVertexError,
    NonProbabilityMeasureError,
)
from .graphs import (
    Edge,
    EdgeMeasure,
    all_edges,
    enumerate_anchored_pair_copies,
    enumerate_cycle_copies,
    enumerate_path_copies,
    normalize_edge,
)

MASS_TOL = 1e-9  # float-mode slack for the probability check


# ---------------------------------------------------------------------------
# Pattern descriptions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PatternSpec:
    """One of the four supported objectives.

    kind     parameters            objective
    ----     ----------            ---------
    path     m (vertices)          copy density of the m-vertex path
    cycle    m (vertices)          copy density of the m-cycle
    anchored s, t, a, b            disjoint pair: s edges from a, t from b
    walk     m (vertices)          degree-weighted ordered-tuple density
    """

    kind: str
    m: int = 0
    s: int = 0
    t: int = 0
    a: int = 0
    b: int = 0

    def __post_init__(self) -> None:
        if self.kind == "path":
            if self.m < 2:
                raise InvalidPatternError(f"path pattern needs m >= 2, got {self.m}")
        elif self.kind == "cycle":
            if self.m < 3:
                raise InvalidPatternError(f"cycle pattern needs m >= 3, got {self.m}")
        elif self.kind == "walk":
            if self.m < 2:
                raise InvalidPatternError(f"walk pattern needs m >= 2, got {self.m}")
        elif self.kind == "anchored":
            if self.s < 0 or self.t < 0:
                raise InvalidPatternError(
                    f"anchored pattern needs s, t >= 0, got s={self.s}, t={self.t}"
                )
            if self.a == self.b:
                raise InvalidAnchorError(f"anchors must differ, got a = b = {self.a}")
            if self.a < 1 or self.b < 1:
                raise InvalidAnchorError(
                    f"anchors must be positive labels, got a={self.a}, b={self.b}"
                )
        else:
            raise InvalidPatternError(f"unknown pattern kind {self.kind!r}")

    # -- constructors --------------------------------------------------

    @classmethod
    def path(cls, m: int) -> "PatternSpec":
        return cls("path", m=m)

    @classmethod
    def cycle(cls, m: int) -> "PatternSpec":
        return cls("cycle", m=m)

    @classmethod
    def walk(cls, m: int) -> "PatternSpec":
        return cls("walk", m=m)

    @classmethod
    def anchored_pair(cls, s: int, t: int, a: int, b: int) -> "PatternSpec":
        return cls("anchored", s=s, t=t, a=a, b=b)

    # -- structure -----------------------------------------------------

    @property
    def is_multilinear(self) -> bool:
        return self.kind != "walk"

    @property
    def polynomial_degree(self) -> int:
        """Degree of the objective as a polynomial in the edge weights."""
        if self.kind == "path":
            return self.m - 1
        if self.kind == "cycle":
            return self.m
        if self.kind == "anchored":
            return self.s + self.t
        return self.m + 1  # walk: m - 1 path edges plus two degree factors

    @property
    def min_host_size(self) -> int:
        """Smallest n on which the pattern can have a positive value."""
        if self.kind == "anchored":
            return self.s + self.t + 2
        return self.m

    def label(self) -> str:
        if self.kind == "anchored":
            return f"anchored({self.s},{self.t};a={self.a},b={self.b})"
        return f"{self.kind}({self.m})"

    def validate_for_host(self, n: int) -> None:
        if self.kind == "anchored":
            for v in (self.a, self.b):
                if not (1 <= v <= n):
                    raise InvalidAnchorError(f"anchor {v} outside [1, {n}]")


@dataclass(frozen=True)
class GradientVector:
    """Partial derivatives of an objective, one entry per edge of K_n."""

    n: int
    partial: dict[Edge, object]

    def entry(self, u: int, v: int):
        return self.partial[normalize_edge(u, v)]

    def items(self) -> list[tuple[Edge, object]]:
        return sorted(self.partial.items())

    def to_vector(self) -> list[float]:
        return [float(self.partial[e]) for e in all_edges(self.n)]


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def weighted_degree(mu: EdgeMeasure, x: int):
    """Total weight incident to x; summing over all x gives twice the mass."""
    if not (1 <= x <= mu.n):
        raise InvalidVertexError(f"vertex {x} outside [1, {mu.n}]")
    total = 0
    for (u, v), w in mu.weights.items():
        if u == x or v == x:
            total += w
    return total


def _product(mu: EdgeMeasure, edges) -> object:
    out = 1
    for e in edges:
        out *= mu.weights[e]
    return out


def copy_density(mu: EdgeMeasure, pattern: PatternSpec):
    """Path or cycle density: sum of edge-weight products over copies."""
    if pattern.kind not in ("path", "cycle"):
        raise InvalidPatternError(f"copy_density takes path/cycle, got {pattern.kind}")
    support = mu.support_graph()
    total = 0
    if pattern.kind == "path":
        for copy in enumerate_path_copies(support, pattern.m):
            total += _product(mu, copy.edges)
    else:
        for copy in enumerate_cycle_copies(support, pattern.m):
            total += _product(mu, copy.edges)
    return total


def anchored_pair_density(mu: EdgeMeasure, s: int, t: int, a: int, b: int):
    """Weight of all disjoint path pairs: s edges from a, t edges from b.

    Equals 1 for s = t = 0 (the bare anchor pair is the unique copy, with
    empty product) whatever the measure.
    """
    pattern = PatternSpec.anchored_pair(s, t, a, b)
    pattern.validate_for_host(mu.n)
    support = mu.support_graph()
    total = 0
    for copy in enumerate_anchored_pair_copies(support, s, t, a, b):
        total += _product(mu, copy.edges)
    return total


def walk_polynomial(mu: EdgeMeasure, m: int):
    """Unguarded walk objective, defined for any nonnegative weights.

    Sum over ordered m-tuples of distinct vertices of
    degree(x_1) * product of path-edge weights * degree(x_m).  Each
    unlabeled path copy covers its two orientations, hence the factor 2.
    """
    if m < 2:
        raise InvalidPatternError(f"walk pattern needs m >= 2, got {m}")
    deg = mu.weighted_degrees()
    support = mu.support_graph()
    total = 0
    for copy in enumerate_path_copies(support, m):
        u, v = copy.endpoints
        total += deg[u] * _product(mu, copy.edges) * deg[v]
    return 2 * total


def walk_density(mu: EdgeMeasure, m: int):
    """Walk objective restricted to probability measures (mass 1)."""
    if not mu.is_probability(MASS_TOL):
        raise NonProbabilityMeasureError(
            f"walk density needs mass 1, got mass {mu.mass}"
        )
    return walk_polynomial(mu, m)


def density(mu: EdgeMeasure, pattern: PatternSpec):
    """Dispatch to the guarded objective named by the pattern."""
    if pattern.kind in ("path", "cycle"):
        return copy_density(mu, pattern)
    if pattern.kind == "anchored":
        return anchored_pair_density(mu, pattern.s, pattern.t, pattern.a, pattern.b)
    return walk_density(mu, pattern.m)


def polynomial_value(mu: EdgeMeasure, pattern: PatternSpec):
    """Same as density but with the walk mass guard dropped.

    This is the raw polynomial that gradients differentiate; finite
    differences step off the simplex, so they must evaluate this form.
    """
    if pattern.kind == "walk":
        return walk_polynomial(mu, pattern.m)
    return density(mu, pattern)


# ---------------------------------------------------------------------------
# Gradients
# ---------------------------------------------------------------------------

def _copies_through(graph, pattern: PatternSpec, e: Edge):
    """Copies of a multilinear pattern in ``graph`` that use edge e."""
    if pattern.kind == "path":
        stream = enumerate_path_copies(graph, pattern.m)
    elif pattern.kind == "cycle":
        stream = enumerate_cycle_copies(graph, pattern.m)
    else:
        stream = enumerate_anchored_pair_copies(
            graph, pattern.s, pattern.t, pattern.a, pattern.b
        )
    for copy in stream:
        if e in copy.edges:
            yield copy


def _multilinear_gradient(mu: EdgeMeasure, pattern: PatternSpec) -> GradientVector:
    # d(density)/d(e) = sum over copies through e of the product of the
    # other edge weights; copies through e live in support + e.
    support = mu.support_graph()
    partial: dict[Edge, object] = {}
    for e in all_edges(mu.n):
        host = support if e in support.edges else support.add_edge(*e)
        total = 0
        for copy in _copies_through(host, pattern, e):
            total += _product(mu, (f for f in copy.edges if f != e))
        partial[e] = total
    return GradientVector(mu.n, partial)


def _walk_gradient(mu: EdgeMeasure, m: int) -> GradientVector:
    # Three contributions per ordered tuple: the edge may sit on the path
    # (degree factors stay), or an endpoint of the edge may be a tuple end
    # (its degree factor differentiates to 1).  Factor 2 covers the two
    # orientations of each unlabeled path copy.
    deg = mu.weighted_degrees()
    support = mu.support_graph()

    end_coeff: dict[int, object] = {v: 0 for v in range(1, mu.n + 1)}
    for copy in enumerate_path_copies(support, m):
        u, v = copy.endpoints
        w = _product(mu, copy.edges)
        end_coeff[u] += w * deg[v]
        end_coeff[v] += w * deg[u]

    pattern = PatternSpec.path(m)
    partial: dict[Edge, object] = {}
    for e in all_edges(mu.n):
        u, v = e
        host = support if e in support.edges else support.add_edge(u, v)
        on_path = 0
        for copy in _copies_through(host, pattern, e):
            p, q = copy.endpoints
            on_path += deg[p] * deg[q] * _product(
                mu, (f for f in copy.edges if f != e)
            )
        partial[e] = 2 * (end_coeff[u] + end_coeff[v] + on_path)
    return GradientVector(mu.n, partial)


def gradient(mu: EdgeMeasure, pattern: PatternSpec) -> GradientVector:
    """Exact analytic partial derivatives at mu, one per edge of K_n."""
    pattern.validate_for_host(mu.n)
    if pattern.kind == "walk":
        return _walk_gradient(mu, pattern.m)
    return _multilinear_gradient(mu, pattern)
