"""Extremal lower-bound constructions and their reference measures.

The cycle blow-up keeps m hub vertices of a 2m-cycle and replaces the
alternating vertices with independent sets, every member of a set joined to
the same two consecutive hubs.  It is planar by construction and its
(2m+1)-vertex path count grows like 4 m^-m n^(m+1); the gap report tracks
how fast the exact counts approach that target.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .bounds import blowup_count_target
from .density import PatternSpec
from .errors import InvalidSpecError
from .graphs import EdgeMeasure, SimpleGraph


@dataclass(frozen=True)
class BlowupSpec:
    """Shape of a cycle blow-up instance: hub count m and class sizes."""

    m: int
    n: int
    class_sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.m < 2:
            raise InvalidSpecError(f"blow-up needs m >= 2, got {self.m}")
        if self.n < 2 * self.m:
            raise InvalidSpecError(
                f"blow-up needs n >= 2m = {2 * self.m}, got n = {self.n}"
            )
        if len(self.class_sizes) != self.m:
            raise InvalidSpecError("need one class per hub pair")
        if sum(self.class_sizes) != self.n - self.m:
            raise InvalidSpecError("class sizes must sum to n - m")
        if max(self.class_sizes) - min(self.class_sizes) > 1:
            raise InvalidSpecError("class sizes must be balanced to within 1")

    @classmethod
    def plan(cls, m: int, n: int) -> "BlowupSpec":
        """Balanced split of the n - m class vertices over the m classes."""
        if m < 2:
            raise InvalidSpecError(f"blow-up needs m >= 2, got {m}")
        if n < 2 * m:
            raise InvalidSpecError(f"blow-up needs n >= 2m = {2 * m}, got n = {n}")
        base, extra = divmod(n - m, m)
        sizes = tuple(base + 1 if i < extra else base for i in range(m))
        return cls(m, n, sizes)


def blowup_cycle(m: int, n: int) -> SimpleGraph:
    """The blow-up graph: hubs 1..m, class i joined to hubs i and i+1 (cyclically).

    For m = 2 both classes attach to both hubs, so the graph is K_{2,n-2}.
    """
    spec = BlowupSpec.plan(m, n)
    edges = []
    next_label = m + 1
    for i in range(m):
        hub_a = i + 1
        hub_b = (i + 1) % m + 1
        for _ in range(spec.class_sizes[i]):
            v = next_label
            next_label += 1
            edges.append((hub_a, v))
            if hub_b != hub_a:
                edges.append((hub_b, v))
    return SimpleGraph.from_edges(n, edges)


def uniform_cycle_measure(m: int, n: int) -> EdgeMeasure:
    """Probability measure putting 1/m on each edge of the cycle 1-2-...-m-1."""
    if m < 3:
        raise InvalidSpecError(f"cycle measure needs m >= 3, got {m}")
    if m > n:
        raise InvalidSpecError(f"cycle measure needs m <= n, got m={m}, n={n}")
    share = Fraction(1, m)
    edges = [(i, i + 1) for i in range(1, m)] + [(1, m)]
    return EdgeMeasure(n, {tuple(sorted(e)): share for e in edges})


@dataclass(frozen=True)
class GapRow:
    """One blow-up instance versus its asymptotic path-count target."""

    m: int
    n: int
    count: int
    target: Fraction
    ratio: float


def blowup_gap_report(m: int, n_values: Sequence[int] | Iterable[int]) -> list[GapRow]:
    """Exact (2m+1)-vertex path counts on blow-ups against 4 m^-m n^(m+1)."""
    from .oracle import count_copies

    rows = []
    for n in n_values:
        graph = blowup_cycle(m, n)
        count = count_copies(graph, PatternSpec.path(2 * m + 1))
        target = blowup_count_target(m, n)
        rows.append(
            GapRow(m=m, n=n, count=count, target=target, ratio=float(count / target))
        )
    return rows
