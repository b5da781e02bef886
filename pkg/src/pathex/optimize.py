"""Simplex-constrained maximization of density objectives.

The solver works on the full edge vector of K_n (lexicographic order) in
float mode.  A restart pipeline of projected gradient ascent (or
Frank-Wolfe), support cleanup, and a multiplicative growth-transform polish
drives iterates to first-order stationary points; stationarity is then
certified on the returned measure through the exact gradient code in the
density module, which is an independent evaluation route.

Also here: the KKT checker, the per-vertex balance identity for path
objectives, and the pivot weight-shift move that concentrates a vertex's
incident mass one donor edge at a time without ever decreasing the anchored
pair density.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .density import PatternSpec, copy_density, gradient, polynomial_value
from .errors import (
    DegenerateMeasureError,
    InvalidAnchorError,
    InvalidPatternError,
    InvalidSpecError,
    InvalidVertexError,
    NonProbabilityMeasureError,
    PathexError,
)
from .graphs import (
    Edge,
    EdgeMeasure,
    SimpleGraph,
    all_edges,
    enumerate_anchored_pair_copies,
    enumerate_cycle_copies,
    enumerate_path_copies,
    normalize_edge,
)

_SUPPORT_DROP = 1e-12  # entries below this fraction of the mass are noise
_POLISH_TARGET = 1e-12  # stationarity level the polish loop aims for


# ---------------------------------------------------------------------------
# Configuration and result types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SolverConfig:
    """Knobs for maximize; defaults suit hosts with n <= 8."""

    n: int
    mass: float = 1.0
    restarts: int = 8
    max_iterations: int = 500
    step_rule: str = "line-search"  # or "fixed"
    step_size: float = 0.05  # only used by the fixed rule
    convergence_tol: float = 1e-10
    seed: int = 0
    method: str = "pga"  # or "frank-wolfe"
    polish_iterations: int = 8000
    kkt_tol: float = 1e-7

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidSpecError(f"need n >= 2 for any edge, got {self.n}")
        if self.restarts < 1:
            raise InvalidSpecError(f"restarts must be >= 1, got {self.restarts}")
        if self.mass < 0:
            raise InvalidSpecError(f"mass must be >= 0, got {self.mass}")
        if self.convergence_tol <= 0:
            raise InvalidSpecError("convergence tolerance must be positive")
        if self.max_iterations < 1:
            raise InvalidSpecError("max_iterations must be >= 1")
        if self.step_rule not in ("line-search", "fixed"):
            raise InvalidSpecError(f"unknown step rule {self.step_rule!r}")
        if self.method not in ("pga", "frank-wolfe"):
            raise InvalidSpecError(f"unknown method {self.method!r}")


@dataclass(frozen=True)
class KKTReport:
    """First-order stationarity certificate on the probability simplex.

    At a maximizer every positive-weight edge has gradient equal to the
    multiplier and every zero-weight edge has gradient at most the
    multiplier.
    """

    lambda_estimate: float
    max_violation: float
    max_inactive_excess: float
    support_size: int
    tol: float
    certified: bool


@dataclass(frozen=True)
class OptimizeResult:
    measure: EdgeMeasure
    value: float
    kkt: KKTReport
    iterations_used: int
    restart_index: int
    converged: bool
    trace: tuple[dict, ...] = field(default=())


@dataclass(frozen=True)
class WeightShiftResult:
    """Outcome of one pivot mass-shift move.

    ``changed`` is False when the pivot had at most one positive incident
    edge (isolated pivot or already-concentrated fixed point).
    """

    measure: EdgeMeasure
    changed: bool
    pivot: int
    anchor: int
    receiver: int | None = None
    donor: int | None = None
    w_receiver: object = None
    w_donor: object = None
    gain: object = 0
    w_values: tuple = ()


# ---------------------------------------------------------------------------
# Simplex projection
# ---------------------------------------------------------------------------

def project_to_simplex(v: np.ndarray, mass: float) -> np.ndarray:
    """Euclidean projection onto {x >= 0, sum(x) = mass} (sort-based)."""
    if mass < 0:
        raise InvalidSpecError(f"mass must be >= 0, got {mass}")
    v = np.asarray(v, dtype=np.float64)
    if mass == 0.0:
        return np.zeros_like(v)
    u = np.sort(v)[::-1]
    cumulative = np.cumsum(u)
    ks = np.arange(1, v.size + 1)
    feasible = u - (cumulative - mass) / ks > 0
    k = int(ks[feasible][-1])
    theta = (cumulative[feasible][-1] - mass) / k
    return np.maximum(v - theta, 0.0)


# ---------------------------------------------------------------------------
# Vectorized objective kernels
# ---------------------------------------------------------------------------

class _Kernel:
    """Copy tables of a pattern on the complete host, for fast float math.

    Rows of ``idx`` hold the edge indices of one copy; leave-one-out
    products give the exact polynomial gradient.  The walk objective keeps
    the copy endpoints so the two weighted-degree factors can be applied
    and differentiated separately.
    """

    def __init__(self, pattern: PatternSpec, n: int) -> None:
        self.pattern = pattern
        self.n = n
        edges = all_edges(n)
        self.edge_count = len(edges)
        self.edge_index = {e: i for i, e in enumerate(edges)}

        incidence = np.zeros((n + 1, self.edge_count))
        for i, (u, v) in enumerate(edges):
            incidence[u, i] = 1.0
            incidence[v, i] = 1.0
        self.incidence = incidence

        host = SimpleGraph.complete(n)
        if pattern.kind == "walk":
            copies = list(enumerate_path_copies(host, pattern.m))
            width = pattern.m - 1
            ends = [c.endpoints for c in copies]
        elif pattern.kind == "path":
            copies = list(enumerate_path_copies(host, pattern.m))
            width = pattern.m - 1
            ends = None
        elif pattern.kind == "cycle":
            copies = list(enumerate_cycle_copies(host, pattern.m))
            width = pattern.m
            ends = None
        else:
            copies = list(
                enumerate_anchored_pair_copies(
                    host, pattern.s, pattern.t, pattern.a, pattern.b
                )
            )
            width = pattern.s + pattern.t
            ends = None

        self.idx = np.array(
            [[self.edge_index[e] for e in c.edges] for c in copies], dtype=np.intp
        ).reshape(len(copies), width)
        if ends is not None:
            e = np.array(ends, dtype=np.intp).reshape(len(copies), 2)
            self.end_u = e[:, 0]
            self.end_v = e[:, 1]

    def _leave_one_out(self, products: np.ndarray) -> np.ndarray:
        c, k = products.shape
        pre = np.ones_like(products)
        suf = np.ones_like(products)
        if k > 1:
            pre[:, 1:] = np.cumprod(products[:, :-1], axis=1)
            suf[:, :-1] = np.cumprod(products[:, :0:-1], axis=1)[:, ::-1]
        return pre * suf

    def value(self, x: np.ndarray) -> float:
        p = x[self.idx]
        full = p.prod(axis=1)
        if self.pattern.kind == "walk":
            deg = self.incidence @ x
            return float(2.0 * (full * deg[self.end_u] * deg[self.end_v]).sum())
        return float(full.sum())

    def value_and_gradient(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        p = x[self.idx]
        full = p.prod(axis=1)
        loo = self._leave_one_out(p)
        grad = np.zeros(self.edge_count)
        if self.pattern.kind == "walk":
            deg = self.incidence @ x
            du = deg[self.end_u]
            dv = deg[self.end_v]
            value = 2.0 * (full * du * dv).sum()
            np.add.at(grad, self.idx, loo * (du * dv)[:, None])
            vertex_coeff = np.zeros(self.n + 1)
            np.add.at(vertex_coeff, self.end_u, full * dv)
            np.add.at(vertex_coeff, self.end_v, full * du)
            grad += self.incidence.T @ vertex_coeff
            grad *= 2.0
            return float(value), grad
        np.add.at(grad, self.idx, loo)
        return float(full.sum()), grad

    def stationarity(self, x: np.ndarray, g: np.ndarray) -> float:
        """Max |gradient - multiplier| over the support of x."""
        on = x > 0
        total = float(x.sum())
        if not on.any() or total <= 0:
            return 0.0
        lam = float(x @ g) / total
        return float(np.abs(g[on] - lam).max())


# ---------------------------------------------------------------------------
# Restart schedule
# ---------------------------------------------------------------------------

def _vector_on_edges(n: int, edges: list[Edge], mass: float) -> np.ndarray:
    index = {e: i for i, e in enumerate(all_edges(n))}
    x = np.zeros(len(index))
    share = mass / len(edges)
    for e in edges:
        x[index[normalize_edge(*e)]] += share
    return x


def _cycle_edges(vertices: list[int]) -> list[Edge]:
    k = len(vertices)
    return [normalize_edge(vertices[i], vertices[(i + 1) % k]) for i in range(k)]


def _anchored_support(pattern: PatternSpec, n: int, order: list[int]) -> list[Edge]:
    """Disjoint path supports from both anchors through ``order`` vertices."""
    a, b, s, t = pattern.a, pattern.b, pattern.s, pattern.t
    pool = [v for v in order if v not in (a, b)]
    if s + t == 0 or len(pool) < s + t:
        return []
    first = [a] + pool[:s]
    second = [b] + pool[s : s + t]
    return [normalize_edge(u, v) for u, v in zip(first, first[1:])] + [
        normalize_edge(u, v) for u, v in zip(second, second[1:])
    ]


def _start_vector(
    r: int, pattern: PatternSpec, config: SolverConfig, rng: np.random.Generator
) -> tuple[str, np.ndarray]:
    """Deterministic restart schedule.

    0: uniform over all edges; 1: uniform on the conjectured support
    (cycle 1..m, or disjoint anchored paths, or a single edge); then a
    rotation of Dirichlet points, random Hamiltonian-cycle supports, and
    random pattern-sized supports.
    """
    n, mass = config.n, config.mass
    uniform = np.full(len(all_edges(n)), mass / len(all_edges(n)))
    if r == 0:
        return "uniform", uniform
    if r == 1:
        if pattern.kind == "anchored":
            edges = _anchored_support(pattern, n, list(range(1, n + 1)))
            if edges:
                return "anchored-paths", _vector_on_edges(n, edges, mass)
            return "uniform", uniform
        if pattern.m == 2:
            return "single-edge", _vector_on_edges(n, [(1, 2)], mass)
        if pattern.m <= n:
            edges = _cycle_edges(list(range(1, pattern.m + 1)))
            return "cycle-support", _vector_on_edges(n, edges, mass)
        return "uniform", uniform
    flavor = (r - 2) % 3
    if flavor == 0:
        x = rng.dirichlet(np.ones(len(uniform))) * mass
        return "dirichlet", x
    perm = [int(v) for v in rng.permutation(n) + 1]
    if flavor == 1 and n >= 3:
        return "random-hamiltonian", _vector_on_edges(n, _cycle_edges(perm), mass)
    # random support shaped like the pattern
    if pattern.kind == "anchored":
        edges = _anchored_support(pattern, n, perm)
        if edges:
            return "random-anchored", _vector_on_edges(n, edges, mass)
        return "dirichlet", rng.dirichlet(np.ones(len(uniform))) * mass
    if pattern.m == 2 or pattern.m > n:
        return "random-edge", _vector_on_edges(n, [(perm[0], perm[1])], mass)
    return "random-cycle", _vector_on_edges(n, _cycle_edges(perm[: pattern.m]), mass)


# ---------------------------------------------------------------------------
# Iteration engines
# ---------------------------------------------------------------------------

def _ascend_pga(kernel: _Kernel, x: np.ndarray, config: SolverConfig):
    """Monotone projected gradient ascent with backtracking line search."""
    mass = config.mass
    fx, g = kernel.value_and_gradient(x)
    best_x, best_f = x, fx
    step = 1.0
    stall = 0
    iterations = 0
    for it in range(config.max_iterations):
        iterations = it + 1
        if config.step_rule == "fixed":
            x = project_to_simplex(x + config.step_size * g, mass)
            fx, g = kernel.value_and_gradient(x)
            if fx > best_f:
                best_x, best_f = x, fx
                stall = 0
            else:
                stall += 1
                if stall >= 10:
                    break
            continue
        trial = step
        accepted = False
        for _ in range(60):
            y = project_to_simplex(x + trial * g, mass)
            fy = kernel.value(y)
            if fy > fx:
                accepted = True
                break
            trial *= 0.5
        if not accepted:
            break
        gain = fy - fx
        x, fx = y, fy
        g = kernel.value_and_gradient(x)[1]
        best_x, best_f = x, fx
        step = min(trial * 2.0, 1e6)
        if gain <= config.convergence_tol * max(1.0, abs(fx)):
            stall += 1
            if stall >= 5:
                break
        else:
            stall = 0
    return best_x, best_f, iterations


def _ascend_frank_wolfe(kernel: _Kernel, x: np.ndarray, config: SolverConfig):
    """Frank-Wolfe: the linear maximizer is a single-edge vertex of the
    simplex; backtracking on the segment keeps iterates monotone."""
    mass = config.mass
    fx, g = kernel.value_and_gradient(x)
    iterations = 0
    for it in range(config.max_iterations):
        iterations = it + 1
        j = int(np.argmax(g))
        direction = -x.copy()
        direction[j] += mass
        gamma = 1.0
        accepted = False
        for _ in range(60):
            y = x + gamma * direction
            fy = kernel.value(y)
            if fy > fx:
                accepted = True
                break
            gamma *= 0.5
        if not accepted:
            break
        gain = fy - fx
        x, fx = y, fy
        g = kernel.value_and_gradient(x)[1]
        if gain <= config.convergence_tol * max(1.0, abs(fx)):
            break
    return x, fx, iterations


def _cleanup(x: np.ndarray, mass: float) -> np.ndarray:
    """Drop noise-level entries and renormalize to the exact mass."""
    y = x.copy()
    y[y < _SUPPORT_DROP * mass] = 0.0
    total = y.sum()
    if total <= 0.0:
        return x
    return y * (mass / total)


def _polish(kernel: _Kernel, x: np.ndarray, config: SolverConfig, budget: int):
    """Multiplicative growth-transform iteration x <- x g / <x, g> * mass.

    For our objectives (homogeneous polynomials with nonnegative
    coefficients) this never decreases the value and fixes exactly the
    points whose support gradient is constant, so it sharpens stationarity
    far beyond what projected ascent reaches.  A guard keeps the iterate
    monotone under floating-point noise.
    """
    mass = config.mass
    fx, g = kernel.value_and_gradient(x)
    for it in range(budget):
        denom = float(x @ g)
        if denom <= 0.0 or not np.isfinite(denom):
            break
        y = x * g * (mass / denom)
        fy, gy = kernel.value_and_gradient(y)
        if fy < fx - 1e-15 * max(1.0, abs(fx)):
            break
        x, fx, g = y, fy, gy
        if it % 32 == 0 and kernel.stationarity(x, g) <= _POLISH_TARGET:
            break
    return x, fx, g


def _run_restart(kernel: _Kernel, start: np.ndarray, config: SolverConfig):
    if config.method == "frank-wolfe":
        x, fx, iterations = _ascend_frank_wolfe(kernel, start, config)
    else:
        x, fx, iterations = _ascend_pga(kernel, start, config)
    x = _cleanup(x, config.mass)
    x, fx, g = _polish(kernel, x, config, config.polish_iterations)
    x = _cleanup(x, config.mass)
    x, fx, g = _polish(kernel, x, config, config.polish_iterations // 2)
    violation = kernel.stationarity(x, g)
    return x, fx, iterations, violation


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

def _worker_count() -> int:
    raw = os.environ.get("PATHEX_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def maximize(pattern: PatternSpec, config: SolverConfig) -> OptimizeResult:
    """Best measure over all restarts; the value is recomputed through the
    density module and must agree with the kernel to 1e-10 relative."""
    pattern.validate_for_host(config.n)
    kernel = _Kernel(pattern, config.n)

    if config.mass == 0.0:
        measure = EdgeMeasure.zero(config.n)
        value = float(polynomial_value(measure, pattern))
        report = KKTReport(
            lambda_estimate=0.0,
            max_violation=0.0,
            max_inactive_excess=0.0,
            support_size=0,
            tol=config.kkt_tol,
            certified=True,
        )
        return OptimizeResult(
            measure=measure,
            value=value,
            kkt=report,
            iterations_used=0,
            restart_index=0,
            converged=True,
            trace=(),
        )

    rng = np.random.default_rng(config.seed)
    starts = [
        _start_vector(r, pattern, config, rng) for r in range(config.restarts)
    ]

    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(
                pool.map(lambda sv: _run_restart(kernel, sv[1], config), starts)
            )
    else:
        outcomes = [_run_restart(kernel, vec, config) for _, vec in starts]

    best = None
    trace = []
    for r, ((label, _), (x, fx, iterations, violation)) in enumerate(
        zip(starts, outcomes)
    ):
        trace.append(
            {
                "restart": r,
                "start": label,
                "value": float(fx),
                "iterations": int(iterations),
                "stationarity": float(violation),
            }
        )
        if best is None or fx > best[1]:
            best = (r, fx, x, iterations)

    r_best, _, x_best, iters_best = best
    measure = EdgeMeasure.from_vector(config.n, x_best)
    slow_value = float(polynomial_value(measure, pattern))
    fast_value = kernel.value(x_best)
    scale = max(1.0, abs(slow_value))
    if abs(slow_value - fast_value) > 1e-10 * scale:
        raise PathexError(
            f"evaluation routes disagree: {slow_value!r} vs {fast_value!r}"
        )

    report = kkt_check(measure, pattern, config.kkt_tol)
    return OptimizeResult(
        measure=measure,
        value=slow_value,
        kkt=report,
        iterations_used=iters_best,
        restart_index=r_best,
        converged=report.certified,
        trace=tuple(trace),
    )


def kkt_check(mu: EdgeMeasure, pattern: PatternSpec, tol: float = 1e-7) -> KKTReport:
    """Certificate at mu: multiplier = support-weighted mean gradient,
    violations over support, excess over the inactive edges."""
    pattern.validate_for_host(mu.n)
    if mu.support_size == 0:
        raise DegenerateMeasureError("measure has empty support")
    grad = gradient(mu, pattern)
    mass = mu.mass
    lam = sum(w * grad.partial[e] for e, w in mu.weights.items()) / mass
    violation = max(abs(grad.partial[e] - lam) for e in mu.weights)
    inactive = [e for e in all_edges(mu.n) if e not in mu.weights]
    if inactive:
        excess = max(grad.partial[e] - lam for e in inactive)
    else:
        excess = 0.0
    lam_f = float(lam)
    violation_f = float(violation)
    excess_f = float(excess)
    return KKTReport(
        lambda_estimate=lam_f,
        max_violation=violation_f,
        max_inactive_excess=excess_f,
        support_size=mu.support_size,
        tol=tol,
        certified=violation_f <= tol and excess_f <= tol,
    )


def vertex_balance_residual(mu: EdgeMeasure, m: int) -> dict[int, object]:
    """Per-vertex gap in the path-density balance identity.

    For every vertex x of a probability measure at a stationary point,
    weighted-degree(x) * (m-1) * path-density equals the degree-weighted
    mass of the path copies through x; the residual is left minus right.
    """
    if not mu.is_probability():
        raise NonProbabilityMeasureError(
            f"balance residual needs mass 1, got {mu.mass}"
        )
    if m < 2:
        raise InvalidPatternError(f"path pattern needs m >= 2, got {m}")
    beta = copy_density(mu, PatternSpec.path(m))
    support = mu.support_graph()
    through: dict[int, object] = {x: 0 for x in range(1, mu.n + 1)}
    for copy in enumerate_path_copies(support, m):
        weight = 1
        for e in copy.edges:
            weight *= mu.weights[e]
        vs = copy.vertices
        through[vs[0]] += weight
        through[vs[-1]] += weight
        for x in vs[1:-1]:
            through[x] += 2 * weight
    degrees = mu.weighted_degrees()
    return {
        x: degrees[x] * (m - 1) * beta - through[x] for x in range(1, mu.n + 1)
    }


def weight_shift_step(
    mu: EdgeMeasure, s: int, t: int, pivot: int, anchor: int = 1
) -> WeightShiftResult:
    """Move one donor edge's mass at the pivot onto the pivot's best edge.

    The anchored pair objective (s edges from the pivot, t from the anchor)
    is linear in the pivot-incident weights: value = sum_k mu(pivot,k) W_k,
    where W_k weighs the pivot-free continuations.  Concentrating mass on
    the largest W never decreases the value, and the gain is exactly
    mu(donor) * (W_receiver - W_donor).  Repeating the move leaves a single
    positive edge at the pivot.
    """
    if s < 1:
        raise InvalidPatternError(f"the pivot path needs s >= 1, got s={s}")
    if t < 0:
        raise InvalidPatternError(f"path lengths must be nonnegative, got t={t}")
    if not (1 <= pivot <= mu.n):
        raise InvalidVertexError(f"pivot {pivot} outside [1, {mu.n}]")
    if not (1 <= anchor <= mu.n):
        raise InvalidAnchorError(f"anchor {anchor} outside [1, {mu.n}]")
    if pivot == anchor:
        raise InvalidAnchorError(f"pivot and anchor must differ, got {pivot}")

    partners = sorted(
        (u if v == pivot else v)
        for (u, v) in mu.weights
        if pivot in (u, v)
    )
    if len(partners) < 2:
        return WeightShiftResult(measure=mu, changed=False, pivot=pivot, anchor=anchor)

    off_pivot = EdgeMeasure(
        mu.n, {e: w for e, w in mu.weights.items() if pivot not in e}
    )
    rest = off_pivot.support_graph()

    def continuation_weight(k: int):
        if k == anchor:
            return 0  # the anchor cannot start both paths
        total = 0
        for copy in enumerate_anchored_pair_copies(rest, s - 1, t, k, anchor):
            w = 1
            for e in copy.edges:
                w *= off_pivot.weights[e]
            total += w
        return total

    w_values = {k: continuation_weight(k) for k in partners}
    receiver = max(partners, key=lambda k: (w_values[k], -k))
    rest_partners = [k for k in partners if k != receiver]
    donor = min(rest_partners, key=lambda k: (w_values[k], k))

    moved = mu.weight(pivot, donor)
    shifted = mu.with_weight(
        pivot, receiver, mu.weight(pivot, receiver) + moved
    ).with_weight(pivot, donor, 0)
    gain = moved * (w_values[receiver] - w_values[donor])
    return WeightShiftResult(
        measure=shifted,
        changed=True,
        pivot=pivot,
        anchor=anchor,
        receiver=receiver,
        donor=donor,
        w_receiver=w_values[receiver],
        w_donor=w_values[donor],
        gain=gain,
        w_values=tuple(sorted(w_values.items())),
    )
