"""Command-line front end and manifest runner.

Five commands: optimize, certify, construct, oracle, evaluate.  Every run
is driven by a flat manifest (JSON or TOML); command-line flags mirror the
manifest fields one-to-one and take precedence over a --manifest file.
Reports embed the resolved manifest, the build version, and the arithmetic
mode, and contain no timestamps, so identical manifests produce
byte-identical reports.

Exit codes: 0 success, 2 usage or invalid input, 3 resource limit,
4 envelope violation.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import __version__
from .bounds import (
    anchored_pair_cap,
    blowup_count_target,
    path_density_lower_bound,
    path_density_upper_bound,
    planar_path_count_cap,
    walk_degree_cap,
    walk_density_lower_bound,
    walk_to_path_factor,
)
from .constructions import blowup_cycle, blowup_gap_report, uniform_cycle_measure
from .density import PatternSpec, density
from .errors import (
    InvalidAnchorError,
    InvalidGraphError,
    InvalidMeasureError,
    InvalidPatternError,
    InvalidSpecError,
    InvalidVertexError,
    PathexError,
    ResourceLimitError,
    UsageError,
)
from .graphs import EdgeMeasure, write_graph6
from .optimize import OptimizeResult, SolverConfig, maximize
from .oracle import OracleQuery, count_copies, max_copies_planar

_USAGE_ERRORS = (
    UsageError,
    InvalidSpecError,
    InvalidPatternError,
    InvalidAnchorError,
    InvalidMeasureError,
    InvalidGraphError,
    InvalidVertexError,
)

_PATTERN_RE = re.compile(r"^(path|cycle|rho|walk|pair|anchored)(\d*)$")


# ---------------------------------------------------------------------------
# Manifest plumbing
# ---------------------------------------------------------------------------

def _load_manifest_file(path: str) -> dict:
    if path.endswith(".toml"):
        try:
            import tomllib as toml_reader  # py >= 3.11
        except ModuleNotFoundError:
            import tomli as toml_reader
        with open(path, "rb") as fh:
            data = toml_reader.load(fh)
    else:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    if not isinstance(data, dict):
        raise UsageError(f"manifest {path} must hold a single object")
    return data


def _parse_pattern(manifest: dict, n: int) -> PatternSpec:
    """Translate manifest pattern fields into a PatternSpec.

    Accepts compact tokens (path3, rho3) or a bare family name plus the
    m/s/t/a/b fields.  Anchored pairs default to anchors a=n, b=1.
    """
    token = str(manifest.get("pattern", "") or "")
    match = _PATTERN_RE.match(token)
    if not match:
        raise UsageError(f"unknown pattern token {token!r}")
    family, digits = match.groups()
    m = int(digits) if digits else manifest.get("m")
    if family in ("pair", "anchored"):
        s = manifest.get("s")
        t = manifest.get("t")
        if s is None or t is None:
            raise UsageError("anchored pattern needs --s and --t")
        a = manifest.get("a")
        b = manifest.get("b")
        a = n if a is None else int(a)
        b = 1 if b is None else int(b)
        return PatternSpec.anchored_pair(int(s), int(t), a, b)
    if m is None:
        raise UsageError(f"pattern {family!r} needs --m")
    m = int(m)
    if family == "path":
        return PatternSpec.path(m)
    if family == "cycle":
        return PatternSpec.cycle(m)
    return PatternSpec.walk(m)


def _require_n(manifest: dict) -> int:
    n = manifest.get("n")
    if n is None:
        raise UsageError("missing required field n")
    return int(n)


def _solver_config(manifest: dict, n: int) -> SolverConfig:
    fields = {
        "mass": float(manifest.get("mass", 1.0)),
        "restarts": int(manifest.get("restarts", 8)),
        "max_iterations": int(manifest.get("max_iterations", 500)),
        "step_rule": str(manifest.get("step_rule", "line-search")),
        "step_size": float(manifest.get("step_size", 0.05)),
        "convergence_tol": float(manifest.get("convergence_tol", 1e-10)),
        "seed": int(manifest.get("seed", 0)),
        "method": str(manifest.get("method", "pga")),
    }
    return SolverConfig(n=n, **fields)


def _kkt_payload(result: OptimizeResult) -> dict:
    kkt = result.kkt
    return {
        "lambda": kkt.lambda_estimate,
        "max_violation": kkt.max_violation,
        "max_inactive_excess": kkt.max_inactive_excess,
        "support_size": kkt.support_size,
        "tol": kkt.tol,
        "certified": kkt.certified,
    }


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _cmd_optimize(manifest: dict) -> tuple[int, dict]:
    n = _require_n(manifest)
    pattern = _parse_pattern(manifest, n)
    config = _solver_config(manifest, n)
    result = maximize(pattern, config)
    report = {
        "command": "optimize",
        "pattern": pattern.label(),
        "n": n,
        "value": result.value,
        "converged": result.converged,
        "restart_index": result.restart_index,
        "iterations_used": result.iterations_used,
        "kkt": _kkt_payload(result),
        "measure": result.measure.to_json_dict(exact=False),
        "trace": list(result.trace),
        "arithmetic": "float64",
    }
    return 0, report


def _certify_rows(manifest: dict) -> list[dict]:
    n = int(manifest.get("n", 6))
    eps = float(manifest.get("eps", 1e-6))
    restarts = int(manifest.get("restarts", 6))
    seed = int(manifest.get("seed", 0))

    def solve(pattern: PatternSpec) -> OptimizeResult:
        return maximize(pattern, SolverConfig(n=n, restarts=restarts, seed=seed))

    rows = []

    def row(name: str, observed: float, bound: float, ok: bool) -> None:
        rows.append(
            {"name": name, "observed": observed, "bound": bound, "ok": bool(ok)}
        )

    path_values: dict[int, float] = {}
    for m in (2, 3, 4):
        value = solve(PatternSpec.path(m)).value
        path_values[m] = value
        if m >= 3:
            low = float(path_density_lower_bound(m)) - 1e-4
            high = float(path_density_upper_bound(m)) + eps
            row(f"path({m}) value >= uniform-cycle value", value, low, value >= low)
            row(f"path({m}) value <= analytic cap", value, high, value <= high)

    for m in (2, 3):
        cap = float(anchored_pair_cap(m)) + eps
        for ell in range(m + 1):
            value = solve(PatternSpec.anchored_pair(ell, m - ell, n, 1)).value
            row(f"pair({ell},{m - ell}) value <= length-{m} cap", value, cap,
                value <= cap)

    for m in (2, 3):
        res = solve(PatternSpec.walk(m))
        low = float(walk_density_lower_bound(m)) - 1e-4
        row(f"walk({m}) value >= known lower bound", res.value, low,
            res.value >= low)
        cap = float(walk_to_path_factor(m)) * path_values[m] + eps
        row(f"walk({m}) value <= path transfer cap", res.value, cap,
            res.value <= cap)
        degree_cap = float(walk_degree_cap(m)) + eps
        worst = max(float(d) for d in res.measure.weighted_degrees().values())
        row(f"walk({m}) max weighted degree <= cap", worst, degree_cap,
            worst <= degree_cap)
        if m == 3:
            peak = 8.0 / 27.0
            row("walk(3) value within known peak window", res.value,
                peak + 1e-6, peak - 1e-3 <= res.value <= peak + 1e-6)

    for bn in (6, 8, 10):
        graph = blowup_cycle(2, bn)
        count = count_copies(graph, PatternSpec.path(5))
        cap = float(planar_path_count_cap(2, bn)) + eps
        row(f"blow-up(2,{bn}) path(5) count <= planar cap", float(count), cap,
            count <= cap)
    return rows


def _cmd_certify(manifest: dict) -> tuple[int, dict]:
    rows = _certify_rows(manifest)
    ok = all(r["ok"] for r in rows)
    report = {
        "command": "certify",
        "rows": rows,
        "all_ok": ok,
        "arithmetic": "float64",
    }
    return (0 if ok else 4), report


def _cmd_construct(manifest: dict) -> tuple[int, dict]:
    m = int(manifest.get("m", 2))
    raw = manifest.get("n_list")
    if raw is None:
        n_values = [2 * m, 3 * m, 4 * m]
    elif isinstance(raw, str):
        n_values = [int(p) for p in raw.split(",") if p.strip()]
    else:
        n_values = [int(p) for p in raw]
    rows = []
    for gap in blowup_gap_report(m, n_values):
        rows.append(
            {
                "m": gap.m,
                "n": gap.n,
                "count": gap.count,
                "target": str(gap.target),
                "ratio": gap.ratio,
                "graph6": write_graph6(blowup_cycle(gap.m, gap.n)),
            }
        )
    report = {"command": "construct", "rows": rows, "arithmetic": "integer"}
    return 0, report


def _cmd_oracle(manifest: dict) -> tuple[int, dict]:
    if "queries" in manifest:
        entries = manifest["queries"]
    else:
        entries = [manifest]
    results = []
    for entry in entries:
        n = _require_n(entry)
        pattern = _parse_pattern(entry, n)
        query = OracleQuery(
            n=n,
            pattern=pattern,
            mode=str(entry.get("mode", "auto")),
            cap=int(entry.get("cap", 8)),
            witness_cap=int(entry.get("witness_cap", 10)),
        )
        res = max_copies_planar(query)
        results.append(
            {
                "n": n,
                "pattern": pattern.label(),
                "max_count": res.max_count,
                "witnesses": list(res.witnesses),
                "graphs_examined": res.graphs_examined,
                "mode": res.mode,
            }
        )
    report = {
        "command": "oracle",
        "results": results,
        "arithmetic": "integer",
    }
    if len(results) == 1:
        report.update(results[0])
    return 0, report


def _cmd_evaluate(manifest: dict) -> tuple[int, dict]:
    n = _require_n(manifest)
    pattern = _parse_pattern(manifest, n)
    source = str(manifest.get("measure", "uniform-cycle"))
    if source == "uniform-cycle":
        m = manifest.get("m")
        if m is None and pattern.kind != "anchored":
            m = pattern.m
        if m is None:
            raise UsageError("uniform-cycle measure needs --m")
        measure = uniform_cycle_measure(int(m), n)
    else:
        data = _load_manifest_file(source)
        measure = EdgeMeasure.from_json_dict(data)
        if measure.n != n:
            raise UsageError(
                f"measure file is on n={measure.n}, manifest says n={n}"
            )
    value = density(measure, pattern)
    exact = measure.is_rational
    report = {
        "command": "evaluate",
        "pattern": pattern.label(),
        "n": n,
        "value": str(Fraction(value)) if exact else float(value),
        "value_float": float(value),
        "arithmetic": "rational" if exact else "float64",
    }
    return 0, report


_COMMANDS = {
    "optimize": _cmd_optimize,
    "certify": _cmd_certify,
    "construct": _cmd_construct,
    "oracle": _cmd_oracle,
    "evaluate": _cmd_evaluate,
}


def run(manifest: dict) -> tuple[int, dict]:
    """Execute a manifest; returns (exit code, report dict)."""
    command = manifest.get("command")
    handler = _COMMANDS.get(str(command))
    if handler is None:
        raise UsageError(f"unknown command {command!r}")
    code, report = handler(manifest)
    # the output destination does not affect run semantics; leaving it out
    # keeps reports byte-identical wherever they are written
    embedded = {
        k: v for k, v in manifest.items() if v is not None and k != "output"
    }
    report["manifest"] = embedded
    report["version"] = __version__
    return code, report


# ---------------------------------------------------------------------------
# Output formatting
# ---------------------------------------------------------------------------

def _to_csv(report: dict) -> str:
    rows = report.get("rows")
    if rows is None:
        raise UsageError("csv format is only available for tabular reports")
    header = list(rows[0].keys()) if rows else []
    lines = [",".join(header)]
    for r in rows:
        lines.append(",".join(str(r[k]) for k in header))
    return "\n".join(lines) + "\n"


def _emit(report: dict, manifest: dict) -> None:
    fmt = str(manifest.get("format", "json"))
    if fmt == "csv":
        text = _to_csv(report)
    elif fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        raise UsageError(f"unknown output format {fmt!r}")
    output = manifest.get("output")
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathex",
        description="Density workbench: optimize, certify, construct, "
        "oracle, evaluate",
    )
    sub = parser.add_subparsers(dest="command")

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--manifest", help="JSON/TOML manifest file")
        p.add_argument("--output", help="report file (default: stdout)")
        p.add_argument("--format", choices=("json", "csv"))

    p = sub.add_parser("optimize", help="maximize a density objective")
    common(p)
    p.add_argument("--pattern")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--mass", type=float)
    p.add_argument("--restarts", type=int)
    p.add_argument("--max-iterations", dest="max_iterations", type=int)
    p.add_argument("--step-rule", dest="step_rule", choices=("line-search", "fixed"))
    p.add_argument("--step-size", dest="step_size", type=float)
    p.add_argument("--convergence-tol", dest="convergence_tol", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--method", choices=("pga", "frank-wolfe"))

    p = sub.add_parser("certify", help="run the bound-envelope suite")
    common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--restarts", type=int)
    p.add_argument("--seed", type=int)

    p = sub.add_parser("construct", help="blow-up graphs and gap tables")
    common(p)
    p.add_argument("--m", type=int)
    p.add_argument("--n-list", dest="n_list")

    p = sub.add_parser("oracle", help="exact planar maximum copy counts")
    common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--pattern")
    p.add_argument("--m", type=int)
    p.add_argument("--mode", choices=("auto", "all-graphs", "maximal-planar"))
    p.add_argument("--cap", type=int)
    p.add_argument("--witness-cap", dest="witness_cap", type=int)

    p = sub.add_parser("evaluate", help="evaluate a density on a measure")
    common(p)
    p.add_argument("--measure", help="uniform-cycle or a measure JSON file")
    p.add_argument("--pattern")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help(sys.stderr)
        return 2
    flags = {k: v for k, v in vars(args).items() if v is not None}
    manifest_path = flags.pop("manifest", None)
    manifest: dict = {}
    try:
        if manifest_path:
            manifest.update(_load_manifest_file(manifest_path))
        manifest.update(flags)  # explicit flags win over the file
        code, report = run(manifest)
        _emit(report, manifest)
        return code
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except _USAGE_ERRORS as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except PathexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
