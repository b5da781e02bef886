"""pathex: a workbench for extremal path-density functionals.

Evaluate path, cycle, anchored-pair, and walk densities of edge measures on
complete graphs; maximize them over fixed-mass simplices with stationarity
certificates; build cycle blow-up constructions; and ground-truth the
results against exhaustive planar copy-count oracles.
"""

__version__ = "0.1.0"

from .bounds import (
    anchored_pair_cap,
    blowup_count_target,
    path_density_lower_bound,
    path_density_upper_bound,
    planar_five_cycle_count,
    planar_path_count_cap,
    planar_three_edge_path_count,
    planar_two_edge_path_count,
    walk_degree_cap,
    walk_density_lower_bound,
    walk_to_path_factor,
)
from .constructions import (
    BlowupSpec,
    GapRow,
    blowup_cycle,
    blowup_gap_report,
    uniform_cycle_measure,
)
from .density import (
    GradientVector,
    PatternSpec,
    anchored_pair_density,
    copy_density,
    density,
    gradient,
    polynomial_value,
    walk_density,
    walk_polynomial,
    weighted_degree,
)
from .errors import (
    DegenerateMeasureError,
    InvalidAnchorError,
    InvalidGraphError,
    InvalidMeasureError,
    InvalidPatternError,
    InvalidSpecError,
    InvalidVertexError,
    NonProbabilityMeasureError,
    PathexError,
    ResourceLimitError,
    UsageError,
)
from .graphs import (
    AnchoredPairCopy,
    CycleCopy,
    EdgeMeasure,
    PathCopy,
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
from .optimize import (
    KKTReport,
    OptimizeResult,
    SolverConfig,
    WeightShiftResult,
    kkt_check,
    maximize,
    project_to_simplex,
    vertex_balance_residual,
    weight_shift_step,
)
from .oracle import (
    OracleQuery,
    OracleResult,
    count_copies,
    max_copies_planar,
    triangulations,
)

__all__ = [name for name in dir() if not name.startswith("_")]
