"""Closed-form reference values for envelope checks.

Each function returns the published bound or target that the optimizer and
oracle outputs are compared against.  Exact values come back as Fractions
so rational-mode comparisons stay exact; the analytic upper bound for path
density involves e^2 and is returned as a float.
"""

from __future__ import annotations

import math
from fractions import Fraction


def path_density_lower_bound(m: int) -> Fraction:
    """1 / m^(m-2): value of the uniform cycle measure, a feasible point."""
    return Fraction(1, m ** (m - 2))


def path_density_upper_bound(m: int) -> float:
    """2 e^2 / m^(m-2): proven cap on the m-vertex path density."""
    return 2.0 * math.e**2 / m ** (m - 2)


def anchored_pair_cap(m: int) -> Fraction:
    """1 / m^m: cap on the anchored pair density at total length m, mass 1."""
    return Fraction(1, m**m)


def walk_density_lower_bound(m: int) -> Fraction:
    """8 / m^m: walk density of the uniform cycle measure."""
    return Fraction(8, m**m)


def walk_to_path_factor(m: int) -> Fraction:
    """1152 / m^2: transfer constant from walk density to path density."""
    return Fraction(1152, m * m)


def walk_degree_cap(m: int) -> Fraction:
    """12 / (m-1): weighted-degree cap at walk-density maximizers."""
    return Fraction(12, m - 1)


def blowup_count_target(m: int, n: int) -> Fraction:
    """4 m^-m n^(m+1): asymptotic path count of the cycle blow-up."""
    return Fraction(4 * n ** (m + 1), m**m)


def planar_path_count_cap(m: int, n: int) -> Fraction:
    """10^4 m^-m n^(m+1): proven cap on planar (2m+1)-vertex path counts."""
    return Fraction(10**4 * n ** (m + 1), m**m)


def planar_two_edge_path_count(n: int) -> int:
    """n^2 + 3n - 16: known planar maximum for the 3-vertex path, n >= 4."""
    return n * n + 3 * n - 16


def planar_three_edge_path_count(n: int) -> int:
    """7n^2 - 32n + 27: known planar maximum for the 4-vertex path,
    valid for large n only; small-n disagreement is expected and reported."""
    return 7 * n * n - 32 * n + 27


def planar_five_cycle_count(n: int) -> int:
    """2n^2 - 10n + 12: known planar maximum for the 5-cycle, large n."""
    return 2 * n * n - 10 * n + 12
