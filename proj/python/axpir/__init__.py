"""Exact-arithmetic toolkit for grouped private retrieval schemes.

Thin wrapper over the compiled extension. All rates, bounds, and distances
come back as fractions.Fraction, never floats.
"""

from ._core import (
    achievable_rate,
    audit_correctness_sampled,
    audit_privacy,
    c_tpir,
    capacity,
    rate_upper_bound,
    region_vertices,
    scenario_to_json,
    simulate,
    solve_grouping,
    zeta,
)

__all__ = [
    "achievable_rate",
    "audit_correctness_sampled",
    "audit_privacy",
    "c_tpir",
    "capacity",
    "rate_upper_bound",
    "region_vertices",
    "scenario_to_json",
    "simulate",
    "solve_grouping",
    "zeta",
]
