"""Exact and Monte Carlo engines for limit laws of Mallows permutations."""

from .chain import (
    VERIFY_UP_TO, ChainState, ChainTrace, ChainVerificationError, chain_trace, class_occupancy,
    first_regeneration_times, occupancy_tv, tail_pattern,
)
from .cycles import POISSON_CAP, CycleDistance, cycle_count_matrix, poisson_cycle_distance, poisson_marginals
from .exact import (
    ENUMERATION_BUDGET, BudgetError, exact_sat_prob, inversion_table, perm_table, pmf_table,
    pushforward, tv_exact_mallows, tv_tgeo_uniform,
)
from .montecarlo import (
    BLOCK_SIZE, DisplacementCheck, ExperimentConfig, QSchedule, SatEstimate,
    displacement_bound_check, estimate_sat_prob,
)
from .records import FIELDS, Record, format_records, write_records

__all__ = [
    "VERIFY_UP_TO", "ChainState", "ChainTrace", "ChainVerificationError", "chain_trace",
    "class_occupancy", "first_regeneration_times", "occupancy_tv", "tail_pattern",
    "POISSON_CAP", "CycleDistance", "cycle_count_matrix", "poisson_cycle_distance",
    "poisson_marginals", "ENUMERATION_BUDGET", "BudgetError", "exact_sat_prob",
    "inversion_table", "perm_table", "pmf_table", "pushforward", "tv_exact_mallows",
    "tv_tgeo_uniform", "BLOCK_SIZE", "DisplacementCheck", "ExperimentConfig", "QSchedule",
    "SatEstimate", "displacement_bound_check", "estimate_sat_prob", "FIELDS", "Record",
    "format_records", "write_records",
]
