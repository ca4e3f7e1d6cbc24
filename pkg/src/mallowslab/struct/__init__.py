"""Interval statistics, induced digraphs, arithmetic encodings and sentence builders."""

from .arith import (
    ArithGraphs, arith_check, arithmetic_graphs, even_size_graph_check, even_size_oracle,
    matching_check,
)
from .stats import (
    induced_edge, induced_graph, j1, k1, minimal_intervals, s_set, w_count, w_set, xy_pair,
)
from .types import (
    EMPTY, DirectedGraph, Interval, IntervalSeq, format_interval_seq, parse_interval,
    parse_interval_seq,
)

__all__ = [
    "ArithGraphs", "arith_check", "arithmetic_graphs", "even_size_graph_check",
    "even_size_oracle", "matching_check", "induced_edge", "induced_graph", "j1", "k1",
    "minimal_intervals", "s_set", "w_count", "w_set", "xy_pair", "EMPTY", "DirectedGraph",
    "Interval", "IntervalSeq", "format_interval_seq", "parse_interval", "parse_interval_seq",
]
