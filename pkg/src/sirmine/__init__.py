"""Optimal sub-interval relationships between pairs of time series."""

from .core import Interval, IntervalBoundsError, MinerConfig, SirError, SirResult, TimeSeries, validate_sir
from .dp import SolveStats, solve_dp, solve_exhaustive
from .measures import MeasureEngine, build_engine, is_strong, rel
from .pdp import Partitioning, find_partition_points, scan_left_weakness, scan_right_weakness, solve_pdp
from .significance import SignificanceReport, random_series_with_correlation, significance_test

__all__ = [
    "Interval",
    "IntervalBoundsError",
    "MeasureEngine",
    "MinerConfig",
    "Partitioning",
    "SignificanceReport",
    "SirError",
    "SirResult",
    "SolveStats",
    "TimeSeries",
    "build_engine",
    "find_partition_points",
    "is_strong",
    "random_series_with_correlation",
    "rel",
    "scan_left_weakness",
    "scan_right_weakness",
    "significance_test",
    "solve_dp",
    "solve_exhaustive",
    "solve_pdp",
    "validate_sir",
]
