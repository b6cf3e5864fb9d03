"""Deterministic nonadaptive (2h)-approximate metric 1-median selection."""

from .dp import (
    DpTables,
    MedianResult,
    dp_base,
    dp_step_f,
    dp_step_g,
    dp_tables,
    find_median,
    pseudo_cost,
    pseudo_distance,
    query_count,
    distinct_pair_count,
    query_trace,
)
from .errors import ParseError, UsageError
from .exact import ExactResult, VerifyReport, exact_median, pseudo_median_bruteforce, verify_ratio
from .fileio import read_instance, write_instance
from .instances import GenSpec, Rng64, generate
from .metric import (
    CycleMetric,
    DenseMetric,
    EuclideanMetric,
    LineMetric,
    MetricInstance,
    RecordingOracle,
    UniformMetric,
    ValidationReport,
    cost,
    distance,
    shortest_path_closure,
    validate_metric,
)
from .tary import TaryParams, from_digits, smallest_base, suffix_value, to_digits

__version__ = "0.1.0"
