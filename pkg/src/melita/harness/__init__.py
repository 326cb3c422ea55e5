"""Experiment harness: config loading, batch runs, and analysis commands."""
from __future__ import annotations

from .config import ConfigError, ExperimentConfig, Label, load_config
from .experiment import (
    CompareReport,
    CompareRow,
    analyze_diversity,
    compare,
    compare_summary,
    compare_table,
    medoid_exemplars,
    run_experiment,
)

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "Label",
    "load_config",
    "run_experiment",
    "compare",
    "CompareReport",
    "CompareRow",
    "compare_table",
    "compare_summary",
    "analyze_diversity",
    "medoid_exemplars",
]
