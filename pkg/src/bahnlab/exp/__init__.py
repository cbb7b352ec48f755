"""Instance generators, experiment sweeps, verification suite and CLI."""

from .config import ExperimentConfig, config_from_dict, load_config
from .generators import ProfileParams, generate_instance
from .sweep import ResultRow, RunRecord, SweepResult, rows_to_csv, run_experiment, run_sweep, write_csv
from .verify import VerifyReport, random_case, verify_suite

__all__ = [
    "ExperimentConfig",
    "ProfileParams",
    "ResultRow",
    "RunRecord",
    "SweepResult",
    "VerifyReport",
    "config_from_dict",
    "generate_instance",
    "load_config",
    "random_case",
    "rows_to_csv",
    "run_experiment",
    "run_sweep",
    "verify_suite",
    "write_csv",
]
