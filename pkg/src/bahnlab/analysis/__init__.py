"""Ratio reports, bounds, lemma checks, pattern labels and tight instances."""

from .bounds import Bound, bound_for, cr_bound_pfsum, pfsum_robustness
from .lemmas import Violation, check_lemmas
from .patterns import ChainAnnotation, PatternLabel, chain_annotations, classify_patterns, describe
from .report import RatioReport, ratio_report
from .tight import TightInstance, TightInstanceSpec, TightRun, counterexample, pattern_bound, run_tight, tight_instance

__all__ = [
    "Bound",
    "ChainAnnotation",
    "PatternLabel",
    "RatioReport",
    "TightInstance",
    "TightInstanceSpec",
    "TightRun",
    "Violation",
    "bound_for",
    "chain_annotations",
    "check_lemmas",
    "classify_patterns",
    "counterexample",
    "cr_bound_pfsum",
    "describe",
    "pattern_bound",
    "pfsum_robustness",
    "ratio_report",
    "run_tight",
    "tight_instance",
]
