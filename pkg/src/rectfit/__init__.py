"""Optimal unimodal (rectangular) transforms of scores under linear losses."""

from .core import (
    FitConfig,
    FitReport,
    LabelLosses,
    OpCounter,
    RectFit,
    Sample,
    StepFit,
    apply_transform,
    evaluate_loss,
    losses_from_labels,
    make_samples,
    validate_fit,
)
from .linear import linear_fit, prefix_step_scan, suffix_step_scan
from .merge import SegmentSummary, empty_summary, fold, leaf_summary, merge
from .oracle import brute_force_fit, iterative_fit
from .streaming import StreamEngine

__all__ = [
    "FitConfig",
    "FitReport",
    "LabelLosses",
    "OpCounter",
    "RectFit",
    "Sample",
    "SegmentSummary",
    "StepFit",
    "StreamEngine",
    "apply_transform",
    "brute_force_fit",
    "empty_summary",
    "evaluate_loss",
    "fold",
    "iterative_fit",
    "leaf_summary",
    "linear_fit",
    "losses_from_labels",
    "make_samples",
    "merge",
    "prefix_step_scan",
    "suffix_step_scan",
    "validate_fit",
]
__version__ = "0.1.0"
