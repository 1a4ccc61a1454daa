"""Negligible-effect analysis of two-group summary statistics:
Bayesian credible intervals of the relative difference in means,
the Ls%/Ms% statistics, threshold tests, and contra plots."""

from .effectsize import (
    EffectSizeSummary,
    ThresholdDecision,
    credible_interval_signed,
    decide,
    least_percent,
    most_percent,
    summarize_study,
    test_meaningful,
    test_negligible,
)
from .ingest import StudySummary, load_studies, load_studies_file, parse_study_table, validate_study
from .plotting import ContraPlotSpec, axis_transform, render_contra_plot, sort_studies
from .posterior import PosteriorDraws, draw_posterior, relative_difference_point

__version__ = "0.1.0"

__all__ = [
    "ContraPlotSpec",
    "EffectSizeSummary",
    "PosteriorDraws",
    "StudySummary",
    "ThresholdDecision",
    "axis_transform",
    "credible_interval_signed",
    "decide",
    "draw_posterior",
    "least_percent",
    "load_studies",
    "load_studies_file",
    "most_percent",
    "parse_study_table",
    "relative_difference_point",
    "render_contra_plot",
    "sort_studies",
    "summarize_study",
    "test_meaningful",
    "test_negligible",
    "validate_study",
]
