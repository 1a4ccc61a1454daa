"""Credible intervals and the Ls% / Ms% statistics, plus threshold tests.

All interval bounds use the nearest-rank order statistic: the p-quantile
of k sorted draws is the element at 1-based index ceil(k*p). Ms% is the
nearest-rank (1 - alpha) quantile of the absolute draws, equivalently
the smallest zero-centered bound containing at least (1 - alpha) of the
posterior mass. Both tests are strict inequalities, so a stored summary
can be re-tested against any threshold without resampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from .ingest import StudySummary
from .posterior import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    PosteriorDraws,
    draw_posterior,
    relative_difference_point,
)

#: Minimum expected number of draws in the thinner tail before a
#: PosteriorDraws-level interval is considered trustworthy.
MIN_TAIL_DRAWS = 10


@dataclass(frozen=True)
class EffectSizeSummary:
    """Per-study effect size: point estimate, signed credible interval,
    Ls%, Ms%, and the sampling parameters that produced them."""

    study_id: int
    point_estimate: float
    ci_lo: float
    ci_hi: float
    ls_pct: float
    ms_pct: float
    credible_level: float
    k: int
    seed: int

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ThresholdDecision:
    """Outcome of the negligible (and optionally meaningful) test for
    one study at given thresholds."""

    study_id: int
    negligible_threshold: float
    is_negligible: bool
    meaningful_threshold: float | None = None
    is_meaningful: bool | None = None


def nearest_rank_index(k: int, p: float) -> int:
    """1-based nearest-rank index ceil(k*p), clamped to [1, k].

    The small epsilon guards against k*p landing a hair above an exact
    integer in floating point (e.g. 6 * (2/3)).
    """
    return min(max(math.ceil(k * p - 1e-9), 1), k)


def signed_interval(draws: np.ndarray, alpha: float) -> tuple[float, float]:
    """Equal-tailed nearest-rank interval of signed draws at level 1 - alpha."""
    k = len(draws)
    if k == 0:
        raise ValueError("no draws")
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must be in (0,1)")
    s = np.sort(draws)
    lo = s[nearest_rank_index(k, alpha / 2.0) - 1]
    hi = s[nearest_rank_index(k, 1.0 - alpha / 2.0) - 1]
    return float(lo), float(hi)


def credible_interval_signed(d: PosteriorDraws, alpha: float) -> tuple[float, float]:
    """Signed equal-tailed credible interval of the relative difference
    in means; requires enough draws in the thinner tail."""
    if d.k * min(alpha / 2.0, 1.0 - alpha / 2.0) < MIN_TAIL_DRAWS:
        raise ValueError(
            f"too few samples (k={d.k}) for requested tail alpha={alpha}"
        )
    return signed_interval(d.r_dm_draws, alpha)


def most_percent_from_draws(draws: np.ndarray, alpha: float) -> float:
    """Ms% of raw draws: 100 x nearest-rank (1 - alpha) quantile of |draws|."""
    k = len(draws)
    if k == 0:
        raise ValueError("no draws")
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must be in (0,1)")
    a = np.sort(np.abs(draws))
    return 100.0 * float(a[nearest_rank_index(k, 1.0 - alpha) - 1])


def most_percent(d: PosteriorDraws, alpha: float) -> float:
    """Smallest zero-centered bound (in percent) containing at least
    1 - alpha of the posterior mass of the relative difference in means."""
    return most_percent_from_draws(d.r_dm_draws, alpha)


def least_percent_from_interval(lo: float, hi: float) -> float:
    """Ls% from a signed interval: 0 if it spans zero, else 100 x the
    bound magnitude closest to zero."""
    if lo <= 0.0 <= hi:
        return 0.0
    return 100.0 * min(abs(lo), abs(hi))


def least_percent(d: PosteriorDraws, alpha: float) -> float:
    lo, hi = credible_interval_signed(d, alpha)
    return least_percent_from_interval(lo, hi)


def test_negligible(ms_pct: float, delta: float) -> bool:
    """True iff the zero-centered bound is strictly below threshold delta
    (delta as a fraction, e.g. 0.30 for 30%)."""
    if delta <= 0:
        raise ValueError("negligible threshold must be positive")
    return ms_pct / 100.0 < delta


def test_meaningful(ls_pct: float, delta_m: float) -> bool:
    """True iff the interval bound closest to zero strictly exceeds delta_m."""
    if delta_m <= 0:
        raise ValueError("meaningful threshold must be positive")
    return ls_pct / 100.0 > delta_m


def summarize_draws(s: StudySummary, d: PosteriorDraws) -> EffectSizeSummary:
    lo, hi = credible_interval_signed(d, s.alpha_dm)
    return EffectSizeSummary(
        study_id=s.id,
        point_estimate=relative_difference_point(s),
        ci_lo=lo,
        ci_hi=hi,
        ls_pct=least_percent_from_interval(lo, hi),
        ms_pct=most_percent(d, s.alpha_dm),
        credible_level=1.0 - s.alpha_dm,
        k=d.k,
        seed=d.seed,
    )


def summarize_study(s: StudySummary, k: int = DEFAULT_SAMPLES,
                    seed: int = DEFAULT_SEED) -> EffectSizeSummary:
    """Draw once and derive point estimate, interval at the study's own
    alpha_dm, Ls% and Ms%. Deterministic per (study, k, seed)."""
    return summarize_draws(s, draw_posterior(s, k=k, seed=seed))


def decide(summary: EffectSizeSummary, delta: float,
           delta_m: float | None = None) -> ThresholdDecision:
    """Threshold test(s) on a stored summary; performs no sampling."""
    return ThresholdDecision(
        study_id=summary.study_id,
        negligible_threshold=delta,
        is_negligible=test_negligible(summary.ms_pct, delta),
        meaningful_threshold=delta_m,
        is_meaningful=(None if delta_m is None
                       else test_meaningful(summary.ls_pct, delta_m)),
    )


def interval_sign(summary: EffectSizeSummary) -> int:
    """Sign classification of the signed interval: -1 if it excludes
    zero below, +1 if above, 0 if it contains zero."""
    if summary.ci_hi < 0:
        return -1
    if summary.ci_lo > 0:
        return 1
    return 0
