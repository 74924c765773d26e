"""Empirical Pr(>= value) curves and quantitative cross-group collapse metrics.

A scaling method works when the scaled survival curves of all groups land on
top of each other.  Instead of judging that by eye, two numbers quantify it:

    * ``max_pairwise_ks``: the largest two-sample Kolmogorov-Smirnov statistic
      over all pairs of groups (0 = the empirical distributions coincide);
    * ``quantile_dispersion``: at a handful of upper quantiles, the spread
      (max - min over groups) of log10 of the quantile value.  Groups whose
      quantile is 0 cannot be placed on a log axis; they are excluded and
      counted.

Curve data for external plotting is emitted on a shared grid of 25
log-spaced thresholds; no figure rendering happens here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .corpus import GroupKey
from .errors import EmptyGroupError
from .scaling import ScalingMethod

DEFAULT_QUANTILES = (0.5, 0.75, 0.9, 0.95, 0.99)
N_PLOT_BINS = 25


@dataclass(frozen=True)
class SurvivalCurve:
    """Step function Pr(X >= value) at each distinct observed value."""

    group: GroupKey | None
    points: tuple[tuple[float, float], ...]

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(p[0] for p in self.points)

    @property
    def probs(self) -> tuple[float, ...]:
        return tuple(p[1] for p in self.points)


@dataclass(frozen=True)
class QuantileDispersion:
    """Spread of one quantile's log10 value across groups."""

    q: float
    spread: float | None
    n_groups: int
    n_excluded_zero: int


@dataclass(frozen=True)
class CollapseReport:
    """How far a family of curves is from coinciding; method None means raw."""

    method: ScalingMethod | None
    n_curves: int
    max_pairwise_ks: float
    quantile_dispersion: tuple[QuantileDispersion, ...]


def survival_curve(values, group: GroupKey | None = None) -> SurvivalCurve:
    """Empirical Pr(>= v) at every distinct value of a non-empty vector."""
    v = np.asarray(values, dtype=np.float64)
    if v.size == 0:
        raise EmptyGroupError("cannot build a survival curve from no values")
    distinct, counts = np.unique(v, return_counts=True)
    at_least = counts[::-1].cumsum()[::-1]
    probs = at_least / v.size
    return SurvivalCurve(
        group=group,
        points=tuple(zip(distinct.tolist(), probs.tolist())),
    )


def _cdf_steps(curve: SurvivalCurve) -> tuple[np.ndarray, np.ndarray]:
    """Distinct values and the empirical CDF evaluated at them."""
    values = np.array(curve.values, dtype=np.float64)
    probs = np.array(curve.probs, dtype=np.float64)
    cdf = np.empty_like(probs)
    cdf[:-1] = 1.0 - probs[1:]
    cdf[-1] = 1.0
    return values, cdf


def _cdf_at(values: np.ndarray, cdf: np.ndarray, thresholds: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(values, thresholds, side="right")
    out = np.where(idx > 0, cdf[np.maximum(idx - 1, 0)], 0.0)
    return out


def ks_statistic(a: SurvivalCurve, b: SurvivalCurve) -> float:
    """Two-sample Kolmogorov-Smirnov statistic between the samples behind
    two curves (sup over thresholds of the CDF gap)."""
    va, ca = _cdf_steps(a)
    vb, cb = _cdf_steps(b)
    thresholds = np.union1d(va, vb)
    fa = _cdf_at(va, ca, thresholds)
    fb = _cdf_at(vb, cb, thresholds)
    return float(np.abs(fa - fb).max())


def _quantile_from_curve(curve: SurvivalCurve, q: float) -> float:
    """Order-statistic quantile: smallest observed value v with CDF(v) >= q."""
    values, cdf = _cdf_steps(curve)
    idx = int(np.searchsorted(cdf, q, side="left"))
    idx = min(idx, values.size - 1)
    return float(values[idx])


def collapse_metrics(
    curves: Sequence[SurvivalCurve],
    method: ScalingMethod | None = None,
    quantiles: Sequence[float] = DEFAULT_QUANTILES,
) -> CollapseReport:
    """Quantify how well a family of curves superimposes.

    Requires at least two curves; identical samples in every group give a
    report of exact zeros.
    """
    if len(curves) < 2:
        raise ValueError(f"need at least 2 curves, got {len(curves)}")
    max_ks = 0.0
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            max_ks = max(max_ks, ks_statistic(curves[i], curves[j]))

    dispersions = []
    for q in quantiles:
        qvals = np.array([_quantile_from_curve(c, q) for c in curves])
        positive = qvals[qvals > 0]
        n_excluded = int(qvals.size - positive.size)
        if positive.size == 0:
            spread = None
        else:
            logs = np.log10(positive)
            spread = float(logs.max() - logs.min())
        dispersions.append(
            QuantileDispersion(
                q=q,
                spread=spread,
                n_groups=int(positive.size),
                n_excluded_zero=n_excluded,
            )
        )
    return CollapseReport(
        method=method,
        n_curves=len(curves),
        max_pairwise_ks=max_ks,
        quantile_dispersion=tuple(dispersions),
    )


def log_binned_thresholds(
    samples: Iterable[Sequence[float] | np.ndarray],
    n_bins: int = N_PLOT_BINS,
) -> np.ndarray:
    """Shared plotting grid: log-spaced between the global smallest positive
    value and the global maximum.  Empty when no positive value exists."""
    lo = np.inf
    hi = -np.inf
    for sample in samples:
        v = np.asarray(sample, dtype=np.float64)
        pos = v[v > 0]
        if pos.size:
            lo = min(lo, float(pos.min()))
            hi = max(hi, float(v.max()))
    if not np.isfinite(lo):
        return np.array([])
    if lo == hi:
        return np.array([lo])
    return np.geomspace(lo, hi, n_bins)


def binned_survival(values, thresholds: np.ndarray) -> np.ndarray:
    """Pr(X >= t) for each threshold t, for plotting on the shared grid."""
    v = np.sort(np.asarray(values, dtype=np.float64))
    idx = np.searchsorted(v, thresholds, side="left")
    return (v.size - idx) / v.size
