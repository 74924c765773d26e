"""The six scaling variants that turn raw citation counts into impact scores.

Each variant divides a record's citation count by one statistic of its
(category, year) reference distribution:

    ==============  =============================================
    max             range of the distribution (max - min)
    mean            arithmetic mean, zeros included
    mean0           arithmetic mean over cited records only
    boxcox          mean of the power-transformed counts T(c)
    median          median, zeros included
    median0         median over cited records only
    ==============  =============================================

with ``T(c) = ((c+1)**lam - 1) / lam`` for ``lam != 0`` and ``log(c+1)`` at
``lam == 0``; ``lam`` is fitted per group by maximum likelihood within
[-3, +3].  All six map zero citations to a score of zero.

A statistic can be undefined on real data (a zero median when more than half
the group is uncited, a zero range, an all-zero group).  Undefinedness is
data, not failure: ``fit_factors`` returns ``defined=False`` with a reason,
and ``scale_corpus`` skips those groups while accounting for them.

Implementation note: for the five ratio variants the divisor is kept as an
exact integer ratio ``denom_num / denom_den`` and scores are evaluated as
``(c * denom_den) / denom_num`` in one rounding.  A group whose counts are an
integer multiple of another's then produces bit-identical score multisets,
which the collapse diagnostics rely on.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, GroupKey, PubRecord, group_records
from .errors import (
    DegenerateLikelihoodError,
    EmptyGroupError,
    GroupMismatchError,
    UndefinedScalingError,
)

LAMBDA_BOUNDS = (-3.0, 3.0)
_GRID_STEP = 0.01
_GOLDEN_TOL = 1e-8
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class ScalingMethod(enum.Enum):
    """Closed set of scaling variants; values are the CLI / report names."""

    MAX_RANGE = "max"
    MEAN = "mean"
    MEAN_NO_ZERO = "mean0"
    BOX_COX_MEAN = "boxcox"
    MEDIAN = "median"
    MEDIAN_NO_ZERO = "median0"


@dataclass(frozen=True)
class ScalingFactorSet:
    """Fitted divisor for one (group, method) pair.

    ``defined`` is False exactly when the method's statistic does not exist
    for this group's data; ``reason`` then says why.  For the ratio methods
    ``denominator == denom_num / denom_den`` with both sides exactly
    representable.  For the power-transform method ``lam`` and
    ``boxcox_mean`` are set instead.
    """

    group: GroupKey
    method: ScalingMethod
    defined: bool
    denominator: float | None = None
    denom_num: float | None = None
    denom_den: float | None = None
    lam: float | None = None
    boxcox_mean: float | None = None
    reason: str | None = None


@dataclass(frozen=True)
class ScaledRecord:
    """A publication record together with its score under one method."""

    record: PubRecord
    method: ScalingMethod
    aii: float


@dataclass(frozen=True)
class SkippedGroup:
    """One group left unscaled because its statistic was undefined."""

    group: GroupKey
    n_records: int
    reason: str


def boxcox_transform(citations, lam: float):
    """Power transform of count + 1; maps 0 to 0 and is strictly increasing.

    ``T(c) = ((c+1)**lam - 1) / lam`` for ``lam != 0``, ``log(c+1)`` at 0;
    evaluated as ``expm1(lam * log1p(c)) / lam`` for stability.
    """
    c = np.asarray(citations, dtype=np.float64)
    if lam == 0.0:
        return np.log1p(c)
    return np.expm1(lam * np.log1p(c)) / lam


def boxcox_loglik(values, lam: float) -> float:
    """Profile log-likelihood of the shifted power transform.

    ``LL(lam) = -(n/2) * ln(var(T(c))) + (lam - 1) * sum(ln(c + 1))`` where
    the variance is the maximum-likelihood (n-denominator) variance of the
    transformed values.
    """
    c = np.asarray(values, dtype=np.float64)
    t = boxcox_transform(c, lam)
    var = float(t.var())
    if var <= 0.0 or not np.isfinite(var):
        return -math.inf
    n = c.size
    return -0.5 * n * math.log(var) + (lam - 1.0) * float(np.log1p(c).sum())


def _golden_max(f, a: float, b: float, tol: float = _GOLDEN_TOL) -> float:
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def fit_lambda(values) -> float:
    """Maximum-likelihood transform parameter, clamped to [-3, +3].

    Scans a 0.01-step grid over the full interval, then refines the best
    bracket by golden-section search; the two-stage search avoids local traps
    on flat likelihoods and is deterministic.

    Requires at least three values with at least two distinct; otherwise the
    likelihood carries no information and
    :class:`~citescale.errors.DegenerateLikelihoodError` is raised.
    """
    v = np.asarray(values, dtype=np.float64)
    if v.size < 3:
        raise DegenerateLikelihoodError(
            f"need at least 3 values to fit the transform, got {v.size}"
        )
    if np.all(v == v[0]):
        raise DegenerateLikelihoodError(
            "all values equal: transform likelihood is degenerate"
        )
    lo, hi = LAMBDA_BOUNDS
    n_steps = int(round((hi - lo) / _GRID_STEP))
    grid = np.linspace(lo, hi, n_steps + 1)

    log1p_v = np.log1p(v)
    sum_log1p = float(log1p_v.sum())
    n = v.size

    def loglik(lam: float) -> float:
        if lam == 0.0:
            t = log1p_v
        else:
            t = np.expm1(lam * log1p_v) / lam
        var = float(t.var())
        if var <= 0.0 or not np.isfinite(var):
            return -math.inf
        return -0.5 * n * math.log(var) + (lam - 1.0) * sum_log1p

    ll = np.array([loglik(lam) for lam in grid])
    best = int(np.argmax(ll))
    a = grid[max(best - 1, 0)]
    b = grid[min(best + 1, grid.size - 1)]
    refined = _golden_max(loglik, float(a), float(b))
    if loglik(refined) < ll[best]:
        refined = float(grid[best])
    return float(min(max(refined, lo), hi))


def _exact_median(sorted_ints: np.ndarray) -> float:
    # exact for integer inputs: midpoint of two ints is representable
    n = sorted_ints.size
    mid = n // 2
    if n % 2:
        return float(sorted_ints[mid])
    return float(sorted_ints[mid - 1] + sorted_ints[mid]) / 2.0


def fit_factors(group: GroupKey, values, method: ScalingMethod) -> ScalingFactorSet:
    """Fit one method's scaling statistic on a group's citation vector.

    Never raises on degenerate data; the result's ``defined`` flag and
    ``reason`` report undefinedness instead.
    """
    v = np.asarray(values)
    if v.size == 0:
        raise EmptyGroupError(f"group {group}: empty citation vector")

    def undefined(reason: str) -> ScalingFactorSet:
        return ScalingFactorSet(group=group, method=method, defined=False, reason=reason)

    def ratio(num: float, den: float) -> ScalingFactorSet:
        return ScalingFactorSet(
            group=group,
            method=method,
            defined=True,
            denominator=num / den,
            denom_num=num,
            denom_den=den,
        )

    if method is ScalingMethod.MAX_RANGE:
        spread = float(v.max() - v.min())
        if spread == 0.0:
            return undefined("zero-range")
        return ratio(spread, 1.0)

    if method is ScalingMethod.MEAN:
        total = float(v.sum())
        if total == 0.0:
            return undefined("all-zero")
        return ratio(total, float(v.size))

    if method is ScalingMethod.MEAN_NO_ZERO:
        nz = v[v > 0]
        if nz.size == 0:
            return undefined("no-nonzero")
        return ratio(float(nz.sum()), float(nz.size))

    if method is ScalingMethod.MEDIAN:
        med = _exact_median(np.sort(v))
        if med == 0.0:
            return undefined("zero-median")
        return ratio(med, 1.0)

    if method is ScalingMethod.MEDIAN_NO_ZERO:
        nz = v[v > 0]
        if nz.size == 0:
            return undefined("no-nonzero")
        return ratio(_exact_median(np.sort(nz)), 1.0)

    if method is ScalingMethod.BOX_COX_MEAN:
        try:
            lam = fit_lambda(v)
        except DegenerateLikelihoodError:
            return undefined("degenerate-boxcox")
        bc_mean = float(boxcox_transform(v, lam).mean())
        if bc_mean <= 0.0:
            return undefined("zero-boxcox-mean")
        return ScalingFactorSet(
            group=group,
            method=method,
            defined=True,
            lam=lam,
            boxcox_mean=bc_mean,
        )

    raise ValueError(f"unknown scaling method {method!r}")


def scale(record: PubRecord, factors: ScalingFactorSet) -> ScaledRecord:
    """Score one record against its group's fitted factors."""
    if not factors.defined:
        raise UndefinedScalingError(
            f"group {factors.group} has no defined {factors.method.value!r} "
            f"scaling ({factors.reason})"
        )
    if record.key != factors.group:
        raise GroupMismatchError(
            f"record {record.pub_id!r} belongs to {record.key}, "
            f"factors were fitted on {factors.group}"
        )
    if factors.method is ScalingMethod.BOX_COX_MEAN:
        aii = float(boxcox_transform(record.citations, factors.lam)) / factors.boxcox_mean
    else:
        aii = (record.citations * factors.denom_den) / factors.denom_num
    return ScaledRecord(record=record, method=factors.method, aii=aii)


def scale_corpus(
    corpus: Corpus, method: ScalingMethod
) -> tuple[list[ScaledRecord], list[SkippedGroup]]:
    """Scale every record whose group has a defined statistic.

    Output is deterministic: groups in (category, year) order, records by
    pub_id within each group.  Groups with an undefined statistic are
    reported, never imputed.
    """
    scaled: list[ScaledRecord] = []
    skipped: list[SkippedGroup] = []
    groups = group_records(corpus)
    for key in sorted(groups):
        recs = sorted(groups[key], key=lambda r: r.pub_id)
        factors = fit_factors(key, [r.citations for r in recs], method)
        if not factors.defined:
            skipped.append(
                SkippedGroup(group=key, n_records=len(recs), reason=factors.reason)
            )
            continue
        scaled.extend(scale(rec, factors) for rec in recs)
    return scaled, skipped
