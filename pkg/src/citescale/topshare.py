"""Global top-decile ranking and per-category share admissibility bands.

All scored records are pooled into one ranking; the globally top
``top_fraction`` of them is extracted (ties at the cutoff included), and each
category's share of top records is compared against the band

    ``top_fraction +- sqrt(f * (1 - f) / n)``

i.e. one binomial standard deviation for a category of size n.  A perfectly
fair scoring would leave every category's share inside its band; categories
drifting outside reveal that the scoring favors or penalizes their field.

The global cutoff is the ``ceil(f * N)``-th largest pooled score, so at least
a fraction f of records is marked top and the overshoot beyond f comes only
from integer rounding and cutoff ties.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .corpus import Corpus, PubRecord
from .errors import EmptyCorpusError
from .scaling import ScaledRecord, ScalingMethod, scale_corpus

DEFAULT_TOP_FRACTION = 0.10


@dataclass(frozen=True)
class CategoryShare:
    """One category's slice of the global top set."""

    category: str
    n: int
    top_count: int
    share: float
    band_low: float
    band_high: float
    within_band: bool
    n_skipped_records: int = 0


@dataclass(frozen=True)
class TopShareReport:
    """Per-category shares of the global top set for one scoring method."""

    method: ScalingMethod | None
    top_fraction: float
    cutoff: float
    n_records: int
    n_top: int
    per_category: tuple[CategoryShare, ...]
    unevaluated_categories: tuple[str, ...] = ()

    @property
    def method_name(self) -> str:
        return "raw" if self.method is None else self.method.value

    @property
    def n_categories_evaluated(self) -> int:
        return len(self.per_category)

    @property
    def n_within_band(self) -> int:
        return sum(1 for c in self.per_category if c.within_band)


def _score_of(record: ScaledRecord | PubRecord) -> float:
    if isinstance(record, ScaledRecord):
        return record.aii
    return float(record.citations)


def _category_of(record: ScaledRecord | PubRecord) -> str:
    if isinstance(record, ScaledRecord):
        return record.record.category
    return record.category


def _top_rank(top_fraction: float, n: int) -> int:
    """Number of records in the nominal top set: ceil(f * n), guarding the
    float artifacts of products like 0.1 * 1000."""
    target = top_fraction * n
    nearest = round(target)
    if abs(target - nearest) < 1e-9 and nearest >= 1:
        return int(nearest)
    return int(math.ceil(target))


def top_share(
    records: Sequence[ScaledRecord | PubRecord],
    top_fraction: float = DEFAULT_TOP_FRACTION,
    method: ScalingMethod | None = None,
    skipped_by_category: Mapping[str, int] | None = None,
) -> TopShareReport:
    """Rank the pooled records and report each category's top share.

    ``skipped_by_category`` carries, per category, how many of its records
    were dropped because their group's scaling statistic was undefined;
    categories with only skipped records are reported as unevaluated.
    """
    if not 0.0 < top_fraction < 1.0:
        raise ValueError(f"top_fraction must be in (0, 1), got {top_fraction}")
    if len(records) == 0:
        raise EmptyCorpusError("cannot rank an empty record collection")

    scores = np.array([_score_of(r) for r in records], dtype=np.float64)
    categories = [_category_of(r) for r in records]
    n = scores.size
    k = _top_rank(top_fraction, n)
    cutoff = float(np.partition(scores, n - k)[n - k])
    is_top = scores >= cutoff

    n_by_cat: dict[str, int] = {}
    top_by_cat: dict[str, int] = {}
    for cat, top in zip(categories, is_top):
        n_by_cat[cat] = n_by_cat.get(cat, 0) + 1
        if top:
            top_by_cat[cat] = top_by_cat.get(cat, 0) + 1

    skipped = dict(skipped_by_category or {})
    per_category = []
    for cat in sorted(n_by_cat):
        n_cat = n_by_cat[cat]
        top_count = top_by_cat.get(cat, 0)
        share = top_count / n_cat
        sd = math.sqrt(top_fraction * (1.0 - top_fraction) / n_cat)
        band_low = top_fraction - sd
        band_high = top_fraction + sd
        per_category.append(
            CategoryShare(
                category=cat,
                n=n_cat,
                top_count=top_count,
                share=share,
                band_low=band_low,
                band_high=band_high,
                within_band=band_low <= share <= band_high,
                n_skipped_records=skipped.get(cat, 0),
            )
        )
    unevaluated = tuple(sorted(cat for cat in skipped if cat not in n_by_cat))
    return TopShareReport(
        method=method,
        top_fraction=top_fraction,
        cutoff=cutoff,
        n_records=n,
        n_top=int(is_top.sum()),
        per_category=tuple(per_category),
        unevaluated_categories=unevaluated,
    )


def method_comparison(
    corpus: Corpus,
    methods: Sequence[ScalingMethod],
    top_fraction: float = DEFAULT_TOP_FRACTION,
    years: Iterable[int] | None = None,
) -> list[TopShareReport]:
    """Raw ranking plus one report per scaling method, in a stable order.

    Years are pooled into a single global ranking unless ``years`` narrows
    the corpus first.
    """
    records: Sequence[PubRecord] = corpus.records
    if years is not None:
        wanted = set(years)
        records = tuple(r for r in records if r.year in wanted)
    if not records:
        raise EmptyCorpusError("no records to rank (year filter too narrow?)")
    filtered = Corpus(records=records, census_date=corpus.census_date)

    reports = [top_share(filtered.records, top_fraction, method=None)]
    for method in methods:
        scaled, skipped_groups = scale_corpus(filtered, method)
        skipped_by_category: dict[str, int] = {}
        for sk in skipped_groups:
            skipped_by_category[sk.group.category] = (
                skipped_by_category.get(sk.group.category, 0) + sk.n_records
            )
        if not scaled:
            reports.append(
                TopShareReport(
                    method=method,
                    top_fraction=top_fraction,
                    cutoff=math.nan,
                    n_records=0,
                    n_top=0,
                    per_category=(),
                    unevaluated_categories=tuple(sorted(skipped_by_category)),
                )
            )
            continue
        reports.append(
            top_share(
                scaled,
                top_fraction,
                method=method,
                skipped_by_category=skipped_by_category,
            )
        )
    return reports
