"""Descriptive statistics of indicator series and cross-journal extremes.

Seven statistics characterise the temporal variation of one indicator:
mean, median, sample standard deviation (n-1 denominator), range,
coefficient of variation, adjusted sample skewness and sample excess
kurtosis -- the spreadsheet-standard moment estimators. Only those
conventions reproduce the bundled study tables (a population standard
deviation, for instance, does not).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .model import IndicatorSeries

#: Excess-kurtosis cutoff used by the bundled study tables, which compare
#: excess values against 3.0 (the raw-moment convention). The textbook rule
#: for excess kurtosis is KURTOSIS_CUTOFF_EXCESS.
KURTOSIS_CUTOFF_TABLE_CONVENTION = 3.0
KURTOSIS_CUTOFF_EXCESS = 0.0

#: Statistic names in report order, mapped to StatSummary attributes.
STAT_FIELDS = (
    ("mean", "mean"),
    ("median", "median"),
    ("std_dev", "std_dev"),
    ("range", "value_range"),
    ("cv", "cv"),
    ("skewness", "skewness"),
    ("kurtosis", "kurtosis"),
)


@dataclass(frozen=True)
class StatSummary:
    """The seven descriptive statistics of one value series.

    ``skewness`` needs n >= 3 and ``kurtosis`` n >= 4 (their denominators
    vanish below that); both also need a nonzero standard deviation. ``cv``
    is undefined for a zero mean. Unavailable fields are ``None`` and the
    matching classification is ``None`` as well.
    """

    n: int
    mean: float
    median: float
    std_dev: float
    value_range: float
    cv: Optional[float]
    skewness: Optional[float]
    kurtosis: Optional[float]
    skew_class: Optional[str]
    kurt_class: Optional[str]


def summarize(
    values: Sequence[float],
    kurtosis_cutoff: float = KURTOSIS_CUTOFF_TABLE_CONVENTION,
) -> StatSummary:
    """Compute the seven statistics of *values*.

    Parameters
    ----------
    values : sequence of float
        The defined values of one indicator series; at least two required.
    kurtosis_cutoff : float
        Excess-kurtosis threshold separating leptokurtic from platykurtic.
        The default reproduces the bundled tables' classification; pass
        ``KURTOSIS_CUTOFF_EXCESS`` for the textbook excess-kurtosis rule.

    Returns
    -------
    StatSummary
    """
    x = np.asarray(values, dtype=float)
    n = x.size
    if n < 2:
        raise ValueError(f"need at least 2 values, got {n}")
    if not np.all(np.isfinite(x)):
        raise ValueError("values must be finite")

    mean = float(np.mean(x))
    median = float(np.median(x))
    std_dev = float(np.std(x, ddof=1))
    value_range = float(np.max(x) - np.min(x))
    cv = None if mean == 0 else (0.0 if std_dev == 0 else std_dev / mean)

    skewness = kurtosis = None
    if std_dev > 0:
        z = (x - mean) / std_dev
        if n >= 3:
            skewness = float(n / ((n - 1) * (n - 2)) * np.sum(z ** 3))
        if n >= 4:
            kurtosis = float(
                n * (n + 1) / ((n - 1) * (n - 2) * (n - 3)) * np.sum(z ** 4)
                - 3 * (n - 1) ** 2 / ((n - 2) * (n - 3))
            )

    if skewness is None:
        skew_class = None
    elif skewness > 0:
        skew_class = "positive"
    elif skewness < 0:
        skew_class = "negative"
    else:
        skew_class = "symmetric"

    if kurtosis is None:
        kurt_class = None
    elif kurtosis > kurtosis_cutoff:
        kurt_class = "leptokurtic"
    elif kurtosis < kurtosis_cutoff:
        kurt_class = "platykurtic"
    else:
        kurt_class = "mesokurtic"

    return StatSummary(n, mean, median, std_dev, value_range, cv,
                       skewness, kurtosis, skew_class, kurt_class)


def summarize_series(series: IndicatorSeries, **kwargs) -> StatSummary:
    """Statistics over the defined years of *series* only."""
    return summarize(series.series_values, **kwargs)


@dataclass(frozen=True)
class ExtremeValue:
    """An extremal indicator value with every (journal, year) holding it."""

    value: float
    holders: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class ExtremeStat:
    """An extremal statistic value with every journal holding it."""

    value: float
    holders: tuple[str, ...]


@dataclass(frozen=True)
class IndicatorExtremes:
    highest: ExtremeValue
    lowest: ExtremeValue

    @property
    def value_range(self) -> float:
        return self.highest.value - self.lowest.value


@dataclass(frozen=True)
class ExtremalReport:
    """Corpus-wide extremes: per indicator over all (journal, year) values,
    and per statistic over the per-journal summaries."""

    values: dict[str, IndicatorExtremes]
    statistics: dict[str, dict[str, tuple[ExtremeStat, ExtremeStat]]]


def _value_extreme(triples: list[tuple[str, int, float]], pick) -> ExtremeValue:
    target = pick(v for _, _, v in triples)
    holders = tuple(sorted((j, y) for j, y, v in triples if v == target))
    return ExtremeValue(target, holders)


def _stat_extreme(pairs: list[tuple[str, float]], pick) -> ExtremeStat:
    target = pick(v for _, v in pairs)
    holders = tuple(sorted(j for j, v in pairs if v == target))
    return ExtremeStat(target, holders)


def extremal_summary(
    series_by_indicator: Mapping[str, Sequence[IndicatorSeries]],
    stats_by_indicator: Mapping[str, Mapping[str, StatSummary]],
) -> ExtremalReport:
    """Scan the corpus for extremal values and extremal statistics.

    For every indicator the highest and lowest (journal, year, value) triples
    are located over all defined years; for every statistic the highest and
    lowest per-journal summary values. Exact ties are all reported, holders
    sorted by journal id (then year). Unavailable statistics are skipped.
    """
    values: dict[str, IndicatorExtremes] = {}
    for indicator, series_list in series_by_indicator.items():
        triples = [(s.journal_id, year, value)
                   for s in series_list for year, value in s.values]
        if not triples:
            continue
        values[indicator] = IndicatorExtremes(
            highest=_value_extreme(triples, max),
            lowest=_value_extreme(triples, min),
        )

    statistics: dict[str, dict[str, tuple[ExtremeStat, ExtremeStat]]] = {}
    for indicator, summaries in stats_by_indicator.items():
        per_stat: dict[str, tuple[ExtremeStat, ExtremeStat]] = {}
        for stat_name, attr in STAT_FIELDS:
            pairs = [(jid, getattr(summary, attr))
                     for jid, summary in summaries.items()
                     if getattr(summary, attr) is not None]
            if not pairs:
                continue
            per_stat[stat_name] = (_stat_extreme(pairs, max), _stat_extreme(pairs, min))
        statistics[indicator] = per_stat

    return ExtremalReport(values, statistics)
