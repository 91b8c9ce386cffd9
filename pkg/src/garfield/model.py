"""Domain types for journal-year citation series and their validation.

A :class:`JournalSeries` holds one journal's ordered year observations in one
of two ingestion modes:

* ``raw-counts``: every observation carries the number of cited papers and
  the total citations for that year;
* ``precomputed-gr``: every observation carries a ready-made yearly
  Garfield Ratio, optionally accompanied by window totals so that the
  consolidated ratio can still be derived.

All types are immutable after construction; validated series can be shared
freely across threads and journals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

RAW_COUNTS = "raw-counts"
PRECOMPUTED_GR = "precomputed-gr"
MODES = (RAW_COUNTS, PRECOMPUTED_GR)

#: Indicator identifiers used throughout the package.
GR = "GR"
GRM = "GRM"
GRN = "GRN"
FC = "FC"
FTC = "FTC"
INDICATORS = (GR, GRM, GRN, FC, FTC)


@dataclass(frozen=True)
class YearObservation:
    """One journal-year data point: counts, a precomputed ratio, or both."""

    year: int
    cited_papers: Optional[int] = None
    total_citations: Optional[int] = None
    gr_value: Optional[float] = None

    @property
    def has_counts(self) -> bool:
        return self.cited_papers is not None and self.total_citations is not None


@dataclass(frozen=True)
class JournalSeries:
    """A contiguous window of yearly observations for a single journal."""

    journal_id: str
    journal_name: str
    mode: str
    observations: tuple[YearObservation, ...]
    sum_cited_papers: Optional[int] = None
    sum_total_citations: Optional[int] = None

    @property
    def years(self) -> tuple[int, ...]:
        return tuple(obs.year for obs in self.observations)

    @property
    def has_totals(self) -> bool:
        return self.sum_cited_papers is not None and self.sum_total_citations is not None


@dataclass(frozen=True)
class AnalysisConfig:
    """Run-wide knobs: age reference, fit acceptance threshold, X encoding.

    ``reference_year`` defaults to 2021, the value under which the bundled
    study tables are reproducible (ages run 12..1 for a 2009-2020 window).
    """

    reference_year: int = 2021
    fit_threshold: float = 0.85
    max_poly_degree: int = 4
    year_index_origin: int = 1

    def __post_init__(self) -> None:
        if not 0.0 <= self.fit_threshold <= 1.0:
            raise ValueError(f"fit_threshold must lie in [0, 1], got {self.fit_threshold}")
        if self.max_poly_degree < 1:
            raise ValueError(f"max_poly_degree must be >= 1, got {self.max_poly_degree}")


@dataclass(frozen=True)
class IndicatorSeries:
    """A named indicator evaluated per year for one journal.

    ``values`` holds only the defined years; years where the indicator is
    undefined (no cited papers) are listed in ``undefined_years`` instead of
    being coerced to zero, so downstream statistics run over real ratios only.
    """

    journal_id: str
    indicator: str
    values: tuple[tuple[int, float], ...]
    undefined_years: tuple[int, ...] = ()

    @property
    def years(self) -> tuple[int, ...]:
        return tuple(year for year, _ in self.values)

    @property
    def series_values(self) -> tuple[float, ...]:
        return tuple(value for _, value in self.values)

    def value_for(self, year: int) -> float:
        for y, v in self.values:
            if y == year:
                return v
        raise KeyError(f"{self.indicator} undefined or missing for year {year}")


@dataclass(frozen=True)
class ValidationIssue:
    """A single invariant violation, pinned to a journal, year and field."""

    journal_id: str
    field: str
    message: str
    year: Optional[int] = None

    def __str__(self) -> str:
        where = f"{self.journal_id}" + (f" year {self.year}" if self.year is not None else "")
        return f"{where}: {self.field}: {self.message}"


class SeriesValidationError(ValueError):
    """Raised by :func:`validate_series`; carries every violation found."""

    def __init__(self, journal_id: str, issues: Sequence[ValidationIssue]):
        self.journal_id = journal_id
        self.issues = list(issues)
        super().__init__(
            f"{journal_id}: {len(self.issues)} validation issue(s): "
            + "; ".join(str(i) for i in self.issues)
        )


def series_issues(series: JournalSeries) -> list[ValidationIssue]:
    """Collect every invariant violation in *series* without raising.

    Checks, in order: non-empty series, known mode, per-observation field
    presence and sign rules, the citations-vs-cited-papers ordering, strict
    year ordering with no duplicates or gaps, and totals consistency.
    """
    jid = series.journal_id
    issues: list[ValidationIssue] = []

    if not isinstance(series.mode, str) or series.mode not in MODES:
        issues.append(ValidationIssue(jid, "mode", f"unknown mode {series.mode!r}"))
    if not series.observations:
        issues.append(ValidationIssue(jid, "observations", "empty series"))
        return issues

    for obs in series.observations:
        y = obs.year
        cp, tc, gr = obs.cited_papers, obs.total_citations, obs.gr_value
        if cp is None and tc is None and gr is None:
            issues.append(ValidationIssue(jid, "observation", "no counts and no gr value", y))
            continue
        if (cp is None) != (tc is None):
            issues.append(ValidationIssue(
                jid, "counts", "cited_papers and total_citations must come as a pair", y))
        if series.mode == RAW_COUNTS and not obs.has_counts:
            issues.append(ValidationIssue(jid, "counts", "raw-counts mode requires both counts", y))
        if series.mode == PRECOMPUTED_GR and gr is None:
            issues.append(ValidationIssue(jid, "gr", "precomputed-gr mode requires a gr value", y))
        if cp is not None and cp < 0:
            issues.append(ValidationIssue(jid, "cited_papers", f"negative count {cp}", y))
        if tc is not None and tc < 0:
            issues.append(ValidationIssue(jid, "total_citations", f"negative count {tc}", y))
        if gr is not None and gr < 0:
            issues.append(ValidationIssue(jid, "gr", f"negative ratio {gr}", y))
        if cp is not None and tc is not None and cp >= 0 and tc >= 0:
            if cp == 0 and tc > 0:
                issues.append(ValidationIssue(
                    jid, "total_citations", "citations without cited papers", y))
            # every cited paper contributes at least one citation
            if cp > 0 and tc < cp:
                issues.append(ValidationIssue(
                    jid, "total_citations", f"total citations {tc} below cited papers {cp}", y))

    years = [obs.year for obs in series.observations]
    seen: set[int] = set()
    for y in years:
        if y in seen:
            issues.append(ValidationIssue(jid, "year", f"duplicate year {y}", y))
        seen.add(y)
    if len(seen) == len(years):
        for prev, cur in zip(years, years[1:]):
            if cur < prev:
                issues.append(ValidationIssue(jid, "year", f"years out of order at {cur}", cur))
            elif cur > prev + 1:
                issues.append(ValidationIssue(
                    jid, "year", f"gap in window between {prev} and {cur}", cur))

    if (series.sum_cited_papers is None) != (series.sum_total_citations is None):
        issues.append(ValidationIssue(
            jid, "totals", "window totals must come as a pair"))
    if series.has_totals:
        if series.sum_cited_papers <= 0:
            issues.append(ValidationIssue(
                jid, "sum_cited_papers", f"must be positive, got {series.sum_cited_papers}"))
        if series.sum_total_citations < 0:
            issues.append(ValidationIssue(
                jid, "sum_total_citations", f"negative count {series.sum_total_citations}"))

    return issues


def validate_series(series: JournalSeries) -> JournalSeries:
    """Return *series* unchanged if every invariant holds.

    Raises :class:`SeriesValidationError` listing all violations otherwise;
    validation never stops at the first problem. Idempotent: a series that
    passes once passes again.
    """
    issues = series_issues(series)
    if issues:
        raise SeriesValidationError(series.journal_id, issues)
    return series
