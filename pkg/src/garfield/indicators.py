"""The Garfield Ratio family of yearly citation indicators.

For a year Y with cited-paper count CP and citation count TC:

* ``GR``  = TC / CP, citations per cited paper for that year;
* ``FC``  = CP / sum(CP), the year's share of the window's cited papers;
* ``FTC`` = TC / sum(TC), the year's share of the window's citations;
* ``GRM`` = FTC / FC, algebraically GR / CGR, a window-relative ratio;
* ``GRN`` = GR / A with age A = reference_year - Y.

The consolidated ratio CGR = sum(TC) / sum(CP) summarises the whole window.
Every function is pure and returns a new :class:`~garfield.model.IndicatorSeries`;
ratios are kept at full double precision, rounding is a report-time concern.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    FC,
    FTC,
    GR,
    GRM,
    GRN,
    PRECOMPUTED_GR,
    RAW_COUNTS,
    AnalysisConfig,
    IndicatorSeries,
    JournalSeries,
)


@dataclass(frozen=True)
class ConsolidatedTotals:
    """Window sums of cited papers and citations, with their ratio."""

    sum_cited_papers: int
    sum_total_citations: int
    cgr: float

    @classmethod
    def from_sums(cls, sum_cited_papers: int, sum_total_citations: int) -> "ConsolidatedTotals":
        if sum_cited_papers <= 0:
            raise ValueError(f"sum of cited papers must be positive, got {sum_cited_papers}")
        return cls(sum_cited_papers, sum_total_citations,
                   sum_total_citations / sum_cited_papers)


def _require_observations(series: JournalSeries) -> None:
    if not series.observations:
        raise ValueError(f"{series.journal_id}: empty series")


def gr_yearly(series: JournalSeries) -> IndicatorSeries:
    """Yearly Garfield Ratio TC/CP per defined year.

    In precomputed-gr mode the stored ratios pass straight through. Years
    with no cited papers are undefined (0/0 is not a ratio) and end up in
    ``undefined_years`` rather than contributing a zero.
    """
    _require_observations(series)
    values: list[tuple[int, float]] = []
    undefined: list[int] = []
    for obs in series.observations:
        if series.mode == PRECOMPUTED_GR:
            values.append((obs.year, float(obs.gr_value)))
        elif obs.cited_papers == 0:
            undefined.append(obs.year)
        else:
            values.append((obs.year, obs.total_citations / obs.cited_papers))
    return IndicatorSeries(series.journal_id, GR, tuple(values), tuple(undefined))


def consolidated(series: JournalSeries) -> ConsolidatedTotals:
    """Window totals and the consolidated ratio CGR = sum(TC)/sum(CP).

    Raw-counts series are summed directly; precomputed series must carry
    attached totals (there is nothing to sum).
    """
    _require_observations(series)
    if series.mode == RAW_COUNTS:
        sum_cp = sum(obs.cited_papers for obs in series.observations)
        sum_tc = sum(obs.total_citations for obs in series.observations)
        return ConsolidatedTotals.from_sums(sum_cp, sum_tc)
    if not series.has_totals:
        raise ValueError(
            f"{series.journal_id}: precomputed-gr series has no attached window totals")
    return ConsolidatedTotals.from_sums(series.sum_cited_papers, series.sum_total_citations)


def fractional_cited(series: JournalSeries) -> IndicatorSeries:
    """Each year's share of the window's cited papers; shares sum to one."""
    return _fractional(series, FC, lambda obs: obs.cited_papers)


def fractional_citations(series: JournalSeries) -> IndicatorSeries:
    """Each year's share of the window's citations; shares sum to one."""
    return _fractional(series, FTC, lambda obs: obs.total_citations)


def _fractional(series: JournalSeries, indicator: str, count) -> IndicatorSeries:
    _require_observations(series)
    if series.mode != RAW_COUNTS:
        raise ValueError(f"{series.journal_id}: {indicator} requires raw counts")
    total = sum(count(obs) for obs in series.observations)
    if total <= 0:
        raise ValueError(f"{series.journal_id}: window total is zero, {indicator} undefined")
    values = tuple((obs.year, count(obs) / total) for obs in series.observations)
    return IndicatorSeries(series.journal_id, indicator, values)


def grm_yearly(series: JournalSeries) -> IndicatorSeries:
    """Modified Garfield Ratio FTC/FC per defined year.

    The fractions cancel to GR/CGR; precomputed-gr series are computed that
    way directly (their raw counts are unavailable, the attached totals give
    CGR). Years with no cited papers have FC = 0 and are undefined.
    """
    _require_observations(series)
    if series.mode == RAW_COUNTS:
        fc = dict(fractional_cited(series).values)
        ftc = dict(fractional_citations(series).values)
        values: list[tuple[int, float]] = []
        undefined: list[int] = []
        for obs in series.observations:
            if fc[obs.year] > 0:
                values.append((obs.year, ftc[obs.year] / fc[obs.year]))
            else:
                undefined.append(obs.year)
        return IndicatorSeries(series.journal_id, GRM, tuple(values), tuple(undefined))
    cgr = consolidated(series).cgr
    gr = gr_yearly(series)
    values = tuple((year, value / cgr) for year, value in gr.values)
    return IndicatorSeries(series.journal_id, GRM, values, gr.undefined_years)


def grn_yearly(series: JournalSeries, config: AnalysisConfig) -> IndicatorSeries:
    """Time-normalised Garfield Ratio GR/A with age A = reference_year - year.

    Every observed year must be at least one year old under the configured
    reference; reproducing the bundled study tables requires the default
    reference year 2021 (all last-window entries then equal their GR).
    """
    gr = gr_yearly(series)
    ages = {year: config.reference_year - year
            for year in (*gr.years, *gr.undefined_years)}
    bad = sorted(year for year, age in ages.items() if age < 1)
    if bad:
        raise ValueError(
            f"{series.journal_id}: non-positive age for year(s) {bad} "
            f"with reference_year {config.reference_year}")
    values = tuple((year, value / ages[year]) for year, value in gr.values)
    return IndicatorSeries(series.journal_id, GRN, values, gr.undefined_years)
