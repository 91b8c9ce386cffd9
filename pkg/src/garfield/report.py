"""Assembly and emission of the full analysis report.

:func:`build_report` turns a corpus plus a configuration into an
:class:`AnalysisReport`: the consolidated-ratio ranking, the yearwise
GR/GRM/GRN tables with their statistics rows, the best-fit table, and the
extremal summaries. :func:`emit_report` serialises it, one file per table,
as csv, markdown or json.

Presentation rules: csv and markdown cells are rounded half-away-from-zero
to two decimals (integers stay integral); json carries full precision and
additionally embeds the fit residuals and a corpus echo so a json emission
round-trips the raw input losslessly. Output is a pure function of
(corpus, config) -- no timestamps, stable ordering -- so repeated runs are
byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .corpus import CorpusFile
from .indicators import ConsolidatedTotals, consolidated, gr_yearly, grm_yearly, grn_yearly
from .model import GR, GRM, GRN, RAW_COUNTS, AnalysisConfig, IndicatorSeries, JournalSeries
from .regression import BestFitVerdict, select_best_fit, year_index
from .stats import STAT_FIELDS, ExtremalReport, StatSummary, extremal_summary, summarize
from .version import __version__

FORMATS = ("csv", "markdown", "json")

SECTIONS_INDICATORS = ("gr", "grm", "grn")
SECTIONS_STATS = ("gr_stats", "grm_stats", "grn_stats")
SECTIONS_FIT = ("bestfit",)
SECTIONS_ALL = (
    "cgr",
    *SECTIONS_INDICATORS,
    *SECTIONS_STATS,
    *SECTIONS_FIT,
    "extremal_values",
    "extremal_stats",
)

_SECTION_INDICATOR = {"gr": GR, "grm": GRM, "grn": GRN,
                      "gr_stats": GR, "grm_stats": GRM, "grn_stats": GRN}


def round_half_away(value: float, places: int = 2) -> Decimal:
    """Round to *places* decimals, ties away from zero; -0.00 becomes 0.00."""
    quantum = Decimal(1).scaleb(-places)
    result = Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP)
    return abs(result) if result == 0 else result


def _cell(value) -> str:
    """Render one csv/markdown cell: 2-decimal reals, plain ints and strings."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{round_half_away(float(value)):.2f}"
    return str(value)


@dataclass(frozen=True)
class CgrRow:
    journal_id: str
    totals: ConsolidatedTotals


@dataclass(frozen=True)
class IndicatorRow:
    journal_id: str
    values: tuple[Optional[float], ...]  # aligned with the table's years
    stats: Optional[StatSummary]


@dataclass(frozen=True)
class IndicatorTable:
    indicator: str
    years: tuple[int, ...]
    rows: tuple[IndicatorRow, ...]


@dataclass(frozen=True)
class AnalysisReport:
    """Everything the emitters need, in deterministic order."""

    config: AnalysisConfig
    corpus: CorpusFile
    cgr_rows: tuple[CgrRow, ...]
    tables: dict[str, IndicatorTable]
    verdicts: tuple[BestFitVerdict, ...]
    extremal: ExtremalReport

    @property
    def journals(self) -> tuple[str, ...]:
        return tuple(sorted(series.journal_id for series in self.corpus.journals))


def _indicator_table(indicator: str, years: Sequence[int],
                     series_list: Sequence[IndicatorSeries]) -> IndicatorTable:
    rows = []
    for series in sorted(series_list, key=lambda s: s.journal_id):
        by_year = dict(series.values)
        values = tuple(by_year.get(year) for year in years)
        defined = series.series_values
        stats = summarize(defined) if len(defined) >= 2 else None
        rows.append(IndicatorRow(series.journal_id, values, stats))
    return IndicatorTable(indicator, tuple(years), tuple(rows))


def build_report(corpus: CorpusFile, config: AnalysisConfig) -> AnalysisReport:
    """Run the whole pipeline: indicators, statistics, fits, extremes.

    Journals without window totals (possible in precomputed-gr mode) are
    simply absent from the consolidated-ratio and GRM outputs; everything
    else still covers them.
    """
    journals = sorted(corpus.journals, key=lambda s: s.journal_id)
    years = sorted({year for series in journals for year in series.years})

    gr_series = [gr_yearly(series) for series in journals]
    grn_series = [grn_yearly(series, config) for series in journals]

    cgr_rows: list[CgrRow] = []
    grm_series: list[IndicatorSeries] = []
    for series in journals:
        if series.mode == RAW_COUNTS or series.has_totals:
            cgr_rows.append(CgrRow(series.journal_id, consolidated(series)))
            grm_series.append(grm_yearly(series))
    cgr_rows.sort(key=lambda row: (-row.totals.cgr, row.journal_id))

    tables = {GR: _indicator_table(GR, years, gr_series)}
    if grm_series:
        tables[GRM] = _indicator_table(GRM, years, grm_series)
    tables[GRN] = _indicator_table(GRN, years, grn_series)

    verdicts = []
    for series in gr_series:
        try:
            verdicts.append(select_best_fit(series, config))
        except ValueError:
            # nothing could be fitted (series too short); mark, don't abort
            verdicts.append(BestFitVerdict(series.journal_id, config.fit_threshold,
                                           None, None, ()))

    series_by_indicator = {table.indicator: []
                           for table in tables.values()}
    for indicator, series_list in ((GR, gr_series), (GRM, grm_series), (GRN, grn_series)):
        if indicator in series_by_indicator:
            series_by_indicator[indicator] = series_list
    stats_by_indicator = {
        table.indicator: {row.journal_id: row.stats
                          for row in table.rows if row.stats is not None}
        for table in tables.values()
    }
    extremal = extremal_summary(series_by_indicator, stats_by_indicator)

    return AnalysisReport(config, corpus, tuple(cgr_rows), tables,
                          tuple(verdicts), extremal)


# ---------------------------------------------------------------------------
# table builders (shared by the csv and markdown writers)
# ---------------------------------------------------------------------------


def _cgr_table(report: AnalysisReport) -> tuple[list[str], list[list]]:
    header = ["journal", "sum_cited_papers", "sum_total_citations", "cgr"]
    rows = [[row.journal_id, row.totals.sum_cited_papers,
             row.totals.sum_total_citations, row.totals.cgr]
            for row in report.cgr_rows]
    return header, rows


def _values_table(table: IndicatorTable, with_stats: bool) -> tuple[list[str], list[list]]:
    header = ["journal"] + [str(year) for year in table.years]
    if with_stats:
        header += [name for name, _ in STAT_FIELDS]
    rows = []
    for row in table.rows:
        cells: list = [row.journal_id, *row.values]
        if with_stats:
            if row.stats is None:
                cells += [None] * len(STAT_FIELDS)
            else:
                cells += [getattr(row.stats, attr) for _, attr in STAT_FIELDS]
        rows.append(cells)
    return header, rows


def _coefficient_letters(report: AnalysisReport) -> list[str]:
    width = max((len(v.fit.coefficients) for v in report.verdicts if v.fit is not None),
                default=0)
    return [chr(ord("a") + i) for i in range(width)]


def _bestfit_table(report: AnalysisReport) -> tuple[list[str], list[list]]:
    letters = _coefficient_letters(report)
    header = ["journal", "family", "equation", *letters,
              "r_squared", "r_squared_space", "best_rejected_r_squared"]
    rows = []
    for verdict in report.verdicts:
        if verdict.fit is None:
            rows.append([verdict.journal_id, "irregular", None,
                         *[None] * len(letters), None, None,
                         verdict.best_rejected_r_squared])
        else:
            fit = verdict.fit
            coefs = list(fit.coefficients) + [None] * (len(letters) - len(fit.coefficients))
            rows.append([verdict.journal_id, fit.family.label, fit.family.equation,
                         *coefs, fit.r_squared, fit.r_squared_space, None])
    return header, rows


def _join_holders(holders) -> str:
    return " & ".join(str(h) for h in holders)


def _extremal_values_table(report: AnalysisReport) -> tuple[list[str], list[list]]:
    header = ["indicator", "highest_journal", "highest_year", "highest_value",
              "lowest_journal", "lowest_year", "lowest_value", "range"]
    rows = []
    for indicator, extremes in report.extremal.values.items():
        high, low = extremes.highest, extremes.lowest
        # the published convention: the corpus range is taken between the
        # displayed (2-decimal) extremes, keeping the row self-consistent
        span = round_half_away(high.value) - round_half_away(low.value)
        rows.append([
            indicator,
            _join_holders(j for j, _ in high.holders),
            _join_holders(y for _, y in high.holders),
            high.value,
            _join_holders(j for j, _ in low.holders),
            _join_holders(y for _, y in low.holders),
            low.value,
            float(span),
        ])
    return header, rows


def _extremal_stats_table(report: AnalysisReport) -> tuple[list[str], list[list]]:
    header = ["indicator"]
    for stat_name, _ in STAT_FIELDS:
        header += [f"{stat_name}_hv_journal", f"{stat_name}_hv",
                   f"{stat_name}_lv_journal", f"{stat_name}_lv"]
    rows = []
    for indicator, per_stat in report.extremal.statistics.items():
        cells: list = [indicator]
        for stat_name, _ in STAT_FIELDS:
            if stat_name in per_stat:
                hv, lv = per_stat[stat_name]
                cells += [_join_holders(hv.holders), hv.value,
                          _join_holders(lv.holders), lv.value]
            else:
                cells += [None, None, None, None]
        rows.append(cells)
    return header, rows


_TABLE_BUILDERS = {
    "cgr": _cgr_table,
    "gr": lambda r: _values_table(r.tables[GR], with_stats=False),
    "grm": lambda r: _values_table(r.tables[GRM], with_stats=False),
    "grn": lambda r: _values_table(r.tables[GRN], with_stats=False),
    "gr_stats": lambda r: _values_table(r.tables[GR], with_stats=True),
    "grm_stats": lambda r: _values_table(r.tables[GRM], with_stats=True),
    "grn_stats": lambda r: _values_table(r.tables[GRN], with_stats=True),
    "bestfit": _bestfit_table,
    "extremal_values": _extremal_values_table,
    "extremal_stats": _extremal_stats_table,
}


# ---------------------------------------------------------------------------
# json builders
# ---------------------------------------------------------------------------


def _stats_json(stats: Optional[StatSummary]):
    if stats is None:
        return None
    return {
        "n": stats.n,
        "mean": stats.mean,
        "median": stats.median,
        "std_dev": stats.std_dev,
        "range": stats.value_range,
        "cv": stats.cv,
        "skewness": stats.skewness,
        "kurtosis": stats.kurtosis,
        "skew_class": stats.skew_class,
        "kurt_class": stats.kurt_class,
    }


def _json_payload(report: AnalysisReport, section: str):
    if section == "cgr":
        return [{"journal": row.journal_id,
                 "sum_cited_papers": row.totals.sum_cited_papers,
                 "sum_total_citations": row.totals.sum_total_citations,
                 "cgr": row.totals.cgr}
                for row in report.cgr_rows]
    if section in _SECTION_INDICATOR:
        table = report.tables[_SECTION_INDICATOR[section]]
        with_stats = section.endswith("_stats")
        out = {"indicator": table.indicator, "years": list(table.years), "journals": []}
        for row in table.rows:
            entry = {"journal": row.journal_id, "values": list(row.values)}
            if with_stats:
                entry["statistics"] = _stats_json(row.stats)
            out["journals"].append(entry)
        return out
    if section == "bestfit":
        out = []
        for verdict in report.verdicts:
            entry = {"journal": verdict.journal_id,
                     "threshold": verdict.threshold,
                     "irregular": verdict.irregular}
            if verdict.fit is None:
                entry["best_rejected_r_squared"] = verdict.best_rejected_r_squared
            else:
                fit = verdict.fit
                entry.update({
                    "family": fit.family.label,
                    "equation": fit.family.equation,
                    "coefficients": list(fit.coefficients),
                    "r_squared": fit.r_squared,
                    "r_squared_space": fit.r_squared_space,
                    "r_squared_original": fit.r_squared_original,
                    "residuals": list(fit.residuals),
                })
            out.append(entry)
        return out
    if section == "extremal_values":
        return {indicator: {
                    "highest": {"value": ext.highest.value,
                                "holders": [list(h) for h in ext.highest.holders]},
                    "lowest": {"value": ext.lowest.value,
                               "holders": [list(h) for h in ext.lowest.holders]},
                    "range": ext.value_range}
                for indicator, ext in report.extremal.values.items()}
    if section == "extremal_stats":
        return {indicator: {stat: {"highest": {"value": hv.value, "holders": list(hv.holders)},
                                   "lowest": {"value": lv.value, "holders": list(lv.holders)}}
                            for stat, (hv, lv) in per_stat.items()}
                for indicator, per_stat in report.extremal.statistics.items()}
    raise KeyError(section)


def _metadata_payload(report: AnalysisReport):
    config = report.config
    return {
        "tool": "garfield",
        "version": __version__,
        "config": {
            "reference_year": config.reference_year,
            "fit_threshold": config.fit_threshold,
            "max_poly_degree": config.max_poly_degree,
            "year_index_origin": config.year_index_origin,
        },
        "input": {
            "path": str(report.corpus.path),
            "schema": report.corpus.schema,
            "sha256": report.corpus.input_digest,
        },
    }


def corpus_payload(corpus: CorpusFile):
    """Full-precision echo of the parsed corpus (the json round-trip path)."""
    journals = []
    for series in sorted(corpus.journals, key=lambda s: s.journal_id):
        journals.append({
            "journal": series.journal_id,
            "name": series.journal_name,
            "sum_cited_papers": series.sum_cited_papers,
            "sum_total_citations": series.sum_total_citations,
            "observations": [{"year": obs.year,
                              "cited_papers": obs.cited_papers,
                              "total_citations": obs.total_citations,
                              "gr": obs.gr_value}
                             for obs in series.observations],
        })
    return {"schema": corpus.schema, "journals": journals}


def corpus_from_payload(payload) -> tuple[JournalSeries, ...]:
    """Rebuild journal series from a :func:`corpus_payload` echo."""
    from .model import YearObservation

    journals = []
    for entry in payload["journals"]:
        observations = tuple(
            YearObservation(obs["year"], obs["cited_papers"],
                            obs["total_citations"], obs["gr"])
            for obs in entry["observations"])
        journals.append(JournalSeries(entry["journal"], entry["name"], payload["schema"],
                                      observations, entry["sum_cited_papers"],
                                      entry["sum_total_citations"]))
    return tuple(journals)


# ---------------------------------------------------------------------------
# writers
# ---------------------------------------------------------------------------


def _write_text(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


def _csv_cell(value) -> str:
    rendered = _cell(value)
    if any(ch in rendered for ch in ',"\n'):
        rendered = '"' + rendered.replace('"', '""') + '"'
    return rendered


def _csv_text(header: list[str], rows: list[list]) -> str:
    lines = [",".join(_csv_cell(value) for value in header)]
    lines += [",".join(_csv_cell(value) for value in row) for row in rows]
    return "\n".join(lines) + "\n"


def _markdown_text(header: list[str], rows: list[list]) -> str:
    def md_cell(value) -> str:
        rendered = _cell(value)
        return rendered if rendered else "---"

    lines = ["| " + " | ".join(header) + " |",
             "| " + " | ".join("---" for _ in header) + " |"]
    lines += ["| " + " | ".join(md_cell(value) for value in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def emit_report(report: AnalysisReport, format: str, out_dir,
                sections: Optional[Sequence[str]] = None) -> list[Path]:
    """Write one file per table into *out_dir*; returns the written paths.

    ``sections`` restricts the emitted tables (used by the narrower CLI
    subcommands); metadata is always written alongside, and json format
    additionally writes the corpus echo. Sections whose table is absent
    (GRM without totals) are skipped.
    """
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}, expected one of {FORMATS}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    chosen = SECTIONS_ALL if sections is None else tuple(sections)

    suffix = {"csv": ".csv", "markdown": ".md", "json": ".json"}[format]
    written: list[Path] = []
    for section in chosen:
        if section not in _TABLE_BUILDERS:
            raise ValueError(f"unknown report section {section!r}")
        indicator = _SECTION_INDICATOR.get(section)
        if indicator is not None and indicator not in report.tables:
            continue
        path = out_dir / f"{section}{suffix}"
        if format == "json":
            written.append(_write_text(path, _json_text(_json_payload(report, section))))
        else:
            header, rows = _TABLE_BUILDERS[section](report)
            text = _csv_text(header, rows) if format == "csv" else _markdown_text(header, rows)
            written.append(_write_text(path, text))

    written.append(_write_text(out_dir / "metadata.json",
                               _json_text(_metadata_payload(report))))
    if format == "json":
        written.append(_write_text(out_dir / "corpus.json",
                                   _json_text(corpus_payload(report.corpus))))
    return written


def emit_plot_data(series: IndicatorSeries, verdict: BestFitVerdict, path,
                   config: AnalysisConfig) -> Path:
    """Write observed-vs-fitted plot data for an accepted best fit.

    The first block holds the training points (x, year, observed, fitted);
    after a blank line, a second block evaluates the curve on a 10x densified
    x grid (fractional years, no observed column).
    """
    if verdict.irregular:
        raise ValueError(f"{verdict.journal_id}: no best-fit model to plot")
    x = year_index(series, config)
    years = series.years
    observed = series.series_values
    fitted = verdict.fit.predict(x)

    lines = ["x,year,observed,fitted"]
    for xi, year, obs, fit in zip(x, years, observed, fitted):
        lines.append(f"{float(xi)!r},{year},{float(obs)!r},{float(fit)!r}")
    lines.append("")
    dense = np.linspace(x[0], x[-1], 10 * (len(x) - 1) + 1) if len(x) > 1 else x
    dense_fitted = verdict.fit.predict(dense)
    first_year = years[0]
    for xi, fit in zip(dense, dense_fitted):
        year = first_year + (xi - config.year_index_origin)
        lines.append(f"{float(xi)!r},{float(year)!r},,{float(fit)!r}")

    return _write_text(Path(path), "\n".join(lines) + "\n")
