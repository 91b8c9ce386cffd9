"""Garfield Ratio citation indicators, descriptive statistics and trend fits.

The package computes the Garfield Ratio family (yearly GR, consolidated CGR,
modified GRM, time-normalised GRN and the fractional shares FC/FTC) over
journal-year citation data, characterises each series with seven descriptive
statistics, fits and selects trend models by R-squared, and emits the whole
analysis as reproducible tables.
"""

from .corpus import CorpusFile, CorpusFormatError, load_corpus
from .indicators import (
    ConsolidatedTotals,
    consolidated,
    fractional_cited,
    fractional_citations,
    gr_yearly,
    grm_yearly,
    grn_yearly,
)
from .model import (
    FC,
    FTC,
    GR,
    GRM,
    GRN,
    INDICATORS,
    MODES,
    PRECOMPUTED_GR,
    RAW_COUNTS,
    AnalysisConfig,
    IndicatorSeries,
    JournalSeries,
    SeriesValidationError,
    ValidationIssue,
    YearObservation,
    series_issues,
    validate_series,
)
from .regression import (
    BestFitVerdict,
    ExponentialTrend,
    FitResult,
    LinearTrend,
    LogarithmicTrend,
    ModelFamily,
    PolynomialTrend,
    TrendSelector,
    fit_exponential,
    fit_linear,
    fit_logarithmic,
    fit_polynomial,
    select_best_fit,
    year_index,
)
from .report import AnalysisReport, build_report, emit_plot_data, emit_report
from .stats import (
    KURTOSIS_CUTOFF_EXCESS,
    KURTOSIS_CUTOFF_TABLE_CONVENTION,
    ExtremalReport,
    StatSummary,
    extremal_summary,
    summarize,
    summarize_series,
)
from .version import __version__

__all__ = [
    "AnalysisConfig",
    "AnalysisReport",
    "BestFitVerdict",
    "ConsolidatedTotals",
    "CorpusFile",
    "CorpusFormatError",
    "ExponentialTrend",
    "ExtremalReport",
    "FC",
    "FTC",
    "FitResult",
    "GR",
    "GRM",
    "GRN",
    "INDICATORS",
    "IndicatorSeries",
    "JournalSeries",
    "KURTOSIS_CUTOFF_EXCESS",
    "KURTOSIS_CUTOFF_TABLE_CONVENTION",
    "LinearTrend",
    "LogarithmicTrend",
    "MODES",
    "ModelFamily",
    "PRECOMPUTED_GR",
    "PolynomialTrend",
    "RAW_COUNTS",
    "SeriesValidationError",
    "StatSummary",
    "TrendSelector",
    "ValidationIssue",
    "YearObservation",
    "__version__",
    "build_report",
    "consolidated",
    "emit_plot_data",
    "emit_report",
    "extremal_summary",
    "fit_exponential",
    "fit_linear",
    "fit_logarithmic",
    "fit_polynomial",
    "fractional_cited",
    "fractional_citations",
    "gr_yearly",
    "grm_yearly",
    "grn_yearly",
    "load_corpus",
    "select_best_fit",
    "series_issues",
    "summarize",
    "summarize_series",
    "validate_series",
    "year_index",
]
