"""Command-line front end: validate -> indicators -> stats -> fit -> report.

Exit codes: 0 on success, 1 when the input data (or its combination with
the configuration) is invalid, 2 on usage errors such as unknown flags or
out-of-range option values. Diagnostics go to stderr; tables go to files.
"""

from __future__ import annotations

import re
import sys
from pathlib import Path

import click

from .corpus import CorpusFormatError, load_corpus
from .indicators import gr_yearly
from .model import MODES, AnalysisConfig
from .report import (
    FORMATS,
    SECTIONS_FIT,
    SECTIONS_INDICATORS,
    SECTIONS_STATS,
    build_report,
    emit_plot_data,
    emit_report,
)
from .version import __version__


def _check_threshold(ctx, param, value):
    if not 0.0 <= value <= 1.0:
        raise click.BadParameter(f"must lie in [0, 1], got {value}")
    return value


def _input_options(fn):
    fn = click.option("--totals", "totals_path",
                      type=click.Path(exists=True, dir_okay=False),
                      default=None,
                      help="Companion totals CSV (precomputed-gr schema only).")(fn)
    fn = click.option("--schema", type=click.Choice(MODES), required=True,
                      help="Corpus file schema.")(fn)
    fn = click.option("--input", "input_path",
                      type=click.Path(exists=True, dir_okay=False), required=True,
                      help="Corpus CSV file.")(fn)
    return fn


def _run_options(fn):
    fn = click.option("--format", "format_", type=click.Choice(FORMATS),
                      default="markdown", show_default=True,
                      help="Table output format.")(fn)
    fn = click.option("--output-dir", type=click.Path(file_okay=False), default=".",
                      show_default=True, help="Directory for emitted files.")(fn)
    fn = click.option("--fit-threshold", type=float, default=0.85, show_default=True,
                      callback=_check_threshold,
                      help="Minimum acceptable R-squared for best-fit selection.")(fn)
    fn = click.option("--reference-year", type=int, default=2021, show_default=True,
                      help="Reference year for age computation.")(fn)
    return fn


@click.group()
@click.version_option(__version__, prog_name="garfield")
def main():
    """Garfield Ratio indicators, statistics and trend fits for citation data."""


def _load(input_path, schema, totals_path):
    try:
        return load_corpus(input_path, schema, totals_path)
    except CorpusFormatError as exc:
        for problem in exc.problems:
            click.echo(f"{exc.path}: {problem}", err=True)
        sys.exit(1)


def _emit(input_path, schema, totals_path, reference_year, fit_threshold,
          output_dir, format_, sections, with_plots=False):
    corpus = _load(input_path, schema, totals_path)
    config = AnalysisConfig(reference_year=reference_year, fit_threshold=fit_threshold)
    try:
        report = build_report(corpus, config)
        written = emit_report(report, format_, output_dir, sections)
        if with_plots:
            series_by_id = {s.journal_id: gr_yearly(s) for s in corpus.journals}
            for verdict in report.verdicts:
                if verdict.irregular:
                    click.echo(f"{verdict.journal_id}: irregular, no plot data", err=True)
                    continue
                safe_id = re.sub(r"[^\w.-]", "_", verdict.journal_id)
                path = Path(output_dir) / f"plot_{safe_id}.csv"
                written.append(emit_plot_data(series_by_id[verdict.journal_id],
                                              verdict, path, config))
    except ValueError as exc:
        click.echo(str(exc), err=True)
        sys.exit(1)
    click.echo(f"wrote {len(written)} file(s) to {output_dir}", err=True)


@main.command()
@_input_options
def validate(input_path, schema, totals_path):
    """Check a corpus file; report every violation with its line number."""
    corpus = _load(input_path, schema, totals_path)
    for series in corpus.journals:
        click.echo(f"OK {series.journal_id} ({len(series.observations)} years)")
    click.echo(f"{len(corpus.journals)} journals OK")


@main.command()
@_input_options
@_run_options
def indicators(input_path, schema, totals_path, reference_year, fit_threshold,
               output_dir, format_):
    """Emit the yearly GR/GRM/GRN indicator tables."""
    _emit(input_path, schema, totals_path, reference_year, fit_threshold,
          output_dir, format_, SECTIONS_INDICATORS)


@main.command()
@_input_options
@_run_options
def stats(input_path, schema, totals_path, reference_year, fit_threshold,
          output_dir, format_):
    """Emit the indicator tables with their statistics rows appended."""
    _emit(input_path, schema, totals_path, reference_year, fit_threshold,
          output_dir, format_, SECTIONS_STATS)


@main.command()
@_input_options
@_run_options
def fit(input_path, schema, totals_path, reference_year, fit_threshold,
        output_dir, format_):
    """Emit the best-fit table and per-journal plot data."""
    _emit(input_path, schema, totals_path, reference_year, fit_threshold,
          output_dir, format_, SECTIONS_FIT, with_plots=True)


@main.command()
@_input_options
@_run_options
def report(input_path, schema, totals_path, reference_year, fit_threshold,
           output_dir, format_):
    """Emit the full report: every table plus plot data."""
    _emit(input_path, schema, totals_path, reference_year, fit_threshold,
          output_dir, format_, None, with_plots=True)


if __name__ == "__main__":
    main()
