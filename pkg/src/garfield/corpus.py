"""CSV ingestion of citation corpora.

Two file schemas are accepted, both UTF-8 with a mandatory header and rows
in any order:

* ``raw-counts``      columns exactly ``journal,year,cited_papers,total_citations``
* ``precomputed-gr``  columns exactly ``journal,year,gr``, optionally joined by
  a totals file with columns ``journal,sum_cited_papers,sum_total_citations``

Every journal is grouped, sorted by year and validated on load; all parse
and validation problems are collected with their line numbers before the
loader gives up, so one run reports everything wrong with a file.
"""

from __future__ import annotations

import csv
import hashlib
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .model import (
    MODES,
    PRECOMPUTED_GR,
    RAW_COUNTS,
    JournalSeries,
    YearObservation,
    series_issues,
)

RAW_COLUMNS = ("journal", "year", "cited_papers", "total_citations")
GR_COLUMNS = ("journal", "year", "gr")
TOTALS_COLUMNS = ("journal", "sum_cited_papers", "sum_total_citations")


class CorpusFormatError(ValueError):
    """Raised on malformed corpus files; carries every problem found."""

    def __init__(self, path, problems: Sequence[str]):
        self.path = Path(path)
        self.problems = list(problems)
        detail = "\n  ".join(self.problems)
        super().__init__(f"{self.path}: {len(self.problems)} problem(s):\n  {detail}")


@dataclass(frozen=True)
class CorpusFile:
    """A parsed, validated corpus plus a digest of its input bytes."""

    path: Path
    schema: str
    journals: tuple[JournalSeries, ...]
    input_digest: str

    def by_id(self) -> dict[str, JournalSeries]:
        return {series.journal_id: series for series in self.journals}


def _read_rows(path: Path, expected: tuple[str, ...]) -> list[tuple[int, dict]]:
    # utf-8-sig: spreadsheet exports routinely prefix a BOM
    with open(path, encoding="utf-8-sig", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise CorpusFormatError(path, ["file is empty, expected a header row"])
        header = tuple(h.strip() for h in header)
        if header != expected:
            raise CorpusFormatError(
                path,
                [f"line 1: expected columns {','.join(expected)}, got {','.join(header)}"])
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(expected):
                raise CorpusFormatError(
                    path, [f"line {lineno}: expected {len(expected)} cells, got {len(row)}"])
            rows.append((lineno, dict(zip(expected, (cell.strip() for cell in row)))))
        return rows


def _parse_int(cell: str, column: str, lineno: int, problems: list[str]) -> Optional[int]:
    try:
        return int(cell)
    except ValueError:
        problems.append(f"line {lineno}: column {column}: not an integer: {cell!r}")
        return None


def _parse_float(cell: str, column: str, lineno: int, problems: list[str]) -> Optional[float]:
    try:
        return float(cell)
    except ValueError:
        problems.append(f"line {lineno}: column {column}: not a number: {cell!r}")
        return None


def _digest(*paths: Path) -> str:
    sha = hashlib.sha256()
    for path in paths:
        sha.update(Path(path).read_bytes())
    return sha.hexdigest()


def load_corpus(path, schema: str, totals_path=None) -> CorpusFile:
    """Parse and validate a corpus file.

    Parameters
    ----------
    path : path-like
        The corpus CSV.
    schema : str
        ``raw-counts`` or ``precomputed-gr``.
    totals_path : path-like, optional
        Companion totals CSV; only meaningful for the precomputed schema,
        where it enables the consolidated-ratio outputs.
    """
    path = Path(path)
    if schema not in MODES:
        raise CorpusFormatError(path, [f"unknown schema {schema!r}, expected one of {MODES}"])
    if totals_path is not None and schema != PRECOMPUTED_GR:
        raise CorpusFormatError(path, ["a totals file only applies to the precomputed-gr schema"])

    columns = RAW_COLUMNS if schema == RAW_COUNTS else GR_COLUMNS
    rows = _read_rows(path, columns)

    problems: list[str] = []
    per_journal: dict[str, list[tuple[int, YearObservation]]] = {}
    for lineno, row in rows:
        journal = row["journal"]
        if not journal:
            problems.append(f"line {lineno}: column journal: empty journal id")
            continue
        year = _parse_int(row["year"], "year", lineno, problems)
        if schema == RAW_COUNTS:
            cp = _parse_int(row["cited_papers"], "cited_papers", lineno, problems)
            tc = _parse_int(row["total_citations"], "total_citations", lineno, problems)
            if None in (year, cp, tc):
                continue
            obs = YearObservation(year, cited_papers=cp, total_citations=tc)
        else:
            gr = _parse_float(row["gr"], "gr", lineno, problems)
            if None in (year, gr):
                continue
            obs = YearObservation(year, gr_value=gr)
        per_journal.setdefault(journal, []).append((lineno, obs))

    totals: dict[str, tuple[int, int]] = {}
    if totals_path is not None:
        for lineno, row in _read_rows(Path(totals_path), TOTALS_COLUMNS):
            journal = row["journal"]
            cp = _parse_int(row["sum_cited_papers"], "sum_cited_papers", lineno, problems)
            tc = _parse_int(row["sum_total_citations"], "sum_total_citations", lineno, problems)
            if None in (cp, tc):
                continue
            if journal not in per_journal:
                problems.append(
                    f"line {lineno}: totals for unknown journal {journal!r}")
                continue
            if journal in totals:
                problems.append(f"line {lineno}: duplicate totals for journal {journal!r}")
                continue
            totals[journal] = (cp, tc)

    journals: list[JournalSeries] = []
    for journal_id in sorted(per_journal):
        entries = sorted(per_journal[journal_id], key=lambda item: (item[1].year, item[0]))
        line_of_year = {}
        for lineno, obs in entries:
            line_of_year.setdefault(obs.year, lineno)
        sum_cp, sum_tc = totals.get(journal_id, (None, None))
        series = JournalSeries(
            journal_id=journal_id,
            journal_name=journal_id,
            mode=schema,
            observations=tuple(obs for _, obs in entries),
            sum_cited_papers=sum_cp,
            sum_total_citations=sum_tc,
        )
        issues = series_issues(series)
        if issues:
            for issue in issues:
                lineno = line_of_year.get(issue.year)
                at = f"line {lineno}: " if lineno is not None else ""
                problems.append(f"{at}{issue}")
        else:
            journals.append(series)

    if problems:
        raise CorpusFormatError(path, problems)
    if not journals:
        warnings.warn(f"{path}: corpus is empty (header only)", stacklevel=2)

    digest_paths = (path,) if totals_path is None else (path, Path(totals_path))
    return CorpusFile(path, schema, tuple(journals), _digest(*digest_paths))
