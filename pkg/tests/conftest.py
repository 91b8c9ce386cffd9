from pathlib import Path

import pytest

from garfield import AnalysisConfig, JournalSeries, YearObservation, load_corpus

DATA_DIR = Path(__file__).resolve().parents[1] / "data"
GR_CSV = DATA_DIR / "indian_journals_gr.csv"
TOTALS_CSV = DATA_DIR / "indian_journals_totals.csv"


@pytest.fixture(scope="session")
def study_corpus():
    """The bundled twelve-journal precomputed-gr corpus with totals."""
    return load_corpus(GR_CSV, "precomputed-gr", TOTALS_CSV)


@pytest.fixture(scope="session")
def config():
    return AnalysisConfig()


@pytest.fixture(scope="session")
def study_report(study_corpus, config):
    from garfield import build_report

    return build_report(study_corpus, config)


def make_raw_series(journal_id="SYN", first_year=2009, cited=(), citations=(),
                    name=None):
    """Raw-counts series builder for synthetic tests."""
    observations = tuple(
        YearObservation(first_year + i, cited_papers=cp, total_citations=tc)
        for i, (cp, tc) in enumerate(zip(cited, citations)))
    return JournalSeries(journal_id, name or journal_id, "raw-counts", observations)


def make_gr_series(journal_id="SYN", first_year=2009, gr=(), totals=None):
    """Precomputed-gr series builder for synthetic tests."""
    observations = tuple(
        YearObservation(first_year + i, gr_value=value) for i, value in enumerate(gr))
    sum_cp, sum_tc = totals if totals is not None else (None, None)
    return JournalSeries(journal_id, journal_id, "precomputed-gr", observations,
                         sum_cited_papers=sum_cp, sum_total_citations=sum_tc)
