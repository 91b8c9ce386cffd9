import json

import pytest

import reference_values as ref
from garfield import (
    AnalysisConfig,
    build_report,
    emit_plot_data,
    emit_report,
    gr_yearly,
    load_corpus,
    select_best_fit,
)
from garfield.report import corpus_from_payload, corpus_payload, round_half_away

from conftest import GR_CSV


def test_cgr_table_order_and_values(study_report):
    got = [(row.journal_id, float(round_half_away(row.totals.cgr)))
           for row in study_report.cgr_rows]
    assert got == list(ref.CGR_PUBLISHED)
    cgrs = [row.totals.cgr for row in study_report.cgr_rows]
    assert cgrs == sorted(cgrs, reverse=True)


def test_cgr_ties_break_lexically(tmp_path):
    src = tmp_path / "tie.csv"
    src.write_text("journal,year,gr\nZZZ,2009,2.0\nZZZ,2010,2.0\n"
                   "AAA,2009,2.0\nAAA,2010,2.0\n")
    totals = tmp_path / "totals.csv"
    totals.write_text("journal,sum_cited_papers,sum_total_citations\n"
                      "ZZZ,10,20\nAAA,30,60\n")
    corpus = load_corpus(src, "precomputed-gr", totals)
    report = build_report(corpus, AnalysisConfig())
    assert [row.journal_id for row in report.cgr_rows] == ["AAA", "ZZZ"]


def test_indicator_tables_have_stats_rows(study_report):
    table = study_report.tables["GR"]
    assert table.years == ref.YEARS
    assert [row.journal_id for row in table.rows] == sorted(ref.JOURNALS)
    for row in table.rows:
        assert row.stats is not None and row.stats.n == 12


def test_markdown_cgr_first_row_is_ijbb(study_report, tmp_path):
    emit_report(study_report, "markdown", tmp_path, sections=("cgr",))
    lines = (tmp_path / "cgr.md").read_text().splitlines()
    assert lines[2].startswith("| IJBB |")
    assert "9.01" in lines[2]


def test_emission_is_byte_identical(study_report, tmp_path):
    for format_ in ("csv", "markdown", "json"):
        first = tmp_path / f"a_{format_}"
        second = tmp_path / f"b_{format_}"
        paths_a = emit_report(study_report, format_, first)
        paths_b = emit_report(study_report, format_, second)
        assert [p.name for p in paths_a] == [p.name for p in paths_b]
        for pa, pb in zip(paths_a, paths_b):
            assert pa.read_bytes() == pb.read_bytes()


def test_rounding_is_half_away_from_zero():
    assert str(round_half_away(0.005)) == "0.01"
    assert str(round_half_away(-0.005)) == "-0.01"
    assert str(round_half_away(2.675)) == "2.68"
    assert str(round_half_away(-2.675)) == "-2.68"
    assert str(round_half_away(-0.0001)) == "0.00"
    assert str(round_half_away(1.0)) == "1.00"


def test_empty_corpus_yields_header_only_tables(tmp_path):
    src = tmp_path / "empty.csv"
    src.write_text("journal,year,gr\n")
    with pytest.warns(UserWarning):
        corpus = load_corpus(src, "precomputed-gr")
    report = build_report(corpus, AnalysisConfig())
    paths = emit_report(report, "csv", tmp_path / "out")
    by_name = {p.name: p for p in paths}
    assert by_name["gr.csv"].read_text() == "journal\n"
    assert by_name["cgr.csv"].read_text().startswith("journal,sum_cited_papers")
    assert len(by_name["cgr.csv"].read_text().splitlines()) == 1


def test_json_keeps_full_precision(study_report, tmp_path):
    emit_report(study_report, "json", tmp_path, sections=("cgr",))
    payload = json.loads((tmp_path / "cgr.json").read_text())
    ijbb = next(row for row in payload if row["journal"] == "IJBB")
    assert ijbb["cgr"] == 5227 / 580  # exact float, not 9.01


def test_json_corpus_round_trip(study_corpus, study_report, tmp_path):
    paths = emit_report(study_report, "json", tmp_path)
    corpus_file = next(p for p in paths if p.name == "corpus.json")
    payload = json.loads(corpus_file.read_text())
    rebuilt = corpus_from_payload(payload)
    assert rebuilt == study_corpus.journals
    assert corpus_payload(study_corpus) == payload


def test_bestfit_table_rows(study_report, tmp_path):
    emit_report(study_report, "csv", tmp_path, sections=("bestfit",))
    lines = (tmp_path / "bestfit.csv").read_text().splitlines()
    rows = {line.split(",")[0]: line for line in lines[1:]}
    for journal in ref.IRREGULAR_JOURNALS:
        assert ",irregular," in rows[journal]
    assert ",exponential," in rows["JMP"]
    assert ",log," in rows["JMP"]  # r_squared_space column


def test_extremal_values_table_uses_display_rounding(study_report, tmp_path):
    emit_report(study_report, "csv", tmp_path, sections=("extremal_values",))
    lines = (tmp_path / "extremal_values.csv").read_text().splitlines()
    grm = next(line for line in lines if line.startswith("GRM,"))
    cells = grm.split(",")
    # range between the displayed extremes: 2.33 - 0.14
    assert cells[-1] == "2.19"
    assert cells[3] == "2.33" and cells[6] == "0.14"


def test_grm_skipped_without_totals(tmp_path):
    corpus = load_corpus(GR_CSV, "precomputed-gr")  # no totals file
    report = build_report(corpus, AnalysisConfig())
    assert "GRM" not in report.tables
    assert report.cgr_rows == ()
    paths = emit_report(report, "csv", tmp_path)
    names = {p.name for p in paths}
    assert "grm.csv" not in names and "gr.csv" in names


def test_report_respects_reference_year(study_corpus):
    report_2022 = build_report(study_corpus, AnalysisConfig(reference_year=2022))
    table = report_2022.tables["GRN"]
    dsj = next(row for row in table.rows if row.journal_id == "DSJ")
    assert dsj.values[0] == pytest.approx(14.35 / 13, abs=1e-12)


def test_plot_data_for_accepted_fit(study_corpus, config, tmp_path):
    dsj = gr_yearly(study_corpus.by_id()["DSJ"])
    verdict = select_best_fit(dsj, config)
    path = emit_plot_data(dsj, verdict, tmp_path / "plot.csv", config)
    lines = path.read_text().splitlines()
    assert lines[0] == "x,year,observed,fitted"
    training = lines[1:13]
    assert len(training) == 12
    first = training[0].split(",")
    assert float(first[0]) == 1.0 and first[1] == "2009"
    assert float(first[2]) == 14.35
    # blank line separates the densified block
    assert lines[13] == ""
    dense = lines[14:]
    assert len(dense) == 10 * 11 + 1
    assert dense[0].split(",")[2] == ""


def test_plot_data_fitted_matches_logarithmic_intercept(study_corpus, tmp_path):
    # with the quartic excluded, DSJ picks its logarithmic fit whose value at
    # X=1 is the intercept
    config = AnalysisConfig(max_poly_degree=1)
    dsj = gr_yearly(study_corpus.by_id()["DSJ"])
    verdict = select_best_fit(dsj, config)
    assert verdict.fit.family.kind == "logarithmic"
    path = emit_plot_data(dsj, verdict, tmp_path / "plot.csv", config)
    first = path.read_text().splitlines()[1].split(",")
    assert float(first[3]) == pytest.approx(15.635, abs=0.05)


def test_plot_data_exact_line_observed_equals_fitted(tmp_path):
    from conftest import make_raw_series

    series = make_raw_series(cited=(1, 1, 1, 1), citations=(2, 4, 6, 8))
    gr = gr_yearly(series)
    config = AnalysisConfig()
    verdict = select_best_fit(gr, config)
    path = emit_plot_data(gr, verdict, tmp_path / "line.csv", config)
    for line in path.read_text().splitlines()[1:5]:
        _, _, observed, fitted = line.split(",")
        assert float(observed) == pytest.approx(float(fitted), abs=1e-9)


def test_plot_data_refuses_irregular(study_corpus, config, tmp_path):
    jaa = gr_yearly(study_corpus.by_id()["JAA"])
    verdict = select_best_fit(jaa, config)
    with pytest.raises(ValueError, match="no best-fit model"):
        emit_plot_data(jaa, verdict, tmp_path / "never.csv", config)


def test_pipeline_survives_short_journals(tmp_path):
    # a 2-year journal has no fittable family and no skew/kurt; the report
    # must still assemble and emit with the gaps left blank
    src = tmp_path / "short.csv"
    src.write_text("journal,year,cited_papers,total_citations\n"
                   "LONG,2016,10,30\nLONG,2017,12,40\nLONG,2018,9,25\n"
                   "LONG,2019,14,50\nLONG,2020,8,20\n"
                   "TINY,2019,5,10\nTINY,2020,4,12\n")
    corpus = load_corpus(src, "raw-counts")
    report = build_report(corpus, AnalysisConfig())
    tiny_verdict = next(v for v in report.verdicts if v.journal_id == "TINY")
    assert tiny_verdict.irregular and tiny_verdict.candidates == ()
    tiny_row = next(r for r in report.tables["GR"].rows if r.journal_id == "TINY")
    assert tiny_row.stats is not None and tiny_row.stats.skewness is None
    paths = emit_report(report, "markdown", tmp_path / "out")
    stats_table = next(p for p in paths if p.name == "gr_stats.md").read_text()
    tiny_line = next(line for line in stats_table.splitlines() if "TINY" in line)
    assert "---" in tiny_line  # unavailable cells render as placeholders


def test_metadata_echoes_config_and_digest(study_report, study_corpus, tmp_path):
    emit_report(study_report, "csv", tmp_path, sections=())
    payload = json.loads((tmp_path / "metadata.json").read_text())
    assert payload["config"]["reference_year"] == 2021
    assert payload["config"]["fit_threshold"] == 0.85
    assert payload["input"]["sha256"] == study_corpus.input_digest
    assert payload["version"]
    assert "time" not in json.dumps(payload).lower()
