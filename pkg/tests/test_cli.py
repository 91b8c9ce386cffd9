import pytest
from click.testing import CliRunner

from garfield.cli import main

from conftest import GR_CSV, TOTALS_CSV

BASE = ["--input", str(GR_CSV), "--schema", "precomputed-gr",
        "--totals", str(TOTALS_CSV)]


@pytest.fixture()
def runner():
    return CliRunner()


def test_validate_ok(runner):
    result = runner.invoke(main, ["validate", *BASE])
    assert result.exit_code == 0
    assert "12 journals OK" in result.output
    assert "OK DSJ (12 years)" in result.output


def test_validate_broken_file_exits_one(runner, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("journal,year,gr\nDSJ,2009,2.0\nDSJ,2009,3.0\n")
    result = runner.invoke(main, ["validate", "--input", str(bad),
                                  "--schema", "precomputed-gr"])
    assert result.exit_code == 1
    assert "duplicate year 2009" in result.stderr


def test_fit_threshold_out_of_range_is_usage_error(runner, tmp_path):
    result = runner.invoke(main, ["fit", *BASE, "--fit-threshold", "1.01",
                                  "--output-dir", str(tmp_path)])
    assert result.exit_code == 2


def test_unknown_flag_is_usage_error(runner, tmp_path):
    result = runner.invoke(main, ["report", *BASE, "--no-such-flag",
                                  "--output-dir", str(tmp_path)])
    assert result.exit_code == 2


def test_unknown_subcommand_is_usage_error(runner):
    result = runner.invoke(main, ["frobnicate"])
    assert result.exit_code == 2


def test_report_writes_all_tables(runner, tmp_path):
    result = runner.invoke(main, ["report", *BASE, "--output-dir", str(tmp_path),
                                  "--format", "csv"])
    assert result.exit_code == 0
    names = {p.name for p in tmp_path.iterdir()}
    expected = {"cgr.csv", "gr.csv", "grm.csv", "grn.csv", "gr_stats.csv",
                "grm_stats.csv", "grn_stats.csv", "bestfit.csv",
                "extremal_values.csv", "extremal_stats.csv", "metadata.json"}
    assert expected <= names
    assert {f"plot_{j}.csv" for j in ("DSJ", "JMP", "JSIR")} <= names
    assert "plot_JAA.csv" not in names  # irregular, reported on stderr
    assert "irregular" in result.stderr


def test_subcommand_outputs_are_subsets_of_report(runner, tmp_path):
    full = tmp_path / "full"
    runner.invoke(main, ["report", *BASE, "--output-dir", str(full), "--format", "csv"],
                  catch_exceptions=False)
    for subcommand, names in (
        ("indicators", ("gr.csv", "grm.csv", "grn.csv")),
        ("stats", ("gr_stats.csv", "grm_stats.csv", "grn_stats.csv")),
        ("fit", ("bestfit.csv", "plot_DSJ.csv", "plot_JMP.csv")),
    ):
        out = tmp_path / subcommand
        result = runner.invoke(main, [subcommand, *BASE, "--output-dir", str(out),
                                      "--format", "csv"])
        assert result.exit_code == 0
        for name in (*names, "metadata.json"):
            assert (out / name).read_bytes() == (full / name).read_bytes()


def test_repeated_runs_are_identical(runner, tmp_path):
    first, second = tmp_path / "one", tmp_path / "two"
    for out in (first, second):
        result = runner.invoke(main, ["report", *BASE, "--output-dir", str(out),
                                      "--format", "markdown"])
        assert result.exit_code == 0
    for path in sorted(first.iterdir()):
        assert path.read_bytes() == (second / path.name).read_bytes()


def test_reference_year_flag_changes_grn(runner, tmp_path):
    out_2021, out_2022 = tmp_path / "y2021", tmp_path / "y2022"
    runner.invoke(main, ["indicators", *BASE, "--output-dir", str(out_2021),
                         "--format", "csv"], catch_exceptions=False)
    runner.invoke(main, ["indicators", *BASE, "--output-dir", str(out_2022),
                         "--reference-year", "2022", "--format", "csv"],
                  catch_exceptions=False)
    assert (out_2021 / "gr.csv").read_bytes() == (out_2022 / "gr.csv").read_bytes()
    grn_2021 = (out_2021 / "grn.csv").read_text().splitlines()
    grn_2022 = (out_2022 / "grn.csv").read_text().splitlines()
    dsj_2021 = next(line for line in grn_2021 if line.startswith("DSJ,"))
    dsj_2022 = next(line for line in grn_2022 if line.startswith("DSJ,"))
    assert dsj_2021.split(",")[1] == "1.20"
    assert dsj_2022.split(",")[1] == "1.10"


def test_bad_reference_year_is_data_error(runner, tmp_path):
    result = runner.invoke(main, ["indicators", *BASE, "--output-dir", str(tmp_path),
                                  "--reference-year", "2015"])
    assert result.exit_code == 1
    assert "non-positive age" in result.stderr


def test_missing_input_file_is_usage_error(runner):
    result = runner.invoke(main, ["validate", "--input", "/no/such/file.csv",
                                  "--schema", "precomputed-gr"])
    assert result.exit_code == 2


def test_diagnostics_stay_out_of_stdout(runner, tmp_path):
    result = runner.invoke(main, ["report", *BASE, "--output-dir", str(tmp_path),
                                  "--format", "csv"])
    assert result.exit_code == 0
    assert result.stdout == ""
    assert "wrote" in result.stderr


def test_markdown_is_default_format(runner, tmp_path):
    result = runner.invoke(main, ["indicators", *BASE, "--output-dir", str(tmp_path)])
    assert result.exit_code == 0
    assert (tmp_path / "gr.md").exists()
    assert not (tmp_path / "gr.csv").exists()
