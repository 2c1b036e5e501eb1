import json

import pytest

from annotrust.cli import main
from annotrust.conjoint import (
    DesignKind,
    STANDARD_ATTRIBUTES,
    importance_partworths,
    make_design,
)
from annotrust.ingest import (
    export_results,
    load_choices,
    load_design,
    load_results,
    save_annotations,
    save_choices,
    save_design,
)
from conftest import EXAMPLE_AUTHORS, build_annotation


@pytest.fixture
def annotations_file(tmp_path):
    path = tmp_path / "annotations.jsonl"
    save_annotations([build_annotation(EXAMPLE_AUTHORS, annotation_id="worked")], path)
    return path


@pytest.fixture
def design_file(tmp_path):
    design = make_design(STANDARD_ATTRIBUTES, DesignKind.HALF_FRACTION, 4, seed=20260809)
    path = tmp_path / "design.json"
    save_design(design, path)
    return path


@pytest.fixture
def true_results_file(tmp_path, calibrated_part_worths):
    path = tmp_path / "true.json"
    export_results(
        calibrated_part_worths, importance_partworths(calibrated_part_worths), path
    )
    return path


class TestScore:
    def test_worked_example_with_named_weights(self, annotations_file, capsys):
        rc = main(["score", str(annotations_file), "--weights", "0.29,0.33,0.39", "--ntop", "2"])
        out = capsys.readouterr().out
        assert rc == 0
        row = [line for line in out.splitlines() if line.startswith("worked")][0]
        assert "19.338" in row
        assert "very trusted" in row

    def test_default_weights_hand_value(self, annotations_file, capsys):
        rc = main(["score", str(annotations_file)])
        out = capsys.readouterr().out
        assert rc == 0
        assert "17.2603" in out

    def test_empty_input(self, tmp_path, capsys):
        path = tmp_path / "empty.jsonl"
        path.write_text("")
        rc = main(["score", str(path)])
        out = capsys.readouterr().out
        assert rc == 0
        assert "annotation" in out  # header only

    def test_bad_record_reports_and_fails(self, tmp_path, capsys):
        path = tmp_path / "bad.jsonl"
        path.write_text("{\"id\": \"x\"}\n")
        rc = main(["score", str(path)])
        captured = capsys.readouterr()
        assert rc == 1
        assert "error" in captured.err


class TestDesign:
    def test_half_fraction_produces_8_tasks(self, tmp_path, capsys):
        out_path = tmp_path / "design.json"
        rc = main(["design", "--fraction", "1/2", "--alts", "4", "--seed", "3", "--out", str(out_path)])
        assert rc == 0
        design = load_design(out_path)
        assert len(design.tasks) == 8
        assert design.kind is DesignKind.HALF_FRACTION

    def test_full_factorial_produces_16_tasks(self, tmp_path):
        out_path = tmp_path / "design.json"
        rc = main(["design", "--fraction", "1", "--alts", "4", "--seed", "3", "--out", str(out_path)])
        assert rc == 0
        assert len(load_design(out_path).tasks) == 16

    def test_indivisible_partition_fails(self, tmp_path, capsys):
        rc = main(["design", "--fraction", "1/2", "--alts", "5", "--seed", "3"])
        captured = capsys.readouterr()
        assert rc == 1
        assert "error" in captured.err

    def test_custom_attributes(self, tmp_path):
        out_path = tmp_path / "design.json"
        rc = main(
            ["design", "--attr", "Speed@stability=1,2", "--attr", "Cost=3,9",
             "--fraction", "1", "--alts", "2", "--seed", "1", "--out", str(out_path)]
        )
        assert rc == 0
        design = load_design(out_path)
        assert [a.name for a in design.attributes] == ["Speed", "Cost"]
        assert design.attributes[0].dimension == "stability"
        assert design.attributes[1].dimension is None


class TestEstimate:
    def test_simulate_then_estimate_recovers_importances(
        self, tmp_path, design_file, true_results_file, capsys
    ):
        choices_path = tmp_path / "choices.csv"
        rc = main(
            ["simulate", str(design_file), str(true_results_file),
             "--respondents", "350", "--seed", "7", "--out", str(choices_path)]
        )
        assert rc == 0
        results_path = tmp_path / "results.json"
        rc = main(["estimate", str(design_file), str(choices_path), "--out", str(results_path)])
        assert rc == 0
        _, importances = load_results(results_path)
        shares = importances.as_dict()
        assert shares["Author Rating"] == pytest.approx(0.4085, abs=0.03)
        assert shares["Reader Rating"] == pytest.approx(0.348, abs=0.03)
        assert shares["Comments"] == pytest.approx(0.2435, abs=0.03)

    def test_zero_choices_fails(self, tmp_path, design_file, capsys):
        choices_path = tmp_path / "choices.csv"
        choices_path.write_text("respondentId,taskId,chosenIndex,timestamp\n")
        rc = main(["estimate", str(design_file), str(choices_path)])
        captured = capsys.readouterr()
        assert rc == 1
        assert "no valid choice records" in captured.err

    def test_tally_only_mode(self, tmp_path, design_file, true_results_file, capsys):
        choices_path = tmp_path / "choices.csv"
        main(["simulate", str(design_file), str(true_results_file),
              "--respondents", "20", "--seed", "2", "--out", str(choices_path)])
        rc = main(["estimate", str(design_file), str(choices_path), "--tally-only"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "importance (counts)" in out
        # oracle: recompute counts importance directly
        design = load_design(design_file)
        choices, _ = load_choices(choices_path, design)
        from annotrust.conjoint import importance_counts, tally_choices

        expected = importance_counts(tally_choices(design, choices)).as_dict()
        for name, share in expected.items():
            assert f"{share * 100:.2f}%" in out


class TestCheck:
    def test_survey_parameters(self, capsys):
        rc = main(["check", "348", "8", "4", "4"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "2784" in out
        assert "pass" in out

    def test_failing_check_still_exits_zero(self, capsys):
        rc = main(["check", "1", "1", "1", "1"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "FAIL" in out


class TestSimulate:
    def test_deterministic_output(self, tmp_path, design_file, true_results_file):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for path in (a, b):
            rc = main(["simulate", str(design_file), str(true_results_file),
                       "--respondents", "5", "--seed", "9", "--out", str(path)])
            assert rc == 0
        assert a.read_text() == b.read_text()


class TestThresholds:
    def test_uniform_values(self, tmp_path, capsys):
        path = tmp_path / "values.txt"
        path.write_text("\n".join(str(v) for v in range(1, 101)))
        rc = main(["thresholds", str(path)])
        out = capsys.readouterr().out
        assert rc == 0
        assert "75" in out and "43.75" in out and "37.5" in out

    def test_degenerate_values_fail(self, tmp_path, capsys):
        path = tmp_path / "values.txt"
        path.write_text("\n".join("5.0" for _ in range(10)))
        rc = main(["thresholds", str(path)])
        assert rc == 1


class TestServe:
    def test_missing_design_file(self, tmp_path, capsys):
        rc = main(["serve", "--design", str(tmp_path / "nope.json"), "--log", str(tmp_path / "log.csv")])
        captured = capsys.readouterr()
        assert rc == 1
        assert "not found" in captured.err

    def test_missing_flags(self, capsys, monkeypatch):
        monkeypatch.delenv("ANNOTRUST_DESIGN", raising=False)
        monkeypatch.delenv("ANNOTRUST_LOG", raising=False)
        rc = main(["serve"])
        assert rc == 1
